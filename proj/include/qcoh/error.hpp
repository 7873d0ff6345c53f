#ifndef QCOH_ERROR_HPP_
#define QCOH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qcoh {

// Broad failure categories. The CLI maps each one to a fixed exit code.
enum class ErrorKind {
  parse,         // malformed input file
  precondition,  // axioms, indecomposability, cocycle condition, ...
  argument,      // bad user-supplied parameter
  resource,      // a configured cap was exceeded
  internal       // consistency check failed; indicates a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

namespace impl {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void check_internal(bool ok, const char* what) {
  if (!ok)
    fail(ErrorKind::internal, std::string("internal consistency failure: ") + what);
}

} // namespace impl
} // namespace qcoh

#endif
