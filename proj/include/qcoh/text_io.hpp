#ifndef QCOH_TEXT_IO_HPP_
#define QCOH_TEXT_IO_HPP_

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "quandle.hpp"

namespace qcoh {

namespace impl {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Line-oriented reader for the plain-text formats. Skips '#' comment lines
// and blank lines, and reports positions for diagnostics.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next data line split on spaces/tabs; false at end of input.
  bool next(std::vector<Token>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r')
        line.pop_back();
      std::size_t first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#')
        continue;
      tokens.clear();
      std::size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
          ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t')
          ++j;
        if (j > i)
          tokens.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
      }
      return true;
    }
    return false;
  }

  int line() const { return line_no_; }

  [[noreturn]] void error(int column, const std::string& msg) const {
    fail(ErrorKind::parse, "line " + std::to_string(line_no_) + ", column " +
                               std::to_string(column) + ": " + msg);
  }

private:
  std::istream& in_;
  int line_no_ = 0;
};

inline std::int64_t parse_int(const LineReader& r, const Token& t) {
  std::int64_t v = 0;
  std::size_t i = 0;
  bool neg = false;
  if (!t.text.empty() && (t.text[0] == '-' || t.text[0] == '+')) {
    neg = t.text[0] == '-';
    i = 1;
  }
  if (i == t.text.size())
    r.error(t.column, "expected an integer, got '" + t.text + "'");
  for (; i < t.text.size(); ++i) {
    char c = t.text[i];
    if (c < '0' || c > '9')
      r.error(t.column, "expected an integer, got '" + t.text + "'");
    if (v > (INT64_MAX - 9) / 10)
      r.error(t.column, "integer out of range");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

} // namespace impl

// Raw n*n table as read from a .qnd stream, before any axiom check.
struct TableText {
  int n = 0;
  std::vector<int> table;
};

// Parses the .qnd format: optional '#' comments, a line holding n, then n rows
// of n integers in [0, n). Throws ErrorKind::parse with line/column context.
inline TableText parse_table(std::istream& in) {
  impl::LineReader r(in);
  std::vector<impl::Token> tok;
  if (!r.next(tok))
    impl::fail(ErrorKind::parse, "empty input: expected size header");
  if (tok.size() != 1)
    r.error(tok.size() > 1 ? tok[1].column : 1, "header must hold exactly one integer n");
  std::int64_t n = impl::parse_int(r, tok[0]);
  if (n <= 0 || n > 100000)
    r.error(tok[0].column, "size must be positive");
  TableText out;
  out.n = static_cast<int>(n);
  out.table.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    if (!r.next(tok))
      impl::fail(ErrorKind::parse, "unexpected end of input: expected " + std::to_string(n) +
                                       " rows, got " + std::to_string(x));
    if (static_cast<std::int64_t>(tok.size()) != n)
      r.error(tok.size() > static_cast<std::size_t>(n) ? tok[n].column : 1,
              "row " + std::to_string(x) + " has " + std::to_string(tok.size()) +
                  " entries, expected " + std::to_string(n));
    for (const auto& t : tok) {
      std::int64_t v = impl::parse_int(r, t);
      if (v < 0 || v >= n)
        r.error(t.column, "entry " + t.text + " out of range [0," + std::to_string(n) + ")");
      out.table.push_back(static_cast<int>(v));
    }
  }
  if (r.next(tok))
    r.error(tok.front().column, "trailing data after " + std::to_string(n) + " rows");
  return out;
}

inline Quandle parse_quandle(std::istream& in) {
  TableText t = parse_table(in);
  return Quandle::from_table(t.n, std::move(t.table));
}

inline Quandle parse_quandle(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_quandle(in);
}

inline std::string serialize(const Quandle& q) {
  std::string s = std::to_string(q.size()) + "\n";
  for (int x = 0; x < q.size(); ++x) {
    for (int y = 0; y < q.size(); ++y) {
      if (y)
        s += ' ';
      s += std::to_string(q.op(x, y));
    }
    s += '\n';
  }
  return s;
}

} // namespace qcoh

#endif
