#ifndef QCOH_COCYCLE_HPP_
#define QCOH_COCYCLE_HPP_

#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "quandle.hpp"
#include "text_io.hpp"

namespace qcoh {

// An element of Q/Z as a reduced fraction num/den with 0 <= num < den.
struct Coeff {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Coeff() = default;
  Coeff(std::int64_t p, std::int64_t q) : num(p), den(q) { normalize(); }

  bool is_zero() const { return num == 0; }

  friend Coeff operator+(const Coeff& a, const Coeff& b) {
    std::int64_t l = std::lcm(a.den, b.den);
    return Coeff(a.num * (l / a.den) + b.num * (l / b.den), l);
  }
  friend Coeff operator-(const Coeff& a) { return Coeff(-a.num, a.den); }
  friend Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }
  Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
  Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
  friend Coeff operator*(std::int64_t k, const Coeff& a) {
    std::int64_t r = (k % a.den) * a.num % a.den;
    return Coeff(r, a.den);
  }
  friend bool operator==(const Coeff&, const Coeff&) = default;
  friend bool operator<(const Coeff& a, const Coeff& b) {
    return a.num * b.den < b.num * a.den;
  }

private:
  void normalize() {
    if (den <= 0)
      impl::fail(ErrorKind::argument, "coefficient denominator must be positive");
    num %= den;
    if (num < 0)
      num += den;
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0)
      den = 1;
  }
};

// Z_m (embedded in Q/Z as (1/m)Z/Z) or Q/Z itself.
class CoefficientGroup {
public:
  static CoefficientGroup cyclic(std::int64_t m) {
    if (m < 1)
      impl::fail(ErrorKind::argument, "cyclic modulus must be >= 1");
    CoefficientGroup g;
    g.m_ = m;
    return g;
  }
  static CoefficientGroup rational() { return CoefficientGroup(); }

  bool is_cyclic() const { return m_ > 0; }
  std::int64_t modulus() const { return m_; }

  // k in Z_m; for Q/Z this is the integer k, i.e. zero.
  Coeff from_int(std::int64_t k) const { return is_cyclic() ? Coeff(k, m_) : Coeff(); }
  std::int64_t to_int(const Coeff& c) const { return c.num * (m_ / c.den); }

  bool contains(const Coeff& c) const { return !is_cyclic() || m_ % c.den == 0; }

  // Elements killed by d, in increasing order.
  std::vector<Coeff> torsion(std::int64_t d) const {
    std::vector<Coeff> out;
    std::int64_t k = is_cyclic() ? std::gcd(d, m_) : d;
    for (std::int64_t i = 0; i < k; ++i)
      out.emplace_back(i, k);
    return out;
  }

  std::string name() const { return is_cyclic() ? "Z" + std::to_string(m_) : "QZ"; }

  std::string format(const Coeff& c) const {
    if (is_cyclic())
      return std::to_string(to_int(c));
    if (c.is_zero())
      return "0";
    return std::to_string(c.num) + "/" + std::to_string(c.den);
  }

  // Accepts an integer (residue for Z_m, and 0 or n/1 for Q/Z) or p/q.
  std::optional<Coeff> parse(const std::string& s) const {
    std::int64_t p = 0, q = 1;
    std::size_t slash = s.find('/');
    try {
      std::size_t used = 0;
      p = std::stoll(s.substr(0, slash), &used);
      if (used != (slash == std::string::npos ? s.size() : slash))
        return std::nullopt;
      if (slash != std::string::npos) {
        q = std::stoll(s.substr(slash + 1), &used);
        if (used != s.size() - slash - 1 || q <= 0)
          return std::nullopt;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (is_cyclic() && slash == std::string::npos && (p < 0 || p >= m_))
      return std::nullopt;
    Coeff c = is_cyclic() && slash == std::string::npos ? Coeff(p, m_) : Coeff(p, q);
    if (!contains(c))
      return std::nullopt;
    return c;
  }

  friend bool operator==(const CoefficientGroup&, const CoefficientGroup&) = default;

private:
  std::int64_t m_ = 0;  // 0 means Q/Z
};

inline CoefficientGroup parse_coefficient_group(const std::string& s) {
  if (s == "QZ" || s == "Q/Z")
    return CoefficientGroup::rational();
  if (s.size() > 1 && (s[0] == 'Z' || s[0] == 'z')) {
    try {
      std::size_t used = 0;
      long long m = std::stoll(s.substr(1), &used);
      if (used == s.size() - 1 && m >= 1)
        return CoefficientGroup::cyclic(m);
    } catch (const std::exception&) {
    }
  }
  impl::fail(ErrorKind::argument, "coefficient group must be Z<m> or QZ, got '" + s + "'");
}

// An n*n matrix of A-values, entry (x, y) = q_{x,y}.
struct Cocycle {
  int n = 0;
  CoefficientGroup group = CoefficientGroup::cyclic(1);
  std::vector<Coeff> values;

  Cocycle() = default;
  Cocycle(int size, CoefficientGroup g) : n(size), group(g), values(static_cast<std::size_t>(size) * size) {}

  Coeff& at(int x, int y) { return values[static_cast<std::size_t>(x) * n + y]; }
  const Coeff& at(int x, int y) const { return values[static_cast<std::size_t>(x) * n + y]; }

  static Cocycle constant(int n, CoefficientGroup g, Coeff a) {
    Cocycle c(n, g);
    std::fill(c.values.begin(), c.values.end(), a);
    return c;
  }

  bool is_constant() const {
    for (const Coeff& v : values)
      if (!(v == values.front()))
        return false;
    return true;
  }

  friend bool operator==(const Cocycle&, const Cocycle&) = default;
};

struct CocycleCheck {
  bool ok = true;
  int x = -1, y = -1, z = -1;  // first failing triple
};

// q_{x|>y, x|>z} + q_{x,z} = q_{x, y|>z} + q_{y,z} for all x, y, z.
inline CocycleCheck verify_cocycle(const Quandle& q, const Cocycle& c) {
  if (c.n != q.size())
    impl::fail(ErrorKind::argument, "cocycle size does not match quandle size");
  const int n = q.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (!(c.at(q.op(x, y), q.op(x, z)) + c.at(x, z) == c.at(x, q.op(y, z)) + c.at(y, z)))
          return {false, x, y, z};
  return {};
}

// Normalized quandle cocycle: additionally q_{x,x} = 0.
inline bool is_quandle_cocycle(const Quandle& q, const Cocycle& c) {
  for (int x = 0; x < q.size(); ++x)
    if (!c.at(x, x).is_zero())
      return false;
  return verify_cocycle(q, c).ok;
}

// d gamma (x, y) = gamma(x|>y) - gamma(y)
inline Cocycle coboundary(const Quandle& q, CoefficientGroup g, const std::vector<Coeff>& gamma) {
  Cocycle c(q.size(), g);
  for (int x = 0; x < q.size(); ++x)
    for (int y = 0; y < q.size(); ++y)
      c.at(x, y) = gamma[q.op(x, y)] - gamma[y];
  return c;
}

inline Cocycle operator+(const Cocycle& a, const Cocycle& b) {
  Cocycle c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i)
    c.values[i] += b.values[i];
  return c;
}

// (x,i)|>(y,j) = (x|>y, j + f_{x,y}) on X x Z_m, element (x,i) at index x*m + i.
inline Quandle extension_by_cocycle(const Quandle& q, int m, const Cocycle& f) {
  if (!f.group.is_cyclic() || f.group.modulus() != m)
    impl::fail(ErrorKind::argument, "extension_by_cocycle: cocycle must take values in Z" + std::to_string(m));
  CocycleCheck chk = verify_cocycle(q, f);
  if (!chk.ok)
    impl::fail(ErrorKind::precondition, "extension_by_cocycle: not-a-cocycle at (" + std::to_string(chk.x) +
                                            "," + std::to_string(chk.y) + "," + std::to_string(chk.z) + ")");
  const int n = q.size(), N = n * m;
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < m; ++i)
      for (int y = 0; y < n; ++y)
        for (int j = 0; j < m; ++j) {
          int k = static_cast<int>((j + f.group.to_int(f.at(x, y))) % m);
          table[static_cast<std::size_t>(x * m + i) * N + y * m + j] = q.op(x, y) * m + k;
        }
  return Quandle::from_table(N, std::move(table));
}

// .coc format: "n <n> coeff Z<m>|QZ" then n rows of n entries.
inline std::string serialize(const Cocycle& c) {
  std::string s = "n " + std::to_string(c.n) + " coeff " + c.group.name() + "\n";
  for (int x = 0; x < c.n; ++x) {
    for (int y = 0; y < c.n; ++y) {
      if (y)
        s += ' ';
      s += c.group.format(c.at(x, y));
    }
    s += '\n';
  }
  return s;
}

inline Cocycle parse_cocycle(std::istream& in) {
  impl::LineReader r(in);
  std::vector<impl::Token> tok;
  if (!r.next(tok))
    impl::fail(ErrorKind::parse, "empty input: expected 'n <n> coeff <group>' header");
  if (tok.size() != 4 || tok[0].text != "n" || tok[2].text != "coeff")
    r.error(1, "header must read 'n <n> coeff Z<m>|QZ'");
  std::int64_t n = impl::parse_int(r, tok[1]);
  if (n <= 0 || n > 100000)
    r.error(tok[1].column, "size must be positive");
  CoefficientGroup g = CoefficientGroup::rational();
  try {
    g = parse_coefficient_group(tok[3].text);
  } catch (const Error&) {
    r.error(tok[3].column, "unknown coefficient group '" + tok[3].text + "'");
  }
  Cocycle c(static_cast<int>(n), g);
  for (int x = 0; x < n; ++x) {
    if (!r.next(tok))
      impl::fail(ErrorKind::parse, "unexpected end of input: expected " + std::to_string(n) + " rows");
    if (static_cast<std::int64_t>(tok.size()) != n)
      r.error(1, "row " + std::to_string(x) + " has " + std::to_string(tok.size()) + " entries, expected " +
                     std::to_string(n));
    for (int y = 0; y < n; ++y) {
      auto v = g.parse(tok[y].text);
      if (!v)
        r.error(tok[y].column, "bad " + g.name() + " entry '" + tok[y].text + "'");
      c.at(x, y) = *v;
    }
  }
  if (r.next(tok))
    r.error(tok.front().column, "trailing data after cocycle rows");
  return c;
}

inline Cocycle parse_cocycle(const std::string& text) {
  std::istringstream in(text);
  return parse_cocycle(in);
}

} // namespace qcoh

#endif
