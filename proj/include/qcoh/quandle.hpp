#ifndef QCOH_QUANDLE_HPP_
#define QCOH_QUANDLE_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qcoh {

// A permutation of {0,...,n-1} stored as its image tuple: p[i] is the image of i.
using Perm = std::vector<int>;

namespace perm {

inline Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// (a*b)(i) = a(b(i)), i.e. b acts first.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] = a[b[i]];
  return r;
}

inline Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[p[i]] = static_cast<int>(i);
  return r;
}

inline Perm conjugate(const Perm& x, const Perm& y) {  // x y x^-1
  return compose(compose(x, y), inverse(x));
}

inline bool is_permutation(std::span<const int> p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
      return false;
    seen[v] = 1;
  }
  return true;
}

inline long order(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  long ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i])
      continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

// Parses a product of disjoint cycles such as "(0 1)(2 3 4)" on n points.
inline Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm p = identity(n);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i)
      p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

} // namespace perm

enum class Kind { rack, quandle };

// Result of checking a table against the rack and quandle axioms.
struct Classification {
  enum class Status { quandle, rack, invalid };
  enum class Violation { none, out_of_range, non_bijective_row, distributivity };

  Status status = Status::invalid;
  Violation violation = Violation::none;
  // Offending (x, y, z) for distributivity, (x, y, -) for a bad entry, (x, -, -) for a row.
  std::array<int, 3> witness{-1, -1, -1};

  bool valid() const { return status != Status::invalid; }

  std::string describe() const {
    switch (status) {
      case Status::quandle: return "quandle";
      case Status::rack: return "rack";
      case Status::invalid: break;
    }
    std::string w = "(" + std::to_string(witness[0]);
    for (int i = 1; i < 3 && witness[i] >= 0; ++i)
      w += "," + std::to_string(witness[i]);
    w += ")";
    switch (violation) {
      case Violation::out_of_range: return "invalid: out-of-range entry at " + w;
      case Violation::non_bijective_row: return "invalid: non-bijective row " + w;
      case Violation::distributivity: return "invalid: distributivity fails at " + w;
      case Violation::none: break;
    }
    return "invalid";
  }
};

// Checks an n*n row-major table (entry x*n+y is x|>y). Reports the first violated axiom.
inline Classification validate(int n, std::span<const int> table) {
  using S = Classification::Status;
  using V = Classification::Violation;
  Classification c;
  if (n <= 0 || table.size() != static_cast<std::size_t>(n) * n) {
    c.violation = V::out_of_range;
    return c;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int v = table[x * n + y];
      if (v < 0 || v >= n) {
        c.violation = V::out_of_range;
        c.witness = {x, y, -1};
        return c;
      }
    }
  for (int x = 0; x < n; ++x)
    if (!perm::is_permutation(table.subspan(x * n, n))) {
      c.violation = V::non_bijective_row;
      c.witness = {x, -1, -1};
      return c;
    }
  auto op = [&](int a, int b) { return table[a * n + b]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (op(x, op(y, z)) != op(op(x, y), op(x, z))) {
          c.violation = V::distributivity;
          c.witness = {x, y, z};
          return c;
        }
  c.status = S::quandle;
  for (int x = 0; x < n; ++x)
    if (op(x, x) != x)
      c.status = S::rack;
  return c;
}

// A finite rack or quandle, immutable after construction.
class Quandle {
public:
  Quandle() = default;

  // Throws ErrorKind::precondition if the table violates the rack axioms.
  static Quandle from_table(int n, std::vector<int> table) {
    Classification c = validate(n, table);
    if (!c.valid())
      impl::fail(ErrorKind::precondition, c.describe());
    Quandle q;
    q.n_ = n;
    q.table_ = std::move(table);
    q.kind_ = c.status == Classification::Status::quandle ? Kind::quandle : Kind::rack;
    q.inverse_.resize(q.table_.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        q.inverse_[x * n + q.table_[x * n + y]] = y;
    return q;
  }

  int size() const { return n_; }
  Kind kind() const { return kind_; }
  bool is_quandle() const { return kind_ == Kind::quandle; }

  int op(int x, int y) const { return table_[x * n_ + y]; }
  // phi_x^{-1}(y)
  int inv_op(int x, int y) const { return inverse_[x * n_ + y]; }

  std::span<const int> row(int x) const { return {table_.data() + x * n_, static_cast<std::size_t>(n_)}; }
  Perm phi(int x) const { return Perm(row(x).begin(), row(x).end()); }
  const std::vector<int>& table() const { return table_; }

  friend bool operator==(const Quandle& a, const Quandle& b) {
    return a.n_ == b.n_ && a.table_ == b.table_;
  }

private:
  int n_ = 0;
  Kind kind_ = Kind::quandle;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

// Orbits of Inn(X) = <phi_x> together with the orders n_x = ord(phi_x).
struct InnerAction {
  std::vector<Perm> generators;
  std::vector<std::vector<int>> orbits;  // each sorted, ordered by least element
  std::vector<int> orbit_of;
  std::vector<long> phi_orders;

  bool indecomposable() const { return orbits.size() == 1; }
};

inline InnerAction inner_action(const Quandle& q) {
  const int n = q.size();
  InnerAction a;
  a.orbit_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    a.generators.push_back(q.phi(x));
    a.phi_orders.push_back(perm::order(a.generators.back()));
  }
  for (int start = 0; start < n; ++start) {
    if (a.orbit_of[start] >= 0)
      continue;
    int id = static_cast<int>(a.orbits.size());
    std::vector<int> orbit{start};
    a.orbit_of[start] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (int x = 0; x < n; ++x) {
        int z = q.op(x, orbit[i]);
        if (a.orbit_of[z] < 0) {
          a.orbit_of[z] = id;
          orbit.push_back(z);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    a.orbits.push_back(std::move(orbit));
  }
  return a;
}

struct ConjugationQuandle {
  Quandle quandle;
  std::vector<Perm> elements;  // element i of the quandle, lexicographically sorted
};

// The conjugacy class of `rep` under <gens>, with x|>y = x y x^-1.
inline ConjugationQuandle conjugation_quandle(const std::vector<Perm>& gens, const Perm& rep,
                                              std::size_t max_class_size = 100000) {
  const std::size_t deg = rep.size();
  if (!perm::is_permutation(rep))
    impl::fail(ErrorKind::argument, "conjugation_quandle: representative is not a permutation");
  for (const Perm& g : gens)
    if (g.size() != deg || !perm::is_permutation(g))
      impl::fail(ErrorKind::argument, "conjugation_quandle: generator degree mismatch");

  std::set<Perm> seen{rep};
  std::vector<Perm> queue{rep};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& g : gens) {
      Perm c = perm::conjugate(g, queue[i]);
      if (seen.insert(c).second) {
        if (seen.size() > max_class_size)
          impl::fail(ErrorKind::resource, "conjugation_quandle: class-too-large (cap " +
                                              std::to_string(max_class_size) + ")");
        queue.push_back(std::move(c));
      }
    }

  ConjugationQuandle out;
  out.elements.assign(seen.begin(), seen.end());
  const int n = static_cast<int>(out.elements.size());
  auto index_of = [&](const Perm& p) {
    auto it = std::lower_bound(out.elements.begin(), out.elements.end(), p);
    if (it == out.elements.end() || *it != p)
      impl::fail(ErrorKind::precondition,
                 "conjugation_quandle: class is not closed under conjugation; "
                 "representative outside the generated group?");
    return static_cast<int>(it - out.elements.begin());
  };
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      table[x * n + y] = index_of(perm::conjugate(out.elements[x], out.elements[y]));
  out.quandle = Quandle::from_table(n, std::move(table));
  return out;
}

} // namespace qcoh

#endif
