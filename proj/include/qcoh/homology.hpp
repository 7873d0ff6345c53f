#ifndef QCOH_HOMOLOGY_HPP_
#define QCOH_HOMOLOGY_HPP_

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quandle.hpp"
#include "smith.hpp"

namespace qcoh {

// H_2 as Z^free_rank + Z_{t_1} + ... with t_1 | t_2 | ...
struct HomologyResult {
  long free_rank = 0;
  std::vector<BigInt> torsion;

  std::vector<long> torsion_longs() const {
    std::vector<long> out;
    for (const auto& t : torsion)
      out.push_back(t.convert_to<long>());
    return out;
  }

  std::string str() const {
    std::string s;
    if (free_rank == 1)
      s = "Z";
    else if (free_rank > 1)
      s = "Z^" + std::to_string(free_rank);
    for (const auto& t : torsion)
      s += (s.empty() ? "" : " + ") + std::string("Z") + t.str();
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const HomologyResult&, const HomologyResult&) = default;
};

struct BoundaryMatrices {
  SparseMatrix d2;  // C_2 -> C_1, rows indexed by x, columns by (x, y)
  SparseMatrix d3;  // C_3 -> C_2, rows by (x, y), columns by (x, y, z)
};

// Rack boundaries in row-major tuple order:
//   d2(x,y)   = (y) - (x|>y)
//   d3(x,y,z) = (y,z) - (x|>y, x|>z) - (x,z) + (x, y|>z)
// With degenerate = true the tuples with equal neighbours are dropped
// (quotient by the degenerate subcomplex) and columns/rows are renumbered
// in the same row-major order.
inline BoundaryMatrices boundary_matrices(const Quandle& q, bool quandle_complex = false) {
  const int n = q.size();
  auto keep2 = [&](int x, int y) { return !quandle_complex || x != y; };
  std::vector<int> idx2(static_cast<std::size_t>(n) * n, -1);
  int c2 = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (keep2(x, y))
        idx2[x * n + y] = c2++;
  BoundaryMatrices b;
  b.d2.rows = n;
  b.d2.cols = c2;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (keep2(x, y)) {
        int col = idx2[x * n + y];
        b.d2.add(y, col, 1);
        b.d2.add(q.op(x, y), col, -1);
      }
  b.d3.rows = c2;
  int c3 = 0;
  auto term = [&](int col, int x, int y, std::int64_t s) {
    int r = idx2[x * n + y];
    if (r >= 0)
      b.d3.add(r, col, s);
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (quandle_complex && (x == y || y == z))
          continue;
        int col = c3++;
        term(col, y, z, 1);
        term(col, q.op(x, y), q.op(x, z), -1);
        term(col, x, z, -1);
        term(col, x, q.op(y, z), 1);
      }
  b.d3.cols = c3;
  return b;
}

namespace impl {

inline void check_oracle_size(const Quandle& q, int cap) {
  if (q.size() > cap)
    fail(ErrorKind::resource, "oracle: too-large (|X| = " + std::to_string(q.size()) + " exceeds cap " +
                                  std::to_string(cap) + ")");
}

inline HomologyResult h2_from(const BoundaryMatrices& b) {
  SmithResult s2 = smith_normal_form(b.d2);
  SmithResult s3 = smith_normal_form(b.d3);
  HomologyResult h;
  h.free_rank = (b.d2.cols - s2.rank()) - s3.rank();
  h.torsion = s3.torsion();
  return h;
}

} // namespace impl

// H_2(X, Z) = ker d2 / im d3.
inline HomologyResult rack_h2(const Quandle& q, int cap = 12) {
  impl::check_oracle_size(q, cap);
  return impl::h2_from(boundary_matrices(q, false));
}

// H_2^Q(X, Z) from the complex modulo degenerate tuples.
inline HomologyResult quandle_h2(const Quandle& q, int cap = 12) {
  impl::check_oracle_size(q, cap);
  return impl::h2_from(boundary_matrices(q, true));
}

struct H2Count {
  BigInt count;
  bool enumerated = false;  // second witness by exhaustive search was run
};

namespace impl {

// Number of x in Z_m^cols with K x = 0 (mod m).
inline BigInt solutions_mod(const SparseMatrix& k, std::int64_t m) {
  SmithResult s = smith_normal_form(k);
  BigInt count = 1;
  for (const auto& d : s.diagonal)
    count *= boost::multiprecision::gcd(d, BigInt(m));
  for (int i = s.rank(); i < k.cols; ++i)
    count *= m;
  return count;
}

// |Z^2| / |B^2| by backtracking over all assignments of q and all gamma.
inline BigInt enumerate_h2(const Quandle& q, int m) {
  const int n = q.size(), n2 = n * n;
  // constraints keyed by their largest pair index
  std::vector<std::vector<std::array<int, 4>>> by_max(n2);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::array<int, 4> c{q.op(x, y) * n + q.op(x, z), x * n + z, x * n + q.op(y, z), y * n + z};
        by_max[*std::max_element(c.begin(), c.end())].push_back(c);
      }
  std::vector<int> val(n2, 0);
  long cocycles = 0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n2) {
      ++cocycles;
      return;
    }
    for (int v = 0; v < m; ++v) {
      val[pos] = v;
      bool ok = true;
      for (const auto& c : by_max[pos])
        if ((val[c[0]] + val[c[1]] - val[c[2]] - val[c[3]]) % m != 0) {
          ok = false;
          break;
        }
      if (ok)
        self(self, pos + 1);
    }
  };
  rec(rec, 0);
  std::vector<std::vector<int>> seen;
  std::vector<int> gamma(n, 0);
  for (long t = 0;; ++t) {
    std::vector<int> d(n2);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        d[x * n + y] = ((gamma[q.op(x, y)] - gamma[y]) % m + m) % m;
    seen.push_back(std::move(d));
    int i = 0;
    for (; i < n; ++i) {
      if (++gamma[i] < m)
        break;
      gamma[i] = 0;
    }
    if (i == n)
      break;
  }
  std::sort(seen.begin(), seen.end());
  long boundaries = std::unique(seen.begin(), seen.end()) - seen.begin();
  return BigInt(cocycles / boundaries);
}

} // namespace impl

// |H^2(X, Z_m)| from the cocycle-condition system and the coboundary map,
// both reduced mod m through Smith forms. For |X| <= 4 and m <= 3 an
// exhaustive count is run as well and must agree.
inline H2Count brute_force_h2_count(const Quandle& q, std::int64_t m, int cap = 12) {
  impl::check_oracle_size(q, cap);
  if (m < 1)
    impl::fail(ErrorKind::argument, "modulus must be >= 1");
  const int n = q.size();
  // one row per triple (x,y,z), one column per pair (u,v)
  SparseMatrix k;
  k.rows = n * n * n;
  k.cols = n * n;
  int row = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z, ++row) {
        k.add(row, q.op(x, y) * n + q.op(x, z), 1);
        k.add(row, x * n + z, 1);
        k.add(row, x * n + q.op(y, z), -1);
        k.add(row, y * n + z, -1);
      }
  // gamma -> d gamma, rows by pairs, columns by points
  SparseMatrix d1;
  d1.rows = n * n;
  d1.cols = n;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      d1.add(x * n + y, q.op(x, y), 1);
      d1.add(x * n + y, y, -1);
    }
  BigInt z2 = impl::solutions_mod(k, m);
  BigInt ker1 = impl::solutions_mod(d1, m);
  BigInt mn = 1;
  for (int i = 0; i < n; ++i)
    mn *= m;
  // |B^2| = m^n / |ker d1|
  BigInt num = z2 * ker1;
  impl::check_internal(num % mn == 0, "coboundary count does not divide cocycle count");
  H2Count out;
  out.count = num / mn;
  if (n <= 4 && m <= 3) {
    out.enumerated = true;
    impl::check_internal(impl::enumerate_h2(q, static_cast<int>(m)) == out.count,
                         "exhaustive H^2 count disagrees with the Smith-form count");
  }
  return out;
}

} // namespace qcoh

#endif
