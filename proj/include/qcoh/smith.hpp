#ifndef QCOH_SMITH_HPP_
#define QCOH_SMITH_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace qcoh {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major integer matrix.
template <class Int>
struct DenseMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  Int& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    DenseMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x(i, k) == 0)
          continue;
        for (int j = 0; j < y.cols; ++j)
          r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

using IntMatrix = DenseMatrix<BigInt>;

// Triplet-form integer matrix; duplicate (row, col) entries are summed.
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::tuple<int, int, std::int64_t>> entries;

  void add(int r, int c, std::int64_t v) {
    if (v != 0)
      entries.emplace_back(r, c, v);
  }

  IntMatrix dense() const {
    IntMatrix m(rows, cols);
    for (const auto& [r, c, v] : entries)
      m(r, c) += v;
    return m;
  }
};

// Plain-text dump: "rows cols" then one line per row.
template <class M>
void dump_matrix(std::ostream& os, const M& m) {
  IntMatrix d;
  if constexpr (std::is_same_v<M, SparseMatrix>)
    d = m.dense();
  else
    d = m;
  os << d.rows << ' ' << d.cols << '\n';
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j)
      os << (j ? " " : "") << d(i, j);
    os << '\n';
  }
}

struct SmithResult {
  std::vector<BigInt> diagonal;  // nonzero invariant factors, each dividing the next
  std::optional<IntMatrix> U, V; // U * M * V = D when requested

  int rank() const { return static_cast<int>(diagonal.size()); }

  // Invariant factors greater than one.
  std::vector<BigInt> torsion() const {
    std::vector<BigInt> t;
    for (const auto& d : diagonal)
      if (d > 1)
        t.push_back(d);
    return t;
  }
};

namespace impl {

inline BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Elimination on a dense matrix, smallest nonzero entry as pivot.
inline SmithResult dense_smith(IntMatrix A, bool transforms) {
  const int R = A.rows, C = A.cols;
  IntMatrix U, V;
  if (transforms) {
    U = IntMatrix::identity(R);
    V = IntMatrix::identity(C);
  }
  auto swap_rows = [&](int i, int j) {
    if (i == j)
      return;
    for (int k = 0; k < C; ++k)
      std::swap(A(i, k), A(j, k));
    if (transforms)
      for (int k = 0; k < R; ++k)
        std::swap(U(i, k), U(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j)
      return;
    for (int k = 0; k < R; ++k)
      std::swap(A(k, i), A(k, j));
    if (transforms)
      for (int k = 0; k < C; ++k)
        std::swap(V(k, i), V(k, j));
  };
  // row_i += f row_j
  auto add_row = [&](int i, int j, const BigInt& f) {
    for (int k = 0; k < C; ++k)
      if (A(j, k) != 0)
        A(i, k) += f * A(j, k);
    if (transforms)
      for (int k = 0; k < R; ++k)
        if (U(j, k) != 0)
          U(i, k) += f * U(j, k);
  };
  auto add_col = [&](int i, int j, const BigInt& f) {
    for (int k = 0; k < R; ++k)
      if (A(k, j) != 0)
        A(k, i) += f * A(k, j);
    if (transforms)
      for (int k = 0; k < C; ++k)
        if (V(k, j) != 0)
          V(k, i) += f * V(k, j);
  };

  SmithResult res;
  for (int t = 0; t < std::min(R, C); ++t) {
    // smallest nonzero entry of the remaining block
    int pi = -1, pj = -1;
    BigInt best;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (A(i, j) != 0 && (pi < 0 || abs_big(A(i, j)) < best)) {
          best = abs_big(A(i, j));
          pi = i;
          pj = j;
        }
    if (pi < 0)
      break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < R; ++i)
        if (A(i, t) != 0) {
          add_row(i, t, -BigInt(A(i, t) / A(t, t)));
          if (A(i, t) != 0)
            clean = false;
        }
      for (int j = t + 1; j < C; ++j)
        if (A(t, j) != 0) {
          add_col(j, t, -BigInt(A(t, j) / A(t, t)));
          if (A(t, j) != 0)
            clean = false;
        }
      if (!clean) {
        // a smaller remainder sits in row t or column t: bring it to the pivot
        int bi = t, bj = t;
        for (int i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && abs_big(A(i, t)) < abs_big(A(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (int j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && abs_big(A(t, j)) < abs_big(A(bi, bj))) {
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < R && bad < 0; ++i)
        for (int j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0)
        break;
      add_row(t, bad, 1);
    }
    if (A(t, t) < 0) {
      for (int k = 0; k < C; ++k)
        A(t, k) = -A(t, k);
      if (transforms)
        for (int k = 0; k < R; ++k)
          U(t, k) = -U(t, k);
    }
    res.diagonal.push_back(A(t, t));
  }
  if (transforms) {
    res.U = std::move(U);
    res.V = std::move(V);
  }
  return res;
}

struct Overflow {};

inline bool sub_mul(std::int64_t a, std::int64_t f, std::int64_t b, std::int64_t& out) {
  std::int64_t p;
  return !__builtin_mul_overflow(f, b, &p) && !__builtin_sub_overflow(a, p, &out);
}
inline bool sub_mul(const BigInt& a, const BigInt& f, const BigInt& b, BigInt& out) {
  out = a - f * b;
  return true;
}

// Sparse elimination with unit pivots chosen by the Markowitz count. Every
// unit pivot contributes an invariant factor 1 and leaves the Schur
// complement; what remains goes through dense_smith.
template <class Int>
std::vector<BigInt> sparse_smith(const SparseMatrix& m) {
  using Row = std::vector<std::pair<int, Int>>;  // sorted by column
  std::vector<Row> rows(m.rows);
  {
    std::vector<std::unordered_map<int, Int>> acc(m.rows);
    for (const auto& [r, c, v] : m.entries)
      acc[r][c] += Int(v);
    for (int r = 0; r < m.rows; ++r) {
      for (auto& [c, v] : acc[r])
        if (v != 0)
          rows[r].emplace_back(c, v);
      std::sort(rows[r].begin(), rows[r].end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    }
  }
  std::vector<std::vector<int>> col_rows(m.cols);  // may hold stale row ids
  std::vector<int> col_count(m.cols, 0);
  for (int r = 0; r < m.rows; ++r)
    for (const auto& [c, v] : rows[r]) {
      col_rows[c].push_back(r);
      ++col_count[c];
    }
  std::vector<char> row_alive(m.rows, 1), col_alive(m.cols, 1);

  auto lookup = [&](const Row& row, int c) -> const Int* {
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int key) { return e.first < key; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  };

  int units = 0;
  for (;;) {
    int pr = -1, pc = -1;
    long best = -1;
    for (int r = 0; r < m.rows; ++r) {
      if (!row_alive[r] || rows[r].empty())
        continue;
      const long rl = static_cast<long>(rows[r].size()) - 1;
      for (const auto& [c, v] : rows[r])
        if (v == 1 || v == -1) {
          long cost = rl * (col_count[c] - 1);
          if (best < 0 || cost < best) {
            best = cost;
            pr = r;
            pc = c;
            if (cost == 0)
              break;
          }
        }
      if (best == 0)
        break;
    }
    if (pr < 0)
      break;
    ++units;
    const Row prow = rows[pr];
    const Int pv = *lookup(prow, pc);
    row_alive[pr] = 0;
    col_alive[pc] = 0;
    for (const auto& [c, v] : prow)
      --col_count[c];
    rows[pr].clear();
    // eliminate column pc from the other rows; the pivot column itself is dropped
    std::vector<int> targets;
    for (int r : col_rows[pc])
      if (row_alive[r] && lookup(rows[r], pc))
        targets.push_back(r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    col_rows[pc].clear();
    for (int r : targets) {
      Row& row = rows[r];
      const Int f = *lookup(row, pc) * pv;  // pv = +-1 so pv^-1 = pv
      Row out;
      out.reserve(row.size() + prow.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < prow.size()) {
        int ci = i < row.size() ? row[i].first : m.cols;
        int cj = j < prow.size() ? prow[j].first : m.cols;
        if (ci < cj) {
          out.push_back(row[i++]);
        } else if (cj < ci) {
          Int v;
          if (!sub_mul(Int(0), f, prow[j].second, v))
            throw Overflow{};
          if (cj != pc) {
            out.emplace_back(cj, v);
            col_rows[cj].push_back(r);
            ++col_count[cj];
          }
          ++j;
        } else {
          Int v;
          if (!sub_mul(row[i].second, f, prow[j].second, v))
            throw Overflow{};
          if (v != 0 && ci != pc)
            out.emplace_back(ci, v);
          else
            --col_count[ci];
          ++i;
          ++j;
        }
      }
      row = std::move(out);
    }
    col_count[pc] = 0;
  }

  // dense remainder
  std::vector<int> live_rows, col_index(m.cols, -1);
  int ncols = 0;
  for (int r = 0; r < m.rows; ++r)
    if (row_alive[r] && !rows[r].empty()) {
      live_rows.push_back(r);
      for (const auto& [c, v] : rows[r])
        if (col_index[c] < 0)
          col_index[c] = ncols++;
    }
  IntMatrix rest(static_cast<int>(live_rows.size()), ncols);
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : rows[live_rows[i]])
      rest(static_cast<int>(i), col_index[c]) = BigInt(v);
  std::vector<BigInt> diag(units, BigInt(1));
  if (rest.rows > 0 && rest.cols > 0)
    for (auto& d : dense_smith(std::move(rest), false).diagonal)
      diag.push_back(std::move(d));
  return diag;
}

} // namespace impl

// Smith normal form of a dense matrix; U and V are returned on request.
inline SmithResult smith_normal_form(const IntMatrix& m, bool transforms = false) {
  SmithResult r = impl::dense_smith(m, transforms);
  for (std::size_t i = 1; i < r.diagonal.size(); ++i)
    impl::check_internal(r.diagonal[i] % r.diagonal[i - 1] == 0, "Smith divisibility chain broken");
  return r;
}

// Invariant factors only, for large sparse matrices. Falls back to big
// integers if the 64-bit pass overflows.
inline SmithResult smith_normal_form(const SparseMatrix& m) {
  SmithResult r;
  try {
    r.diagonal = impl::sparse_smith<std::int64_t>(m);
  } catch (const impl::Overflow&) {
    r.diagonal = impl::sparse_smith<BigInt>(m);
  }
  for (std::size_t i = 1; i < r.diagonal.size(); ++i)
    impl::check_internal(r.diagonal[i] % r.diagonal[i - 1] == 0, "Smith divisibility chain broken");
  return r;
}

} // namespace qcoh

#endif
