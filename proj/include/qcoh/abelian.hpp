#ifndef QCOH_ABELIAN_HPP_
#define QCOH_ABELIAN_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "subgroup.hpp"

namespace qcoh {

// s / [s, s] written as Z_{d_1} + ... + Z_{d_r} with d_1 | d_2 | ... and every d_i > 1.
struct AbelianStructure {
  std::vector<long> factors;
  std::vector<int> basis;         // parent elements of s mapping to the standard generators
  std::vector<Word> basis_words;  // their stored words in s
  // coordinates[e] for every parent element e in s; empty for elements outside s.
  std::vector<std::vector<long>> coordinates;

  long order() const {
    long o = 1;
    for (long d : factors)
      o *= d;
    return o;
  }
  int rank() const { return static_cast<int>(factors.size()); }
  const std::vector<long>& coords(int e) const { return coordinates[e]; }
};

namespace impl {

// Finite abelian group given by a multiplication table on {0..n-1}, 0 = identity.
struct SmallAbelian {
  int n = 1;
  std::vector<int> mul;  // n*n

  int op(int a, int b) const { return mul[a * n + b]; }
  int power(int a, long k) const {
    int r = 0;
    for (long i = 0; i < k; ++i)
      r = op(r, a);
    return r;
  }
  long order(int a) const {
    long k = 1;
    for (int p = a; p != 0; p = op(p, a))
      ++k;
    return k;
  }
};

// Invariant factors from the p-primary counts: for each prime p the number of
// elements killed by p^k determines the partition of exponents.
inline std::vector<long> invariant_factors(const SmallAbelian& g) {
  std::vector<long> ords(g.n);
  for (int a = 0; a < g.n; ++a)
    ords[a] = g.order(a);
  std::vector<long> primes;
  long m = g.n;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  if (m > 1)
    primes.push_back(m);
  // per prime, cyclic p-part exponents in decreasing order
  std::vector<std::vector<long>> parts;
  std::size_t len = 0;
  for (long p : primes) {
    // c[k] = log_p #{a : a^{p^k} = 1}
    std::vector<long> c{0};
    for (long pk = p;; pk *= p) {
      long cnt = 0;
      for (int a = 0; a < g.n; ++a)
        if (pk % ords[a] == 0)
          ++cnt;
      long e = 0;
      for (long t = cnt; t > 1; t /= p)
        ++e;
      c.push_back(e);
      if (c.back() == c[c.size() - 2])
        break;
    }
    // number of cyclic factors of exponent >= k is c[k] - c[k-1]
    std::vector<long> exps;
    for (std::size_t k = 1; k < c.size(); ++k) {
      long ge_k = c[k] - c[k - 1];
      long ge_k1 = k + 1 < c.size() ? c[k + 1] - c[k] : 0;
      for (long i = 0; i < ge_k - ge_k1; ++i)
        exps.push_back(static_cast<long>(k));
    }
    std::sort(exps.rbegin(), exps.rend());
    std::vector<long> pows;
    for (long e : exps) {
      long v = 1;
      for (long i = 0; i < e; ++i)
        v *= p;
      pows.push_back(v);
    }
    len = std::max(len, pows.size());
    parts.push_back(std::move(pows));
  }
  std::vector<long> out(len, 1);  // largest first
  for (const auto& pows : parts)
    for (std::size_t i = 0; i < pows.size(); ++i)
      out[i] *= pows[i];
  std::reverse(out.begin(), out.end());
  return out;
}

// Backtracking search for elements b_i of order d_i generating a direct sum.
inline bool find_basis(const SmallAbelian& g, const std::vector<long>& d, std::vector<int>& basis,
                       std::vector<char>& span) {
  const std::size_t i = basis.size();
  if (i == d.size())
    return true;
  const std::size_t k = d.size() - 1 - i;  // fill from the largest factor down
  for (int b = 1; b < g.n; ++b) {
    if (g.order(b) != d[k])
      continue;
    // <span, b> must have |span| * d[k] elements
    std::vector<char> next(g.n, 0);
    bool independent = true;
    for (int s = 0; s < g.n && independent; ++s) {
      if (!span[s])
        continue;
      int e = s;
      for (long t = 0; t < d[k]; ++t) {
        if (t > 0 && span[e]) {
          independent = false;
          break;
        }
        next[e] = 1;
        e = g.op(e, b);
      }
    }
    if (!independent)
      continue;
    basis.push_back(b);
    if (find_basis(g, d, basis, next))
      return true;
    basis.pop_back();
  }
  return false;
}

} // namespace impl

inline AbelianStructure abelian_structure(const SubgroupData& s) {
  const CayleyGroup& g = *s.parent;
  // derived subgroup of s: normal closure in s of commutators of its generators
  impl::SubgroupBuilder b(s.parent);
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (std::size_t j = i + 1; j < s.generators.size(); ++j) {
      const auto& [u, wu] = s.generators[i];
      const auto& [v, wv] = s.generators[j];
      int c = g.mul(g.mul(g.mul(u, v), g.inverse(u)), g.inverse(v));
      b.add_generator(c, wu * wv * wu.inverse() * wv.inverse());
    }
  for (std::size_t k = 0; k < b.generators().size(); ++k)
    for (const auto& [u, wu] : s.generators) {
      auto [c, wc] = b.generators()[k];
      b.add_generator(g.conjugate(u, c), wu * wc * wu.inverse());
    }
  SubgroupData d = std::move(b).finish();

  // cosets of d in s
  std::vector<int> label(g.order(), -1);
  std::vector<int> rep;
  for (int e : s.elements) {
    if (label[e] >= 0)
      continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(e);
    for (int x : d.elements)
      label[g.mul(e, x)] = id;
  }
  impl::SmallAbelian q;
  q.n = static_cast<int>(rep.size());
  q.mul.resize(static_cast<std::size_t>(q.n) * q.n);
  for (int a = 0; a < q.n; ++a)
    for (int c = 0; c < q.n; ++c)
      q.mul[a * q.n + c] = label[g.mul(rep[a], rep[c])];
  impl::check_internal(label[g.identity()] == 0, "identity coset is not 0");

  AbelianStructure out;
  out.factors = impl::invariant_factors(q);
  std::vector<int> qbasis;
  std::vector<char> span(q.n, 0);
  span[0] = 1;
  impl::check_internal(impl::find_basis(q, out.factors, qbasis, span), "no abelian basis found");
  std::reverse(qbasis.begin(), qbasis.end());  // qbasis[i] now has order factors[i]

  // coordinates by enumerating all exponent vectors
  std::vector<std::vector<long>> qcoords(q.n);
  std::vector<long> e(out.factors.size(), 0);
  for (long count = 0; count < q.n; ++count) {
    int x = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      x = q.op(x, q.power(qbasis[i], e[i]));
    impl::check_internal(qcoords[x].empty() || q.n == 1, "abelian coordinates collide");
    qcoords[x] = e;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (++e[i] < out.factors[i])
        break;
      e[i] = 0;
    }
  }
  out.coordinates.assign(g.order(), {});
  for (int x : s.elements)
    out.coordinates[x] = qcoords[label[x]];
  for (int qb : qbasis) {
    out.basis.push_back(rep[qb]);
    out.basis_words.push_back(s.word_of(rep[qb]));
  }
  return out;
}

} // namespace qcoh

#endif
