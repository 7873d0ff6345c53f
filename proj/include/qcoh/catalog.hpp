#ifndef QCOH_CATALOG_HPP_
#define QCOH_CATALOG_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "affine.hpp"
#include "cocycle.hpp"
#include "error.hpp"
#include "quandle.hpp"

namespace qcoh {

struct Expected {
  long fx_order = 0;
  long n0_order = 0;
  std::vector<long> n0_factors;
  std::vector<long> h2q_factors;  // torsion of H_2^Q(X, Z)
};

struct Fixture {
  std::string name;
  Quandle quandle;
  std::optional<Expected> expected;
  std::string note;
};

namespace impl {

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

inline ConjugationQuandle transposition_class(int n) {
  if (n < 3)
    fail(ErrorKind::argument, "transpositions: n must be >= 3");
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i)
    cyc[i] = i;
  Perm t = perm::from_cycles(n, {{0, 1}});
  return conjugation_quandle({t, perm::from_cycles(n, {cyc})}, t);
}

} // namespace impl

// The transpositions of S_n under conjugation, sorted lexicographically as
// permutations (so index 0 is not (0 1) in general).
inline Fixture transpositions(int n) {
  Fixture f{"transpositions-" + std::to_string(n), impl::transposition_class(n).quandle, std::nullopt,
            "conjugacy class of transpositions in S_" + std::to_string(n)};
  if (n == 3)
    f.expected = Expected{6, 1, {}, {}};
  else
    f.expected = Expected{impl::factorial(n), impl::factorial(n - 2), {2}, {2}};
  return f;
}

inline std::vector<Perm> transposition_elements(int n) { return impl::transposition_class(n).elements; }

// Index of the transposition (i j) in transpositions(n).
inline int transposition_index(int n, int i, int j) {
  Perm t = perm::from_cycles(n, {{i, j}});
  auto el = transposition_elements(n);
  for (std::size_t k = 0; k < el.size(); ++k)
    if (el[k] == t)
      return static_cast<int>(k);
  impl::fail(ErrorKind::argument, "not a transposition of S_" + std::to_string(n));
}

// chi(sigma, (i j)) = 0 if sigma(i) < sigma(j) (i < j), else 1; additive Z2.
inline Cocycle chi_cocycle(int n) {
  auto el = transposition_elements(n);
  const int m = static_cast<int>(el.size());
  auto A = CoefficientGroup::cyclic(2);
  Cocycle c(m, A);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      int i = -1, j = -1;
      for (int k = 0; k < n; ++k)
        if (el[t][k] != k)
          (i < 0 ? i : j) = k;
      c.at(s, t) = A.from_int(el[s][i] < el[s][j] ? 0 : 1);
    }
  return c;
}

// phi_{x1} = (x2 x3 x4), phi_{x2} = (x1 x4 x3), phi_{x3} = (x1 x2 x4), phi_{x4} = (x1 x3 x2),
// 0-based. Hard-coded on purpose.
inline Fixture a4_three_cycles() {
  std::vector<int> t = {0, 2, 3, 1,  //
                        3, 1, 0, 2,  //
                        1, 3, 2, 0,  //
                        2, 0, 1, 3};
  return {"a4", Quandle::from_table(4, t), Expected{24, 2, {2}, {2}}, "3-cycles of A_4 (tetrahedral quandle)"};
}

// f(x, y) = 0 if x = x1 or y = x1 or x = y, 1 otherwise.
inline Cocycle a4_sign_cocycle() {
  auto A = CoefficientGroup::cyclic(2);
  Cocycle c(4, A);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      c.at(x, y) = A.from_int(x == 0 || y == 0 || x == y ? 0 : 1);
  return c;
}

// Y = X x Z2 with (x,i)|>(y,j) = (x|>y, j + f(x,y)), element (x,i) at index 2x + i.
inline Fixture a4_extension() {
  return {"a4-ext", extension_by_cocycle(a4_three_cycles().quandle, 2, a4_sign_cocycle()),
          Expected{24, 1, {}, {}}, "extension of the tetrahedral quandle by the sign cocycle"};
}

inline Quandle affine_cyclic(int p, int w) {
  if (p < 2)
    impl::fail(ErrorKind::argument, "modulus must be >= 2");
  std::vector<int> t(static_cast<std::size_t>(p) * p);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      t[x * p + y] = static_cast<int>(mod(static_cast<long>(w) * y + static_cast<long>(1 - w) * x, p));
  return Quandle::from_table(p, std::move(t));
}

// Aff(p, omega) on Z_p; indecomposable with trivial N_0.
inline Fixture aff(int p, int w) {
  if (!is_prime(p) || mod(w, p) == 0 || mod(w, p) == 1)
    impl::fail(ErrorKind::argument, "aff: need p prime and omega != 0, 1 mod p");
  long ord = 1;
  for (long v = mod(w, p); v != 1; v = v * w % p)
    ++ord;
  return {"aff-" + std::to_string(p) + "-" + std::to_string(w), affine_cyclic(p, w),
          Expected{p * ord, 1, {}, {}}, "Aff(Z_p, multiplication by omega)"};
}

inline Fixture dihedral(int p) {
  if (!is_prime(p) || p == 2)
    impl::fail(ErrorKind::argument, "dihedral: p must be an odd prime");
  Fixture f = aff(p, p - 1);
  f.name = "dihedral-" + std::to_string(p);
  f.note = "dihedral quandle of order " + std::to_string(p);
  return f;
}

inline Fixture p2_fixture(const P2Params& P) {
  std::string name = family_name(P.family) + "-" + std::to_string(P.p);
  for (long a : P.alpha)
    name += "-" + std::to_string(a);
  Fixture f{name, affine_quandle(p2_spec(P)), std::nullopt, "affine quandle of order p^2, " + P.str()};
  HomologyResult h = p2_invariants(P);
  std::vector<long> t = h.torsion_longs();
  long ord = gamma_order(p2_spec(P));
  f.expected = Expected{P.p * P.p * ord * (t.empty() ? 1 : t[0]), t.empty() ? 1 : t[0], t, t};
  return f;
}

namespace impl {

struct CatalogEntry {
  std::string name;
  std::function<Fixture()> make;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"transpositions-3", [] { return transpositions(3); }},
      {"transpositions-4", [] { return transpositions(4); }},
      {"transpositions-5", [] { return transpositions(5); }},
      {"dihedral-3", [] { return dihedral(3); }},
      {"dihedral-5", [] { return dihedral(5); }},
      {"dihedral-7", [] { return dihedral(7); }},
      {"aff-3-2", [] { return aff(3, 2); }},
      {"aff-5-2", [] { return aff(5, 2); }},
      {"aff-5-3", [] { return aff(5, 3); }},
      {"aff-7-3", [] { return aff(7, 3); }},
      {"a4", [] { return a4_three_cycles(); }},
      {"a4-ext", [] { return a4_extension(); }},
      {"A1-3-2-2", [] { return p2_fixture({P2Family::A1, 3, {2, 2}}); }},
      {"A1-5-2-3", [] { return p2_fixture({P2Family::A1, 5, {2, 3}}); }},
      {"A2-3-2", [] { return p2_fixture({P2Family::A2, 3, {2}}); }},
      {"A3-5-0-2", [] { return p2_fixture({P2Family::A3, 5, {0, 2}}); }},
      {"A4-3-2", [] { return p2_fixture({P2Family::A4, 3, {2}}); }},
  };
  return entries;
}

} // namespace impl

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : impl::catalog_entries())
    out.push_back(e.name);
  return out;
}

inline Fixture catalog_get(const std::string& name) {
  for (const auto& e : impl::catalog_entries())
    if (e.name == name)
      return e.make();
  impl::fail(ErrorKind::argument, "unknown fixture '" + name + "' (see 'catalog list')");
}

inline std::vector<Fixture> catalog_all() {
  std::vector<Fixture> out;
  for (const auto& e : impl::catalog_entries())
    out.push_back(e.make());
  return out;
}

} // namespace qcoh

#endif
