#ifndef QCOH_AFFINE_HPP_
#define QCOH_AFFINE_HPP_

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cocycle.hpp"
#include "error.hpp"
#include "homology.hpp"
#include "quandle.hpp"
#include "smith.hpp"

namespace qcoh {

inline long mod(long a, long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// L = Z_{m_1} + ... + Z_{m_r} with gamma acting on column vectors.
struct AffineSpec {
  std::vector<long> moduli;
  std::vector<std::vector<long>> gamma;  // r x r

  int rank() const { return static_cast<int>(moduli.size()); }
  long order() const {
    long o = 1;
    for (long m : moduli)
      o *= m;
    return o;
  }

  // mixed radix, first coordinate most significant
  std::vector<long> element(long index) const {
    std::vector<long> v(moduli.size());
    for (int i = rank() - 1; i >= 0; --i) {
      v[i] = index % moduli[i];
      index /= moduli[i];
    }
    return v;
  }
  long index(const std::vector<long>& v) const {
    long idx = 0;
    for (int i = 0; i < rank(); ++i)
      idx = idx * moduli[i] + mod(v[i], moduli[i]);
    return idx;
  }

  std::vector<long> apply(const std::vector<long>& v) const {
    std::vector<long> out(v.size(), 0);
    for (int i = 0; i < rank(); ++i) {
      long s = 0;
      for (int j = 0; j < rank(); ++j)
        s = mod(s + mod(gamma[i][j], moduli[i]) * mod(v[j], moduli[i]), moduli[i]);
      out[i] = s;
    }
    return out;
  }
  std::vector<long> apply_power(std::vector<long> v, long k) const {
    for (long i = 0; i < k; ++i)
      v = apply(v);
    return v;
  }

  std::string str() const {
    std::string s = "L=";
    for (int i = 0; i < rank(); ++i)
      s += (i ? "+" : "") + std::string("Z") + std::to_string(moduli[i]);
    s += " gamma=";
    for (int i = 0; i < rank(); ++i) {
      s += i ? ";" : "";
      for (int j = 0; j < rank(); ++j)
        s += (j ? "," : "") + std::to_string(gamma[i][j]);
    }
    return s;
  }
};

struct AffineCheck {
  bool homomorphism = true;
  bool bijective = true;
  bool indecomposable = true;  // 1 - gamma bijective
};

inline AffineCheck check_affine(const AffineSpec& s) {
  AffineCheck c;
  const int r = s.rank();
  if (r == 0 || static_cast<int>(s.gamma.size()) != r) {
    c.homomorphism = c.bijective = c.indecomposable = false;
    return c;
  }
  for (const auto& row : s.gamma)
    if (static_cast<int>(row.size()) != r)
      c.homomorphism = false;
  for (long m : s.moduli)
    if (m < 1)
      c.homomorphism = false;
  if (!c.homomorphism) {
    c.bijective = c.indecomposable = false;
    return c;
  }
  // gamma(m_j e_j) must vanish
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (mod(s.gamma[i][j] * s.moduli[j], s.moduli[i]) != 0)
        c.homomorphism = false;
  const long n = s.order();
  std::vector<char> img(n, 0), img1(n, 0);
  for (long x = 0; x < n; ++x) {
    auto v = s.element(x);
    auto g = s.apply(v);
    img[s.index(g)] = 1;
    for (int i = 0; i < r; ++i)
      g[i] = v[i] - g[i];
    img1[s.index(g)] = 1;
  }
  c.bijective = c.homomorphism && std::count(img.begin(), img.end(), 1) == n;
  c.indecomposable = c.bijective && std::count(img1.begin(), img1.end(), 1) == n;
  return c;
}

// Order of gamma as an automorphism, by iteration.
inline long gamma_order(const AffineSpec& s) {
  const long n = s.order();
  std::vector<std::vector<long>> pts(n), cur(n);
  for (long x = 0; x < n; ++x)
    pts[x] = cur[x] = s.element(x);
  for (long k = 1;; ++k) {
    bool id = true;
    for (long x = 0; x < n; ++x) {
      cur[x] = s.apply(cur[x]);
      if (cur[x] != pts[x])
        id = false;
    }
    if (id)
      return k;
    impl::check_internal(k <= n * n, "gamma order search ran away");
  }
}

// x|>y = gamma(y) + x - gamma(x) on L. Throws for invalid or decomposable specs.
inline Quandle affine_quandle(const AffineSpec& s, bool require_indecomposable = true) {
  AffineCheck c = check_affine(s);
  if (!c.homomorphism || !c.bijective)
    impl::fail(ErrorKind::precondition, "affine: gamma is not an automorphism of L (" + s.str() + ")");
  if (require_indecomposable && !c.indecomposable)
    impl::fail(ErrorKind::precondition, "affine: 1 - gamma is not invertible, quandle is decomposable");
  const long n = s.order();
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (long x = 0; x < n; ++x) {
    auto vx = s.element(x);
    auto gx = s.apply(vx);
    for (long y = 0; y < n; ++y) {
      auto v = s.apply(s.element(y));
      for (int i = 0; i < s.rank(); ++i)
        v[i] += vx[i] - gx[i];
      table[x * n + y] = static_cast<int>(s.index(v));
    }
  }
  return Quandle::from_table(static_cast<int>(n), std::move(table));
}

// L (x) L with basis e_i (x) e_j (row-major), modulus gcd(m_i, m_j), and
// tau(x (x) y) = x (x) y - y (x) gamma(x).
struct TensorSquare {
  std::vector<long> moduli;
  std::vector<std::vector<long>> tau;  // column (a,b) holds tau(e_a (x) e_b)
};

inline TensorSquare tensor_square(const AffineSpec& s) {
  const int r = s.rank();
  TensorSquare t;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      t.moduli.push_back(std::gcd(s.moduli[i], s.moduli[j]));
  const int R = r * r;
  t.tau.assign(R, std::vector<long>(R, 0));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      int col = a * r + b;
      t.tau[col][col] += 1;
      for (int k = 0; k < r; ++k)  // e_b (x) gamma(e_a) = sum_k gamma_{k a} e_b (x) e_k
        t.tau[b * r + k][col] -= s.gamma[k][a];
    }
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < R; ++j)
      t.tau[i][j] = mod(t.tau[i][j], t.moduli[i]);
  return t;
}

// S(L, gamma) = coker tau as Z_{d_1} + ... with the class map [x, y].
struct SGroup {
  AffineSpec spec;
  std::vector<long> tensor_moduli;
  std::vector<long> factors;               // invariant factors > 1
  std::vector<std::vector<long>> project;  // one row per factor, over the tensor basis

  long order() const {
    long o = 1;
    for (long d : factors)
      o *= d;
    return o;
  }

  std::vector<long> reduce(const std::vector<long>& t) const {
    std::vector<long> c(factors.size(), 0);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      long s = 0;
      for (std::size_t k = 0; k < t.size(); ++k)
        s = mod(s + mod(project[i][k], factors[i]) * mod(t[k], factors[i]), factors[i]);
      c[i] = s;
    }
    return c;
  }

  // coordinates of [x, y] for L elements given as coordinate vectors
  std::vector<long> class_of(const std::vector<long>& x, const std::vector<long>& y) const {
    const int r = spec.rank();
    std::vector<long> t(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        t[i * r + j] = x[i] * y[j];
    return reduce(t);
  }

  std::vector<long> add(std::vector<long> a, const std::vector<long>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = mod(a[i] + b[i], factors[i]);
    return a;
  }
  std::vector<long> neg(std::vector<long> a) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = mod(-a[i], factors[i]);
    return a;
  }
};

inline SGroup s_group(const AffineSpec& s) {
  TensorSquare t = tensor_square(s);
  const int R = static_cast<int>(t.moduli.size());
  IntMatrix m(R, 2 * R);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < R; ++j)
      m(i, j) = t.tau[i][j];
    m(i, R + i) = t.moduli[i];
  }
  SmithResult snf = smith_normal_form(m, true);
  impl::check_internal(snf.rank() == R, "tensor relations do not have full rank");
  SGroup g;
  g.spec = s;
  g.tensor_moduli = t.moduli;
  for (int i = 0; i < R; ++i) {
    if (snf.diagonal[i] == 1)
      continue;
    long d = snf.diagonal[i].convert_to<long>();
    g.factors.push_back(d);
    std::vector<long> row(R);
    for (int k = 0; k < R; ++k) {
      BigInt v = (*snf.U)(i, k) % d;
      row[k] = v.convert_to<long>();
    }
    g.project.push_back(std::move(row));
  }
  return g;
}

// Clauwens' model of G_X on L x Z x S:
// (x,m,s)(y,n,t) = (x + gamma^m y, m+n, s + t + [x, gamma^m y]).
struct ClauwensElement {
  std::vector<long> x;
  long m = 0;
  std::vector<long> s;

  friend bool operator==(const ClauwensElement&, const ClauwensElement&) = default;
};

class ClauwensGroup {
public:
  explicit ClauwensGroup(const AffineSpec& spec) : S_(qcoh::s_group(spec)), ord_(qcoh::gamma_order(spec)) {}

  const SGroup& s_group() const { return S_; }
  long gamma_order() const { return ord_; }

  ClauwensElement identity() const {
    return {std::vector<long>(S_.spec.rank(), 0), 0, std::vector<long>(S_.factors.size(), 0)};
  }
  ClauwensElement point(long index) const {  // x |-> (x, 1, 0)
    ClauwensElement e = identity();
    e.x = S_.spec.element(index);
    e.m = 1;
    return e;
  }

  std::vector<long> gamma_pow(const std::vector<long>& v, long m) const {
    return S_.spec.apply_power(v, mod(m, ord_));
  }

  ClauwensElement mul(const ClauwensElement& a, const ClauwensElement& b) const {
    auto gy = gamma_pow(b.x, a.m);
    ClauwensElement r;
    r.x = a.x;
    for (std::size_t i = 0; i < r.x.size(); ++i)
      r.x[i] = mod(r.x[i] + gy[i], S_.spec.moduli[i]);
    r.m = a.m + b.m;
    r.s = S_.add(S_.add(a.s, b.s), S_.class_of(a.x, gy));
    return r;
  }

  // (x,m,s)^-1 = (-gamma^-m x, -m, -s + [x, x])
  ClauwensElement inverse(const ClauwensElement& a) const {
    ClauwensElement r;
    r.x = gamma_pow(a.x, -a.m);
    for (std::size_t i = 0; i < r.x.size(); ++i)
      r.x[i] = mod(-r.x[i], S_.spec.moduli[i]);
    r.m = -a.m;
    r.s = S_.add(S_.neg(a.s), S_.class_of(a.x, a.x));
    return r;
  }

  ClauwensElement conjugate(const ClauwensElement& g, const ClauwensElement& h) const {
    return mul(mul(g, h), inverse(g));
  }

  // canonical form: the element x of X = L corresponding to (x, 1, 0)
  long as_point(const ClauwensElement& e) const {
    impl::check_internal(e.m == 1 && std::all_of(e.s.begin(), e.s.end(), [](long v) { return v == 0; }),
                         "element is not of the form (x,1,0)");
    return S_.spec.index(e.x);
  }

private:
  SGroup S_;
  long ord_;
};

enum class AffineVariant { summation, cmap };

// q_{x,y} = a + sum_{0<j<ord(gamma)} g([x, gamma^j y])   (summation)
// q_{x,y} = a + g([x, gamma (1-gamma)^-1 y])             (cmap)
// g is given by its values on the invariant-factor generators of S.
inline Cocycle affine_cocycle(const AffineSpec& spec, const CoefficientGroup& A, Coeff a,
                              const std::vector<Coeff>& g, AffineVariant variant) {
  SGroup S = s_group(spec);
  if (g.size() != S.factors.size())
    impl::fail(ErrorKind::argument, "character on S needs " + std::to_string(S.factors.size()) + " values");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!A.contains(g[i]) || !(S.factors[i] * g[i]).is_zero())
      impl::fail(ErrorKind::argument, "character value not killed by its factor");
  const long n = spec.order();
  const long ord = gamma_order(spec);
  auto chi = [&](const std::vector<long>& c) {
    Coeff s;
    for (std::size_t i = 0; i < c.size(); ++i)
      s += c[i] * g[i];
    return s;
  };
  // (1-gamma)^-1 by table inversion
  std::vector<long> inv1(n, -1);
  for (long x = 0; x < n; ++x) {
    auto v = spec.element(x);
    auto gv = spec.apply(v);
    for (int i = 0; i < spec.rank(); ++i)
      gv[i] = v[i] - gv[i];
    inv1[spec.index(gv)] = x;
  }
  Cocycle q(static_cast<int>(n), A);
  for (long y = 0; y < n; ++y) {
    auto vy = spec.element(y);
    std::vector<std::vector<long>> powers;
    if (variant == AffineVariant::summation)
      for (long j = 1; j < ord; ++j)
        powers.push_back(spec.apply_power(vy, j));
    else
      powers.push_back(spec.apply(spec.element(inv1[y])));
    for (long x = 0; x < n; ++x) {
      auto vx = spec.element(x);
      Coeff v = a;
      for (const auto& p : powers)
        v += chi(S.class_of(vx, p));
      q.at(static_cast<int>(x), static_cast<int>(y)) = v;
    }
  }
  return q;
}

// The four families of indecomposable affine quandles of order p^2.
enum class P2Family { A1, A2, A3, A4 };

inline std::string family_name(P2Family f) {
  switch (f) {
    case P2Family::A1: return "A1";
    case P2Family::A2: return "A2";
    case P2Family::A3: return "A3";
    case P2Family::A4: return "A4";
  }
  return "?";
}

inline P2Family parse_family(const std::string& s) {
  if (s == "A1") return P2Family::A1;
  if (s == "A2") return P2Family::A2;
  if (s == "A3") return P2Family::A3;
  if (s == "A4") return P2Family::A4;
  impl::fail(ErrorKind::argument, "unknown family '" + s + "' (expected A1..A4)");
}

// Parameters: A1 (alpha, beta); A2 (alpha); A3 (alpha0, alpha1); A4 (alpha mod p^2).
struct P2Params {
  P2Family family = P2Family::A1;
  long p = 3;
  std::vector<long> alpha;

  std::string str() const {
    std::string s = family_name(family) + " p=" + std::to_string(p) + " alpha=(";
    for (std::size_t i = 0; i < alpha.size(); ++i)
      s += (i ? "," : "") + std::to_string(alpha[i]);
    return s + ")";
  }
};

inline bool is_prime(long p) {
  if (p < 2)
    return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

inline long d_alpha(long p, long a0, long a1) {
  return mod(mod(1 - a0 + a1, p) * mod(1 - a0 - a1, p) % p * mod(1 - a0 * a0 + a1 * a1, p), p);
}

// Throws ErrorKind::argument when the parameters are outside the family.
inline void validate_p2(const P2Params& P) {
  const long p = P.p;
  auto bad = [&](const std::string& why) { impl::fail(ErrorKind::argument, "invalid-params: " + P.str() + ": " + why); };
  if (!is_prime(p))
    bad("p must be prime");
  const std::size_t want = (P.family == P2Family::A1 || P.family == P2Family::A3) ? 2 : 1;
  if (P.alpha.size() != want)
    bad("expected " + std::to_string(want) + " parameter(s)");
  auto unit_not_one = [&](long a) { return mod(a, p) != 0 && mod(a, p) != 1; };
  switch (P.family) {
    case P2Family::A1:
      if (!unit_not_one(P.alpha[0]) || !unit_not_one(P.alpha[1]))
        bad("alpha, beta must be units different from 1");
      break;
    case P2Family::A2:
      if (!unit_not_one(P.alpha[0]))
        bad("alpha must be a unit different from 1");
      break;
    case P2Family::A3: {
      long a0 = mod(P.alpha[0], p), a1 = mod(P.alpha[1], p);
      if (a1 == 0)
        bad("alpha1 must be nonzero");
      if (mod(a0 * a0 - a1 * a1, p) == 0)
        bad("gamma is not invertible");
      if (mod((1 - a0) * (1 - a0) - a1 * a1, p) == 0)
        bad("1 - gamma is not invertible");
      break;
    }
    case P2Family::A4:
      if (P.alpha[0] < 0 || P.alpha[0] >= p * p || !unit_not_one(P.alpha[0]))
        bad("alpha must lie in [0, p^2) with alpha != 0, 1 mod p");
      break;
  }
}

inline AffineSpec p2_spec(const P2Params& P) {
  validate_p2(P);
  const long p = P.p;
  AffineSpec s;
  switch (P.family) {
    case P2Family::A1:
      s.moduli = {p, p};
      s.gamma = {{mod(P.alpha[0], p), 0}, {0, mod(P.alpha[1], p)}};
      break;
    case P2Family::A2:
      s.moduli = {p, p};
      s.gamma = {{mod(P.alpha[0], p), 0}, {1, mod(P.alpha[0], p)}};
      break;
    case P2Family::A3:
      s.moduli = {p, p};
      s.gamma = {{mod(P.alpha[0], p), mod(P.alpha[1], p)}, {mod(P.alpha[1], p), mod(P.alpha[0], p)}};
      break;
    case P2Family::A4:
      s.moduli = {p * p};
      s.gamma = {{P.alpha[0]}};
      break;
  }
  return s;
}

// Predicted H_2(X, Z): Z + Z_p exactly in the listed cases, Z otherwise.
inline HomologyResult p2_invariants(const P2Params& P) {
  validate_p2(P);
  const long p = P.p;
  bool torsion = false;
  switch (P.family) {
    case P2Family::A1: torsion = mod(P.alpha[0] * P.alpha[1], p) == 1; break;
    case P2Family::A2: torsion = mod(P.alpha[0] * P.alpha[0], p) == 1; break;
    case P2Family::A3: torsion = d_alpha(p, P.alpha[0], P.alpha[1]) == 0; break;
    case P2Family::A4: torsion = false; break;
  }
  HomologyResult h;
  h.free_rank = 1;
  if (torsion)
    h.torsion.push_back(BigInt(p));
  return h;
}

// Every valid parameter tuple of a family for the prime p.
inline std::vector<P2Params> p2_sweep(P2Family f, long p) {
  std::vector<P2Params> out;
  auto push = [&](std::vector<long> a) {
    P2Params P{f, p, std::move(a)};
    try {
      validate_p2(P);
      out.push_back(P);
    } catch (const Error&) {
    }
  };
  if (f == P2Family::A1)
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        push({a, b});
  else if (f == P2Family::A2)
    for (long a = 0; a < p; ++a)
      push({a});
  else if (f == P2Family::A3)
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        push({a, b});
  else
    for (long a = 0; a < p * p; ++a)
      push({a});
  return out;
}

inline bool has_nonconstant_cocycles(const P2Params& P) { return !p2_invariants(P).torsion.empty(); }

inline long inverse_mod(long a, long p) {
  a = mod(a, p);
  for (long b = 1; b < p; ++b)
    if (a * b % p == 1)
      return b;
  impl::fail(ErrorKind::argument, std::to_string(a) + " is not invertible mod " + std::to_string(p));
}

// The integer pairing <x,y> = sum_{0<j<ord(gamma)} zeta_j(x,y) (reduced mod p),
// coordinates taken in basis order: (x1,x2) for A1/A2, (x0,x1) for A3.
inline long zeta_pairing(const P2Params& P, const AffineSpec& s, long ord, const std::vector<long>& x,
                         const std::vector<long>& y) {
  const long p = P.p;
  long total = 0;
  for (long j = 1; j < ord; ++j) {
    long z = 0;
    switch (P.family) {
      case P2Family::A1: {
        long a = mod(P.alpha[0], p), ai = inverse_mod(a, p);
        long aj = 1, a1j = a;  // alpha^j and alpha^{1-j}
        for (long k = 0; k < j; ++k) {
          aj = aj * a % p;
          a1j = a1j * ai % p;
        }
        z = aj * x[1] % p * y[0] + a1j * x[0] % p * y[1];
        break;
      }
      case P2Family::A2: {
        long sg = j % 2 == 0 ? 1 : -1;
        z = (j + 2 * sg) * x[0] * y[0] + sg * (x[0] * y[1] - x[1] * y[0]);
        break;
      }
      case P2Family::A3: {
        long a0 = mod(P.alpha[0], p), a1 = mod(P.alpha[1], p);
        long t = mod((a0 - a0 * a0 + a1 * a1) * inverse_mod(1 - a0, p), p);
        long sa = mod((1 - a0) * inverse_mod(a1, p), p);
        auto gy = s.apply_power(y, j);
        z = x[1] * gy[1] + t * (x[0] * gy[0] + x[0] * gy[1]) + sa * x[1] * gy[0];
        break;
      }
      case P2Family::A4:
        impl::fail(ErrorKind::argument, "invalid-family: A4 has no non-constant cocycles");
    }
    total = mod(total + mod(z, p), p);
  }
  return total;
}

// q_{x,y} = lambda + l <x,y> / p in Q/Z for the families admitting
// non-constant cocycles (A1 with alpha beta = 1, A2 with alpha = -1, A3 with d_alpha = 0).
inline Cocycle explicit_p2_cocycle(const P2Params& P, long l, Coeff lambda) {
  validate_p2(P);
  const long p = P.p;
  if (l <= 0 || l >= p)
    impl::fail(ErrorKind::argument, "explicit cocycle: need 0 < l < p");
  bool ok = false;
  switch (P.family) {
    case P2Family::A1: ok = mod(P.alpha[0] * P.alpha[1], p) == 1; break;
    case P2Family::A2: ok = mod(P.alpha[0], p) == p - 1; break;
    case P2Family::A3: ok = d_alpha(p, P.alpha[0], P.alpha[1]) == 0; break;
    case P2Family::A4: ok = false; break;
  }
  if (!ok)
    impl::fail(ErrorKind::argument, "invalid-family: " + P.str() + " is not in the non-constant list");
  AffineSpec s = p2_spec(P);
  const long ord = gamma_order(s);
  const long n = s.order();
  Cocycle q(static_cast<int>(n), CoefficientGroup::rational());
  for (long x = 0; x < n; ++x) {
    auto vx = s.element(x);
    for (long y = 0; y < n; ++y)
      q.at(static_cast<int>(x), static_cast<int>(y)) =
          lambda + Coeff(mod(l * zeta_pairing(P, s, ord, vx, s.element(y)), p), p);
  }
  return q;
}

} // namespace qcoh

#endif
