#ifndef QCOH_ENGINE_HPP_
#define QCOH_ENGINE_HPP_

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "cocycle.hpp"
#include "error.hpp"
#include "quandle.hpp"
#include "subgroup.hpp"
#include "todd_coxeter.hpp"
#include "word.hpp"

namespace qcoh {

struct Config {
  std::size_t max_cosets = 1000000;
  int oracle_cap = 12;
  int base_point = 0;
};

// Coset representatives sigma_0..sigma_k of N0 in N_X. Representative j is the
// one with sigma_j |> x0 = point_of_rep[j]; sigma_0 = 1.
struct GoodTransversal {
  int x0 = 0;
  std::vector<int> reps;
  std::vector<Word> words;
  std::vector<int> rep_of_point;
  std::vector<int> point_of_rep;
  // False when no choice inside some coset can make the set stable under
  // conjugation by x0; blocked lists those cosets.
  bool conjugation_closed = true;
  std::vector<int> blocked;
  int refinement_steps = 0;

  int size() const { return static_cast<int>(reps.size()); }
};

namespace impl {


inline Word conjugate_word(int x0, const Word& w, int t) {
  return Word::power(x0, t) * w * Word::power(x0, -t);
}

} // namespace impl

// Starts from the degree-0 orbit transversal and replaces representatives by
// x0-conjugates in the order (coset index, t) until the set is x0-stable or
// every remaining defect lands in its own coset.
inline GoodTransversal good_transversal(const SubgroupData& nx, const GroupAction& act, const Quandle& q,
                                        int x0) {
  const CayleyGroup& g = *nx.parent;
  const int n = q.size();
  OrbitTransversal ot = orbit_transversal(g, q, x0);
  if (ot.elements.empty())
    impl::fail(ErrorKind::precondition, "good_transversal: action-not-transitive");
  GoodTransversal t;
  t.x0 = x0;
  t.rep_of_point.assign(n, -1);
  for (int y : ot.discovery) {
    t.rep_of_point[y] = static_cast<int>(t.reps.size());
    t.point_of_rep.push_back(y);
    t.reps.push_back(ot.elements[y]);
    t.words.push_back(ot.words[y]);
  }
  for (int e : t.reps)
    impl::check_internal(nx.contains(e), "transversal element outside N_X");

  const int x0e = g.generator_element(x0);
  const int k = t.size();
  for (;;) {
    std::set<int> S(t.reps.begin(), t.reps.end());
    std::vector<int> blocked;
    bool replaced = false;
    for (int j = 1; j < k && !replaced; ++j) {
      int tau = t.reps[j];
      for (int s = 0;; ++s) {
        if (s > 0 && tau == t.reps[j])
          break;  // s reached t_j
        if (!S.count(tau)) {
          int l = t.rep_of_point[act.act(tau, x0)];
          impl::check_internal(l != 0, "x0-conjugate landed in N0");
          if (l == j) {
            blocked.push_back(j);
            break;
          }
          t.reps[l] = tau;
          t.words[l] = impl::conjugate_word(x0, t.words[j], s);
          replaced = true;
          break;
        }
        tau = g.conjugate(x0e, tau);
      }
    }
    if (!replaced) {
      t.blocked = blocked;
      break;
    }
    if (++t.refinement_steps > nx.size())
      impl::fail(ErrorKind::internal, "good_transversal: refinement did not terminate");
  }
  std::set<int> S(t.reps.begin(), t.reps.end());
  for (int e : t.reps)
    if (!S.count(g.conjugate(x0e, e)))
      t.conjugation_closed = false;
  return t;
}

// sigma(n) and c(n) = sigma(n)^-1 n for n in N_X.
class CosetMaps {
public:
  CosetMaps(std::shared_ptr<const CayleyGroup> g, const GroupAction* act, const GoodTransversal* t)
      : g_(std::move(g)), act_(act), t_(t) {}

  int sigma_index(int n) const { return t_->rep_of_point[act_->act(n, t_->x0)]; }
  int sigma(int n) const { return t_->reps[sigma_index(n)]; }
  int c(int n) const { return g_->mul(g_->inverse(sigma(n)), n); }

private:
  std::shared_ptr<const CayleyGroup> g_;
  const GroupAction* act_;
  const GoodTransversal* t_;
};

struct TransversalReport {
  bool identity_first = true;       // sigma_0 = 1
  bool conjugation_closed = true;   // x0 sigma_i x0^-1 is some sigma_j
  bool sweeps_points = true;        // j -> sigma_j |> x0 is a bijection onto X
  bool c_invariant = true;          // c(x0 n x0^-1) = c(n)
  bool compatible = true;           // sigma_{n|>y} = sigma(n sigma_y)
  bool degree_zero = true;
  std::string first_failure;

  bool all() const {
    return identity_first && conjugation_closed && sweeps_points && c_invariant && compatible && degree_zero;
  }
};

struct CocycleDatum {
  Coeff a;
  std::vector<Coeff> g;  // one value per invariant factor of (N0)_ab

  friend bool operator==(const CocycleDatum&, const CocycleDatum&) = default;
};

// Everything the main theorem needs for one indecomposable quandle.
struct Analysis {
  Quandle quandle;
  int x0 = 0;
  std::shared_ptr<const CayleyGroup> fx;
  GroupAction action;
  SubgroupData nx;
  SubgroupData n0;
  AbelianStructure n0ab;
  GoodTransversal transversal;

  CosetMaps maps() const { return CosetMaps(fx, &action, &transversal); }
  const std::vector<long>& factors() const { return n0ab.factors; }
};

inline Analysis analyze(const Quandle& q, const Config& cfg = {}) {
  if (!q.is_quandle())
    impl::fail(ErrorKind::precondition, "input is a rack, not a quandle");
  if (cfg.base_point < 0 || cfg.base_point >= q.size())
    impl::fail(ErrorKind::argument, "base point " + std::to_string(cfg.base_point) + " out of range");
  if (!inner_action(q).indecomposable())
    impl::fail(ErrorKind::precondition, "quandle is not indecomposable");
  Analysis a;
  a.quandle = q;
  a.x0 = cfg.base_point;
  a.fx = std::make_shared<const CayleyGroup>(todd_coxeter(enveloping_presentation(q), cfg.max_cosets));
  a.action = action_on_X(*a.fx, q);
  a.nx = commutator_subgroup(a.fx);
  a.n0 = stabilizer(a.nx, a.action, q, a.x0);
  a.n0ab = abelian_structure(a.n0);
  a.transversal = good_transversal(a.nx, a.action, q, a.x0);
  return a;
}

inline TransversalReport check_transversal(const Analysis& an) {
  const CayleyGroup& g = *an.fx;
  const GoodTransversal& t = an.transversal;
  const int n = an.quandle.size();
  const int x0e = g.generator_element(t.x0);
  CosetMaps cm = an.maps();
  TransversalReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    if (flag && r.first_failure.empty())
      r.first_failure = msg;
    flag = false;
  };
  if (t.reps.empty() || t.reps[0] != g.identity())
    fail(r.identity_first, "sigma_0 is not the identity");
  std::set<int> S(t.reps.begin(), t.reps.end());
  for (int j = 0; j < t.size(); ++j)
    if (!S.count(g.conjugate(x0e, t.reps[j])))
      fail(r.conjugation_closed, "x0 sigma_" + std::to_string(j) + " x0^-1 is not a representative");
  std::vector<char> hit(n, 0);
  if (t.size() != n)
    fail(r.sweeps_points, "number of representatives differs from |X|");
  for (int j = 0; j < t.size(); ++j) {
    int y = an.action.act(t.reps[j], t.x0);
    if (hit[y] || y != t.point_of_rep[j] || t.rep_of_point[y] != j)
      fail(r.sweeps_points, "sigma_" + std::to_string(j) + " |> x0 is inconsistent");
    hit[y] = 1;
    if (t.words[j].degree() != 0 || g.evaluate(t.words[j]) != t.reps[j])
      fail(r.degree_zero, "word of sigma_" + std::to_string(j) + " is wrong or has nonzero degree");
  }
  for (int e : an.nx.elements) {
    if (cm.c(g.conjugate(x0e, e)) != cm.c(e))
      fail(r.c_invariant, "c(x0 n x0^-1) != c(n) for element " + std::to_string(e));
    for (int y = 0; y < n; ++y)
      if (t.rep_of_point[an.action.act(e, y)] != cm.sigma_index(g.mul(e, t.reps[t.rep_of_point[y]])))
        fail(r.compatible, "sigma_{n|>y} != sigma(n sigma_y)");
  }
  return r;
}

// The 1-cocycle f on words extending q: f(x)(z) = q_{x,z},
// f(x^-1)(z) = -q_{x, x^-1|>z}, f(uv)(z) = f(u)(v|>z) + f(v)(z).
inline std::vector<Coeff> evaluate_f(const Quandle& q, const Cocycle& c, const Word& w) {
  const int n = q.size();
  std::vector<Coeff> f(n), next(n);
  for (Letter l : w.letters) {
    const int x = letter_gen(l);
    const bool inv = letter_exp(l) < 0;
    for (int z = 0; z < n; ++z) {
      int lz = inv ? q.inv_op(x, z) : q.op(x, z);
      Coeff fl = inv ? -c.at(x, lz) : c.at(x, z);
      next[z] = f[lz] + fl;
    }
    std::swap(f, next);
  }
  return f;
}

inline Coeff apply_character(const AbelianStructure& ab, const std::vector<Coeff>& g, int e) {
  const auto& co = ab.coords(e);
  Coeff s;
  for (std::size_t i = 0; i < co.size(); ++i)
    s += co[i] * g[i];
  return s;
}

inline void check_datum(const Analysis& an, const CoefficientGroup& A, const CocycleDatum& d) {
  const auto& f = an.factors();
  if (d.g.size() != f.size())
    impl::fail(ErrorKind::argument, "character needs " + std::to_string(f.size()) + " values, got " +
                                        std::to_string(d.g.size()));
  if (!A.contains(d.a))
    impl::fail(ErrorKind::argument, "a is not an element of " + A.name());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!A.contains(d.g[i]) || !(f[i] * d.g[i]).is_zero())
      impl::fail(ErrorKind::argument, "character value " + std::to_string(i) + " is not killed by " +
                                          std::to_string(f[i]));
}

// q_{x,y} = a + g(c(x sigma_y x0^-1)).
inline Cocycle reconstruct_cocycle(const Analysis& an, const CoefficientGroup& A, const CocycleDatum& d) {
  check_datum(an, A, d);
  const CayleyGroup& g = *an.fx;
  const int n = an.quandle.size();
  CosetMaps cm = an.maps();
  const int x0inv = g.inverse(g.generator_element(an.x0));
  Cocycle q(n, A);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int sy = an.transversal.reps[an.transversal.rep_of_point[y]];
      const int e = g.mul(g.mul(g.generator_element(x), sy), x0inv);
      impl::check_internal(an.nx.contains(e), "x sigma_y x0^-1 outside N_X");
      int c = cm.c(e);
      impl::check_internal(an.n0.contains(c), "c(n) outside N0");
      q.at(x, y) = d.a + apply_character(an.n0ab, d.g, c);
    }
  CocycleCheck chk = verify_cocycle(an.quandle, q);
  impl::check_internal(chk.ok, "reconstructed matrix is not a cocycle");
  return q;
}

// a = q_{x0,x0}, g(b_i) = f(word(b_i))(x0) on the (N0)_ab basis.
inline CocycleDatum decompose_cocycle(const Analysis& an, const Cocycle& q) {
  CocycleCheck chk = verify_cocycle(an.quandle, q);
  if (!chk.ok)
    impl::fail(ErrorKind::precondition, "not-a-cocycle at (" + std::to_string(chk.x) + "," +
                                            std::to_string(chk.y) + "," + std::to_string(chk.z) + ")");
  CocycleDatum d;
  d.a = q.at(an.x0, an.x0);
  for (const Word& w : an.n0ab.basis_words)
    d.g.push_back(evaluate_f(an.quandle, q, w)[an.x0]);
  const auto& f = an.factors();
  for (std::size_t i = 0; i < f.size(); ++i)
    impl::check_internal((f[i] * d.g[i]).is_zero(), "character-inconsistent: value not killed by factor");
  for (int e : an.n0.elements) {
    Coeff direct = evaluate_f(an.quandle, q, an.n0.word_of(e))[an.x0];
    impl::check_internal(direct == apply_character(an.n0ab, d.g, e),
                         "character-inconsistent: f restricted to N0 is not the character");
  }
  return d;
}

// gamma with q' = q + d gamma, found by propagating gamma(x|>y) = gamma(y) + (q'-q)_{x,y}
// from gamma(x0) = 0.
inline std::optional<std::vector<Coeff>> are_cohomologous(const Quandle& q, const Cocycle& a, const Cocycle& b,
                                                          int x0 = 0) {
  if (a.n != q.size() || b.n != q.size() || !(a.group == b.group))
    impl::fail(ErrorKind::argument, "cocycles must share quandle and coefficient group");
  const int n = q.size();
  std::vector<Coeff> gamma(n);
  std::vector<char> seen(n, 0);
  std::vector<int> queue{x0};
  seen[x0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int y = queue[i];
    for (int x = 0; x < n; ++x) {
      int z = q.op(x, y);
      if (!seen[z]) {
        seen[z] = 1;
        gamma[z] = gamma[y] + (b.at(x, y) - a.at(x, y));
        queue.push_back(z);
      }
    }
  }
  if (static_cast<int>(queue.size()) != n)
    impl::fail(ErrorKind::precondition, "are_cohomologous: quandle is not indecomposable");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!(gamma[q.op(x, y)] - gamma[y] == b.at(x, y) - a.at(x, y)))
        return std::nullopt;
  return gamma;
}

// All data (a, g) over a finite coefficient group.
inline std::vector<CocycleDatum> all_data(const AbelianStructure& ab, const CoefficientGroup& A) {
  if (!A.is_cyclic())
    impl::fail(ErrorKind::argument, "all_data needs a finite coefficient group");
  std::vector<std::vector<Coeff>> choices;
  for (long d : ab.factors)
    choices.push_back(A.torsion(d));
  std::vector<CocycleDatum> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    CocycleDatum d;
    for (std::size_t i = 0; i < idx.size(); ++i)
      d.g.push_back(choices[i][idx[i]]);
    for (std::int64_t a = 0; a < A.modulus(); ++a) {
      d.a = A.from_int(a);
      out.push_back(d);
    }
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < choices[i].size())
        break;
      idx[i] = 0;
    }
    if (i == idx.size())
      break;
  }
  return out;
}

struct H2Summary {
  int quandle_size = 0;
  long fx_order = 0;
  long nx_order = 0;
  long n0_order = 0;
  std::vector<long> n0_factors;
  std::optional<std::uint64_t> h2_order;  // finite coefficients only
  std::string h2_type;
  std::vector<CocycleDatum> generators;   // one per character basis vector
};

inline std::string cyclic_sum(const std::vector<long>& orders) {
  std::string s;
  for (long o : orders) {
    if (o <= 1)
      continue;
    if (!s.empty())
      s += " x ";
    s += "Z" + std::to_string(o);
  }
  return s.empty() ? "0" : s;
}

inline H2Summary h2_description(const Analysis& an, const CoefficientGroup& A) {
  H2Summary s;
  s.quandle_size = an.quandle.size();
  s.fx_order = an.fx->order();
  s.nx_order = an.nx.size();
  s.n0_order = an.n0.size();
  s.n0_factors = an.factors();
  const auto& f = s.n0_factors;
  if (A.is_cyclic()) {
    const std::int64_t m = A.modulus();
    std::uint64_t order = static_cast<std::uint64_t>(m);
    std::vector<long> parts{static_cast<long>(m)};
    for (long d : f) {
      long k = std::gcd(d, static_cast<long>(m));
      order *= static_cast<std::uint64_t>(k);
      parts.push_back(k);
    }
    s.h2_order = order;
    s.h2_type = cyclic_sum(parts);
  } else {
    s.h2_type = "QZ";
    for (long d : f)
      s.h2_type += " x Z" + std::to_string(d);
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    CocycleDatum d;
    d.g.assign(f.size(), Coeff());
    std::vector<Coeff> tor = A.torsion(f[i]);
    if (tor.size() < 2)
      continue;  // Hom(Z_{d_i}, A) = 0
    d.g[i] = tor[1];
    s.generators.push_back(d);
  }
  return s;
}

} // namespace qcoh

#endif
