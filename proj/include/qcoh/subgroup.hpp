#ifndef QCOH_SUBGROUP_HPP_
#define QCOH_SUBGROUP_HPP_

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quandle.hpp"
#include "todd_coxeter.hpp"
#include "word.hpp"

namespace qcoh {

// A subgroup of a CayleyGroup stored as an explicit element set. Every element
// carries a word witnessing it; for subgroups built from degree-0 atoms
// (commutator subgroup, stabilizers) all stored words have degree 0.
struct SubgroupData {
  std::shared_ptr<const CayleyGroup> parent;
  std::vector<int> elements;                     // sorted
  std::vector<Word> words;                       // words[i] evaluates to elements[i]
  std::vector<std::pair<int, Word>> generators;  // (element, word)
  std::vector<int> position;                     // parent element -> index in elements, or -1

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int e) const { return position[e] >= 0; }
  const Word& word_of(int e) const { return words[position[e]]; }
};

namespace impl {

// Incremental closure of a subgroup under right multiplication by its generators.
class SubgroupBuilder {
public:
  explicit SubgroupBuilder(std::shared_ptr<const CayleyGroup> g)
      : g_(std::move(g)), pos_(g_->order(), -1) {
    add(g_->identity(), Word{});
  }

  bool contains(int e) const { return pos_[e] >= 0; }
  int size() const { return static_cast<int>(elems_.size()); }
  const std::vector<std::pair<int, Word>>& generators() const { return gens_; }

  // Adds a generator unless it already lies in the current subgroup.
  bool add_generator(int e, const Word& w) {
    if (contains(e))
      return false;
    gens_.emplace_back(e, w);
    const std::size_t old = elems_.size();
    const auto& s = gens_.back();
    for (std::size_t i = 0; i < old; ++i)
      try_add(g_->mul(elems_[i], s.first), words_[i] * s.second);
    for (std::size_t k = old; k < elems_.size(); ++k)
      for (std::size_t j = 0; j < gens_.size(); ++j)
        try_add(g_->mul(elems_[k], gens_[j].first), words_[k] * gens_[j].second);
    return true;
  }

  SubgroupData finish() && {
    SubgroupData s;
    s.parent = g_;
    std::vector<std::size_t> order(elems_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return elems_[a] < elems_[b]; });
    s.position.assign(g_->order(), -1);
    for (std::size_t i : order) {
      s.position[elems_[i]] = static_cast<int>(s.elements.size());
      s.elements.push_back(elems_[i]);
      s.words.push_back(std::move(words_[i]));
    }
    s.generators = std::move(gens_);
    return s;
  }

private:
  void try_add(int e, Word w) {
    if (pos_[e] < 0)
      add(e, std::move(w));
  }
  void add(int e, Word w) {
    pos_[e] = static_cast<int>(elems_.size());
    elems_.push_back(e);
    words_.push_back(std::move(w));
  }

  std::shared_ptr<const CayleyGroup> g_;
  std::vector<int> pos_;
  std::vector<int> elems_;
  std::vector<Word> words_;
  std::vector<std::pair<int, Word>> gens_;
};

inline Word commutator_word(int i, int j) {
  return Word({letter(i, 1), letter(j, 1), letter(i, -1), letter(j, -1)});
}

// Closes the builder under conjugation by every parent generator x_g.
inline void normal_closure(const CayleyGroup& g, SubgroupBuilder& b) {
  for (std::size_t k = 0; k < b.generators().size(); ++k)
    for (int x = 0; x < g.generators(); ++x) {
      auto [s, w] = b.generators()[k];
      int c = g.conjugate(g.generator_element(x), s);
      b.add_generator(c, Word::generator(x) * w * Word::generator(x, -1));
    }
}

inline SubgroupData from_elements(std::shared_ptr<const CayleyGroup> g, std::vector<int> elems) {
  SubgroupData s;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  s.position.assign(g->order(), -1);
  for (int e : elems) {
    s.position[e] = static_cast<int>(s.elements.size());
    s.elements.push_back(e);
    s.words.push_back(g->witness(e));
  }
  s.parent = std::move(g);
  return s;
}

} // namespace impl

// [F, F] as the normal closure of the commutators [x_i, x_j]. Stored words are
// products of conjugated commutators, hence of degree 0.
inline SubgroupData commutator_subgroup(std::shared_ptr<const CayleyGroup> g) {
  impl::SubgroupBuilder b(g);
  const int n = g->generators();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Word w = impl::commutator_word(i, j);
      b.add_generator(g->evaluate(w), w);
    }
  impl::normal_closure(*g, b);
  return std::move(b).finish();
}

// Degree-0 words r_y with r_y |> x0 = y, built by r_{x_i|>y} = x_i r_y x0^-1.
struct OrbitTransversal {
  int x0 = 0;
  std::vector<int> elements;  // indexed by point
  std::vector<Word> words;
  std::vector<int> discovery;  // points in BFS order, starting with x0
};

// Empty optional-like result: elements is empty when some point is unreachable.
inline OrbitTransversal orbit_transversal(const CayleyGroup& g, const Quandle& q, int x0) {
  const int n = q.size();
  OrbitTransversal t;
  t.x0 = x0;
  t.elements.assign(n, -1);
  t.words.assign(n, Word{});
  t.elements[x0] = g.identity();
  t.discovery.push_back(x0);
  for (std::size_t k = 0; k < t.discovery.size(); ++k) {
    int y = t.discovery[k];
    for (int i = 0; i < n; ++i) {
      int z = q.op(i, y);
      if (t.elements[z] >= 0)
        continue;
      t.words[z] = Word::generator(i) * t.words[y] * Word::generator(x0, -1);
      t.elements[z] = g.evaluate(t.words[z]);
      t.discovery.push_back(z);
    }
  }
  if (static_cast<int>(t.discovery.size()) != n)
    t.elements.clear();
  return t;
}

// Stabilizer of x0 in the subgroup `nx`, generated by Schreier generators
// r_{s|>y}^-1 s r_y. Throws ErrorKind::precondition if nx is not transitive on X.
inline SubgroupData stabilizer(const SubgroupData& nx, const GroupAction& act, const Quandle& q,
                               int x0) {
  const CayleyGroup& g = *nx.parent;
  const int n = q.size();
  std::vector<char> hit(n, 0);
  for (int e : nx.elements)
    hit[act.act(e, x0)] = 1;
  if (std::count(hit.begin(), hit.end(), 1) != n)
    impl::fail(ErrorKind::precondition, "stabilizer: action-not-transitive");
  OrbitTransversal t = orbit_transversal(g, q, x0);
  if (t.elements.empty())
    impl::fail(ErrorKind::precondition, "stabilizer: action-not-transitive");
  for (int y = 0; y < n; ++y)
    impl::check_internal(nx.contains(t.elements[y]), "orbit transversal left the subgroup");

  impl::SubgroupBuilder b(nx.parent);
  for (const auto& [s, w] : nx.generators)
    for (int y = 0; y < n; ++y) {
      int sy = act.act(s, y);
      int u = g.mul(g.mul(g.inverse(t.elements[sy]), s), t.elements[y]);
      b.add_generator(u, t.words[sy].inverse() * w * t.words[y]);
    }
  SubgroupData st = std::move(b).finish();
  for (int e : st.elements)
    impl::check_internal(act.act(e, x0) == x0, "Schreier generator moves the base point");
  impl::check_internal(static_cast<long>(nx.size()) == static_cast<long>(n) * st.size(),
                       "orbit-stabilizer count mismatch");
  return st;
}

// {h : h e = e h}, by direct scan. Words are the parent's BFS witnesses.
inline SubgroupData centralizer(std::shared_ptr<const CayleyGroup> g, int e) {
  std::vector<int> elems;
  for (int h = 0; h < g->order(); ++h)
    if (g->mul(h, e) == g->mul(e, h))
      elems.push_back(h);
  return impl::from_elements(std::move(g), std::move(elems));
}

inline SubgroupData intersection(const SubgroupData& a, const SubgroupData& b) {
  std::vector<int> elems;
  for (int e : a.elements)
    if (b.contains(e))
      elems.push_back(e);
  SubgroupData s = impl::from_elements(a.parent, std::move(elems));
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    s.words[i] = a.word_of(s.elements[i]);
  return s;
}

} // namespace qcoh

#endif
