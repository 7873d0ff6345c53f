#ifndef QCOH_TODD_COXETER_HPP_
#define QCOH_TODD_COXETER_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quandle.hpp"
#include "word.hpp"

namespace qcoh {

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;
};

// Presentation of F_X = G_X / <x^{n_x}>: relators x_i x_j x_i^-1 x_{i|>j}^-1
// from x y = (x|>y) x (freely trivial ones dropped) and x_i^{n_i}.
inline Presentation enveloping_presentation(const Quandle& q) {
  const int n = q.size();
  Presentation p;
  p.generators = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Word r({letter(i, 1), letter(j, 1), letter(i, -1), letter(q.op(i, j), -1)});
      if (!r.reduce().empty())
        p.relators.push_back(std::move(r));
    }
  for (int i = 0; i < n; ++i)
    p.relators.push_back(Word::power(i, perm::order(q.phi(i))));
  return p;
}

// A finite group given by its right regular action on itself. Element 0 is the
// identity and elements are numbered in BFS order from it, generators scanned as
// x_0, x_0^-1, x_1, ...; this numbering does not depend on the enumeration run.
class CayleyGroup {
public:
  CayleyGroup() = default;
  CayleyGroup(int gens, std::vector<int> table) : gens_(gens), table_(std::move(table)) {
    build_witnesses();
  }

  int order() const { return static_cast<int>(witness_.size()); }
  int identity() const { return 0; }
  int generators() const { return gens_; }

  int mul_letter(int e, Letter l) const { return table_[static_cast<std::size_t>(e) * 2 * gens_ + l]; }
  int mul_gen(int e, int g) const { return mul_letter(e, letter(g, 1)); }
  int mul_gen_inv(int e, int g) const { return mul_letter(e, letter(g, -1)); }

  int evaluate(const Word& w, int from = 0) const {
    for (Letter l : w.letters)
      from = mul_letter(from, l);
    return from;
  }

  int mul(int a, int b) const { return evaluate(witness_[b], a); }
  int inverse(int e) const { return inverse_[e]; }
  int conjugate(int g, int h) const { return mul(mul(g, h), inverse_[g]); }  // g h g^-1
  int generator_element(int g) const { return mul_gen(0, g); }

  int element_order(int e) const {
    int k = 1;
    for (int p = e; p != 0; p = mul(p, e))
      ++k;
    return k;
  }

  // A shortest word evaluating to e.
  const Word& witness(int e) const { return witness_[e]; }

private:
  void build_witnesses() {
    const int cols = 2 * gens_;
    const int n = cols ? static_cast<int>(table_.size() / cols) : 1;
    witness_.assign(n, Word{});
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int c = 0; c < cols; ++c) {
        int d = mul_letter(queue[i], c);
        if (!seen[d]) {
          seen[d] = 1;
          witness_[d] = witness_[queue[i]];
          witness_[d].letters.push_back(c);
          queue.push_back(d);
        }
      }
    impl::check_internal(static_cast<int>(queue.size()) == n, "Cayley graph not connected");
    inverse_.resize(n);
    for (int e = 0; e < n; ++e)
      inverse_[e] = evaluate(witness_[e].inverse());
  }

  int gens_ = 0;
  std::vector<int> table_;
  std::vector<Word> witness_;
  std::vector<int> inverse_;
};

namespace impl {

// HLT coset enumeration over the trivial subgroup with a union-find
// coincidence queue and lookahead when the table fills up.
class CosetEnumerator {
public:
  CosetEnumerator(const Presentation& p, std::size_t max_cosets)
      : rels_(p.relators), cols_(2 * p.generators), cap_(max_cosets) {
    for (auto& r : rels_)
      r.reduce();
    new_coset();
  }

  CayleyGroup run(int gens) {
    int cur = 0;
    while (cur < static_cast<int>(parent_.size())) {
      if (alive(cur)) {
        for (const Word& r : rels_) {
          scan_and_fill(cur, r);
          if (!alive(cur))
            break;
        }
        if (alive(cur))
          for (int c = 0; c < cols_; ++c)
            if (entry(cur, c) < 0)
              define(cur, c);
      }
      if (overflow_) {
        // revisit from the surviving representative, which may still have gaps
        cur = handle_overflow(cur);
        continue;
      }
      ++cur;
    }
    return compact(gens);
  }

private:
  int& entry(int c, int col) { return table_[static_cast<std::size_t>(c) * cols_ + col]; }
  bool alive(int c) const { return parent_[c] == c; }

  int new_coset() {
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, -1);
    ++live_;
    return c;
  }

  void define(int c, int col) {
    if (live_ >= cap_) {
      overflow_ = true;
      return;
    }
    int d = new_coset();
    entry(c, col) = d;
    entry(d, col ^ 1) = c;
  }

  int find(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (b < a)
      std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue_.push_back(b);
  }

  void coincidence(int a, int b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      int dead = queue_[i];
      for (int col = 0; col < cols_; ++col) {
        int e = entry(dead, col);
        if (e < 0)
          continue;
        if (entry(e, col ^ 1) == dead)
          entry(e, col ^ 1) = -1;
        int f = find(dead);
        int g = find(e);
        if (entry(f, col) >= 0)
          merge(g, entry(f, col));
        else if (entry(g, col ^ 1) >= 0)
          merge(f, entry(g, col ^ 1));
        else {
          entry(f, col) = g;
          entry(g, col ^ 1) = f;
        }
      }
    }
  }

  // Returns false when the scan stopped at a gap it was not allowed to fill.
  bool scan(int c, const Word& w, bool fill) {
    const auto& ls = w.letters;
    int f = c, b = c;
    int i = 0, j = static_cast<int>(ls.size()) - 1;
    for (;;) {
      while (i <= j && entry(f, ls[i]) >= 0)
        f = entry(f, ls[i++]);
      if (i > j) {
        if (f != b)
          coincidence(f, b);
        return true;
      }
      while (j >= i && entry(b, ls[j] ^ 1) >= 0)
        b = entry(b, ls[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        entry(f, ls[i]) = b;
        entry(b, ls[i] ^ 1) = f;
        return true;
      }
      if (!fill)
        return false;
      define(f, ls[i]);
      if (overflow_)
        return false;
    }
  }

  void scan_and_fill(int c, const Word& w) {
    if (!w.empty() && !overflow_)
      scan(c, w, true);
  }

  void lookahead() {
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      for (const Word& r : rels_) {
        if (!alive(c))
          break;
        if (!r.empty())
          scan(c, r, false);
      }
  }

  int handle_overflow(int cur) {
    overflow_ = false;
    lookahead();
    if (live_ >= cap_)
      fail(ErrorKind::resource, "coset enumeration: cap-exceeded(max_cosets=" +
                                    std::to_string(cap_) + ")");
    return find(cur);
  }

  CayleyGroup compact(int gens) {
    std::vector<int> renum(parent_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c)
      if (alive(static_cast<int>(c)))
        renum[c] = next++;
    std::vector<int> raw(static_cast<std::size_t>(next) * cols_);
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (renum[c] < 0)
        continue;
      for (int col = 0; col < cols_; ++col) {
        int e = entry(static_cast<int>(c), col);
        check_internal(e >= 0 && alive(e), "incomplete coset table");
        raw[static_cast<std::size_t>(renum[c]) * cols_ + col] = renum[e];
      }
    }
    // Canonical BFS relabelling from the identity coset.
    std::vector<int> bfs{0}, label(next, -1);
    label[0] = 0;
    for (std::size_t i = 0; i < bfs.size(); ++i)
      for (int col = 0; col < cols_; ++col) {
        int d = raw[static_cast<std::size_t>(bfs[i]) * cols_ + col];
        if (label[d] < 0) {
          label[d] = static_cast<int>(bfs.size());
          bfs.push_back(d);
        }
      }
    check_internal(static_cast<int>(bfs.size()) == next, "coset graph not connected");
    std::vector<int> table(raw.size());
    for (int c = 0; c < next; ++c)
      for (int col = 0; col < cols_; ++col)
        table[static_cast<std::size_t>(label[c]) * cols_ + col] =
            label[raw[static_cast<std::size_t>(c) * cols_ + col]];
    return CayleyGroup(gens, std::move(table));
  }

  std::vector<Word> rels_;
  int cols_;
  std::size_t cap_;
  std::size_t live_ = 0;
  bool overflow_ = false;
  std::vector<int> parent_;
  std::vector<int> table_;
  std::vector<int> queue_;
};

} // namespace impl

// Enumerates the cosets of the trivial subgroup of <gens | relators>.
// Throws ErrorKind::resource when more than max_cosets live cosets are needed.
inline CayleyGroup todd_coxeter(const Presentation& p, std::size_t max_cosets = 1000000) {
  if (p.generators == 0) {
    return CayleyGroup(0, {});
  }
  impl::CosetEnumerator e(p, max_cosets);
  CayleyGroup g = e.run(p.generators);
  // every relator must act trivially on every element
  for (int x = 0; x < g.order(); ++x)
    for (const Word& r : p.relators)
      impl::check_internal(g.evaluate(r, x) == x, "relator does not evaluate to identity");
  return g;
}

// Left action of F_X on X induced by x_i -> phi_{x_i}: one permutation per element.
struct GroupAction {
  std::vector<Perm> perms;

  int act(int element, int x) const { return perms[element][x]; }
};

inline GroupAction action_on_X(const CayleyGroup& g, const Quandle& q) {
  const int n = q.size();
  impl::check_internal(g.generators() == n, "action_on_X: generator count mismatch");
  GroupAction a;
  a.perms.resize(g.order());
  for (int e = 0; e < g.order(); ++e)
    a.perms[e] = act_word(q, g.witness(e));
  // (e x_g) acts as perm(e) o phi_g; a mismatch means some relator acts nontrivially.
  for (int e = 0; e < g.order(); ++e)
    for (int gen = 0; gen < n; ++gen) {
      const Perm& lhs = a.perms[g.mul_gen(e, gen)];
      for (int y = 0; y < n; ++y)
        if (lhs[y] != a.perms[e][q.op(gen, y)])
          impl::fail(ErrorKind::internal, "action_on_X: relator-acts-nontrivially");
    }
  return a;
}

} // namespace qcoh

#endif
