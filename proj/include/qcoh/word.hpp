#ifndef QCOH_WORD_HPP_
#define QCOH_WORD_HPP_

#include <string>
#include <vector>

#include "quandle.hpp"

namespace qcoh {

// A letter encodes x_g as 2g and x_g^-1 as 2g+1, so that `l ^ 1` is the inverse
// letter. The same encoding indexes the columns of a coset table.
using Letter = int;

constexpr Letter letter(int gen, int exponent) { return 2 * gen + (exponent < 0 ? 1 : 0); }
constexpr int letter_gen(Letter l) { return l >> 1; }
constexpr int letter_exp(Letter l) { return (l & 1) ? -1 : 1; }
constexpr Letter letter_inverse(Letter l) { return l ^ 1; }

// A word in the free group on the quandle elements.
struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  static Word generator(int gen, int exponent = 1) { return Word({letter(gen, exponent)}); }

  static Word power(int gen, long exponent) {
    Word w;
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i)
      w.letters.push_back(letter(gen, exponent < 0 ? -1 : 1));
    return w;
  }

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  // Exponent sum; the degree homomorphism to Z.
  long degree() const {
    long d = 0;
    for (Letter l : letters)
      d += letter_exp(l);
    return d;
  }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(letter_inverse(*it));
    return w;
  }

  bool freely_reduced() const {
    for (std::size_t i = 1; i < letters.size(); ++i)
      if (letters[i] == letter_inverse(letters[i - 1]))
        return false;
    return true;
  }

  Word& reduce() {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
      if (!out.empty() && out.back() == letter_inverse(l))
        out.pop_back();
      else
        out.push_back(l);
    }
    letters = std::move(out);
    return *this;
  }

  Word& operator*=(const Word& other) {
    letters.insert(letters.end(), other.letters.begin(), other.letters.end());
    return reduce();
  }

  friend Word operator*(Word a, const Word& b) { return a *= b; }
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }

  std::string str() const {
    if (letters.empty())
      return "1";
    std::string s;
    for (Letter l : letters) {
      if (!s.empty())
        s += ' ';
      s += "x" + std::to_string(letter_gen(l));
      if (letter_exp(l) < 0)
        s += "^-1";
    }
    return s;
  }
};

// Evaluates a word as a permutation of X under the left action u|>(v|>x).
inline Perm act_word(const Quandle& q, const Word& w) {
  Perm p = perm::identity(q.size());
  // rightmost letter acts first
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    int g = letter_gen(*it);
    for (int& v : p)
      v = letter_exp(*it) > 0 ? q.op(g, v) : q.inv_op(g, v);
  }
  return p;
}

} // namespace qcoh

#endif
