#ifndef QCANON_TESTS_SUPPORT_HPP
#define QCANON_TESTS_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qcanon/mixedalg.hpp"
#include "qcanon/qfield.hpp"
#include "qcanon/rootdata.hpp"
#include "qcanon/uqn.hpp"

namespace qcanon {

inline void PrintTo(const LaurentPoly& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const Weight& w, std::ostream* os) { *os << w.key(); }
inline void PrintTo(const NegElement& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const MixedTerm& t, std::ostream* os) {
  *os << word_to_string(t.f) << " K" << t.k.key() << " " << word_to_string(t.e);
}

}  // namespace qcanon

namespace qtest {

using namespace qcanon;

constexpr int kSamples = 200;

inline Scalar S(const char* text) { return Scalar::parse(text); }
inline LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }
inline Weight W(std::vector<int> c) { return Weight(std::move(c)); }

// Word from 1-based letters.
inline Word word(std::initializer_list<int> letters) {
  Word w;
  for (int x : letters) w.push_back(x - 1);
  return w;
}

// Element from (1-based word, scalar text) pairs.
inline NegElement elem(int rank, std::initializer_list<std::pair<std::vector<int>, const char*>> terms) {
  NegElement x;
  bool first = true;
  for (const auto& [letters, c] : terms) {
    Word w;
    for (int a : letters) w.push_back(a - 1);
    if (first) {
      Weight content(static_cast<std::size_t>(rank));
      for (int a : w) content[a] += 1;
      x = NegElement(content);
      first = false;
    }
    x.add(w, Scalar::parse(c));
  }
  return x;
}

// Seeded generator of small random inputs.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  LaurentPoly laurent(int span = 3, int max_coeff = 4) {
    std::map<int, mpq_class> terms;
    int n = uniform(1, 4);
    for (int k = 0; k < n; ++k) terms[uniform(-span, span)] += uniform(-max_coeff, max_coeff);
    return LaurentPoly::from_terms(terms);
  }

  LaurentPoly nonzero_laurent() {
    LaurentPoly p;
    while (p.is_zero()) p = laurent();
    return p;
  }

  // A rational function: Laurent numerator over a product of cyclotomic-like
  // factors or a random polynomial with constant term.
  Scalar scalar() {
    LaurentPoly num = laurent();
    switch (uniform(0, 2)) {
      case 0:
        return Scalar(num);
      case 1:
        return Scalar(num, LaurentPoly(1) - LaurentPoly::q_power(2 * uniform(1, 3)));
      default: {
        LaurentPoly den = laurent(2, 3);
        if (den.is_zero()) den = LaurentPoly(1) + LaurentPoly::q_power(1);
        return Scalar(num, den);
      }
    }
  }

  Scalar nonzero_scalar() {
    Scalar s;
    while (s.is_zero()) s = scalar();
    return s;
  }

  Weight content(int rank, int height) {
    Weight c(static_cast<std::size_t>(rank));
    for (int k = 0; k < height; ++k) c[uniform(0, rank - 1)] += 1;
    return c;
  }

  Word arrangement(const Weight& content) {
    Word w;
    for (std::size_t i = 0; i < content.rank(); ++i) w.insert(w.end(), content[i], static_cast<int>(i));
    std::shuffle(w.begin(), w.end(), rng_);
    return w;
  }

  NegElement element(const Weight& content, int max_terms = 3) {
    NegElement x(content);
    int n = uniform(1, max_terms);
    for (int k = 0; k < n; ++k) x.add(arrangement(content), Scalar(nonzero_laurent()));
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline const std::vector<std::string>& small_types() {
  static const std::vector<std::string> t{"A1", "A2", "B2", "G2", "A3"};
  return t;
}

}  // namespace qtest

#endif
