#ifndef QCANON_UQN_HPP
#define QCANON_UQN_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcanon/memo.hpp"
#include "qcanon/qfield.hpp"
#include "qcanon/rootdata.hpp"

namespace qcanon {

// Element of U_q(n^-) as a combination of F-words. The representation is not
// canonical (Serre relations are not applied); compare through coordinates.
class NegElement {
 public:
  using Terms = std::map<Word, Scalar>;

  NegElement() = default;
  // Zero element of the weight -content.
  explicit NegElement(Weight content) : content_(std::move(content)) {}
  static NegElement one(int rank);
  static NegElement generator(int rank, int i);
  static NegElement from_word(int rank, const Word& w, const Scalar& c = Scalar(1));

  // Sum of letters as simple roots; the weight is its negative.
  const Weight& content() const { return content_; }
  Weight weight() const { return -content_; }
  int rank() const { return static_cast<int>(content_.rank()); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  // Structurally zero (no terms). Semantic zero needs coordinates.
  bool empty() const { return terms_.empty(); }

  void add(const Word& w, const Scalar& c);
  NegElement& operator+=(const NegElement& o);
  NegElement& operator-=(const NegElement& o);
  NegElement& operator*=(const Scalar& c);
  friend NegElement operator+(NegElement a, const NegElement& b) { return a += b; }
  friend NegElement operator-(NegElement a, const NegElement& b) { return a -= b; }
  friend NegElement operator*(NegElement a, const Scalar& c) { return a *= c; }
  friend NegElement operator*(const Scalar& c, NegElement a) { return a *= c; }
  // Product in the free algebra (concatenation of words).
  friend NegElement operator*(const NegElement& a, const NegElement& b);

  // "(c) F1.F2 + (c') F2.F1"
  std::string to_string() const;

 private:
  void check_content(const Word& w) const;

  Weight content_;
  Terms terms_;
};

// x = y / den where y has Laurent coefficients and den is a polynomial.
std::pair<NegElement, LaurentPoly> clear_denominators(const NegElement& x);

enum class Side { left, right };

// side == right: e'_i; side == left: _ie'.
NegElement derivation(const RootDatum& rd, const NegElement& x, int i, Side side);
NegElement derivation_power(const RootDatum& rd, const NegElement& x, int i, int p, Side side);

// phi_w(x) = e'_{w1}(...(e'_{wl}(x))) for one word w.
Scalar coordinate(const RootDatum& rd, const NegElement& x, const Word& w);
// phi_w(x) for a list of words of the same content; shares common suffixes.
std::vector<Scalar> coordinates_on(const RootDatum& rd, const NegElement& x, const std::vector<Word>& words);
// phi_w(x) for every arrangement w of the content of x (lexicographic order).
std::map<Word, Scalar> coordinates(const RootDatum& rd, const NegElement& x);
bool is_zero_by_coordinates(const RootDatum& rd, const NegElement& x);

// All arrangements of a content vector, lexicographic.
std::vector<Word> words_of_content(const Weight& content);
unsigned long long count_words_of_content(const Weight& content);

Scalar bilinear_form(const RootDatum& rd, const NegElement& x, const NegElement& y);
// prod_j (1-q_j^2)^{-m_j} for content m.
Scalar form_normalizer(const RootDatum& rd, const Weight& content);

NegElement star(const NegElement& x);
NegElement bar_elem(const NegElement& x);

// F_i^n / [n]_i!
NegElement divided_power(const RootDatum& rd, int i, int n);

using ZeroTest = std::function<bool(const NegElement&)>;
ZeroTest full_zero_test(const RootDatum& rd);

struct StringComponent {
  int n;
  NegElement u;  // e'_i(u) = 0
};

// x = sum F_i^(n) u_n with e'_i(u_n) = 0; components listed by increasing n,
// zero components omitted.
std::vector<StringComponent> i_string_decompose(const RootDatum& rd, const NegElement& x, int i,
                                                const ZeroTest& is_zero);
NegElement i_string_recompose(const RootDatum& rd, const std::vector<StringComponent>& parts, int i,
                              const Weight& content);

enum class KashiwaraDir { e, f };
NegElement kashiwara_op(const RootDatum& rd, const NegElement& x, int i, KashiwaraDir dir,
                        const ZeroTest& is_zero);

// Functional basis of each weight space: K words whose coordinate functionals
// are linearly independent on U^-_mu, K being the Kostant count. Chosen greedily
// in lexicographic order using a spanning set supplied by the caller.
class FunctionalBases {
 public:
  using Spanning = std::function<std::vector<NegElement>(const Weight& content)>;

  FunctionalBases(const RootDatum& rd, Spanning spanning);

  const std::vector<Word>& words(const Weight& content);
  std::vector<Scalar> coords(const NegElement& x);
  bool is_zero(const NegElement& x);
  bool equal(const NegElement& a, const NegElement& b);
  ZeroTest zero_test();

 private:
  std::vector<Word> select(const Weight& content);

  const RootDatum& rd_;
  Spanning spanning_;
  Memo<Weight, std::vector<Word>> cache_;
};

}  // namespace qcanon

#endif
