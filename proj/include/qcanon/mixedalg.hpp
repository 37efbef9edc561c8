#ifndef QCANON_MIXEDALG_HPP
#define QCANON_MIXEDALG_HPP

#include <map>
#include <string>
#include <tuple>

#include "qcanon/qfield.hpp"
#include "qcanon/rootdata.hpp"
#include "qcanon/uqn.hpp"

namespace qcanon {

// F-word . K_k . E-word
struct MixedTerm {
  Word f;
  Weight k;
  Word e;

  friend bool operator==(const MixedTerm&, const MixedTerm&) = default;
  friend auto operator<=>(const MixedTerm& a, const MixedTerm& b) {
    return std::tie(a.f, a.k, a.e) <=> std::tie(b.f, b.k, b.e);
  }
};

// Normal-ordered combination over the algebra with only the mixed relations
// (K-commutation and [E_i, F_j]) imposed.
class MixedElement {
 public:
  using Terms = std::map<MixedTerm, Scalar>;

  explicit MixedElement(int rank = 0) : rank_(rank) {}
  static MixedElement one(int rank);
  static MixedElement f(int rank, int i);
  static MixedElement e(int rank, int i);
  static MixedElement k(const Weight& mu);
  static MixedElement from_neg(const NegElement& x);

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const MixedTerm& t, const Scalar& c);
  MixedElement& operator+=(const MixedElement& o);
  MixedElement& operator-=(const MixedElement& o);
  MixedElement& operator*=(const Scalar& c);
  friend MixedElement operator+(MixedElement a, const MixedElement& b) { return a += b; }
  friend MixedElement operator-(MixedElement a, const MixedElement& b) { return a -= b; }
  friend MixedElement operator*(MixedElement a, const Scalar& c) { return a *= c; }

  // "(q) F1 F2 K[a1] E2"
  std::string to_string() const;

 private:
  int rank_;
  Terms terms_;
};

MixedElement multiply(const RootDatum& rd, const MixedElement& x, const MixedElement& y);

enum class BraidVariant { t_prime, t_double_prime };

MixedElement braid_generator_image(const RootDatum& rd, int i, BraidVariant v, int eps, char gen, int j);
MixedElement braid(const RootDatum& rd, const MixedElement& x, int i, BraidVariant v, int eps);

// True iff x is zero in U_q(g), given a zero test on F-word combinations.
// Terms are grouped by K-part and E-content; each group is a tensor in
// U^- (x) U^+ and is tested against derivation coordinates on the E side.
bool mixed_is_zero(const RootDatum& rd, const MixedElement& x, const ZeroTest& is_zero);

// Extracts the (K = 0, no E) part; every other part must vanish.
NegElement project_to_neg(const RootDatum& rd, const MixedElement& x, const ZeroTest& is_zero);

}  // namespace qcanon

#endif
