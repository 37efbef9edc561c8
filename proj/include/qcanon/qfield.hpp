#ifndef QCANON_QFIELD_HPP
#define QCANON_QFIELD_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qcanon {

// Laurent polynomial in q with rational coefficients, stored densely from
// low_ upwards. The coefficient vector never has zero at either end.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const mpq_class& c, int exponent);
  static LaurentPoly q_power(int exponent) { return monomial(1, exponent); }
  static LaurentPoly from_terms(const std::map<int, mpq_class>& terms);
  // Coefficients of q^low, q^(low+1), ...; zeros at either end are trimmed.
  static LaurentPoly from_dense(int low, std::vector<mpq_class> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  int low_degree() const { return low_; }
  int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t term_count() const;
  mpq_class coeff(int exponent) const;
  const std::vector<mpq_class>& dense() const { return coeffs_; }
  std::map<int, mpq_class> terms() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const mpq_class& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  LaurentPoly shifted(int k) const;
  LaurentPoly bar() const;
  // q -> q^d
  LaurentPoly dilated(int d) const;
  LaurentPoly pow(unsigned n) const;

  bool has_integer_coefficients() const;

  std::string to_string() const;
  static LaurentPoly parse(std::string_view text);

 private:
  void trim();

  int low_ = 0;
  std::vector<mpq_class> coeffs_;
};

// Exact quotient a/b; throws IntegrityError when b does not divide a.
LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b);
// Quotient if b divides a in Q[q, q^-1].
bool try_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& out);
// Monic gcd of two polynomials (exponents >= 0, nonzero constant term).
LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b);
// Fast sufficient test: true only if a and b are certainly coprime.
bool surely_coprime(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly truncate_below(const LaurentPoly& p, int m);
bool is_positive(const LaurentPoly& p);

// Element of Q(q). The denominator is a polynomial with constant term 1,
// coprime to the numerator, so equality is structural.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const LaurentPoly& num, const LaurentPoly& den);

  static Scalar q_power(int e) { return Scalar(LaurentPoly::q_power(e)); }

  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  // Throws IntegrityError when not Laurent.
  const LaurentPoly& laurent() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Scalar bar() const;
  Scalar inverse() const;
  Scalar pow(int n) const;

  std::string to_string() const;
  static Scalar parse(std::string_view text);

 private:
  void normalize();
  // Rescale so den has constant term 1; assumes num and den are coprime.
  void normalize_units();

  LaurentPoly num_;
  LaurentPoly den_;
};

inline Scalar bar(const Scalar& x) { return x.bar(); }
inline bool is_laurent(const Scalar& x) { return x.is_laurent(); }

// [n]_d with q_i = q^d; d = 1 gives the plain quantum integer.
LaurentPoly quantum_int(int n, int d = 1);
LaurentPoly quantum_factorial(int n, int d = 1);
LaurentPoly quantum_binom(int n, int k, int d = 1);

}  // namespace qcanon

#endif
