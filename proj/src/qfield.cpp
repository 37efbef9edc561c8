#include "qcanon/qfield.hpp"

#include <algorithm>
#include <cctype>

#include "qcanon/errors.hpp"
#include "qcanon/modp.hpp"

namespace qcanon {

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

LaurentPoly::LaurentPoly(const mpq_class& c) {
  if (c != 0) coeffs_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const mpq_class& c, int exponent) {
  LaurentPoly p(c);
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::map<int, mpq_class>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p += monomial(c, e);
  return p;
}

LaurentPoly LaurentPoly::from_dense(int low, std::vector<mpq_class> coeffs) {
  LaurentPoly p;
  p.low_ = low;
  p.coeffs_ = std::move(coeffs);
  p.trim();
  return p;
}

bool LaurentPoly::is_one() const {
  return low_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1;
}

std::size_t LaurentPoly::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c != 0; }));
}

mpq_class LaurentPoly::coeff(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high_degree()) return 0;
  return coeffs_[exponent - low_];
}

std::map<int, mpq_class> LaurentPoly::terms() const {
  std::map<int, mpq_class> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) out.emplace(low_ + static_cast<int>(k), coeffs_[k]);
  return out;
}

void LaurentPoly::trim() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1] == 0) --last;
  if (first > 0 || last < coeffs_.size()) {
    coeffs_ = std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(first),
                                     coeffs_.begin() + static_cast<long>(last));
    low_ += static_cast<int>(first);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high_degree(), o.high_degree());
  if (lo < low_ || hi > high_degree()) {
    std::vector<mpq_class> grown(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) grown[k + (low_ - lo)] = coeffs_[k];
    coeffs_ = std::move(grown);
    low_ = lo;
  }
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k + (o.low_ - low_)] += o.coeffs_[k];
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, mpq_class(0));
  mpq_class t;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
      r.coeffs_[i + j] += t;
    }
  }
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  if (is_zero()) return r;
  r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
  r.low_ = -high_degree();
  return r;
}

LaurentPoly LaurentPoly::dilated(int d) const {
  if (d == 1 || is_zero()) return *this;
  if (d <= 0) throw DomainError("dilation factor must be positive");
  LaurentPoly r;
  r.low_ = low_ * d;
  r.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(d) + 1, mpq_class(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k * static_cast<std::size_t>(d)] = coeffs_[k];
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly r(1), base = *this;
  while (n > 0) {
    if (n & 1U) r *= base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return r;
}

bool LaurentPoly::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

namespace {

// Polynomial long division of dense coefficient vectors (constant term first).
bool divide_dense(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                  std::vector<mpq_class>& quotient) {
  if (a.size() < b.size()) return false;
  std::vector<mpq_class> rem = a;
  quotient.assign(a.size() - b.size() + 1, mpq_class(0));
  const mpq_class& lead = b.back();
  for (std::size_t k = quotient.size(); k-- > 0;) {
    mpq_class f = rem[k + b.size() - 1] / lead;
    quotient[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= f * b[j];
  }
  return std::all_of(rem.begin(), rem.end(), [](const mpq_class& c) { return c == 0; });
}

}  // namespace

bool try_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& out) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) {
    out = LaurentPoly();
    return true;
  }
  if (b.dense().size() == 1) {
    out = a.shifted(-b.low_degree());
    out *= mpq_class(1) / b.dense()[0];
    return true;
  }
  std::vector<mpq_class> q;
  if (!divide_dense(a.dense(), b.dense(), q)) return false;
  out = LaurentPoly::from_dense(a.low_degree() - b.low_degree(), std::move(q));
  return true;
}

LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  if (!try_divide(a, b, out))
    throw IntegrityError("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return out;
}

namespace {

// Dense residues mod p, or nothing if a denominator or the leading
// coefficient vanishes there.
std::optional<std::vector<std::uint64_t>> residues(const LaurentPoly& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.dense().size());
  for (const auto& c : p.dense()) {
    std::uint64_t den = modp::reduce(c.get_den());
    if (den == 0) return std::nullopt;
    out.push_back(modp::mul(modp::reduce(c.get_num()), modp::inverse(den)));
  }
  if (out.empty() || out.back() == 0 || out.front() == 0) return std::nullopt;
  return out;
}

}  // namespace

bool surely_coprime(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.dense().size() == 1 || b.dense().size() == 1) return true;
  auto ra = residues(a), rb = residues(b);
  if (!ra || !rb) return false;
  std::vector<std::uint64_t> x = std::move(*ra), y = std::move(*rb);
  // The mod-p gcd has degree at least that of the rational gcd when the
  // leading coefficients survive, so a constant result proves coprimality.
  while (true) {
    while (!x.empty() && x.back() == 0) x.pop_back();
    while (!y.empty() && y.back() == 0) y.pop_back();
    if (x.size() < y.size()) std::swap(x, y);
    if (y.empty()) return x.size() == 1;
    if (y.size() == 1) return true;
    std::uint64_t inv = modp::inverse(y.back());
    for (std::size_t k = x.size() - y.size() + 1; k-- > 0;) {
      std::uint64_t f = modp::mul(x[k + y.size() - 1], inv);
      if (f == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) x[k + j] = modp::sub(x[k + j], modp::mul(f, y[j]));
    }
  }
}

LaurentPoly poly_gcd(LaurentPoly a, LaurentPoly b) {
  if (surely_coprime(a, b)) return LaurentPoly(1);
  // Work on plain polynomials; units q^k are irrelevant.
  if (!a.is_zero()) a = a.shifted(-a.low_degree());
  if (!b.is_zero()) b = b.shifted(-b.low_degree());
  while (!b.is_zero()) {
    if (b.high_degree() == 0) return LaurentPoly(1);
    // remainder of a mod b
    std::vector<mpq_class> rem = a.dense();
    const auto& bd = b.dense();
    if (rem.size() >= bd.size()) {
      for (std::size_t k = rem.size() - bd.size() + 1; k-- > 0;) {
        mpq_class f = rem[k + bd.size() - 1] / bd.back();
        if (f == 0) continue;
        for (std::size_t j = 0; j < bd.size(); ++j) rem[k + j] -= f * bd[j];
      }
    }
    a = std::move(b);
    b = LaurentPoly::from_dense(0, std::move(rem));
    if (!b.is_zero()) b = b.shifted(-b.low_degree());
  }
  if (a.is_zero()) return a;
  mpq_class lead = a.dense().back();
  a *= mpq_class(1) / lead;
  return a;
}

LaurentPoly truncate_below(const LaurentPoly& p, int m) {
  if (p.is_zero() || p.low_degree() >= m) return LaurentPoly();
  if (p.high_degree() < m) return p;
  std::vector<mpq_class> c(p.dense().begin(), p.dense().begin() + (m - p.low_degree()));
  return LaurentPoly::from_dense(p.low_degree(), std::move(c));
}

bool is_positive(const LaurentPoly& p) {
  return std::all_of(p.dense().begin(), p.dense().end(), [](const mpq_class& c) { return c >= 0; });
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms()) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str() + "*";
    out += "q";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly parse_all() {
    LaurentPoly p = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

  LaurentPoly parse_sum() {
    LaurentPoly total;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    total += parse_term() * LaurentPoly(sign);
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      total += parse_term() * LaurentPoly(c == '-' ? -1 : 1);
    }
    return total;
  }

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse Laurent polynomial '" + std::string(s_) + "': " + what +
                     " at offset " + std::to_string(pos_));
  }

  std::string digits() {
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) d += s_[pos_++];
    return d;
  }

  LaurentPoly parse_term() {
    skip_ws();
    mpq_class coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      std::string den = "1";
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        den = digits();
        if (den.empty()) fail("missing denominator");
      }
      coef = mpq_class(mpz_class(num), mpz_class(den));
      coef.canonicalize();
      have_coef = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else {
        return LaurentPoly(coef);
      }
    }
    if (peek() != 'q') {
      if (have_coef) fail("expected 'q' after '*'");
      fail("expected a term");
    }
    ++pos_;
    int e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      int sign = 1;
      if (peek() == '-') {
        sign = -1;
        ++pos_;
      }
      std::string d = digits();
      if (d.empty()) fail("missing exponent");
      e = sign * std::stoi(d);
    }
    return LaurentPoly::monomial(coef, e);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) { return PolyParser(text).parse_all(); }

Scalar::Scalar(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  normalize();
}

void Scalar::normalize_units() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  int low = den_.low_degree();
  if (low != 0) {
    num_ = num_.shifted(-low);
    den_ = den_.shifted(-low);
  }
  mpq_class c0 = den_.dense()[0];
  if (c0 != 1) {
    mpq_class inv = mpq_class(1) / c0;
    num_ *= inv;
    den_ *= inv;
  }
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (den_.dense().size() == 1) {
    num_ = num_.shifted(-den_.low_degree());
    num_ *= mpq_class(1) / den_.dense()[0];
    den_ = LaurentPoly(1);
    return;
  }
  num_ = num_.shifted(-den_.low_degree());
  den_ = den_.shifted(-den_.low_degree());
  LaurentPoly g = poly_gcd(num_, den_);
  if (g.high_degree() > 0) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  mpq_class c0 = den_.dense()[0];
  if (c0 != 1) {
    mpq_class inv = mpq_class(1) / c0;
    num_ *= inv;
    den_ *= inv;
  }
}

const LaurentPoly& Scalar::laurent() const {
  if (!is_laurent()) throw IntegrityError("expected a Laurent polynomial, got " + to_string());
  return num_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;  // o is reduced, so the sum is too
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  // Reduced fractions: only factors of gcd(den, o.den) can cancel.
  LaurentPoly g = poly_gcd(den_, o.den_);
  if (g.is_one()) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    if (num_.is_zero()) den_ = LaurentPoly(1);
    return *this;
  }
  LaurentPoly a = exact_divide(den_, g), b = exact_divide(o.den_, g);
  num_ = num_ * b + o.num_ * a;
  den_ = a * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel reduced fractions.
  LaurentPoly n2 = o.num_, d2 = o.den_;
  LaurentPoly g1 = poly_gcd(num_, d2), g2 = poly_gcd(n2, den_);
  if (!g1.is_one()) {
    num_ = exact_divide(num_, g1);
    d2 = exact_divide(d2, g1);
  }
  if (!g2.is_one()) {
    n2 = exact_divide(n2, g2);
    den_ = exact_divide(den_, g2);
  }
  num_ *= n2;
  den_ *= d2;
  normalize_units();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::bar() const {
  if (den_.is_one()) return Scalar(num_.bar());
  return Scalar(num_.bar(), den_.bar());
}

Scalar Scalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar r(1), base = *this;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Scalar Scalar::parse(std::string_view text) {
  PolyParser p(text);
  p.skip_ws();
  if (p.peek() != '(') return Scalar(p.parse_all());
  p.expect('(');
  LaurentPoly num = p.parse_sum();
  p.expect(')');
  p.skip_ws();
  if (p.peek() == '\0') return Scalar(num);
  p.expect('/');
  p.expect('(');
  LaurentPoly den = p.parse_sum();
  p.expect(')');
  p.skip_ws();
  if (p.peek() != '\0') throw ParseError("trailing input in scalar '" + std::string(text) + "'");
  return Scalar(num, den);
}

LaurentPoly quantum_int(int n, int d) {
  if (n == 0) return LaurentPoly();
  if (n < 0) return -quantum_int(-n, d);
  std::map<int, mpq_class> terms;
  for (int k = 0; k < n; ++k) terms.emplace(d * (n - 1 - 2 * k), 1);
  return LaurentPoly::from_terms(terms);
}

LaurentPoly quantum_factorial(int n, int d) {
  if (n < 0) throw DomainError("quantum factorial of a negative integer");
  LaurentPoly r(1);
  for (int k = 2; k <= n; ++k) r *= quantum_int(k, d);
  return r;
}

LaurentPoly quantum_binom(int n, int k, int d) {
  if (k < 0) throw DomainError("quantum binomial with negative k");
  LaurentPoly num(1), den(1);
  for (int j = 0; j < k; ++j) {
    num *= quantum_int(n - j, d);
    den *= quantum_int(j + 1, d);
  }
  return exact_divide(num, den);
}

}  // namespace qcanon
