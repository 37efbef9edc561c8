#ifndef QCANON_MODP_HPP
#define QCANON_MODP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qcanon/qfield.hpp"

namespace qcanon::modp {

// Arithmetic modulo the Mersenne prime 2^61 - 1, used to specialize q to an
// integer when testing linear independence.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inverse(std::uint64_t a) { return power(a, kPrime - 2); }

inline std::uint64_t reduce(const mpz_class& z) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), kPrime);
  return r.get_ui();
}

// Value at q = t, or nothing if a denominator vanishes.
inline std::optional<std::uint64_t> evaluate(const LaurentPoly& p, std::uint64_t t) {
  if (p.is_zero()) return 0;
  std::uint64_t acc = 0;
  const auto& c = p.dense();
  for (std::size_t k = c.size(); k-- > 0;) {
    std::uint64_t den = reduce(c[k].get_den());
    if (den == 0) return std::nullopt;
    std::uint64_t v = mul(reduce(c[k].get_num()), inverse(den));
    acc = add(mul(acc, t), v);
  }
  int low = p.low_degree();
  std::uint64_t shift = low >= 0 ? power(t, static_cast<std::uint64_t>(low))
                                 : power(inverse(t), static_cast<std::uint64_t>(-low));
  return mul(acc, shift);
}

inline std::optional<std::uint64_t> evaluate(const Scalar& x, std::uint64_t t) {
  auto n = evaluate(x.numerator(), t);
  auto d = evaluate(x.denominator(), t);
  if (!n || !d || *d == 0) return std::nullopt;
  return mul(*n, inverse(*d));
}

// Incremental echelon form: add() reports whether a vector is independent of
// those accepted so far.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}
  bool add(std::vector<std::uint64_t> v) {
    for (const auto& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      std::uint64_t f = v[pivot];
      for (std::size_t k = 0; k < dim_; ++k) v[k] = sub(v[k], mul(f, row[k]));
    }
    for (std::size_t k = 0; k < dim_; ++k) {
      if (v[k] == 0) continue;
      std::uint64_t inv = inverse(v[k]);
      for (auto& x : v) x = mul(x, inv);
      // keep rows fully reduced against the new pivot
      for (auto& [pivot, row] : rows_) {
        if (row[k] == 0) continue;
        std::uint64_t f = row[k];
        for (std::size_t j = 0; j < dim_; ++j) row[j] = sub(row[j], mul(f, v[j]));
      }
      rows_.emplace_back(k, std::move(v));
      return true;
    }
    return false;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> rows_;
};

}  // namespace qcanon::modp

#endif
