#include "qcanon/linalg.hpp"

#include <limits>

#include "qcanon/errors.hpp"

namespace qcanon {

namespace {

LaurentPoly poly_lcm(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return exact_divide(a * b, poly_gcd(a, b));
}

std::size_t size_of(const LaurentPoly& p) {
  std::size_t s = 0;
  for (const auto& c : p.dense())
    if (c != 0) s += mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
  return s + p.dense().size();
}

}  // namespace

ScalarMatrix solve(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = n ? b.front().size() : 0;
  if (b.size() != n) throw DomainError("solve: dimension mismatch");
  std::vector<std::vector<LaurentPoly>> A(n, std::vector<LaurentPoly>(n));
  std::vector<std::vector<LaurentPoly>> B(n, std::vector<LaurentPoly>(m));
  for (std::size_t r = 0; r < n; ++r) {
    if (a[r].size() != n) throw DomainError("solve: matrix not square");
    LaurentPoly l(1);
    for (const auto& x : a[r]) l = poly_lcm(l, x.denominator());
    for (const auto& x : b[r]) l = poly_lcm(l, x.denominator());
    for (std::size_t c = 0; c < n; ++c) A[r][c] = exact_divide(a[r][c].numerator() * l, a[r][c].denominator());
    for (std::size_t c = 0; c < m; ++c) B[r][c] = exact_divide(b[r][c].numerator() * l, b[r][c].denominator());
  }
  LaurentPoly prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = k; r < n; ++r) {
      if (A[r][k].is_zero()) continue;
      std::size_t s = size_of(A[r][k]);
      if (s < best_size) {
        best = r;
        best_size = s;
      }
    }
    if (best == n) throw IntegrityError("solve: singular matrix");
    std::swap(A[k], A[best]);
    std::swap(B[k], B[best]);
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c)
        A[r][c] = exact_divide(A[k][k] * A[r][c] - A[r][k] * A[k][c], prev);
      for (std::size_t c = 0; c < m; ++c) B[r][c] = exact_divide(A[k][k] * B[r][c] - A[r][k] * B[k][c], prev);
      A[r][k] = LaurentPoly();
    }
    prev = A[k][k];
  }
  // After Bareiss the last pivot is +-det, and det * x is polynomial.
  const LaurentPoly det = n ? A[n - 1][n - 1] : LaurentPoly(1);
  std::vector<std::vector<LaurentPoly>> X(n, std::vector<LaurentPoly>(m));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = n; k-- > 0;) {
      LaurentPoly s = det * B[k][c];
      for (std::size_t j = k + 1; j < n; ++j)
        if (!A[k][j].is_zero() && !X[j][c].is_zero()) s -= A[k][j] * X[j][c];
      X[k][c] = exact_divide(s, A[k][k]);
    }
  }
  ScalarMatrix x(n, std::vector<Scalar>(m));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (!X[r][c].is_zero()) x[r][c] = Scalar(X[r][c], det);
  return x;
}

ScalarMatrix inverse(const ScalarMatrix& a) {
  ScalarMatrix id(a.size(), std::vector<Scalar>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) id[k][k] = Scalar(1);
  return solve(a, id);
}

std::vector<Scalar> multiply(const ScalarMatrix& a, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!a[r][c].is_zero() && !v[c].is_zero()) out[r] += a[r][c] * v[c];
  return out;
}

}  // namespace qcanon
