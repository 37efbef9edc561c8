#ifndef QCANON_LINALG_HPP
#define QCANON_LINALG_HPP

#include <vector>

#include "qcanon/qfield.hpp"

namespace qcanon {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Solves A X = B for square nonsingular A by fraction-free elimination over
// Q[q, q^-1]: rows are cleared of denominators, then eliminated Bareiss-style
// with pivots of smallest size. Throws IntegrityError if A is singular.
ScalarMatrix solve(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix inverse(const ScalarMatrix& a);
std::vector<Scalar> multiply(const ScalarMatrix& a, const std::vector<Scalar>& v);

}  // namespace qcanon

#endif
