#pragma once

// Test-only helpers: literal matrix builders and a closed-form 2x2 Hermitian
// eigen-oracle that does not touch the library's eigensolver.

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "effalg/matcore.hpp"

namespace effalg::testing {

inline Matrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
    const long n = static_cast<long>(rows.size());
    Matrix M(n, n);
    long i = 0;
    for (const auto& row : rows) {
        long j = 0;
        for (const auto& v : row) M(i, j++) = v;
        ++i;
    }
    return M;
}

inline Matrix diag(std::initializer_list<double> values) {
    const long n = static_cast<long>(values.size());
    Matrix M = Matrix::Zero(n, n);
    long i = 0;
    for (double v : values) M(i, i) = v, ++i;
    return M;
}

/// |+><+| = [[1/2, 1/2], [1/2, 1/2]].
inline Matrix plus_projector() { return mat({{0.5, 0.5}, {0.5, 0.5}}); }

struct TwoByTwoEigen {
    double low, high;
    Matrix low_projector, high_projector;
};

/// Hermitian [[a, b], [conj(b), d]]: lambda = (a+d)/2 -+ sqrt(((a-d)/2)^2 + |b|^2),
/// projector onto one eigenvalue = (M - other I) / (this - other).
inline TwoByTwoEigen eigen_2x2(const Matrix& M) {
    const double a = M(0, 0).real();
    const double d = M(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(M(0, 1)));
    TwoByTwoEigen e{mid - rad, mid + rad, {}, {}};
    const Matrix I = Matrix::Identity(2, 2);
    e.low_projector = (M - e.high * I) / (e.low - e.high);
    e.high_projector = (M - e.low * I) / (e.high - e.low);
    return e;
}

inline double max_abs_entry(const Matrix& M) { return M.cwiseAbs().maxCoeff(); }

} // namespace effalg::testing
