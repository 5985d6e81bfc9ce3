#pragma once

// Dense complex matrix helpers, clustered Hermitian eigendecomposition and
// Borel functional calculus. Everything here is a pure function of its
// arguments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "effalg/errors.hpp"

namespace effalg {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Largest Hilbert-space dimension accepted anywhere in the library.
inline constexpr long kMaxDim = 64;

struct Tolerances {
    /// Raw eigenvalues closer than this are merged into one cluster.
    double eig_cluster = 1e-10;
    /// Matrix equality threshold, before scaling by dim and operand norm.
    double mat_eq = 1e-9;
    /// Allowed spectral overshoot outside [0, 1] for effects.
    double psd_slack = 1e-10;

    void validate() const {
        if (!(eig_cluster > 0) || !(mat_eq > 0) || !(psd_slack > 0)) {
            throw ValidationError("tolerances must be strictly positive");
        }
    }
};

inline Matrix identity(long dim) { return Matrix::Identity(dim, dim); }

/// Throws unless M is a square, finite matrix with 1 <= dim <= kMaxDim.
inline void require_operator(const Matrix& M, const std::string& what = "matrix") {
    if (M.rows() != M.cols()) {
        throw ValidationError(what + " is not square");
    }
    if (M.rows() < 1 || M.rows() > kMaxDim) {
        throw ValidationError(what + " dimension " + std::to_string(M.rows()) +
                              " outside [1, " + std::to_string(kMaxDim) + "]");
    }
    if (!M.allFinite()) {
        throw ValidationError(what + " has non-finite entries");
    }
}

inline void require_same_dim(const Matrix& M, const Matrix& N) {
    if (M.rows() != N.rows() || M.cols() != N.cols()) {
        throw DimensionMismatch(M.rows(), N.rows());
    }
}

inline Matrix adjoint(const Matrix& M) { return M.adjoint(); }

inline double frobenius_distance(const Matrix& M, const Matrix& N) {
    require_same_dim(M, N);
    return (M - N).norm();
}

/// tol * dim * max(1, |M|_F, |N|_F): residuals grow with dimension and scale.
inline double scaled_tolerance(double tol, const Matrix& M, const Matrix& N) {
    const double scale = std::max({1.0, M.norm(), N.norm()});
    return tol * static_cast<double>(M.rows()) * scale;
}

inline bool approx_equal(const Matrix& M, const Matrix& N, double tol) {
    return frobenius_distance(M, N) <= scaled_tolerance(tol, M, N);
}

/// |M - N|_F divided by the scale used in scaled_tolerance, so that
/// approx_equal(M, N, tol) <=> scaled_distance(M, N) <= tol.
inline double scaled_distance(const Matrix& M, const Matrix& N) {
    return frobenius_distance(M, N) / scaled_tolerance(1.0, M, N);
}

inline Matrix hermitian_part(const Matrix& M) { return (M + M.adjoint()) * 0.5; }

inline bool is_hermitian(const Matrix& M, const Tolerances& tol = {}) {
    if (M.rows() != M.cols()) return false;
    const Matrix Ma = M.adjoint();
    return approx_equal(M, Ma, tol.mat_eq);
}

inline bool is_normal(const Matrix& M, const Tolerances& tol = {}) {
    if (M.rows() != M.cols()) return false;
    const Matrix left = M * M.adjoint();
    const Matrix right = M.adjoint() * M;
    return approx_equal(left, right, tol.mat_eq);
}

inline double commutator_norm(const Matrix& A, const Matrix& B) {
    require_same_dim(A, B);
    return frobenius_distance(A * B, B * A);
}

inline cplx trace_of_product(const Matrix& A, const Matrix& B) {
    require_same_dim(A, B);
    // tr(AB) = sum_ij A_ij B_ji
    return (A.array() * B.transpose().array()).sum();
}

/// Clustered spectral form M = sum_k eigenvalues[k] * projectors[k].
struct SpectralDecomposition {
    std::vector<double> eigenvalues; // ascending, distinct after clustering
    std::vector<Matrix> projectors;

    long dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }
    std::size_t size() const { return eigenvalues.size(); }

    Matrix reconstruct() const {
        Matrix out = Matrix::Zero(dim(), dim());
        for (std::size_t k = 0; k < size(); ++k) out += eigenvalues[k] * projectors[k];
        return out;
    }
};

/// Sorted raw eigenvalues of a Hermitian matrix (no clustering).
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(M), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverFailure("Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

/// Eigendecomposition of a Hermitian matrix with eigenvalue clustering.
///
/// The input is symmetrized as (M + M*)/2 first. Consecutive sorted
/// eigenvalues closer than tol.eig_cluster are chained into one cluster
/// whose value is the member mean and whose projector is the sum of the
/// member rank-1 projectors.
inline SpectralDecomposition hermitian_eigendecomposition(const Matrix& M,
                                                          const Tolerances& tol = {}) {
    require_operator(M);
    if (!is_hermitian(M, tol)) {
        throw ValidationError("eigendecomposition requires a Hermitian matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(M));
    if (solver.info() != Eigen::Success) {
        throw EigenSolverFailure("Hermitian eigensolver did not converge");
    }
    const Eigen::VectorXd& raw = solver.eigenvalues();
    const Matrix& vecs = solver.eigenvectors();
    const long d = M.rows();

    SpectralDecomposition out;
    long start = 0;
    for (long i = 1; i <= d; ++i) {
        if (i < d && raw(i) - raw(i - 1) < tol.eig_cluster) continue;
        const long count = i - start;
        const auto block = vecs.middleCols(start, count);
        out.eigenvalues.push_back(raw.segment(start, count).mean());
        out.projectors.push_back(block * block.adjoint());
        start = i;
    }
    return out;
}

template <typename F>
concept ScalarFunction = requires(F f, double t) {
    { f(t) } -> std::convertible_to<cplx>;
};

/// Returns sum_k f(lambda_k) E_k.
template <ScalarFunction F>
Matrix apply_borel_function(const SpectralDecomposition& S, F&& f) {
    Matrix out = Matrix::Zero(S.dim(), S.dim());
    for (std::size_t k = 0; k < S.size(); ++k) {
        const cplx value = f(S.eigenvalues[k]);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw UndefinedFunctionValue("function undefined at eigenvalue " +
                                         std::to_string(S.eigenvalues[k]));
        }
        out += value * S.projectors[k];
    }
    return out;
}

/// Hermitian and spectrum within [-psd_slack, 1 + psd_slack].
inline bool is_effect(const Matrix& M, const Tolerances& tol = {}) {
    if (M.rows() != M.cols() || M.rows() < 1 || !M.allFinite()) return false;
    if (!is_hermitian(M, tol)) return false;
    const Eigen::VectorXd ev = hermitian_eigenvalues(M);
    return ev.minCoeff() >= -tol.psd_slack && ev.maxCoeff() <= 1.0 + tol.psd_slack;
}

/// Principal square root of a positive semidefinite matrix (negative roundoff clipped).
inline Matrix psd_sqrt(const Matrix& M, const Tolerances& tol = {}) {
    const auto S = hermitian_eigendecomposition(M, tol);
    return apply_borel_function(S, [](double t) { return cplx(std::sqrt(std::max(t, 0.0))); });
}

} // namespace effalg
