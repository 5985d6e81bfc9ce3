#pragma once

// Seeded instance generators. Every public generator is a deterministic
// function of its arguments; the Stream& overloads are the building blocks
// used by the suites and searches.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "effalg/quantum.hpp"
#include "effalg/rng.hpp"

namespace effalg {

namespace detail {

inline void require_generator_dim(long dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw ValidationError("generator dimension " + std::to_string(dim) + " outside [1, " +
                              std::to_string(kMaxDim) + "]");
    }
}

/// Inverse square root of a positive definite matrix.
inline Matrix inverse_sqrt(const Matrix& S) {
    const auto eig = hermitian_eigendecomposition(S);
    return apply_borel_function(eig, [](double t) { return cplx(1.0 / std::sqrt(t)); });
}

} // namespace detail

/// Hermitian matrix with Gaussian entries, shifted and scaled so its spectrum spans [0, 1].
inline Matrix random_effect_matrix(long dim, Stream& rng) {
    const Matrix G = gaussian_matrix(dim, rng);
    const Matrix H = hermitian_part(G);
    const Eigen::VectorXd ev = hermitian_eigenvalues(H);
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (hi - lo <= 1e-12) return identity(dim);
    return hermitian_part((H - lo * identity(dim)) / (hi - lo));
}

inline EffectOperator random_effect(long dim, std::uint64_t seed) {
    detail::require_generator_dim(dim);
    Stream rng(seed);
    return validate_effect(random_effect_matrix(dim, rng));
}

inline DensityOperator random_density(long dim, std::uint64_t seed) {
    detail::require_generator_dim(dim);
    for (std::uint64_t attempt = 0;; ++attempt) {
        Stream rng(attempt == 0 ? seed : derive_seed(seed, attempt));
        const Matrix M = gaussian_matrix(dim, rng);
        const Matrix P = M * M.adjoint();
        const double tr = P.trace().real();
        if (tr > 0) return validate_density(hermitian_part(P / tr));
    }
}

/// Elements U diag(weights[k]) U*; weights[k][i] is the weight of outcome k on basis vector i.
inline std::vector<Matrix> povm_in_basis(const Matrix& U,
                                         const std::vector<std::vector<double>>& weights) {
    std::vector<Matrix> out;
    out.reserve(weights.size());
    for (const auto& w : weights) {
        Eigen::VectorXcd diag(U.cols());
        for (long i = 0; i < U.cols(); ++i) diag(i) = w[static_cast<std::size_t>(i)];
        out.push_back(hermitian_part(U * diag.asDiagonal() * U.adjoint()));
    }
    return out;
}

/// m outcome-weight vectors whose columns are independent uniform simplex points.
inline std::vector<std::vector<double>> random_simplex_columns(long dim, std::size_t m,
                                                               Stream& rng) {
    std::vector<std::vector<double>> weights(m, std::vector<double>(static_cast<std::size_t>(dim)));
    for (long i = 0; i < dim; ++i) {
        const auto p = random_simplex_point(m, rng);
        for (std::size_t k = 0; k < m; ++k) weights[k][static_cast<std::size_t>(i)] = p[k];
    }
    return weights;
}

inline std::vector<Matrix> random_povm_matrices(long dim, std::size_t m, Stream& rng) {
    for (;;) {
        std::vector<Matrix> G;
        Matrix S = Matrix::Zero(dim, dim);
        for (std::size_t k = 0; k < m; ++k) {
            const Matrix M = gaussian_matrix(dim, rng);
            G.push_back(M * M.adjoint());
            S += G.back();
        }
        S = hermitian_part(S);
        const Eigen::VectorXd ev = hermitian_eigenvalues(S);
        if (ev.minCoeff() <= 1e-12 * std::max(1.0, ev.maxCoeff())) continue;
        const Matrix R = detail::inverse_sqrt(S);
        for (auto& g : G) g = hermitian_part(R * g * R);
        return G;
    }
}

inline Povm random_povm(long dim, std::size_t m, std::uint64_t seed) {
    detail::require_generator_dim(dim);
    if (m < 1) throw ValidationError("POVM needs at least one outcome");
    Stream rng(seed);
    return validate_povm(random_povm_matrices(dim, m, rng), {}, "random_povm");
}

inline std::pair<Povm, Povm> random_commuting_povm_pair(long dim, std::size_t m, std::size_t n,
                                                        std::uint64_t seed) {
    detail::require_generator_dim(dim);
    if (m < 1 || n < 1) throw ValidationError("POVM needs at least one outcome");
    Stream rng(seed);
    const Matrix U = random_unitary(dim, rng);
    const auto p = random_simplex_columns(dim, m, rng);
    const auto q = random_simplex_columns(dim, n, rng);
    return {validate_povm(povm_in_basis(U, p), {}, "X"), validate_povm(povm_in_basis(U, q), {}, "Y")};
}

/// Group projectors of a random unitary basis split into `parts` non-empty groups.
inline std::vector<Matrix> random_pvm_matrices(long dim, std::size_t parts, Stream& rng) {
    const Matrix U = random_unitary(dim, rng);
    std::vector<std::size_t> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    std::vector<std::size_t> group(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < order.size(); ++i) {
        group[order[i]] = i < parts ? i : rng.index(parts);
    }
    std::vector<Matrix> out(parts, Matrix::Zero(dim, dim));
    for (long i = 0; i < dim; ++i) {
        out[group[static_cast<std::size_t>(i)]] += U.col(i) * U.col(i).adjoint();
    }
    for (auto& P : out) P = hermitian_part(P);
    return out;
}

inline Povm random_pvm(long dim, std::size_t parts, std::uint64_t seed) {
    detail::require_generator_dim(dim);
    if (parts < 1 || static_cast<long>(parts) > dim) {
        throw ValidationError("PVM parts must lie in [1, dim]");
    }
    Stream rng(seed);
    return validate_povm(random_pvm_matrices(dim, parts, rng), {}, "random_pvm");
}

/// Rank-r orthogonal projection onto a random subspace.
inline Matrix random_projection(long dim, long rank, Stream& rng) {
    const Matrix U = random_unitary(dim, rng);
    const auto block = U.leftCols(rank);
    return hermitian_part(block * block.adjoint());
}

/// Random effect C with C <= I - B, i.e. B + C is still an effect.
inline Matrix random_effect_below_complement(const Matrix& B, Stream& rng) {
    const long d = B.rows();
    const Matrix root = psd_sqrt(hermitian_part(identity(d) - B));
    return hermitian_part(root * random_effect_matrix(d, rng) * root);
}

/// Normal matrix U diag(z) U* with complex Gaussian eigenvalues, some of them zero.
inline Matrix random_normal_matrix(long dim, Stream& rng, double zero_fraction = 0.25) {
    const Matrix U = random_unitary(dim, rng);
    Eigen::VectorXcd z(dim);
    for (long i = 0; i < dim; ++i) {
        z(i) = rng.uniform() < zero_fraction ? cplx(0.0) : rng.complex_normal();
    }
    return U * z.asDiagonal() * U.adjoint();
}

} // namespace effalg
