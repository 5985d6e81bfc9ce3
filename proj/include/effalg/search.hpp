#pragma once

// Randomized searches. Both are deterministic functions of (seed, trials):
// attempt i draws from Stream(derive_seed(seed, i)).

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "effalg/criteria.hpp"
#include "effalg/generators.hpp"

namespace effalg {

// ---------------------------------------------------------------------------
// Normal absorption: look for normal A and effect B with AB = BAB but AB != BA.

struct AbsorptionCounterexample {
    std::uint64_t index = 0;
    Matrix A;
    Matrix B;
    AbsorptionCheck check;
};

struct AbsorptionSearchResult {
    std::uint64_t attempts = 0;
    std::uint64_t hypothesis_hits = 0;
    double min_hypothesis_residual = std::numeric_limits<double>::infinity();
    std::vector<AbsorptionCounterexample> counterexamples;
};

struct AbsorptionSearchOptions {
    std::vector<long> dims{2, 3, 4};
    int descent_steps = 25;
    double hypothesis_tol = 1e-8;
    double conclusion_tol = 1e-6;
};

namespace detail {

/// Nearest effect in Frobenius norm: clamp the spectrum into [0, 1].
inline Matrix project_to_effects(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(M));
    const Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
    const Matrix& V = solver.eigenvectors();
    return hermitian_part(V * clamped.cast<cplx>().asDiagonal() * V.adjoint());
}

/// Projected gradient descent on |AB - BAB|_F^2 over effects B.
inline Matrix absorption_descent(const Matrix& A, Matrix B, int steps) {
    const Matrix Aa = A.adjoint();
    const double step = 0.5 / (1.0 + A.squaredNorm());
    for (int s = 0; s < steps; ++s) {
        const Matrix R = A * B - B * A * B;
        const Matrix G = Aa * R - R * B * Aa - Aa * B * R;
        B = project_to_effects(B - step * hermitian_part(G));
    }
    return B;
}

} // namespace detail

inline AbsorptionSearchResult absorption_search(std::uint64_t trials, std::uint64_t seed,
                                                const AbsorptionSearchOptions& opt = {}) {
    AbsorptionSearchResult out;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Stream rng(derive_seed(seed, i));
        const long d = opt.dims[i % opt.dims.size()];
        const Matrix A = random_normal_matrix(d, rng);
        Matrix B0;
        switch (i % 3) {
        case 0: B0 = random_effect_matrix(d, rng); break;
        case 1: {
            // Start near a projection: the hypothesis surface contains every
            // projection that commutes with A.
            const long rank = static_cast<long>(rng.index(static_cast<std::size_t>(d + 1)));
            B0 = random_projection(d, rank, rng) + 0.05 * hermitian_part(gaussian_matrix(d, rng));
            break;
        }
        default: B0 = rng.uniform() * random_effect_matrix(d, rng); break;
        }
        const Matrix B = detail::absorption_descent(A, detail::project_to_effects(B0), opt.descent_steps);
        const auto check = absorption_check(A, validate_effect(B), opt.hypothesis_tol, opt.conclusion_tol);
        ++out.attempts;
        out.min_hypothesis_residual = std::min(out.min_hypothesis_residual, check.hypothesis_residual);
        if (check.hypothesis) ++out.hypothesis_hits;
        if (!check.consistent) out.counterexamples.push_back({i, A, B, check});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Occurrence criterion without compatibility.

struct OccurrenceWitness {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::vector<Matrix> X;
    std::vector<Matrix> Y;
    Matrix W;
    double residual = 0;               // max_j |tr(B_j W) - sum_k tr((A_k<>B_j) W)|
    double compatibility_residual = 0; // scaled max commutator
};

struct OccurrenceGapFindings {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    /// W = I/d witness; always present.
    OccurrenceWitness maximally_mixed;
    /// Constructed (X, Y, W) with the per-state criterion true and X, Y incompatible.
    std::vector<OccurrenceWitness> fixed_state;
    std::uint64_t fixed_state_found = 0;

    // All-state track: smallest occurrence residual among pairs that stay
    // incompatible by at least `margin`.
    double margin = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    std::optional<std::uint64_t> best_index;
    std::vector<Matrix> best_X;
    std::vector<Matrix> best_Y;
    std::vector<double> trajectory; // running minimum after each trial
};

struct OccurrenceSearchOptions {
    std::size_t outcomes = 2;
    double margin = 1e-3;
    double perturbation = 0.1;
    std::size_t max_witnesses = 8;
    GapTolerances gap{};
};

namespace detail {

inline std::vector<Matrix> povm_matrices(const Povm& X) {
    std::vector<Matrix> out;
    for (const auto& A : X) out.push_back(A.matrix());
    return out;
}

/// Renormalized POVM {S^-1/2 (A_k + eps G_k G_k*) S^-1/2}.
inline std::vector<Matrix> perturb_povm(const std::vector<Matrix>& elements, double eps, Stream& rng) {
    const long d = elements.front().rows();
    std::vector<Matrix> G;
    Matrix S = Matrix::Zero(d, d);
    for (const auto& A : elements) {
        const Matrix M = gaussian_matrix(d, rng);
        G.push_back(A + eps * (M * M.adjoint()) / static_cast<double>(d));
        S += G.back();
    }
    const Matrix R = inverse_sqrt(hermitian_part(S));
    for (auto& g : G) g = hermitian_part(R * g * R);
    return G;
}

/// State I/d + s H with H Hermitian, traceless and orthogonal to every
/// D_j = sum_k A_k<>B_j - B_j, so tr(D_j W) = 0 for all j.
inline std::optional<Matrix> balanced_state(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                            Stream& rng) {
    const long d = X.dim();
    std::vector<Matrix> basis; // orthonormal in the real Hilbert-Schmidt inner product
    auto add = [&basis](Matrix M) {
        for (const auto& Q : basis) M -= trace_of_product(Q.adjoint(), M).real() * Q;
        const double n = M.norm();
        if (n > 1e-9) basis.push_back(M / n);
    };
    add(identity(d));
    for (const auto& B : Y) add(heisenberg_image_matrix(fam, X, B.matrix()) - B.matrix());
    Matrix H = hermitian_part(gaussian_matrix(d, rng));
    for (const auto& Q : basis) H -= trace_of_product(Q.adjoint(), H).real() * Q;
    H = hermitian_part(H);
    const Eigen::VectorXd ev = hermitian_eigenvalues(H);
    const double spread = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
    if (spread < 1e-9) return std::nullopt;
    const double s = 0.5 / (static_cast<double>(d) * spread);
    return Matrix(identity(d) / static_cast<double>(d) + s * H);
}

inline OccurrenceWitness make_witness(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                      const DensityOperator& W, std::uint64_t seed,
                                      std::uint64_t index, const GapTolerances& gap) {
    const auto report = check_occurrence_in_state(fam, X, Y, W, gap);
    return {seed, index, povm_matrices(X), povm_matrices(Y), W.matrix(), report.max_residual,
            compatibility_residual(X, Y)};
}

} // namespace detail

/// Stream index reserved for the maximally mixed witness pair.
inline constexpr std::uint64_t kWitnessStream = 0xFFFF'FFFF'FFFF'FFFFULL;

inline OccurrenceGapFindings search_occurrence_gap(const PhaseFamily& fam, long dim,
                                                   std::uint64_t trials, std::uint64_t seed,
                                                   const OccurrenceSearchOptions& opt = {}) {
    detail::require_generator_dim(dim);
    if (dim < 2) throw ValidationError("incompatible POVM pairs need dim >= 2");
    OccurrenceGapFindings out;
    out.seed = seed;
    out.trials = trials;
    out.margin = opt.margin;

    {
        Stream rng(derive_seed(seed, kWitnessStream));
        for (;;) {
            const Povm X = validate_povm(random_povm_matrices(dim, opt.outcomes, rng), {}, "X");
            const Povm Y = validate_povm(random_povm_matrices(dim, opt.outcomes, rng), {}, "Y");
            if (compatibility_residual(X, Y) <= opt.gap.classify) continue;
            const auto W = validate_density(identity(dim) / static_cast<double>(dim));
            out.maximally_mixed = detail::make_witness(fam, X, Y, W, seed, kWitnessStream, opt.gap);
            break;
        }
    }

    std::vector<Matrix> best_X, best_Y;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Stream rng(derive_seed(seed, i));
        std::vector<Matrix> xs, ys;
        if (best_X.empty() || i % 2 == 0) {
            xs = random_povm_matrices(dim, opt.outcomes, rng);
            ys = random_povm_matrices(dim, opt.outcomes, rng);
        } else {
            xs = detail::perturb_povm(best_X, opt.perturbation * rng.uniform(), rng);
            ys = detail::perturb_povm(best_Y, opt.perturbation * rng.uniform(), rng);
        }
        const Povm X = validate_povm(xs, {}, "X");
        const Povm Y = validate_povm(ys, {}, "Y");
        const double incompatibility = compatibility_residual(X, Y);

        if (incompatibility >= opt.margin) {
            const double residual = check_occurrence(fam, X, Y, opt.gap).max_residual;
            if (residual < out.best_residual) {
                out.best_residual = residual;
                out.best_index = i;
                best_X = std::move(xs);
                best_Y = std::move(ys);
            }
        }
        out.trajectory.push_back(out.best_residual);

        if (incompatibility > opt.gap.classify) {
            if (auto w = detail::balanced_state(fam, X, Y, rng)) {
                const auto W = validate_density(*w);
                auto witness = detail::make_witness(fam, X, Y, W, seed, i, opt.gap);
                if (witness.residual <= opt.gap.check) {
                    ++out.fixed_state_found;
                    if (out.fixed_state.size() < opt.max_witnesses) out.fixed_state.push_back(std::move(witness));
                }
            }
        }
    }
    out.best_X = std::move(best_X);
    out.best_Y = std::move(best_Y);
    return out;
}

} // namespace effalg
