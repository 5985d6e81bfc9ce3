#pragma once

// Randomized property suites for a phase family: the five sequential-product
// axioms and the functional-calculus identities of the phase map. Each
// property is evaluated on hypothesis-targeted instances and reports its
// worst residual.

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "effalg/generators.hpp"
#include "effalg/seqprod.hpp"

namespace effalg {

struct PropertyResult {
    std::string name;
    double max_residual = 0;
    double threshold = 0;
    std::uint64_t instances = 0;

    bool passed() const { return max_residual < threshold; }
    void record(double residual) {
        // NaN must never look like a pass.
        if (!(residual <= max_residual)) max_residual = residual;
        ++instances;
    }
};

struct SuiteReport {
    std::string suite;
    std::vector<PropertyResult> properties;

    bool passed() const {
        for (const auto& p : properties)
            if (!p.passed()) return false;
        return true;
    }
    const PropertyResult* find(const std::string& name) const {
        for (const auto& p : properties)
            if (p.name == name) return &p;
        return nullptr;
    }
};

namespace detail {

/// Largest excursion of the spectrum of a Hermitian matrix outside [0, 1].
inline double effect_overshoot(const Matrix& M) {
    const Eigen::VectorXd ev = hermitian_eigenvalues(M);
    return std::max({0.0, -ev.minCoeff(), ev.maxCoeff() - 1.0});
}

inline Matrix block_diagonal(const Matrix& top, const Matrix& bottom) {
    const long r = top.rows();
    const long s = bottom.rows();
    Matrix out = Matrix::Zero(r + s, r + s);
    out.topLeftCorner(r, r) = top;
    out.bottomRightCorner(s, s) = bottom;
    return out;
}

inline Matrix conjugate_by(const Matrix& U, const Matrix& M) {
    return hermitian_part(U * M * U.adjoint());
}

inline Matrix diagonal_in_basis(const Matrix& U, const std::vector<double>& values) {
    Eigen::VectorXcd d(U.cols());
    for (long i = 0; i < U.cols(); ++i) d(i) = values[static_cast<std::size_t>(i)];
    return hermitian_part(U * d.asDiagonal() * U.adjoint());
}

inline std::vector<double> uniform_values(long n, Stream& rng, double lo = 0.0, double hi = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
    return v;
}

/// Chebyshev interpolant of f on [lo, hi] evaluated at the Hermitian matrix A
/// by the matrix Clenshaw recurrence. Uses only matrix products, no spectrum.
template <typename F>
Matrix chebyshev_matrix_function(const Matrix& A, F&& f, double lo, double hi, int nodes) {
    const long d = A.rows();
    std::vector<cplx> coeff(static_cast<std::size_t>(nodes));
    for (int j = 0; j < nodes; ++j) {
        cplx sum = 0;
        for (int k = 0; k < nodes; ++k) {
            const double theta = std::numbers::pi * (k + 0.5) / nodes;
            const double t = 0.5 * (hi + lo) + 0.5 * (hi - lo) * std::cos(theta);
            sum += f(t) * std::cos(j * theta);
        }
        coeff[static_cast<std::size_t>(j)] = sum * (2.0 / nodes);
    }
    coeff[0] *= 0.5;
    const Matrix X = (2.0 * A - (hi + lo) * identity(d)) / (hi - lo);
    Matrix b1 = Matrix::Zero(d, d);
    Matrix b2 = Matrix::Zero(d, d);
    for (int j = nodes - 1; j >= 1; --j) {
        Matrix b0 = 2.0 * X * b1 - b2;
        b0.diagonal().array() += coeff[static_cast<std::size_t>(j)];
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    Matrix out = X * b1 - b2;
    out.diagonal().array() += coeff[0];
    return out;
}

} // namespace detail

/// Randomized checks of the five sequential-product axioms.
///
/// additivity:          A<>B + A<>C = A<>(B+C) and the sum stays an effect, for C <= I-B
/// identity:            I<>A = A
/// orthogonality:       A<>B = 0 forces B<>A = 0 (orthogonal-range pairs)
/// commuting_pairs:     for A<>B = B<>A: A<>(I-B) = (I-B)<>A and A<>(B<>C) = (A<>B)<>C
/// commutant_closure:   C commuting with A and B commutes with A<>B and with A+B
inline SuiteReport verify_axioms(const PhaseFamily& fam, long dim, std::uint64_t trials,
                                 std::uint64_t seed, double threshold = 1e-9) {
    SuiteReport report{"axioms", {}};
    if (trials == 0) return report;
    detail::require_generator_dim(dim);
    PropertyResult additivity{"additivity", 0, threshold, 0};
    PropertyResult unit{"identity", 0, threshold, 0};
    PropertyResult orthogonality{"orthogonality", 0, threshold, 0};
    PropertyResult commuting{"commuting_pairs", 0, threshold, 0};
    PropertyResult closure{"commutant_closure", 0, threshold, 0};
    const Matrix I = identity(dim);
    const EffectOperator unit_effect = validate_effect(I);
    auto dist = [](const Matrix& M, const Matrix& N) { return frobenius_distance(M, N); };

    for (std::uint64_t t = 0; t < trials; ++t) {
        Stream rng(derive_seed(seed, t));

        {
            const auto A = validate_effect(random_effect_matrix(dim, rng));
            const Matrix B = random_effect_matrix(dim, rng);
            const Matrix C = random_effect_below_complement(B, rng);
            const Matrix AB = sequential_product_matrix(fam, A, B);
            const Matrix AC = sequential_product_matrix(fam, A, C);
            const Matrix ABC = sequential_product_matrix(fam, A, B + C);
            additivity.record(std::max(dist(AB + AC, ABC), detail::effect_overshoot(AB + AC)));
        }
        {
            const auto A = validate_effect(random_effect_matrix(dim, rng));
            unit.record(dist(sequential_product_matrix(fam, unit_effect, A.matrix()), A.matrix()));
        }
        {
            // A and B live on orthogonal complementary subspaces.
            Matrix a, b;
            if (dim == 1) {
                a = random_effect_matrix(1, rng) * rng.uniform();
                b = Matrix::Zero(1, 1);
            } else {
                const long r = 1 + static_cast<long>(rng.index(static_cast<std::size_t>(dim - 1)));
                const Matrix U = random_unitary(dim, rng);
                a = detail::conjugate_by(U, detail::block_diagonal(random_effect_matrix(r, rng),
                                                                   Matrix::Zero(dim - r, dim - r)));
                b = detail::conjugate_by(U, detail::block_diagonal(Matrix::Zero(r, r),
                                                                   random_effect_matrix(dim - r, rng)));
            }
            const auto A = validate_effect(a);
            const auto B = validate_effect(b);
            const Matrix AB = sequential_product_matrix(fam, A, B.matrix());
            const Matrix BA = sequential_product_matrix(fam, B, A.matrix());
            orthogonality.record(std::max(AB.norm(), dist(AB, BA)));
        }
        {
            const Matrix U = random_unitary(dim, rng);
            const auto A = validate_effect(detail::diagonal_in_basis(U, detail::uniform_values(dim, rng)));
            const auto B = validate_effect(detail::diagonal_in_basis(U, detail::uniform_values(dim, rng)));
            const auto C = validate_effect(random_effect_matrix(dim, rng));
            const auto notB = validate_effect(I - B.matrix());
            const Matrix AB = sequential_product_matrix(fam, A, B.matrix());
            const Matrix BA = sequential_product_matrix(fam, B, A.matrix());
            const double complement = dist(sequential_product_matrix(fam, A, notB.matrix()),
                                           sequential_product_matrix(fam, notB, A.matrix()));
            const auto A_then_B = validate_effect(AB);
            const Matrix left = sequential_product_matrix(fam, A, sequential_product_matrix(fam, B, C.matrix()));
            const Matrix right = sequential_product_matrix(fam, A_then_B, C.matrix());
            commuting.record(std::max({dist(AB, BA), complement, dist(left, right)}));
        }
        {
            Matrix a, b, c;
            if (t % 2 == 0 || dim == 1) {
                // Common eigenbasis; (a_i, b_i, rest) is a simplex point so A + B <= I.
                const Matrix U = random_unitary(dim, rng);
                std::vector<double> av, bv;
                for (long i = 0; i < dim; ++i) {
                    const auto p = random_simplex_point(3, rng);
                    av.push_back(p[0]);
                    bv.push_back(p[1]);
                }
                a = detail::diagonal_in_basis(U, av);
                b = detail::diagonal_in_basis(U, bv);
                c = detail::diagonal_in_basis(U, detail::uniform_values(dim, rng));
            } else {
                // C has two degenerate eigenspaces; A and B are block diagonal
                // with respect to them but need not commute with each other.
                const long r = 1 + static_cast<long>(rng.index(static_cast<std::size_t>(dim - 1)));
                const Matrix U = random_unitary(dim, rng);
                const Matrix a1 = random_effect_matrix(r, rng);
                const Matrix a2 = random_effect_matrix(dim - r, rng);
                const Matrix b1 = random_effect_below_complement(a1, rng);
                const Matrix b2 = random_effect_below_complement(a2, rng);
                const double c1 = rng.uniform();
                const double c2 = rng.uniform();
                a = detail::conjugate_by(U, detail::block_diagonal(a1, a2));
                b = detail::conjugate_by(U, detail::block_diagonal(b1, b2));
                c = detail::conjugate_by(U, detail::block_diagonal(c1 * identity(r), c2 * identity(dim - r)));
            }
            const auto A = validate_effect(a);
            const auto B = validate_effect(b);
            const auto C = validate_effect(c);
            const auto AB = validate_effect(sequential_product_matrix(fam, A, B.matrix()));
            const auto sum = validate_effect(A.matrix() + B.matrix());
            const double hyp = std::max(
                dist(sequential_product_matrix(fam, C, A.matrix()), sequential_product_matrix(fam, A, C.matrix())),
                dist(sequential_product_matrix(fam, C, B.matrix()), sequential_product_matrix(fam, B, C.matrix())));
            const double with_product = dist(sequential_product_matrix(fam, C, AB.matrix()),
                                             sequential_product_matrix(fam, AB, C.matrix()));
            const double with_sum = dist(sequential_product_matrix(fam, C, sum.matrix()),
                                         sequential_product_matrix(fam, sum, C.matrix()));
            closure.record(std::max({hyp, with_product, with_sum}));
        }
    }
    report.properties = {additivity, unit, orthogonality, commuting, closure};
    return report;
}

/// Randomized checks of the phase map A -> f_A(A).
///
/// unitarity_modulus:   f(A) f(A)* = f(A)* f(A) = A
/// kernel:              f(A) vanishes on ker A (threshold kernel_threshold)
/// spectral_formula:    spectral evaluation agrees with a spectrum-free Chebyshev
///                      matrix polynomial (spectra in [0.2, 1]) and with Horner
///                      evaluation of random polynomials
/// projection:          f(E) = xi0 E for orthogonal projections E
/// closure:             A <> B is an effect (spectral excursion below kernel_threshold)
inline SuiteReport verify_phase_calculus(const PhaseFamily& fam, long dim, std::uint64_t trials,
                                         std::uint64_t seed, double threshold = 1e-9,
                                         double kernel_threshold = 1e-10) {
    SuiteReport report{"phase_calculus", {}};
    if (trials == 0) return report;
    detail::require_generator_dim(dim);
    PropertyResult modulus{"unitarity_modulus", 0, threshold, 0};
    PropertyResult kernel{"kernel", 0, kernel_threshold, 0};
    PropertyResult spectral{"spectral_formula", 0, threshold, 0};
    PropertyResult projection{"projection", 0, threshold, 0};
    PropertyResult closure{"closure", 0, kernel_threshold, 0};
    const Matrix I = identity(dim);

    for (std::uint64_t t = 0; t < trials; ++t) {
        Stream rng(derive_seed(seed, t));
        {
            const auto A = validate_effect(random_effect_matrix(dim, rng));
            const Matrix F = phase_apply(fam, A);
            modulus.record(std::max(frobenius_distance(F * F.adjoint(), A.matrix()),
                                    frobenius_distance(F.adjoint() * F, A.matrix())));
        }
        {
            const Matrix U = random_unitary(dim, rng);
            const long zeros = 1 + static_cast<long>(rng.index(static_cast<std::size_t>(dim)));
            std::vector<double> values(static_cast<std::size_t>(dim), 0.0);
            for (long i = zeros; i < dim; ++i) values[static_cast<std::size_t>(i)] = 0.05 + 0.95 * rng.uniform();
            const auto A = validate_effect(detail::diagonal_in_basis(U, values));
            const auto K = U.leftCols(zeros);
            kernel.record(std::max((phase_apply(fam, A) * K).norm(), std::abs(fam(0.0))));
        }
        {
            const auto A = validate_effect(0.2 * I + 0.8 * random_effect_matrix(dim, rng));
            const Matrix by_spectrum = phase_apply(fam, A);
            const Matrix by_series = detail::chebyshev_matrix_function(A.matrix(), fam, 0.2, 1.0, 64);

            std::vector<cplx> poly(4);
            for (auto& a : poly) a = rng.complex_normal();
            auto eval = [&poly](double x) {
                cplx acc = 0;
                for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
                return acc;
            };
            Matrix horner = Matrix::Zero(dim, dim);
            for (auto it = poly.rbegin(); it != poly.rend(); ++it) horner = horner * A.matrix() + *it * I;
            spectral.record(std::max(frobenius_distance(by_spectrum, by_series),
                                     frobenius_distance(apply_borel_function(A.spectral(), eval), horner)));
        }
        {
            const long rank = static_cast<long>(rng.index(static_cast<std::size_t>(dim + 1)));
            const auto E = validate_effect(random_projection(dim, rank, rng));
            projection.record(frobenius_distance(phase_apply(fam, E), fam.xi0() * E.matrix()));
        }
        {
            const auto A = validate_effect(random_effect_matrix(dim, rng));
            const Matrix B = random_effect_matrix(dim, rng);
            const Matrix P = sequential_product_matrix(fam, A, B);
            closure.record(std::max(detail::effect_overshoot(P), frobenius_distance(P, P.adjoint())));
        }
    }
    report.properties = {modulus, kernel, spectral, projection, closure};
    return report;
}

} // namespace effalg
