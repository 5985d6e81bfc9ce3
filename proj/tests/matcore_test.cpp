#include "effalg/matcore.hpp"

#include <gtest/gtest.h>

#include "effalg/rng.hpp"
#include "test_support.hpp"

using namespace effalg;
using namespace effalg::testing;

namespace {

const cplx i1{0.0, 1.0};

Matrix random_hermitian(long d, Stream& rng) { return hermitian_part(gaussian_matrix(d, rng)); }

} // namespace

TEST(Adjoint, ConjugateTranspose) {
    EXPECT_EQ(adjoint(identity(3)), identity(3));
    EXPECT_EQ(adjoint(mat({{0, i1}, {0, 0}})), mat({{0, 0}, {-i1, 0}}));
    const Matrix H = mat({{1, 2.0 + i1}, {2.0 - i1, -3}});
    EXPECT_EQ(adjoint(H), H);
}

TEST(FrobeniusDistance, Values) {
    const Matrix M = mat({{1, i1}, {3, 4}});
    EXPECT_EQ(frobenius_distance(M, M), 0.0);
    EXPECT_DOUBLE_EQ(frobenius_distance(identity(2), Matrix::Zero(2, 2)), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(frobenius_distance(diag({1, 0}), diag({0, 1})), std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(frobenius_distance(M, identity(2)), frobenius_distance(identity(2), M));
}

TEST(FrobeniusDistance, DimensionMismatch) {
    EXPECT_THROW(frobenius_distance(identity(2), identity(3)), DimensionMismatch);
    EXPECT_THROW(commutator_norm(identity(2), identity(3)), DimensionMismatch);
}

TEST(RequireOperator, RejectsBadShapes) {
    EXPECT_THROW(require_operator(Matrix(2, 3)), ValidationError);
    EXPECT_THROW(require_operator(Matrix(0, 0)), ValidationError);
    EXPECT_THROW(require_operator(identity(kMaxDim + 1)), ValidationError);
    Matrix bad = identity(2);
    bad(0, 1) = std::nan("");
    EXPECT_THROW(require_operator(bad), ValidationError);
    EXPECT_NO_THROW(require_operator(identity(kMaxDim)));
}

TEST(HermitianEigen, ScalarMatrixIsOneCluster) {
    const auto S = hermitian_eigendecomposition(diag({0.5, 0.5}));
    ASSERT_EQ(S.size(), 1u);
    EXPECT_NEAR(S.eigenvalues[0], 0.5, 1e-15);
    EXPECT_LT(frobenius_distance(S.projectors[0], identity(2)), 1e-14);
}

TEST(HermitianEigen, Diagonal) {
    const auto S = hermitian_eigendecomposition(diag({0, 1}));
    ASSERT_EQ(S.size(), 2u);
    EXPECT_NEAR(S.eigenvalues[0], 0.0, 1e-15);
    EXPECT_NEAR(S.eigenvalues[1], 1.0, 1e-15);
    EXPECT_LT(frobenius_distance(S.projectors[0], diag({1, 0})), 1e-14);
    EXPECT_LT(frobenius_distance(S.projectors[1], diag({0, 1})), 1e-14);
}

TEST(HermitianEigen, PlusProjectorMatchesHandOracle) {
    const Matrix M = plus_projector();
    const auto oracle = eigen_2x2(M);
    // Hand values: eigenvalues 0, 1; projectors 1/2[[1,-1],[-1,1]] and 1/2[[1,1],[1,1]].
    EXPECT_DOUBLE_EQ(oracle.low, 0.0);
    EXPECT_DOUBLE_EQ(oracle.high, 1.0);
    EXPECT_LT(frobenius_distance(oracle.low_projector, mat({{0.5, -0.5}, {-0.5, 0.5}})), 1e-15);

    const auto S = hermitian_eigendecomposition(M);
    ASSERT_EQ(S.size(), 2u);
    EXPECT_NEAR(S.eigenvalues[0], oracle.low, 1e-15);
    EXPECT_NEAR(S.eigenvalues[1], oracle.high, 1e-15);
    EXPECT_LT(frobenius_distance(S.projectors[0], oracle.low_projector), 1e-14);
    EXPECT_LT(frobenius_distance(S.projectors[1], oracle.high_projector), 1e-14);
}

TEST(HermitianEigen, Random2x2AgreesWithOracle) {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Stream rng(s);
        const Matrix M = random_hermitian(2, rng);
        const auto oracle = eigen_2x2(M);
        const auto S = hermitian_eigendecomposition(M);
        ASSERT_EQ(S.size(), 2u);
        EXPECT_NEAR(S.eigenvalues[0], oracle.low, 1e-12);
        EXPECT_NEAR(S.eigenvalues[1], oracle.high, 1e-12);
        EXPECT_LT(frobenius_distance(S.projectors[0], oracle.low_projector), 1e-10);
    }
}

TEST(HermitianEigen, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eigendecomposition(mat({{0, 1}, {0, 0}})), ValidationError);
}

TEST(HermitianEigen, ReconstructionAndProjectorAlgebra) {
    const Tolerances tol;
    for (std::uint64_t s = 0; s < 300; ++s) {
        Stream rng(s);
        const long d = 1 + static_cast<long>(s % 6);
        const Matrix M = random_hermitian(d, rng);
        const auto S = hermitian_eigendecomposition(M);
        EXPECT_TRUE(approx_equal(S.reconstruct(), M, tol.mat_eq));
        Matrix sum = Matrix::Zero(d, d);
        for (std::size_t k = 0; k < S.size(); ++k) {
            const Matrix& E = S.projectors[k];
            EXPECT_TRUE(approx_equal(E * E, E, tol.mat_eq));
            EXPECT_TRUE(approx_equal(E.adjoint(), E, tol.mat_eq));
            for (std::size_t l = k + 1; l < S.size(); ++l) {
                EXPECT_LT((E * S.projectors[l]).norm(), tol.mat_eq * d);
            }
            if (k > 0) {
                EXPECT_GT(S.eigenvalues[k], S.eigenvalues[k - 1]);
            }
            sum += E;
        }
        EXPECT_TRUE(approx_equal(sum, identity(d), tol.mat_eq));
    }
}

TEST(HermitianEigen, ClusteringStableUnderSmallPerturbation) {
    const Tolerances tol;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Stream rng(s);
        const long d = 2 + static_cast<long>(s % 5);
        // Spectrum {0.2, 0.2, ..., 0.7}: two clusters, the first degenerate.
        const Matrix U = random_unitary(d, rng);
        Eigen::VectorXcd values = Eigen::VectorXcd::Constant(d, 0.2);
        values(d - 1) = 0.7;
        const Matrix M = hermitian_part(U * values.asDiagonal() * U.adjoint());
        Matrix noise = hermitian_part(gaussian_matrix(d, rng));
        noise *= (tol.eig_cluster / 10.0) / (2.0 * noise.norm()); // spectral shift < eig_cluster/10
        EXPECT_EQ(hermitian_eigendecomposition(M, tol).size(), 2u);
        EXPECT_EQ(hermitian_eigendecomposition(hermitian_part(M + noise), tol).size(), 2u);
    }
}

TEST(BorelFunction, IdentityConstantAndSquareRoot) {
    const Matrix M = mat({{0.3, 0.1 * i1}, {-0.1 * i1, 0.6}});
    const auto S = hermitian_eigendecomposition(M);
    EXPECT_LT(frobenius_distance(apply_borel_function(S, [](double t) { return cplx(t); }), M), 1e-14);
    EXPECT_LT(frobenius_distance(apply_borel_function(S, [](double) { return cplx(1.0); }), identity(2)),
              1e-14);

    const auto D = hermitian_eigendecomposition(diag({0, 0.25, 1}));
    const Matrix root = apply_borel_function(D, [](double t) { return cplx(std::sqrt(t)); });
    EXPECT_LT(frobenius_distance(root, diag({0, 0.5, 1})), 1e-15);
}

TEST(BorelFunction, UndefinedValueThrows) {
    const auto S = hermitian_eigendecomposition(diag({0, 0.5}));
    EXPECT_THROW(apply_borel_function(S, [](double t) { return cplx(1.0 / t); }), UndefinedFunctionValue);
}

TEST(BorelFunction, HomomorphismForPolynomials) {
    const Tolerances tol;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Stream rng(s);
        const long d = 2 + static_cast<long>(s % 4);
        const auto S = hermitian_eigendecomposition(random_hermitian(d, rng));
        const cplx a0 = rng.complex_normal(), a1 = rng.complex_normal(), a2 = rng.complex_normal();
        const cplx b0 = rng.complex_normal(), b1 = rng.complex_normal();
        auto f = [&](double t) { return a0 + a1 * t + a2 * t * t; };
        auto g = [&](double t) { return b0 + b1 * t; };
        auto fg = [&](double t) { return f(t) * g(t); };
        const Matrix lhs = apply_borel_function(S, fg);
        const Matrix rhs = apply_borel_function(S, f) * apply_borel_function(S, g);
        EXPECT_TRUE(approx_equal(lhs, rhs, tol.mat_eq));
    }
}

TEST(Predicates, HermitianAndNormal) {
    EXPECT_TRUE(is_hermitian(diag({1, -2, 3})));
    EXPECT_TRUE(is_normal(diag({1, -2, 3})));
    EXPECT_FALSE(is_hermitian(mat({{0, 1}, {0, 0}})));
    EXPECT_FALSE(is_normal(mat({{0, 1}, {0, 0}})));
    const Matrix U = mat({{std::polar(1.0, 0.4), 0}, {0, 1}});
    EXPECT_FALSE(is_hermitian(U));
    EXPECT_TRUE(is_normal(U));
    EXPECT_FALSE(is_hermitian(Matrix(2, 3)));
}

TEST(Predicates, IsEffect) {
    EXPECT_TRUE(is_effect(diag({0.3, 0.7})));
    EXPECT_FALSE(is_effect(diag({1.5, 0})));
    EXPECT_TRUE(is_effect(plus_projector())); // eigenvalues {0, 1} from the 2x2 oracle
    EXPECT_FALSE(is_effect(diag({-0.01, 0.5})));
    EXPECT_TRUE(is_effect(diag({-1e-11, 1 + 1e-11})));
    EXPECT_FALSE(is_effect(mat({{0.5, 0.1}, {0, 0.5}})));
}

TEST(CommutatorNorm, Values) {
    EXPECT_EQ(commutator_norm(diag({0.1, 0.4}), diag({0.9, 0.2})), 0.0);
    // [P, Q] = 1/2[[0,1],[-1,0]] by direct multiplication.
    EXPECT_NEAR(commutator_norm(diag({1, 0}), plus_projector()), std::sqrt(0.5), 1e-15);
    const Matrix A = mat({{0.2, 0.3 * i1}, {-0.3 * i1, 0.8}});
    EXPECT_EQ(commutator_norm(A, identity(2)), 0.0);
}

TEST(ScaledTolerance, ScalesWithDimAndNorm) {
    const Matrix big = 10.0 * identity(4);
    EXPECT_DOUBLE_EQ(scaled_tolerance(1e-9, big, Matrix::Zero(4, 4)), 1e-9 * 4 * 20.0);
    EXPECT_DOUBLE_EQ(scaled_tolerance(1e-9, 0.1 * identity(2), Matrix::Zero(2, 2)), 2e-9);
    EXPECT_TRUE(approx_equal(big, big + 1e-8 * identity(4), 1e-9));
}

TEST(TolerancesValidate, RejectsNonPositive) {
    Tolerances t;
    EXPECT_NO_THROW(t.validate());
    t.mat_eq = 0;
    EXPECT_THROW(t.validate(), ValidationError);
}
