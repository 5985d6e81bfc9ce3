#include "effalg/generators.hpp"

#include <gtest/gtest.h>

using namespace effalg;

namespace {

bool bit_equal(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && (a.array() == b.array()).all();
}

const std::vector<long> kDims{2, 3, 4, 6};

} // namespace

TEST(RandomEffect, DeterministicAndValid) {
    EXPECT_TRUE(bit_equal(random_effect(4, 11).matrix(), random_effect(4, 11).matrix()));
    EXPECT_FALSE(bit_equal(random_effect(4, 11).matrix(), random_effect(4, 12).matrix()));
    for (std::uint64_t s = 0; s < 2500; ++s) {
        const long d = kDims[s % kDims.size()];
        EXPECT_TRUE(is_effect(random_effect(d, s).matrix()));
    }
}

TEST(RandomEffect, SpectrumSpansUnitInterval) {
    const auto A = random_effect(5, 3);
    EXPECT_EQ(A.spectral().eigenvalues.front(), 0.0);
    EXPECT_EQ(A.spectral().eigenvalues.back(), 1.0);
}

TEST(RandomEffect, OneDimensionalIsScalarInUnitInterval) {
    const auto A = random_effect(1, 5);
    ASSERT_EQ(A.dim(), 1);
    EXPECT_GE(A.matrix()(0, 0).real(), 0.0);
    EXPECT_LE(A.matrix()(0, 0).real(), 1.0);
}

TEST(RandomDensity, DeterministicAndValid) {
    EXPECT_TRUE(bit_equal(random_density(3, 2).matrix(), random_density(3, 2).matrix()));
    for (std::uint64_t s = 0; s < 2500; ++s) {
        const long d = kDims[s % kDims.size()];
        const Matrix W = random_density(d, s).matrix();
        EXPECT_NO_THROW(validate_density(W));
    }
    EXPECT_NEAR(std::abs(random_density(1, 9).matrix()(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(RandomPovm, DeterministicAndValid) {
    const auto X1 = random_povm(3, 4, 21);
    const auto X2 = random_povm(3, 4, 21);
    for (std::size_t k = 0; k < X1.size(); ++k) EXPECT_TRUE(bit_equal(X1[k].matrix(), X2[k].matrix()));
    for (std::uint64_t s = 0; s < 2500; ++s) {
        const long d = kDims[s % kDims.size()];
        const auto X = random_povm(d, 1 + s % 4, s);
        std::vector<Matrix> mats;
        for (const auto& A : X) mats.push_back(A.matrix());
        EXPECT_NO_THROW(validate_povm(mats));
    }
}

TEST(RandomPovm, SingleOutcomeIsIdentity) {
    const auto X = random_povm(4, 1, 8);
    ASSERT_EQ(X.size(), 1u);
    EXPECT_LT(frobenius_distance(X[0].matrix(), identity(4)), 1e-12);
}

TEST(RandomCommutingPair, CommutesExactlyUpToRoundoff) {
    double worst = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const long d = kDims[s % kDims.size()];
        const auto [X, Y] = random_commuting_povm_pair(d, 2 + s % 2, 1 + s % 3, s);
        for (const auto& A : X)
            for (const auto& B : Y) worst = std::max(worst, commutator_norm(A.matrix(), B.matrix()));
        EXPECT_TRUE(povms_compatible(X, Y));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(RandomCommutingPair, Deterministic) {
    const auto a = random_commuting_povm_pair(3, 2, 3, 1);
    const auto b = random_commuting_povm_pair(3, 2, 3, 1);
    EXPECT_EQ(a.first.size(), 2u);
    EXPECT_EQ(a.second.size(), 3u);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(bit_equal(a.second[j].matrix(), b.second[j].matrix()));
}

TEST(RandomPvm, ElementsAreSharp) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const long d = kDims[s % kDims.size()];
        const std::size_t parts = 1 + s % static_cast<std::size_t>(d);
        const auto X = random_pvm(d, parts, s);
        ASSERT_EQ(X.size(), parts);
        for (const auto& E : X) {
            EXPECT_TRUE(is_sharp(E));
            EXPECT_GE(E.matrix().trace().real(), 1.0 - 1e-12); // surjective assignment
        }
    }
}

TEST(RandomPvm, FullAndTrivialSplits) {
    for (const auto& E : random_pvm(4, 4, 3)) EXPECT_NEAR(E.matrix().trace().real(), 1.0, 1e-12);
    const auto one = random_pvm(3, 1, 3);
    EXPECT_LT(frobenius_distance(one[0].matrix(), identity(3)), 1e-12);
    EXPECT_THROW(random_pvm(3, 4, 0), ValidationError);
    EXPECT_THROW(random_pvm(3, 0, 0), ValidationError);
}

TEST(Sharpness, MatchesIdempotence) {
    const Tolerances tol;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const long d = kDims[s % kDims.size()];
        const auto A = random_effect(d, s);
        const Matrix& a = A.matrix();
        EXPECT_EQ(is_sharp(A), approx_equal(a * a, a, tol.mat_eq));
        Stream rng(s);
        const auto P = validate_effect(random_projection(d, static_cast<long>(s % (d + 1)), rng));
        const Matrix& p = P.matrix();
        EXPECT_TRUE(is_sharp(P));
        EXPECT_TRUE(approx_equal(p * p, p, tol.mat_eq));
    }
}

TEST(Generators, RejectDimensionOutOfRange) {
    EXPECT_THROW(random_effect(0, 1), ValidationError);
    EXPECT_THROW(random_density(kMaxDim + 1, 1), ValidationError);
    EXPECT_THROW(random_povm(2, 0, 1), ValidationError);
}

TEST(RandomUnitary, IsUnitary) {
    Stream rng(4);
    const Matrix U = random_unitary(5, rng);
    EXPECT_LT(frobenius_distance(U * U.adjoint(), identity(5)), 1e-13);
}

TEST(RandomSimplex, SumsToOne) {
    Stream rng(1);
    for (int i = 0; i < 100; ++i) {
        const auto p = random_simplex_point(4, rng);
        double total = 0;
        for (double x : p) {
            EXPECT_GE(x, 0.0);
            total += x;
        }
        EXPECT_NEAR(total, 1.0, 1e-14);
    }
}
