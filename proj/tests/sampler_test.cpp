#include "effalg/sampler.hpp"

#include <gtest/gtest.h>

#include "effalg/generators.hpp"
#include "test_support.hpp"

using namespace effalg;
using namespace effalg::testing;

namespace {

/// p(k, j) = sum_i a_k(i) b_j(i) w(i) for diagonal X, Y, W.
std::vector<std::vector<double>> diagonal_grid(const std::vector<std::vector<double>>& a,
                                               const std::vector<std::vector<double>>& b,
                                               const std::vector<double>& w) {
    std::vector<std::vector<double>> p(a.size(), std::vector<double>(b.size(), 0.0));
    for (std::size_t k = 0; k < a.size(); ++k)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t i = 0; i < w.size(); ++i) p[k][j] += a[k][i] * b[j][i] * w[i];
    return p;
}

Matrix diag_of(const std::vector<double>& v) {
    Matrix M = Matrix::Zero(static_cast<long>(v.size()), static_cast<long>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) M(static_cast<long>(i), static_cast<long>(i)) = v[i];
    return M;
}

Povm diag_povm(const std::vector<std::vector<double>>& rows) {
    std::vector<Matrix> mats;
    for (const auto& r : rows) mats.push_back(diag_of(r));
    return validate_povm(mats);
}

const std::vector<std::vector<double>> kA{{0.2, 0.5, 1.0}, {0.8, 0.5, 0.0}};
const std::vector<std::vector<double>> kB{{0.1, 0.6, 0.3}, {0.4, 0.4, 0.3}, {0.5, 0.0, 0.4}};
const std::vector<double> kW{0.5, 0.3, 0.2};

} // namespace

TEST(JointProbabilities, DiagonalClosedForm) {
    const auto expected = diagonal_grid(kA, kB, kW);
    const auto fam = PhaseFamily::from_angle(2.5, 1.0);
    const auto grid = joint_probabilities(fam, validate_density(diag_of(kW)), diag_povm(kA), diag_povm(kB));
    for (std::size_t k = 0; k < kA.size(); ++k)
        for (std::size_t j = 0; j < kB.size(); ++j) EXPECT_NEAR(grid[k][j], expected[k][j], 1e-15);
}

TEST(JointProbabilities, RowsAndTotal) {
    const auto fam = PhaseFamily::from_angle(0.7, M_PI / 5);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const long d = 2 + static_cast<long>(s % 4);
        const auto X = random_povm(d, 3, s);
        const auto Y = random_povm(d, 2, s + 100);
        const auto W = random_density(d, s + 200);
        const auto grid = joint_probabilities(fam, W, X, Y);
        double total = 0;
        for (std::size_t k = 0; k < X.size(); ++k) {
            double row = 0;
            for (double p : grid[k]) row += p;
            EXPECT_NEAR(row, probability(fam, W, X[k]), 1e-12);
            total += row;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(SampleSequential, CountsAndDeterminism) {
    const auto fam = PhaseFamily::square_root();
    const auto W = validate_density(diag_of(kW));
    const auto X = diag_povm(kA);
    const auto Y = diag_povm(kB);
    const auto t1 = sample_sequential(fam, W, X, Y, 100000, 42);
    const auto t2 = sample_sequential(fam, W, X, Y, 100000, 42);
    EXPECT_EQ(t1.counts, t2.counts);
    std::uint64_t sum = 0;
    for (const auto& row : t1.counts)
        for (auto c : row) sum += c;
    EXPECT_EQ(sum, 100000u);
    EXPECT_LT(max_abs_z(t1), 5.0);

    const auto expected = diagonal_grid(kA, kB, kW);
    for (std::size_t k = 0; k < kA.size(); ++k) {
        for (std::size_t j = 0; j < kB.size(); ++j) {
            const double p = expected[k][j];
            const double freq = static_cast<double>(t1.counts[k][j]) / 1e5;
            EXPECT_LT(std::abs(freq - p), 5 * std::sqrt(p * (1 - p) / 1e5) + 1e-3);
        }
    }
}

TEST(SampleSequential, SingleTrial) {
    const auto t = sample_sequential(PhaseFamily::square_root(), validate_density(diag_of(kW)), diag_povm(kA),
                                     diag_povm(kB), 1, 3);
    std::uint64_t sum = 0;
    for (const auto& row : t.counts)
        for (auto c : row) sum += c;
    EXPECT_EQ(sum, 1u);
    EXPECT_THROW(sample_sequential(PhaseFamily::square_root(), validate_density(diag_of(kW)), diag_povm(kA),
                                   diag_povm(kB), 0, 3),
                 ValidationError);
}

TEST(ZScores, DegenerateCells) {
    MeasurementOutcomeTable t;
    t.total = 10;
    t.exact = {{0.0, 1.0}};
    t.counts = {{0, 10}};
    EXPECT_EQ(max_abs_z(t), 0.0);
    t.counts = {{1, 9}};
    EXPECT_TRUE(std::isinf(max_abs_z(t)));
}

TEST(ZScores, Value) {
    MeasurementOutcomeTable t;
    t.total = 100;
    t.exact = {{0.5, 0.5}};
    t.counts = {{60, 40}};
    // (60 - 50) / sqrt(100 * 1/4) = 2.
    EXPECT_DOUBLE_EQ(z_scores(t)[0][0], 2.0);
    EXPECT_DOUBLE_EQ(z_scores(t)[0][1], -2.0);
}
