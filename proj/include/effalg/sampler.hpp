#pragma once

// Monte Carlo simulation of "measure X, then measure Y" on a fixed state.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "effalg/rng.hpp"
#include "effalg/seqprod.hpp"

namespace effalg {

struct MeasurementOutcomeTable {
    std::vector<std::vector<std::uint64_t>> counts; // [k][j]
    std::vector<std::vector<double>> exact;         // p(k, j) = tr((A_k <> B_j) W)
    std::uint64_t total = 0;
};

/// Exact joint outcome grid of X followed by Y.
inline std::vector<std::vector<double>> joint_probabilities(const PhaseFamily& fam,
                                                            const DensityOperator& W,
                                                            const Povm& X, const Povm& Y) {
    require_same_dim(W.matrix(), X[0].matrix());
    require_same_dim(W.matrix(), Y[0].matrix());
    std::vector<std::vector<double>> grid(X.size(), std::vector<double>(Y.size()));
    for (std::size_t k = 0; k < X.size(); ++k) {
        const Matrix after = luders_channel_state(fam, X[k], W);
        for (std::size_t j = 0; j < Y.size(); ++j) {
            grid[k][j] = trace_of_product(Y[j].matrix(), after).real();
        }
    }
    return grid;
}

inline MeasurementOutcomeTable sample_sequential(const PhaseFamily& fam, const DensityOperator& W,
                                                 const Povm& X, const Povm& Y,
                                                 std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be at least 1");
    MeasurementOutcomeTable table;
    table.exact = joint_probabilities(fam, W, X, Y);
    table.total = trials;
    table.counts.assign(X.size(), std::vector<std::uint64_t>(Y.size(), 0));

    std::vector<double> weights;
    for (const auto& row : table.exact)
        for (double p : row) weights.push_back(std::max(p, 0.0)); // drop roundoff negatives
    std::discrete_distribution<std::size_t> cell(weights.begin(), weights.end());
    Stream rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t c = cell(rng.engine());
        ++table.counts[c / Y.size()][c % Y.size()];
    }
    return table;
}

/// (count - N p) / sqrt(N p (1 - p)); degenerate cells give 0 when the count
/// matches exactly and infinity otherwise.
inline std::vector<std::vector<double>> z_scores(const MeasurementOutcomeTable& table) {
    const double n = static_cast<double>(table.total);
    std::vector<std::vector<double>> z(table.exact.size());
    for (std::size_t k = 0; k < table.exact.size(); ++k) {
        for (std::size_t j = 0; j < table.exact[k].size(); ++j) {
            const double p = std::clamp(table.exact[k][j], 0.0, 1.0);
            const double diff = static_cast<double>(table.counts[k][j]) - n * p;
            const double var = n * p * (1.0 - p);
            if (var <= 0) {
                z[k].push_back(std::abs(diff) < 0.5 ? 0.0
                                                    : std::numeric_limits<double>::infinity());
            } else {
                z[k].push_back(diff / std::sqrt(var));
            }
        }
    }
    return z;
}

inline double max_abs_z(const MeasurementOutcomeTable& table) {
    double worst = 0;
    for (const auto& row : z_scores(table))
        for (double z : row) worst = std::max(worst, std::abs(z));
    return worst;
}

} // namespace effalg
