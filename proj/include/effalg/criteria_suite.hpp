#pragma once

// Randomized invariants relating the criteria to compatibility and sharpness.
// Instances rotate through four shapes so every verdict combination occurs:
//
//   0: Y a PVM, X built from Y's projectors   (compatible, Y sharp)
//   1: Y a PVM, X generic                     (incompatible, Y sharp)
//   2: commuting pair, Y generically unsharp  (compatible, Y unsharp)
//   3: generic pair                           (incompatible, Y unsharp)

#include <cstdint>
#include <utility>
#include <vector>

#include "effalg/criteria.hpp"
#include "effalg/generators.hpp"
#include "effalg/suites.hpp"

namespace effalg {

struct CriteriaInstance {
    Povm X;
    Povm Y;
    int shape = 0;
};

/// X with elements sum_j w_kj Y_j, w drawn column-wise from the simplex.
inline Povm povm_over(const Povm& Y, std::size_t outcomes, Stream& rng) {
    const long d = Y.dim();
    std::vector<Matrix> xs(outcomes, Matrix::Zero(d, d));
    for (const auto& B : Y) {
        const auto w = random_simplex_point(outcomes, rng);
        for (std::size_t k = 0; k < outcomes; ++k) xs[k] += w[k] * B.matrix();
    }
    return validate_povm(xs, {}, "X");
}

inline CriteriaInstance criteria_instance(long dim, std::uint64_t index, std::uint64_t seed) {
    const std::uint64_t s = derive_seed(seed, index);
    Stream rng(s);
    const std::size_t m = 2 + rng.index(2);
    const std::size_t n = 2 + rng.index(static_cast<std::size_t>(std::min<long>(dim, 3) - 1));
    const int shape = static_cast<int>(index % 4);
    switch (shape) {
    case 0: {
        Povm Y = random_pvm(dim, n, derive_seed(s, 1));
        Povm X = povm_over(Y, m, rng);
        return {std::move(X), std::move(Y), shape};
    }
    case 1: return {random_povm(dim, m, derive_seed(s, 2)), random_pvm(dim, n, derive_seed(s, 1)), shape};
    case 2: {
        auto [X, Y] = random_commuting_povm_pair(dim, m, n, derive_seed(s, 3));
        return {std::move(X), std::move(Y), shape};
    }
    default: return {random_povm(dim, m, derive_seed(s, 2)), random_povm(dim, n, derive_seed(s, 4)), shape};
    }
}

/// Verdict-level agreement under the tolerance gap. Disagreement properties
/// record 1 per disagreeing decided instance, so they pass only at zero.
///
/// order_symmetry_iff_compatible, value_persistence_iff_oracle,
/// compatible_implies_occurrence (occurrence residual on compatible pairs),
/// occurrence_in_maximally_mixed_state, phase_covariance (verdicts versus c = 0).
inline SuiteReport verify_criteria(const PhaseFamily& fam, long dim, std::uint64_t trials,
                                   std::uint64_t seed, const GapTolerances& gap = {},
                                   double threshold = 1e-9) {
    SuiteReport report{"criteria", {}};
    if (trials == 0) return report;
    if (dim < 2) throw ValidationError("criteria suite needs dim >= 2");
    PropertyResult order{"order_symmetry_iff_compatible", 0, 0.5, 0};
    PropertyResult value{"value_persistence_iff_oracle", 0, 0.5, 0};
    PropertyResult occurrence{"compatible_implies_occurrence", 0, threshold, 0};
    PropertyResult mixed{"occurrence_in_maximally_mixed_state", 0, 1e-10, 0};
    PropertyResult covariance{"phase_covariance", 0, 0.5, 0};

    const PhaseFamily reference = PhaseFamily::square_root();
    const auto W = validate_density(identity(dim) / static_cast<double>(dim));
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto inst = criteria_instance(dim, i, seed);
        const double compat = compatibility_residual(inst.X, inst.Y);
        const auto III = check_order_symmetry(fam, inst.X, inst.Y, gap);
        const auto I = check_value_persistence(fam, inst.X, inst.Y, gap);
        const auto II = check_occurrence(fam, inst.X, inst.Y, gap);

        const auto o = compare_with_gap(III.max_residual, compat, gap);
        if (o != GapOutcome::ambiguous) order.record(o == GapOutcome::disagree ? 1.0 : 0.0);
        const auto v = compare_with_gap(I.max_residual, value_persistence_oracle_residual(inst.X, inst.Y), gap);
        if (v != GapOutcome::ambiguous) value.record(v == GapOutcome::disagree ? 1.0 : 0.0);
        if (compat <= gap.check) occurrence.record(II.max_residual);
        mixed.record(check_occurrence_in_state(fam, inst.X, inst.Y, W, gap).max_residual);

        // Verdicts must not depend on the family; compare where both sides are decided.
        const std::pair<double, double> pairs[] = {
            {I.max_residual, check_value_persistence(reference, inst.X, inst.Y, gap).max_residual},
            {II.max_residual, check_occurrence(reference, inst.X, inst.Y, gap).max_residual},
            {III.max_residual, check_order_symmetry(reference, inst.X, inst.Y, gap).max_residual},
        };
        for (const auto& [mine, ref] : pairs) {
            const auto c = compare_with_gap(mine, ref, gap);
            if (c != GapOutcome::ambiguous) covariance.record(c == GapOutcome::disagree ? 1.0 : 0.0);
        }
    }
    report.properties = {order, value, occurrence, mixed, covariance};
    return report;
}

} // namespace effalg
