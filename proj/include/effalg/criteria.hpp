#pragma once

// Operator-level checks for the three non-disturbance criteria between two
// POVMs X = {A_k} and Y = {B_j}, plus the commutation predicates and the
// normal-absorption check they rely on.
//
// Statements quantified over every state W are reduced to operator
// identities: tr(M W) = tr(N W) for all W holds iff M = N.
//
//   value persistence (I):   B_j<>(A_k<>B_j) = B_j<>A_k    for all j, k
//   occurrence (II):         sum_k A_k<>B_j = B_j           for all j
//   order symmetry (III):    A_k<>B_j = B_j<>A_k            for all j, k

#include <string>
#include <vector>

#include "effalg/seqprod.hpp"

namespace effalg {

/// Hysteresis between a criterion check and the structural classification it
/// is compared with. Both thresholds apply to scaled residuals.
struct GapTolerances {
    double check = 1e-8;
    double classify = 1e-6;
};

struct Witness {
    std::size_t k = 0;
    std::size_t j = 0;
    double residual = 0;
};

struct CriterionReport {
    std::string criterion; // "I", "II" or "III"
    bool verdict = true;
    double tolerance = 0;
    double max_residual = 0;     // scaled; verdict <=> max_residual <= tolerance
    double max_raw_residual = 0; // plain Frobenius (or absolute trace) residual
    std::vector<std::vector<double>> per_pair; // [k][j] for I and III, [0][j] for II
    bool compatible = false;
    bool y_sharp = false;
    std::vector<Witness> witnesses;
    /// Pairs whose conditioning event B_j<>A_k vanishes; true vacuously.
    std::vector<Witness> vacuous;
};

namespace detail {

inline void require_same_povm_dim(const Povm& X, const Povm& Y) {
    require_same_dim(X[0].matrix(), Y[0].matrix());
}

inline bool all_sharp(const Povm& Y, double tol) {
    for (const auto& B : Y)
        if (!is_sharp(B, tol)) return false;
    return true;
}

inline double max_sharpness_residual(const Povm& Y) {
    double worst = 0;
    for (const auto& B : Y) worst = std::max(worst, sharpness_residual(B));
    return worst;
}

inline void finalize(CriterionReport& r, const Povm& X, const Povm& Y, const GapTolerances& gap) {
    r.tolerance = gap.check;
    r.max_residual = 0;
    r.witnesses.clear();
    for (std::size_t k = 0; k < r.per_pair.size(); ++k) {
        for (std::size_t j = 0; j < r.per_pair[k].size(); ++j) {
            const double res = r.per_pair[k][j];
            if (!(res <= r.max_residual)) r.max_residual = res;
            if (!(res <= gap.check)) r.witnesses.push_back({k, j, res});
        }
    }
    r.verdict = r.witnesses.empty();
    r.compatible = povms_compatible(X, Y, gap.classify);
    r.y_sharp = all_sharp(Y, gap.classify);
}

} // namespace detail

/// Value persistence: the probability of an established Y value is unchanged
/// by a later X measurement.
inline CriterionReport check_value_persistence(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                               const GapTolerances& gap = {}) {
    detail::require_same_povm_dim(X, Y);
    CriterionReport r;
    r.criterion = "I";
    r.per_pair.assign(X.size(), std::vector<double>(Y.size()));
    for (std::size_t k = 0; k < X.size(); ++k) {
        for (std::size_t j = 0; j < Y.size(); ++j) {
            const Matrix AB = sequential_product_matrix(fam, X[k], Y[j].matrix());
            const Matrix lhs = sequential_product_matrix(fam, Y[j], AB);
            const Matrix rhs = sequential_product_matrix(fam, Y[j], X[k].matrix());
            const double raw = frobenius_distance(lhs, rhs);
            r.per_pair[k][j] = scaled_distance(lhs, rhs);
            r.max_raw_residual = std::max(r.max_raw_residual, raw);
            if (rhs.norm() <= gap.check) r.vacuous.push_back({k, j, rhs.norm()});
        }
    }
    detail::finalize(r, X, Y, gap);
    return r;
}

/// Structural side of value persistence: X and Y compatible and Y sharp.
inline bool value_persistence_oracle(const Povm& X, const Povm& Y, double tol = GapTolerances{}.classify) {
    detail::require_same_povm_dim(X, Y);
    return povms_compatible(X, Y, tol) && detail::all_sharp(Y, tol);
}

/// Residual behind value_persistence_oracle (<= tol iff the oracle holds).
inline double value_persistence_oracle_residual(const Povm& X, const Povm& Y) {
    return std::max(compatibility_residual(X, Y), detail::max_sharpness_residual(Y));
}

/// Occurrence invariance: a preceding non-selective X leaves every Y
/// probability unchanged, in every state.
inline CriterionReport check_occurrence(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                        const GapTolerances& gap = {}) {
    detail::require_same_povm_dim(X, Y);
    CriterionReport r;
    r.criterion = "II";
    r.per_pair.assign(1, std::vector<double>(Y.size()));
    for (std::size_t j = 0; j < Y.size(); ++j) {
        const Matrix image = heisenberg_image_matrix(fam, X, Y[j].matrix());
        r.per_pair[0][j] = scaled_distance(image, Y[j].matrix());
        r.max_raw_residual = std::max(r.max_raw_residual, frobenius_distance(image, Y[j].matrix()));
    }
    detail::finalize(r, X, Y, gap);
    return r;
}

/// Occurrence invariance in one fixed state W; residual per j is
/// |tr(B_j W) - sum_k tr((A_k<>B_j) W)|, compared with `tol` directly.
inline CriterionReport check_occurrence_in_state(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                                 const DensityOperator& W,
                                                 const GapTolerances& gap = {}) {
    detail::require_same_povm_dim(X, Y);
    require_same_dim(W.matrix(), Y[0].matrix());
    CriterionReport r;
    r.criterion = "II";
    r.per_pair.assign(1, std::vector<double>(Y.size()));
    for (std::size_t j = 0; j < Y.size(); ++j) {
        const double direct = trace_of_product(Y[j].matrix(), W.matrix()).real();
        double after_x = 0;
        for (const auto& A : X) {
            after_x += trace_of_product(sequential_product_matrix(fam, A, Y[j].matrix()), W.matrix()).real();
        }
        r.per_pair[0][j] = std::abs(direct - after_x);
        r.max_raw_residual = std::max(r.max_raw_residual, r.per_pair[0][j]);
    }
    detail::finalize(r, X, Y, gap);
    return r;
}

/// Order symmetry: measuring p then q is as likely as q then p, in every state.
inline CriterionReport check_order_symmetry(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                            const GapTolerances& gap = {}) {
    detail::require_same_povm_dim(X, Y);
    CriterionReport r;
    r.criterion = "III";
    r.per_pair.assign(X.size(), std::vector<double>(Y.size()));
    for (std::size_t k = 0; k < X.size(); ++k) {
        for (std::size_t j = 0; j < Y.size(); ++j) {
            const Matrix AB = sequential_product_matrix(fam, X[k], Y[j].matrix());
            const Matrix BA = sequential_product_matrix(fam, Y[j], X[k].matrix());
            r.per_pair[k][j] = scaled_distance(AB, BA);
            r.max_raw_residual = std::max(r.max_raw_residual, frobenius_distance(AB, BA));
        }
    }
    detail::finalize(r, X, Y, gap);
    return r;
}

/// Outcome of comparing a check residual with an oracle residual under the
/// tolerance gap. An instance is decided when neither residual falls inside
/// (gap.check, gap.classify]; decided instances must have equal verdicts.
enum class GapOutcome { agree, disagree, ambiguous };

inline GapOutcome compare_with_gap(double check_residual, double oracle_residual,
                                   const GapTolerances& gap = {}) {
    auto in_band = [&](double r) { return r > gap.check && r <= gap.classify; };
    if (in_band(check_residual) || in_band(oracle_residual)) return GapOutcome::ambiguous;
    return (check_residual <= gap.check) == (oracle_residual <= gap.check) ? GapOutcome::agree
                                                                            : GapOutcome::disagree;
}

/// One-directional implication under the gap: if the hypothesis holds at the
/// tight threshold, the conclusion must hold at the loose one.
inline bool implication_holds(double hypothesis_residual, double conclusion_residual,
                              const GapTolerances& gap = {}) {
    return hypothesis_residual > gap.check || conclusion_residual <= gap.classify;
}

/// The four predicates relating commutation and the sequential product.
struct CommutationPredicates {
    double commute_residual = 0;   // AB vs BA
    double symmetric_residual = 0; // A<>B vs B<>A
    double product_residual = 0;   // A<>B vs AB
    double reverse_residual = 0;   // A<>B vs f_B(B)* A f_B(B)
    bool commute = false;
    bool symmetric = false;
    bool product = false;
    bool reverse = false;
    /// commute => the other three; symmetric => commute; reverse => commute.
    bool consistent = false;
};

inline CommutationPredicates commutation_predicates(const PhaseFamily& fam, const EffectOperator& A,
                                                    const EffectOperator& B,
                                                    const GapTolerances& gap = {}) {
    require_same_dim(A.matrix(), B.matrix());
    CommutationPredicates p;
    const Matrix AB = sequential_product_matrix(fam, A, B.matrix());
    const Matrix BA = sequential_product_matrix(fam, B, A.matrix());
    const Matrix FB = phase_apply(fam, B);
    const Matrix reverse = FB.adjoint() * A.matrix() * FB;
    p.commute_residual = commutation_residual(A.matrix(), B.matrix());
    p.symmetric_residual = scaled_distance(AB, BA);
    const Matrix plain = A.matrix() * B.matrix();
    p.product_residual = scaled_distance(AB, plain);
    p.reverse_residual = scaled_distance(AB, reverse);
    p.commute = p.commute_residual <= gap.check;
    p.symmetric = p.symmetric_residual <= gap.check;
    p.product = p.product_residual <= gap.check;
    p.reverse = p.reverse_residual <= gap.check;
    const double worst_consequence = std::max({p.symmetric_residual, p.product_residual, p.reverse_residual});
    p.consistent = implication_holds(p.commute_residual, worst_consequence, gap) &&
                   implication_holds(p.symmetric_residual, p.commute_residual, gap) &&
                   implication_holds(p.reverse_residual, p.commute_residual, gap);
    return p;
}

/// For normal A and an effect B: AB = BAB forces AB = BA.
struct AbsorptionCheck {
    double hypothesis_residual = 0; // |AB - BAB|_F
    double conclusion_residual = 0; // |AB - BA|_F
    bool hypothesis = false;
    bool conclusion = false;
    bool consistent = false;
};

inline AbsorptionCheck absorption_check(const Matrix& A, const EffectOperator& B,
                                        double hypothesis_tol = 1e-8, double conclusion_tol = 1e-6,
                                        const Tolerances& tol = {}) {
    require_operator(A, "normal operator");
    require_same_dim(A, B.matrix());
    if (!is_normal(A, tol)) throw ValidationError("absorption check requires a normal operator");
    const Matrix& b = B.matrix();
    AbsorptionCheck out;
    const Matrix Ab = A * b;
    out.hypothesis_residual = frobenius_distance(Ab, b * Ab);
    out.conclusion_residual = frobenius_distance(Ab, b * A);
    out.hypothesis = out.hypothesis_residual <= hypothesis_tol;
    out.conclusion = out.conclusion_residual <= conclusion_tol;
    out.consistent = !out.hypothesis || out.conclusion;
    return out;
}

struct CrossValidation {
    CriterionReport value_persistence;
    CriterionReport occurrence;
    CriterionReport order_symmetry;
    CriterionReport occurrence_in_state;
    bool oracle_value_persistence = false;
    bool compatible = false;
    double compatibility_residual = 0;
    std::vector<bool> y_element_sharp;
    std::vector<bool> x_element_sharp;
    /// Instances that fall inside the tolerance gap are reported, not judged.
    std::vector<std::string> ambiguous;
    std::vector<std::string> violations;
    bool consistent() const { return violations.empty(); }
};

/// Runs all checks and asserts the implications that always hold:
/// order symmetry <=> compatible, value persistence <=> (compatible and Y sharp),
/// compatible => occurrence. The converse of the last one is recorded only.
inline CrossValidation cross_validate(const PhaseFamily& fam, const Povm& X, const Povm& Y,
                                      const DensityOperator& W, const GapTolerances& gap = {}) {
    CrossValidation cv;
    cv.value_persistence = check_value_persistence(fam, X, Y, gap);
    cv.occurrence = check_occurrence(fam, X, Y, gap);
    cv.order_symmetry = check_order_symmetry(fam, X, Y, gap);
    cv.occurrence_in_state = check_occurrence_in_state(fam, X, Y, W, gap);
    cv.compatibility_residual = compatibility_residual(X, Y);
    cv.compatible = cv.compatibility_residual <= gap.classify;
    cv.oracle_value_persistence = value_persistence_oracle(X, Y, gap.classify);
    for (const auto& B : Y) cv.y_element_sharp.push_back(is_sharp(B, gap.classify));
    for (const auto& A : X) cv.x_element_sharp.push_back(is_sharp(A, gap.classify));

    auto judge = [&](const std::string& name, GapOutcome outcome) {
        if (outcome == GapOutcome::ambiguous) cv.ambiguous.push_back(name);
        if (outcome == GapOutcome::disagree) cv.violations.push_back(name);
    };
    judge("order_symmetry <=> compatible",
          compare_with_gap(cv.order_symmetry.max_residual, cv.compatibility_residual, gap));
    judge("value_persistence <=> compatible and Y sharp",
          compare_with_gap(cv.value_persistence.max_residual, value_persistence_oracle_residual(X, Y), gap));
    if (!implication_holds(cv.compatibility_residual, cv.occurrence.max_residual, gap)) {
        cv.violations.push_back("compatible => occurrence");
    }
    return cv;
}

} // namespace effalg
