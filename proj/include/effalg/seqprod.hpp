#pragma once

// General sequential product A <> B = f_A(A) B f_A(A)*, the Lüders-type
// channel T -> f_A(A)* T f_A(A), and the measurement statistics built on them.

#include <algorithm>

#include "effalg/phase_family.hpp"
#include "effalg/quantum.hpp"

namespace effalg {

/// Probabilities at or below this are treated as zero when conditioning.
inline constexpr double kZeroProbability = 1e-12;

/// f_A(A) = sum_k f(lambda_k) E_k over the cached spectrum of A.
inline Matrix phase_apply(const PhaseFamily& fam, const EffectOperator& A) {
    return apply_borel_function(A.spectral(), fam);
}

/// Unvalidated f_A(A) B f_A(A)*.
inline Matrix sequential_product_matrix(const PhaseFamily& fam, const EffectOperator& A,
                                        const Matrix& B) {
    require_same_dim(A.matrix(), B);
    const Matrix F = phase_apply(fam, A);
    return F * B * F.adjoint();
}

/// A <> B, validated as an effect.
inline EffectOperator sequential_product(const PhaseFamily& fam, const EffectOperator& A,
                                         const EffectOperator& B, const Tolerances& tol = {}) {
    return validate_effect(sequential_product_matrix(fam, A, B.matrix()), tol);
}

/// Unnormalized post-measurement state f_A(A)* W f_A(A).
inline Matrix luders_channel_state(const PhaseFamily& fam, const EffectOperator& A,
                                   const Matrix& W) {
    require_same_dim(A.matrix(), W);
    const Matrix F = phase_apply(fam, A);
    return F.adjoint() * W * F;
}

inline Matrix luders_channel_state(const PhaseFamily& fam, const EffectOperator& A,
                                   const DensityOperator& W) {
    return luders_channel_state(fam, A, W.matrix());
}

/// Probability of observing A in state W, computed as tr(psi^A(W)).
inline double probability(const PhaseFamily& fam, const DensityOperator& W,
                          const EffectOperator& A) {
    const double p = luders_channel_state(fam, A, W).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

/// Normalized state after A was observed.
inline DensityOperator post_state(const PhaseFamily& fam, const DensityOperator& W,
                                  const EffectOperator& A, const Tolerances& tol = {}) {
    const Matrix T = luders_channel_state(fam, A, W);
    const double p = T.trace().real();
    if (p <= kZeroProbability) throw ZeroProbability(p);
    return validate_density(T / p, tol);
}

/// Probability of B given that A was observed: tr((A <> B) W) / tr(psi^A(W)).
inline double conditional_probability(const PhaseFamily& fam, const DensityOperator& W,
                                      const EffectOperator& B, const EffectOperator& A) {
    const double denominator = luders_channel_state(fam, A, W).trace().real();
    if (denominator <= kZeroProbability) throw ZeroProbability(denominator);
    const double numerator =
        trace_of_product(sequential_product_matrix(fam, A, B.matrix()), W.matrix()).real();
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

/// Probability of C given that A and then B were observed, from explicit products:
/// tr(C F_B* F_A* W F_A F_B) / tr(B F_A* W F_A).
inline double two_step_conditional(const PhaseFamily& fam, const DensityOperator& W,
                                   const EffectOperator& C, const EffectOperator& A,
                                   const EffectOperator& B) {
    require_same_dim(A.matrix(), B.matrix());
    require_same_dim(A.matrix(), C.matrix());
    const Matrix FA = phase_apply(fam, A);
    const Matrix FB = phase_apply(fam, B);
    const Matrix after_a = FA.adjoint() * W.matrix() * FA;
    const double denominator = trace_of_product(B.matrix(), after_a).real();
    if (denominator <= kZeroProbability) throw ZeroProbability(denominator);
    const Matrix after_ab = FB.adjoint() * after_a * FB;
    const double numerator = trace_of_product(C.matrix(), after_ab).real();
    return std::clamp(numerator / denominator, 0.0, 1.0);
}

/// Same quantity through nested post-state updates; used as a cross-check.
inline double two_step_conditional_nested(const PhaseFamily& fam, const DensityOperator& W,
                                          const EffectOperator& C, const EffectOperator& A,
                                          const EffectOperator& B) {
    const DensityOperator after_a = post_state(fam, W, A);
    const DensityOperator after_ab = post_state(fam, after_a, B);
    return probability(fam, after_ab, C);
}

/// sum_k A_k <> B: the effect "B" after a non-selective measurement of X.
inline Matrix heisenberg_image_matrix(const PhaseFamily& fam, const Povm& X, const Matrix& B) {
    Matrix out = Matrix::Zero(B.rows(), B.cols());
    for (const auto& A : X) out += sequential_product_matrix(fam, A, B);
    return out;
}

inline EffectOperator heisenberg_image(const PhaseFamily& fam, const Povm& X,
                                       const EffectOperator& B, const Tolerances& tol = {}) {
    return validate_effect(heisenberg_image_matrix(fam, X, B.matrix()), tol);
}

} // namespace effalg
