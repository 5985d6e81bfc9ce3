#pragma once

// Validated domain objects: effects (0 <= A <= I), density operators and
// POVMs. Instances can only be obtained through the validate_* functions.

#include <string>
#include <utility>
#include <vector>

#include "effalg/matcore.hpp"

namespace effalg {

class EffectOperator;
EffectOperator validate_effect(const Matrix& M, const Tolerances& tol);

class EffectOperator {
  public:
    const Matrix& matrix() const { return matrix_; }
    /// Clustered spectrum; eigenvalues within psd_slack of 0 or 1 are snapped to it.
    const SpectralDecomposition& spectral() const { return spectral_; }
    long dim() const { return matrix_.rows(); }

  private:
    EffectOperator(Matrix m, SpectralDecomposition s)
        : matrix_(std::move(m)), spectral_(std::move(s)) {}
    friend EffectOperator validate_effect(const Matrix& M, const Tolerances& tol);

    Matrix matrix_;
    SpectralDecomposition spectral_;
};

inline EffectOperator validate_effect(const Matrix& M, const Tolerances& tol = {}) {
    require_operator(M, "effect");
    if (!is_hermitian(M, tol)) {
        throw ValidationError("effect is not Hermitian");
    }
    Matrix H = hermitian_part(M);
    SpectralDecomposition S = hermitian_eigendecomposition(H, tol);
    for (double& lambda : S.eigenvalues) {
        if (lambda < -tol.psd_slack || lambda > 1.0 + tol.psd_slack) {
            throw ValidationError("effect eigenvalue " + std::to_string(lambda) +
                                  " outside [0, 1]");
        }
        if (lambda <= tol.psd_slack) lambda = 0.0;
        if (lambda >= 1.0 - tol.psd_slack) lambda = 1.0;
    }
    // Snapping can collide clusters at 0 or 1; merge them.
    SpectralDecomposition merged;
    for (std::size_t k = 0; k < S.size(); ++k) {
        if (!merged.eigenvalues.empty() && merged.eigenvalues.back() == S.eigenvalues[k]) {
            merged.projectors.back() += S.projectors[k];
        } else {
            merged.eigenvalues.push_back(S.eigenvalues[k]);
            merged.projectors.push_back(std::move(S.projectors[k]));
        }
    }
    return EffectOperator(std::move(H), std::move(merged));
}

class DensityOperator;
DensityOperator validate_density(const Matrix& M, const Tolerances& tol);

class DensityOperator {
  public:
    const Matrix& matrix() const { return matrix_; }
    long dim() const { return matrix_.rows(); }

  private:
    explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {}
    friend DensityOperator validate_density(const Matrix& M, const Tolerances& tol);

    Matrix matrix_;
};

inline DensityOperator validate_density(const Matrix& M, const Tolerances& tol = {}) {
    require_operator(M, "density operator");
    if (!is_hermitian(M, tol)) {
        throw ValidationError("density operator is not Hermitian");
    }
    Matrix H = hermitian_part(M);
    const double lowest = hermitian_eigenvalues(H).minCoeff();
    if (lowest < -tol.psd_slack) {
        throw ValidationError("density operator has negative eigenvalue " +
                              std::to_string(lowest));
    }
    const double trace = H.trace().real();
    if (std::abs(trace - 1.0) > tol.mat_eq * static_cast<double>(H.rows())) {
        throw ValidationError("density operator trace " + std::to_string(trace) + " != 1");
    }
    return DensityOperator(std::move(H));
}

class Povm;
Povm validate_povm(const std::vector<Matrix>& mats, const Tolerances& tol, std::string label);

class Povm {
  public:
    const std::vector<EffectOperator>& elements() const { return elements_; }
    const EffectOperator& operator[](std::size_t k) const { return elements_[k]; }
    std::size_t size() const { return elements_.size(); }
    long dim() const { return elements_.front().dim(); }
    const std::string& label() const { return label_; }

    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

  private:
    Povm(std::vector<EffectOperator> e, std::string label)
        : elements_(std::move(e)), label_(std::move(label)) {}
    friend Povm validate_povm(const std::vector<Matrix>& mats, const Tolerances& tol,
                              std::string label);

    std::vector<EffectOperator> elements_;
    std::string label_;
};

inline Povm validate_povm(const std::vector<Matrix>& mats, const Tolerances& tol = {},
                          std::string label = {}) {
    if (mats.empty()) {
        throw ValidationError("POVM must have at least one element");
    }
    std::vector<EffectOperator> elements;
    elements.reserve(mats.size());
    for (const Matrix& M : mats) {
        require_operator(M, "POVM element");
        require_same_dim(M, mats.front());
        elements.push_back(validate_effect(M, tol));
    }
    Matrix sum = Matrix::Zero(mats.front().rows(), mats.front().cols());
    for (const auto& e : elements) sum += e.matrix();
    const Matrix id = identity(sum.rows());
    if (!approx_equal(sum, id, tol.mat_eq)) {
        throw ValidationError("POVM elements do not sum to the identity (deviation " +
                              std::to_string(frobenius_distance(sum, id)) + ")");
    }
    return Povm(std::move(elements), std::move(label));
}

/// Largest distance of a clustered eigenvalue from {0, 1}.
inline double sharpness_residual(const EffectOperator& A) {
    double worst = 0;
    for (double lambda : A.spectral().eigenvalues) {
        worst = std::max(worst, std::min(std::abs(lambda), std::abs(1.0 - lambda)));
    }
    return worst;
}

inline bool is_sharp(const EffectOperator& A, double tol = Tolerances{}.mat_eq) {
    return sharpness_residual(A) <= tol;
}

/// Scaled commutator norm: commutes(A, B, tol) <=> commutation_residual(A, B) <= tol.
inline double commutation_residual(const Matrix& A, const Matrix& B) {
    require_same_dim(A, B);
    const Matrix AB = A * B;
    const Matrix BA = B * A;
    return scaled_distance(AB, BA);
}

inline bool commutes(const EffectOperator& A, const EffectOperator& B, double tol) {
    return commutation_residual(A.matrix(), B.matrix()) <= tol;
}

inline bool commutes(const EffectOperator& A, const EffectOperator& B,
                     const Tolerances& tol = {}) {
    return commutes(A, B, tol.mat_eq);
}

/// Largest commutation_residual over all element pairs.
inline double compatibility_residual(const Povm& X, const Povm& Y) {
    require_same_dim(X[0].matrix(), Y[0].matrix());
    double worst = 0;
    for (const auto& A : X)
        for (const auto& B : Y) worst = std::max(worst, commutation_residual(A.matrix(), B.matrix()));
    return worst;
}

inline bool povms_compatible(const Povm& X, const Povm& Y, double tol) {
    return compatibility_residual(X, Y) <= tol;
}

inline bool povms_compatible(const Povm& X, const Povm& Y, const Tolerances& tol = {}) {
    return povms_compatible(X, Y, tol.mat_eq);
}

} // namespace effalg
