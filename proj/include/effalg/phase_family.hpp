#pragma once

#include <cmath>
#include <complex>

#include "effalg/matcore.hpp"

namespace effalg {

/// Admissible phase family f(t) = xi0 * t^(1/2 + i c), f(0) = 0.
///
/// |f(t)| = sqrt(t) on [0, 1] and f(s) f(t) = xi0 f(s t), so the induced
/// product A <> B = f(A) B f(A)* satisfies the sequential-product axioms.
/// c = 0, xi0 = 1 gives A^(1/2) B A^(1/2).
class PhaseFamily {
  public:
    PhaseFamily() = default;

    PhaseFamily(double c, cplx xi0) : c_(c), xi0_(xi0) {
        if (!std::isfinite(c)) throw ValidationError("phase exponent must be finite");
        if (std::abs(std::abs(xi0) - 1.0) > 1e-12) {
            throw ValidationError("phase prefactor must be unimodular");
        }
    }

    /// xi0 = exp(i * xi0_arg); unimodular by construction.
    static PhaseFamily from_angle(double c, double xi0_arg) {
        return PhaseFamily(c, std::polar(1.0, xi0_arg));
    }

    static PhaseFamily square_root() { return {}; }

    double c() const { return c_; }
    cplx xi0() const { return xi0_; }

    cplx operator()(double t) const {
        if (t <= 0.0) return {0.0, 0.0};
        return xi0_ * std::sqrt(t) * std::polar(1.0, c_ * std::log(t));
    }

  private:
    double c_ = 0.0;
    cplx xi0_{1.0, 0.0};
};

} // namespace effalg
