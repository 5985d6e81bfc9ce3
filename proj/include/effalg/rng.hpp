#pragma once

// Seeded random streams. A run is identified by one 64-bit seed; instance N
// of a run draws from Stream(derive_seed(seed, N)) so it can be replayed on
// its own.

#include <cstdint>
#include <random>
#include <vector>

#include "effalg/matcore.hpp"

namespace effalg {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `index` of the run identified by `seed`.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~index));
}

class Stream {
  public:
    explicit Stream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double exponential() { return exponential_(engine_); }
    cplx complex_normal() {
        const double re = normal();
        return {re, normal()};
    }
    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

/// Independent standard-normal real and imaginary parts.
inline Matrix gaussian_matrix(long rows, long cols, Stream& rng) {
    Matrix G(rows, cols);
    // Column-major fill keeps the draw order fixed.
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) G(i, j) = rng.complex_normal();
    return G;
}

inline Matrix gaussian_matrix(long dim, Stream& rng) { return gaussian_matrix(dim, dim, rng); }

/// QR of a Gaussian matrix with the phases of diag(R) pushed into Q.
inline Matrix random_unitary(long dim, Stream& rng) {
    const Matrix G = gaussian_matrix(dim, rng);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * identity(dim);
    const Matrix& R = qr.matrixQR();
    for (long i = 0; i < dim; ++i) {
        const double mag = std::abs(R(i, i));
        if (mag > 0) Q.col(i) *= R(i, i) / mag;
    }
    return Q;
}

/// Uniform point of the (k-1)-simplex via normalized exponential draws.
inline std::vector<double> random_simplex_point(std::size_t k, Stream& rng) {
    std::vector<double> p(k);
    double total = 0;
    for (auto& x : p) {
        x = rng.exponential();
        total += x;
    }
    for (auto& x : p) x /= total;
    return p;
}

} // namespace effalg
