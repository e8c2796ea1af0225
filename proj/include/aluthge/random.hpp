#ifndef ALUTHGE_RANDOM_HPP
#define ALUTHGE_RANDOM_HPP

// Seeded random matrices.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniforms take the top 53 bits of each draw and Gaussians use the
// Box-Muller transform, so every distribution here is reproducible across
// standard libraries (std::normal_distribution is not).

#include "aluthge/linalg_core.hpp"

#include <cstdint>
#include <numbers>
#include <random>

namespace aluthge {

/// SplitMix64 finalizer, used to derive independent per-case seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
    return mix_seed(seed ^ mix_seed(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    Complex unit_phase(double lo, double hi) { return std::polar(1.0, uniform(lo, hi)); }

    ComplexMatrix gaussian(Index rows, Index cols) {
        ComplexMatrix m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
        return m;
    }

    /// Haar-distributed unitary: QR of a Gaussian matrix with R's phases removed.
    ComplexMatrix haar_unitary(Index n) {
        const ComplexMatrix g = gaussian(n, n);
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
        const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index j = 0; j < n; ++j) {
            const double mag = std::abs(r(j, j));
            if (mag > 0.0) q.col(j) *= r(j, j) / mag;
        }
        return q;
    }

    ComplexMatrix hermitian(Index n) {
        const ComplexMatrix g = gaussian(n, n);
        return (g + g.adjoint()) / 2.0;
    }

    /// Q diag(lambda) Q* with eigenvalues uniform in [lo, hi].
    ComplexMatrix positive_definite(Index n, double lo, double hi) {
        const ComplexMatrix q = haar_unitary(n);
        RealVector d(n);
        for (Index i = 0; i < n; ++i) d(i) = uniform(lo, hi);
        return q * d.cast<Complex>().asDiagonal() * q.adjoint();
    }

    /// Invertible matrix with singular values in [lo, hi].
    ComplexMatrix conditioned(Index n, double lo, double hi) {
        const ComplexMatrix q1 = haar_unitary(n);
        const ComplexMatrix q2 = haar_unitary(n);
        RealVector d(n);
        for (Index i = 0; i < n; ++i) d(i) = uniform(lo, hi);
        return q1 * d.cast<Complex>().asDiagonal() * q2.adjoint();
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace aluthge

#endif  // ALUTHGE_RANDOM_HPP
