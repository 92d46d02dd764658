#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "projpair/numerics.hpp"

namespace projpair {

/// Deterministic random source. Built on mt19937_64 with hand-rolled
/// Box-Muller so the byte-for-byte output stream is pinned by the C++
/// standard rather than by the vendor's distribution implementations.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream derived from (seed, stream index).
    Prng(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
            static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        gen_.seed(seq);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Standard complex normal (real and imaginary parts N(0, 1)).
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    /// Uniformly random sign.
    double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Matrix with iid standard complex normal entries, filled row-major.
inline ComplexMatrix gaussian_matrix(Index rows, Index cols, Prng& rng) {
    ComplexMatrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases folded into Q.
inline ComplexMatrix haar_unitary(Index n, Prng& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

/// Haar-style random self-adjoint unitary: V diag(+-1) V^H with V Haar.
inline ComplexMatrix selfadjoint_unitary(Index n, Prng& rng) {
    if (n == 0) return ComplexMatrix(0, 0);
    const ComplexMatrix v = haar_unitary(n, rng);
    RealVector signs(n);
    for (Index i = 0; i < n; ++i) signs(i) = rng.sign();
    ComplexMatrix u = v * signs.cast<Complex>().asDiagonal() * v.adjoint();
    return 0.5 * (u + u.adjoint());
}

/// Orthonormal frame spanning a Haar-random `rank`-dimensional subspace.
inline ComplexMatrix haar_frame(Index n, Index rank, Prng& rng) {
    if (rank == 0) return ComplexMatrix(n, 0);
    const ComplexMatrix g = gaussian_matrix(n, rank, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    return qr.householderQ() * ComplexMatrix::Identity(n, rank);
}

} // namespace projpair
