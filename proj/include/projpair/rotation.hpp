#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "projpair/intertwine.hpp"

namespace projpair {

/// Residuals of the three direct-rotation conditions
///   S P = Q S,   S^2 = (Q' - Q)(P' - P),   Re S >= 0
/// where K' = I - K.
struct RotationCertificate {
    double residual_intertwine = 0.0; // ||SP - QS||
    double residual_square = 0.0;     // ||S^2 - (Q'-Q)(P'-P)||
    double min_real_part = 0.0;       // smallest eigenvalue of (S + S^H)/2
    double tol_used = 0.0;
    bool passed = false;
};

/// Evaluates the direct-rotation conditions for a candidate S. Failures are
/// reported in the certificate, never thrown.
inline RotationCertificate verify_direct_rotation(const ProjectionPair& pair,
                                                  const ComplexMatrix& s, double tol) {
    const Index n = pair.dimension();
    if (s.rows() != n || s.cols() != n)
        throw UsageError("verify_direct_rotation: S must be " + std::to_string(n) + "x" +
                         std::to_string(n));
    const ComplexMatrix& p = pair.p.matrix;
    const ComplexMatrix& q = pair.q.matrix;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    RotationCertificate cert;
    cert.tol_used = tol;
    cert.residual_intertwine = operator_norm(s * p - q * s);
    cert.residual_square = operator_norm(s * s - (id - 2.0 * q) * (id - 2.0 * p));
    if (n > 0) {
        const EigenSystem real_part =
            hermitian_eig(HermitianMatrix(0.5 * (s + s.adjoint())));
        cert.min_real_part = real_part.eigenvalues(0);
    }
    cert.passed = cert.residual_intertwine <= tol && cert.residual_square <= tol &&
                  cert.min_real_part >= -tol;
    return cert;
}

/// The unique direct rotation of the generic part, in adapted coordinates:
///
///   S = [ Q0^(1/2)            -(I - Q0)^(1/2) D ]
///       [ D^H (I - Q0)^(1/2)   D^H Q0^(1/2) D   ]
inline ComplexMatrix direct_rotation_generic(const HalmosDecomposition& dec) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("direct_rotation_generic: the pair has no generic part (d5 = 0)");
    const ComplexMatrix& d = dec.d_unitary;
    const RealVector sqrt_q0 = dec.q0_eigs.cwiseSqrt();
    const RealVector sqrt_comp = (1.0 - dec.q0_eigs.array()).sqrt().matrix();

    ComplexMatrix s(2 * d5, 2 * d5);
    s.topLeftCorner(d5, d5) = sqrt_q0.cast<Complex>().asDiagonal();
    s.topRightCorner(d5, d5) = -(sqrt_comp.cast<Complex>().asDiagonal() * d);
    s.bottomLeftCorner(d5, d5) = d.adjoint() * sqrt_comp.cast<Complex>().asDiagonal();
    s.bottomRightCorner(d5, d5) = d.adjoint() * sqrt_q0.cast<Complex>().asDiagonal() * d;
    return s;
}

/// A direct rotation exists iff d2 == d3, the same criterion as for
/// two-sided intertwiners.
inline bool rotation_exists(const HalmosDecomposition& dec) {
    return dec.dims.d2 == dec.dims.d3;
}

/// Full-space direct rotation
///
///   S = B ( I1 ⊕ [0 C; -C^H 0] ⊕ I4 ⊕ generic block ) B^H
///
/// for a unitary C : H3 -> H2, seeded Haar by default. Throws
/// ExistenceError when d2 != d3.
inline ComplexMatrix direct_rotation(const HalmosDecomposition& dec,
                                     std::optional<ComplexMatrix> c = std::nullopt,
                                     std::uint64_t seed = 0) {
    const BlockDims& dims = dec.dims;
    if (dims.d2 != dims.d3)
        throw ExistenceError("direct_rotation: no direct rotation exists (d2 = " +
                                 std::to_string(dims.d2) + " != d3 = " +
                                 std::to_string(dims.d3) + ")",
                             dims.d2, dims.d3);
    ComplexMatrix cc;
    if (c) {
        cc = std::move(*c);
    } else {
        Prng rng(seed, 3);
        cc = haar_unitary(dims.d2, rng);
    }
    detail::require_unitary_block(cc, dims.d2, dims.d3, dec.tol_used, "direct_rotation: c");

    const Index n = dims.total();
    ComplexMatrix canon = ComplexMatrix::Identity(n, n);
    canon.block(dims.offset(2), dims.offset(2), dims.d2, dims.d2).setZero();
    canon.block(dims.offset(3), dims.offset(3), dims.d3, dims.d3).setZero();
    canon.block(dims.offset(2), dims.offset(3), dims.d2, dims.d3) = cc;
    canon.block(dims.offset(3), dims.offset(2), dims.d3, dims.d2) = -cc.adjoint();
    if (dims.d5 > 0)
        canon.block(dims.offset(5), dims.offset(5), 2 * dims.d5, 2 * dims.d5) =
            direct_rotation_generic(dec);
    return dec.basis * canon * dec.basis.adjoint();
}

/// Distance from the identity to the unitary orbit {U : P = U^H Q U} for a
/// pair in generic position: sqrt(2 (1 - sqrt(lambda0))) with lambda0 the
/// smallest Q0 eigenvalue. The direct rotation attains it.
inline double extremal_norm(const HalmosDecomposition& dec) {
    if (!dec.generic())
        throw ScopeError(
            "extremal_norm: pair is not in generic position; extract the generic part first");
    if (dec.dims.d5 == 0)
        throw ScopeError("extremal_norm: the pair has no generic part (d5 = 0)");
    const double lambda0 = dec.q0_eigs(0);
    return std::sqrt(2.0 * (1.0 - std::sqrt(lambda0)));
}

} // namespace projpair
