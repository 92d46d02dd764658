#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projpair/decomposition.hpp"
#include "projpair/random.hpp"

namespace projpair {

/// Which intertwining identity a unitary is asked to satisfy:
/// Outer: UP = QU.  Inner: PU = UQ.  Full: both.
enum class IntertwinerKind { Outer, Inner, Full };

inline const char* to_string(IntertwinerKind kind) {
    switch (kind) {
        case IntertwinerKind::Outer: return "outer";
        case IntertwinerKind::Inner: return "inner";
        default: return "full";
    }
}

/// Free parameters of the full intertwiner family. Any subset may be
/// provided; missing unitaries on H1, H4, H5 default to identities and the
/// H2/H3 swap blocks to seeded random unitaries.
struct IntertwinerParams {
    std::optional<ComplexMatrix> u1; // unitary on H1
    std::optional<ComplexMatrix> c2; // unitary H3 -> H2 (d2 x d3)
    std::optional<ComplexMatrix> c3; // unitary H2 -> H3 (d3 x d2)
    std::optional<ComplexMatrix> u4; // unitary on H4
    std::optional<ComplexMatrix> u0; // unitary on H5, must commute with Q0
    std::optional<ComplexMatrix> s0; // unitary on H6 (outer/inner family only)
};

namespace detail {

inline void require_unitary_block(const ComplexMatrix& m, Index rows, Index cols,
                                  double tol, const char* name) {
    if (m.rows() != rows || m.cols() != cols)
        throw ParameterError(std::string(name) + ": expected " + std::to_string(rows) +
                             "x" + std::to_string(cols) + ", got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const double defect = unitarity_defect(m);
    if (defect > tol)
        throw ParameterError(std::string(name) + ": unitarity defect " +
                             std::to_string(defect) + " exceeds tol " +
                             std::to_string(tol));
}

inline void require_q0_commutant(const HalmosDecomposition& dec, const ComplexMatrix& u0,
                                 const char* name) {
    const ComplexMatrix q0 = dec.q0();
    const double defect = operator_norm(u0 * q0 - q0 * u0);
    if (defect > dec.tol_used)
        throw ParameterError(std::string(name) + ": block does not commute with Q0 (defect " +
                             std::to_string(defect) + ")");
}

inline ComplexMatrix two_block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

/// Consecutive-eigenvalue clusters of the interior spectrum; two
/// eigenvalues belong to the same cluster when they differ by at most the
/// decomposition's split threshold.
inline std::vector<std::pair<Index, Index>> q0_clusters(const HalmosDecomposition& dec) {
    std::vector<std::pair<Index, Index>> clusters; // (start, size)
    const Index d5 = dec.dims.d5;
    Index start = 0;
    for (Index i = 1; i <= d5; ++i) {
        if (i == d5 || dec.q0_eigs(i) - dec.q0_eigs(i - 1) > dec.split_threshold) {
            clusters.emplace_back(start, i - start);
            start = i;
        }
    }
    return clusters;
}

} // namespace detail

/// The canonical symmetry W0 on H5 + H6 in the adapted coordinates:
///
///   W0 = [ Q0^(1/2)            (I - Q0)^(1/2) D  ]
///        [ D^H (I - Q0)^(1/2)  -D^H Q0^(1/2) D   ]
///
/// W0 is a self-adjoint unitary with W0 Pg = Qg W0, the base point of every
/// intertwiner family below.
inline ComplexMatrix base_symmetry(const HalmosDecomposition& dec) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("base_symmetry: the pair has no generic part (d5 = 0)");
    const ComplexMatrix& d = dec.d_unitary;
    const RealVector sqrt_q0 = dec.q0_eigs.cwiseSqrt();
    const RealVector sqrt_comp = (1.0 - dec.q0_eigs.array()).sqrt().matrix();

    ComplexMatrix w0(2 * d5, 2 * d5);
    w0.topLeftCorner(d5, d5) = sqrt_q0.cast<Complex>().asDiagonal();
    w0.topRightCorner(d5, d5) = sqrt_comp.cast<Complex>().asDiagonal() * d;
    w0.bottomLeftCorner(d5, d5) = d.adjoint() * sqrt_comp.cast<Complex>().asDiagonal();
    w0.bottomRightCorner(d5, d5) =
        -(d.adjoint() * sqrt_q0.cast<Complex>().asDiagonal() * d);
    return w0;
}

/// Member of the outer family on the generic part: U = W0 diag(u0, s0),
/// satisfying U Pg = Qg U. Every outer intertwiner of the generic pair has
/// this form for unitary u0, s0.
inline ComplexMatrix outer_intertwiner(const HalmosDecomposition& dec,
                                       const ComplexMatrix& u0, const ComplexMatrix& s0) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("outer_intertwiner: the pair has no generic part (d5 = 0)");
    detail::require_unitary_block(u0, d5, d5, dec.tol_used, "outer_intertwiner: u0");
    detail::require_unitary_block(s0, d5, d5, dec.tol_used, "outer_intertwiner: s0");
    return base_symmetry(dec) * detail::two_block_diag(u0, s0);
}

/// Member of the inner family: the adjoint of the corresponding outer
/// member, satisfying Pg U = U Qg.
inline ComplexMatrix inner_intertwiner(const HalmosDecomposition& dec,
                                       const ComplexMatrix& u0, const ComplexMatrix& s0) {
    return outer_intertwiner(dec, u0, s0).adjoint();
}

/// Member of the two-sided family on the generic part:
/// U = W0 diag(u0, D^H u0 D) for unitary u0 commuting with Q0. Satisfies
/// both U Pg = Qg U and Pg U = U Qg.
inline ComplexMatrix generic_full_intertwiner(const HalmosDecomposition& dec,
                                              const ComplexMatrix& u0) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("generic_full_intertwiner: the pair has no generic part (d5 = 0)");
    detail::require_unitary_block(u0, d5, d5, dec.tol_used, "generic_full_intertwiner: u0");
    detail::require_q0_commutant(dec, u0, "generic_full_intertwiner: u0");
    const ComplexMatrix mirrored = dec.d_unitary.adjoint() * u0 * dec.d_unitary;
    return base_symmetry(dec) * detail::two_block_diag(u0, mirrored);
}

struct ExistenceCheck {
    bool exists = false;
    Index d2 = 0;
    Index d3 = 0;

    explicit operator bool() const { return exists; }
};

/// A two-sided intertwiner exists iff dim R(P)∩N(Q) equals dim N(P)∩R(Q).
inline ExistenceCheck intertwiner_exists(const HalmosDecomposition& dec) {
    return {dec.dims.d2 == dec.dims.d3, dec.dims.d2, dec.dims.d3};
}

/// Random unitary commuting with Q0: block-diagonal with one Haar block per
/// eigenvalue cluster. With `selfadjoint`, each block is a random Hermitian
/// unitary (spectrum in {-1, +1}) instead.
inline ComplexMatrix sample_commutant_unitary(const HalmosDecomposition& dec,
                                              std::uint64_t seed, bool selfadjoint = false) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("sample_commutant_unitary: the pair has no generic part (d5 = 0)");
    ComplexMatrix u0 = ComplexMatrix::Zero(d5, d5);
    const auto clusters = detail::q0_clusters(dec);
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        const auto [start, size] = clusters[k];
        Prng rng(seed, static_cast<std::uint64_t>(k));
        u0.block(start, start, size, size) =
            selfadjoint ? selfadjoint_unitary(size, rng) : haar_unitary(size, rng);
    }
    return u0;
}

/// Full-space two-sided intertwiner
///
///   U = B ( U1 ⊕ [0 C2; C3 0] ⊕ U4 ⊕ W0 diag(u0, D^H u0 D) ) B^H,
///
/// which satisfies UP = QU and PU = UQ. Throws ExistenceError when
/// d2 != d3. Missing parameters default to identity blocks, except C2/C3
/// which default to seeded random unitaries (there is no canonical unitary
/// between H3 and H2).
inline ComplexMatrix full_intertwiner(const HalmosDecomposition& dec,
                                      const IntertwinerParams& params = {},
                                      std::uint64_t seed = 0) {
    const ExistenceCheck check = intertwiner_exists(dec);
    if (!check)
        throw ExistenceError("full_intertwiner: no two-sided intertwiner exists (d2 = " +
                                 std::to_string(check.d2) + " != d3 = " +
                                 std::to_string(check.d3) + ")",
                             check.d2, check.d3);
    const BlockDims& dims = dec.dims;
    const double tol = dec.tol_used;

    ComplexMatrix u1 = params.u1.value_or(ComplexMatrix::Identity(dims.d1, dims.d1));
    ComplexMatrix u4 = params.u4.value_or(ComplexMatrix::Identity(dims.d4, dims.d4));
    ComplexMatrix u0 = params.u0.value_or(ComplexMatrix::Identity(dims.d5, dims.d5));
    ComplexMatrix c2, c3;
    if (params.c2) {
        c2 = *params.c2;
    } else {
        Prng rng(seed, 1);
        c2 = haar_unitary(dims.d2, rng);
    }
    if (params.c3) {
        c3 = *params.c3;
    } else {
        Prng rng(seed, 2);
        c3 = haar_unitary(dims.d3, rng);
    }

    detail::require_unitary_block(u1, dims.d1, dims.d1, tol, "full_intertwiner: u1");
    detail::require_unitary_block(c2, dims.d2, dims.d3, tol, "full_intertwiner: c2");
    detail::require_unitary_block(c3, dims.d3, dims.d2, tol, "full_intertwiner: c3");
    detail::require_unitary_block(u4, dims.d4, dims.d4, tol, "full_intertwiner: u4");

    const Index n = dims.total();
    ComplexMatrix canon = ComplexMatrix::Zero(n, n);
    canon.block(dims.offset(1), dims.offset(1), dims.d1, dims.d1) = u1;
    canon.block(dims.offset(2), dims.offset(3), dims.d2, dims.d3) = c2;
    canon.block(dims.offset(3), dims.offset(2), dims.d3, dims.d2) = c3;
    canon.block(dims.offset(4), dims.offset(4), dims.d4, dims.d4) = u4;
    if (dims.d5 > 0) {
        detail::require_unitary_block(u0, dims.d5, dims.d5, tol, "full_intertwiner: u0");
        detail::require_q0_commutant(dec, u0, "full_intertwiner: u0");
        canon.block(dims.offset(5), dims.offset(5), 2 * dims.d5, 2 * dims.d5) =
            generic_full_intertwiner(dec, u0);
    }

    const double defect = unitarity_defect(canon);
    if (defect > 10.0 * tol)
        throw ParameterError("full_intertwiner: assembled block is not unitary (defect " +
                             std::to_string(defect) + ")");
    return dec.basis * canon * dec.basis.adjoint();
}

/// Unitary U with PQP = U (QPQ) U^H. Exists for every pair: identity on
/// H1..H4 and the base symmetry on the generic part, where it swaps the two
/// restricted projections.
inline ComplexMatrix swap_conjugator(const HalmosDecomposition& dec) {
    const BlockDims& dims = dec.dims;
    const Index n = dims.total();
    ComplexMatrix canon = ComplexMatrix::Identity(n, n);
    if (dims.d5 > 0)
        canon.block(dims.offset(5), dims.offset(5), 2 * dims.d5, 2 * dims.d5) =
            base_symmetry(dec);
    return dec.basis * canon * dec.basis.adjoint();
}

} // namespace projpair
