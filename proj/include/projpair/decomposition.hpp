#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "projpair/projection.hpp"

namespace projpair {

/// Sizes of the six canonical subspaces, in order:
///   1: R(P) ∩ R(Q)      2: R(P) ∩ N(Q)      3: N(P) ∩ R(Q)
///   4: N(P) ∩ N(Q)      5: R(P) minus 1,2   6: remainder
struct BlockDims {
    Eigen::Index d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0, d6 = 0;

    Index operator[](int block) const {
        switch (block) {
            case 1: return d1;
            case 2: return d2;
            case 3: return d3;
            case 4: return d4;
            case 5: return d5;
            case 6: return d6;
            default: throw UsageError("BlockDims: block index out of range");
        }
    }

    Index total() const { return d1 + d2 + d3 + d4 + d5 + d6; }

    /// Starting column of block `block` in the adapted basis.
    Index offset(int block) const {
        Index off = 0;
        for (int b = 1; b < block; ++b) off += (*this)[b];
        return off;
    }

    std::array<Index, 6> as_array() const { return {d1, d2, d3, d4, d5, d6}; }

    bool operator==(const BlockDims&) const = default;
};

/// The canonical six-subspace form of a projection pair: an adapted
/// orthonormal basis, the block sizes, the spectrum of the positive
/// contraction Q0 on block 5, and the unitary D : H6 -> H5 appearing in
/// the off-diagonal coupling of Q.
struct HalmosDecomposition {
    ComplexMatrix basis;     // n x n unitary; column blocks B1..B6
    BlockDims dims;
    RealVector q0_eigs;      // ascending, strictly inside (split, 1 - split)
    ComplexMatrix d_unitary; // d5 x d6
    double tol_used = 0.0;
    double split_threshold = default_split_threshold;

    Index dimension() const { return basis.rows(); }

    /// Columns spanning the canonical subspace H_block.
    auto block(int b) const { return basis.middleCols(dims.offset(b), dims[b]); }

    /// Q0 as a matrix, diagonal in the stored basis.
    ComplexMatrix q0() const {
        return q0_eigs.cast<Complex>().asDiagonal().toDenseMatrix();
    }

    bool generic() const {
        return dims.d1 == 0 && dims.d2 == 0 && dims.d3 == 0 && dims.d4 == 0;
    }
};

namespace detail {

/// Fixes each column's phase so its largest-magnitude entry is real positive,
/// making eigenbases reproducible across runs and backends.
inline void canonicalize_column_phases(Eigen::Ref<ComplexMatrix> m) {
    for (Index j = 0; j < m.cols(); ++j) {
        Index imax = 0;
        m.col(j).cwiseAbs().maxCoeff(&imax);
        const Complex pivot = m(imax, j);
        const double mag = std::abs(pivot);
        if (mag > 0.0) m.col(j) *= std::conj(pivot) / mag;
    }
}

/// diag(sqrt(l * (1 - l))) for the interior spectrum.
inline RealVector coupling_weights(const RealVector& q0_eigs) {
    return (q0_eigs.array() * (1.0 - q0_eigs.array())).sqrt().matrix();
}

/// The generic-part projections in canonical coordinates on H5 + H6:
///   P = [I 0; 0 0],   Q = [Q0, R D; D^H R, D^H (I - Q0) D],  R = (Q0(I-Q0))^(1/2).
inline ComplexMatrix canonical_generic_p(Index d5) {
    ComplexMatrix p = ComplexMatrix::Zero(2 * d5, 2 * d5);
    p.topLeftCorner(d5, d5).setIdentity();
    return p;
}

inline ComplexMatrix canonical_generic_q(const RealVector& q0_eigs,
                                         const ComplexMatrix& d_unitary) {
    const Index d5 = q0_eigs.size();
    const RealVector weights = coupling_weights(q0_eigs);
    ComplexMatrix q(2 * d5, 2 * d5);
    q.topLeftCorner(d5, d5) = q0_eigs.cast<Complex>().asDiagonal();
    q.topRightCorner(d5, d5) = weights.cast<Complex>().asDiagonal() * d_unitary;
    q.bottomLeftCorner(d5, d5) = q.topRightCorner(d5, d5).adjoint();
    q.bottomRightCorner(d5, d5) =
        d_unitary.adjoint() *
        (1.0 - q0_eigs.array()).matrix().cast<Complex>().asDiagonal() * d_unitary;
    return q;
}

/// P and Q assembled from decomposition data, in canonical block
/// coordinates (before conjugation by the adapted basis).
inline ComplexMatrix canonical_p(const BlockDims& d) {
    ComplexMatrix p = ComplexMatrix::Zero(d.total(), d.total());
    p.block(d.offset(1), d.offset(1), d.d1, d.d1).setIdentity();
    p.block(d.offset(2), d.offset(2), d.d2, d.d2).setIdentity();
    p.block(d.offset(5), d.offset(5), d.d5, d.d5).setIdentity();
    return p;
}

inline ComplexMatrix canonical_q(const BlockDims& d, const RealVector& q0_eigs,
                                 const ComplexMatrix& d_unitary) {
    ComplexMatrix q = ComplexMatrix::Zero(d.total(), d.total());
    q.block(d.offset(1), d.offset(1), d.d1, d.d1).setIdentity();
    q.block(d.offset(3), d.offset(3), d.d3, d.d3).setIdentity();
    if (d.d5 > 0)
        q.block(d.offset(5), d.offset(5), 2 * d.d5, 2 * d.d5) =
            canonical_generic_q(q0_eigs, d_unitary);
    return q;
}

struct SpectralSplit {
    ComplexMatrix low;       // eigenvectors with eigenvalue <= split
    ComplexMatrix high;      // eigenvalue >= 1 - split
    ComplexMatrix interior;  // the rest, eigenvalue ascending
    RealVector interior_eigs;
};

/// Classifies the spectrum of a compression of Q (Hermitian, spectrum in
/// [0,1] up to roundoff) into the {0}-cluster, the {1}-cluster, and the
/// interior, mapping eigenvectors back to the ambient space via `frame`.
inline SpectralSplit split_compression(const ComplexMatrix& compression,
                                       const ComplexMatrix& frame, double split,
                                       double herm_tol) {
    SpectralSplit out;
    const Index k = compression.rows();
    if (k == 0) {
        const Index n = frame.rows();
        out.low = out.high = out.interior = ComplexMatrix(n, 0);
        out.interior_eigs = RealVector(0);
        return out;
    }
    EigenSystem es = hermitian_eig(HermitianMatrix(compression, herm_tol));
    std::vector<Index> low, high, interior;
    for (Index i = 0; i < k; ++i) {
        const double lambda = es.eigenvalues(i);
        if (lambda <= split)
            low.push_back(i);
        else if (lambda >= 1.0 - split)
            high.push_back(i);
        else
            interior.push_back(i);
    }
    auto collect = [&](const std::vector<Index>& idx) {
        ComplexMatrix cols(frame.rows(), static_cast<Index>(idx.size()));
        for (Index j = 0; j < cols.cols(); ++j)
            cols.col(j) = frame * es.vectors.col(idx[static_cast<size_t>(j)]);
        return cols;
    };
    out.low = collect(low);
    out.high = collect(high);
    out.interior = collect(interior);
    out.interior_eigs = RealVector(static_cast<Index>(interior.size()));
    for (size_t j = 0; j < interior.size(); ++j)
        out.interior_eigs(static_cast<Index>(j)) = es.eigenvalues(interior[j]);
    return out;
}

} // namespace detail

inline ProjectionPair reconstruct(const HalmosDecomposition& dec);

/// Computes the adapted basis, block dimensions, interior spectrum and the
/// coupling unitary D for a validated projection pair.
///
/// Route: eigendecompose the compression of Q to R(P) — the {1}-cluster spans
/// H1, the {0}-cluster H2, the interior H5 and the spectrum of Q0; the
/// compression to N(P) symmetrically yields H3, H4, H6. Eigenvalues within
/// `split_threshold` of 0 or 1 are assigned to the trivial blocks. D is then
/// recovered from the H5-row/H6-column block of Q in the adapted basis.
inline HalmosDecomposition decompose(const ProjectionPair& pair, double tol = -1.0,
                                     double split_threshold = default_split_threshold) {
    const Index n = pair.dimension();
    const ComplexMatrix& p = pair.p.matrix;
    const ComplexMatrix& q = pair.q.matrix;
    if (tol < 0.0)
        tol = default_tolerance(n, operator_norm(p), operator_norm(q));

    HalmosDecomposition dec;
    dec.tol_used = tol;
    dec.split_threshold = split_threshold;

    // Split the space into R(P) and N(P).
    const double herm_tol = std::max({tol, pair.p.tol_used, pair.q.tol_used});
    EigenSystem es_p = hermitian_eig(HermitianMatrix(p, herm_tol));
    std::vector<Index> range_idx, null_idx;
    for (Index i = 0; i < n; ++i)
        (es_p.eigenvalues(i) > 0.5 ? range_idx : null_idx).push_back(i);
    ComplexMatrix frame_range(n, static_cast<Index>(range_idx.size()));
    ComplexMatrix frame_null(n, static_cast<Index>(null_idx.size()));
    for (Index j = 0; j < frame_range.cols(); ++j)
        frame_range.col(j) = es_p.vectors.col(range_idx[static_cast<size_t>(j)]);
    for (Index j = 0; j < frame_null.cols(); ++j)
        frame_null.col(j) = es_p.vectors.col(null_idx[static_cast<size_t>(j)]);

    // Compress Q to each side and classify the spectra.
    detail::SpectralSplit range_side = detail::split_compression(
        frame_range.adjoint() * q * frame_range, frame_range, split_threshold, herm_tol);
    detail::SpectralSplit null_side = detail::split_compression(
        frame_null.adjoint() * q * frame_null, frame_null, split_threshold, herm_tol);

    dec.dims.d1 = range_side.high.cols();
    dec.dims.d2 = range_side.low.cols();
    dec.dims.d3 = null_side.high.cols();
    dec.dims.d4 = null_side.low.cols();
    dec.dims.d5 = range_side.interior.cols();
    dec.dims.d6 = null_side.interior.cols();
    if (dec.dims.d5 != dec.dims.d6)
        throw NumericalError(
            "decompose: interior block mismatch d5 = " + std::to_string(dec.dims.d5) +
                ", d6 = " + std::to_string(dec.dims.d6) +
                " (an eigenvalue straddles the split threshold)",
            split_threshold);
    dec.q0_eigs = range_side.interior_eigs;

    // Pair H6 to H5 by ascending Q0 eigenvalue: the null-side interior
    // spectrum is 1 - Q0's, so reverse its ascending order.
    const ComplexMatrix b6 = null_side.interior.rowwise().reverse();

    dec.basis = ComplexMatrix(n, n);
    const ComplexMatrix* blocks[6] = {&range_side.high, &range_side.low,
                                      &null_side.high,  &null_side.low,
                                      &range_side.interior, &b6};
    Index col = 0;
    for (const ComplexMatrix* blk : blocks) {
        dec.basis.middleCols(col, blk->cols()) = *blk;
        col += blk->cols();
    }
    detail::canonicalize_column_phases(dec.basis);

    const double basis_defect = unitarity_defect(dec.basis);
    if (basis_defect > tol)
        throw NumericalError("decompose: adapted basis lost orthonormality",
                             basis_defect);

    // Recover D from the H5/H6 coupling block of Q: the canonical form has
    // B5^H Q B6 = (Q0 (I - Q0))^(1/2) D, and the diagonal factor is
    // well-conditioned because the interior spectrum avoids 0 and 1.
    const Index d5 = dec.dims.d5;
    if (d5 > 0) {
        const ComplexMatrix coupling =
            dec.block(5).adjoint() * q * dec.basis.rightCols(d5);
        const RealVector weights = detail::coupling_weights(dec.q0_eigs);
        dec.d_unitary = weights.cwiseInverse().cast<Complex>().asDiagonal() * coupling;
        const double d_defect = unitarity_defect(dec.d_unitary);
        if (d_defect > 10.0 * tol)
            throw NumericalError("decompose: recovered D is not unitary (mis-split)",
                                 d_defect);
    } else {
        dec.d_unitary = ComplexMatrix(0, 0);
    }

    ProjectionPair rec = reconstruct(dec);
    const double round_trip = operator_norm(rec.p.matrix - p) +
                              operator_norm(rec.q.matrix - q);
    if (round_trip > tol)
        throw NumericalError("decompose: round-trip residual exceeds tolerance",
                             round_trip);
    return dec;
}

/// Rebuilds (P, Q) from the stored decomposition data.
inline ProjectionPair reconstruct(const HalmosDecomposition& dec) {
    const ComplexMatrix& b = dec.basis;
    ComplexMatrix p = b * detail::canonical_p(dec.dims) * b.adjoint();
    ComplexMatrix q =
        b * detail::canonical_q(dec.dims, dec.q0_eigs, dec.d_unitary) * b.adjoint();
    p = 0.5 * (p + p.adjoint());
    q = 0.5 * (q + q.adjoint());
    return make_projection_pair(p, q, dec.tol_used);
}

/// The restriction of the pair to H5 + H6, expressed in the adapted basis.
/// The result is in generic position by construction.
inline ProjectionPair generic_part(const HalmosDecomposition& dec) {
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("generic_part: the pair has no generic part (d5 = 0)");
    ComplexMatrix p = detail::canonical_generic_p(d5);
    ComplexMatrix q = detail::canonical_generic_q(dec.q0_eigs, dec.d_unitary);
    q = 0.5 * (q + q.adjoint());
    return make_projection_pair(p, q, dec.tol_used);
}

/// Canonical angles between R(P) and R(Q): d1 zeros, one interior angle
/// arccos(sqrt(lambda)) per Q0 eigenvalue, and min(d2, d3) right angles.
struct PrincipalAngles {
    RealVector angles;   // ascending, length zero_count + interior.size() + right_count
    Index zero_count = 0;
    Index right_count = 0;
    RealVector interior; // ascending, strictly inside (0, pi/2)
};

inline PrincipalAngles principal_angles(const HalmosDecomposition& dec) {
    PrincipalAngles out;
    out.zero_count = dec.dims.d1;
    out.right_count = std::min(dec.dims.d2, dec.dims.d3);
    const Index d5 = dec.dims.d5;
    out.interior = RealVector(d5);
    for (Index i = 0; i < d5; ++i)
        out.interior(i) = std::acos(std::sqrt(dec.q0_eigs(d5 - 1 - i)));
    out.angles = RealVector(out.zero_count + d5 + out.right_count);
    out.angles.head(out.zero_count).setZero();
    out.angles.segment(out.zero_count, d5) = out.interior;
    out.angles.tail(out.right_count).setConstant(std::acos(0.0));
    return out;
}

/// Absorbs D into the H6 basis columns, so the stored coupling unitary
/// becomes the identity. The reconstructed pair is unchanged.
inline HalmosDecomposition canonicalize_d(const HalmosDecomposition& dec) {
    HalmosDecomposition out = dec;
    const Index d5 = dec.dims.d5;
    if (d5 == 0) return out;
    out.basis.rightCols(d5) = dec.basis.rightCols(d5) * dec.d_unitary.adjoint();
    out.d_unitary = ComplexMatrix::Identity(d5, d5);
    return out;
}

} // namespace projpair
