#pragma once

#include <algorithm>
#include <string>
#include <variant>

#include "projpair/rotation.hpp"

namespace projpair {

/// Interior spectrum sampled uniformly from an interval in (0, 1).
struct Q0Uniform {
    Index count = 0;
    double lo = 0.1;
    double hi = 0.9;
};

/// Recipe for a projection pair with prescribed canonical structure: block
/// sizes, interior spectrum (explicit or sampled), and the seed driving
/// every random choice.
struct PairSpec {
    BlockDims dims;
    std::variant<RealVector, Q0Uniform> q0_spec;
    std::uint64_t seed = 0;
};

/// Assembles (P, Q) in canonical form with the prescribed block sizes,
/// Q0 = diag(q0 values) and D = I, then hides the structure behind one
/// seeded random unitary. decompose() recovers dims and the spectrum.
inline ProjectionPair build_pair(const PairSpec& spec,
                                 double split_threshold = default_split_threshold) {
    const BlockDims& dims = spec.dims;
    for (int b = 1; b <= 6; ++b)
        if (dims[b] < 0)
            throw UsageError("build_pair: negative block dimension d" + std::to_string(b));
    if (dims.d5 != dims.d6)
        throw UsageError("build_pair: d5 != d6 (" + std::to_string(dims.d5) + " vs " +
                         std::to_string(dims.d6) + ")");

    RealVector q0_eigs;
    if (const auto* values = std::get_if<RealVector>(&spec.q0_spec)) {
        q0_eigs = *values;
    } else {
        const auto& uniform = std::get<Q0Uniform>(spec.q0_spec);
        if (uniform.lo >= uniform.hi)
            throw UsageError("build_pair: empty q0 sampling interval");
        Prng rng(spec.seed, /*stream=*/7);
        q0_eigs = RealVector(uniform.count);
        for (Index i = 0; i < uniform.count; ++i)
            q0_eigs(i) = uniform.lo + (uniform.hi - uniform.lo) * rng.uniform();
    }
    if (q0_eigs.size() != dims.d5)
        throw UsageError("build_pair: q0 spectrum has " + std::to_string(q0_eigs.size()) +
                         " values, expected d5 = " + std::to_string(dims.d5));
    std::sort(q0_eigs.begin(), q0_eigs.end());
    for (Index i = 0; i < q0_eigs.size(); ++i)
        if (!(q0_eigs(i) > split_threshold && q0_eigs(i) < 1.0 - split_threshold))
            throw UsageError("build_pair: q0 value " + std::to_string(q0_eigs(i)) +
                             " is not strictly inside the split window");

    const Index n = dims.total();
    const ComplexMatrix d_identity = ComplexMatrix::Identity(dims.d5, dims.d5);
    const ComplexMatrix p_canon = detail::canonical_p(dims);
    const ComplexMatrix q_canon = detail::canonical_q(dims, q0_eigs, d_identity);

    Prng rng(spec.seed, /*stream=*/0);
    const ComplexMatrix g = haar_unitary(n, rng);
    ComplexMatrix p = g * p_canon * g.adjoint();
    ComplexMatrix q = g * q_canon * g.adjoint();
    p = 0.5 * (p + p.adjoint());
    q = 0.5 * (q + q.adjoint());
    return make_projection_pair(p, q);
}

/// Projections onto independently sampled random subspaces of the given
/// ranks. The canonical block structure is whatever rank arithmetic forces.
inline ProjectionPair random_pair_dense(Index n, Index rank_p, Index rank_q,
                                        std::uint64_t seed) {
    if (rank_p < 0 || rank_q < 0 || rank_p > n || rank_q > n)
        throw UsageError("random_pair_dense: ranks must lie in [0, n]");
    Prng rng_p(seed, /*stream=*/1);
    Prng rng_q(seed, /*stream=*/2);
    const ComplexMatrix frame_p = haar_frame(n, rank_p, rng_p);
    const ComplexMatrix frame_q = haar_frame(n, rank_q, rng_q);
    ComplexMatrix p = frame_p * frame_p.adjoint();
    ComplexMatrix q = frame_q * frame_q.adjoint();
    p = 0.5 * (p + p.adjoint());
    q = 0.5 * (q + q.adjoint());
    return make_projection_pair(p, q);
}

/// Residuals of the intertwining identities for a candidate U, plus the
/// unitarity defect and ||P - Q||. `passed` requires U unitary within tol
/// and the residuals selected by `mode` within tol.
struct VerifyReport {
    IntertwinerKind mode = IntertwinerKind::Full;
    double residual_out = 0.0; // ||UP - QU||
    double residual_inn = 0.0; // ||PU - UQ||
    double unitarity = 0.0;
    double norm_pq = 0.0;
    bool passed = false;
};

inline VerifyReport verify_intertwining(const ProjectionPair& pair, const ComplexMatrix& u,
                                        IntertwinerKind mode, double tol) {
    const Index n = pair.dimension();
    if (u.rows() != n || u.cols() != n)
        throw UsageError("verify_intertwining: U must be " + std::to_string(n) + "x" +
                         std::to_string(n));
    const ComplexMatrix& p = pair.p.matrix;
    const ComplexMatrix& q = pair.q.matrix;

    VerifyReport report;
    report.mode = mode;
    report.residual_out = operator_norm(u * p - q * u);
    report.residual_inn = operator_norm(p * u - u * q);
    report.unitarity = unitarity_defect(u);
    report.norm_pq = norm_distance(pair);

    bool ok = report.unitarity <= tol;
    if (mode == IntertwinerKind::Outer || mode == IntertwinerKind::Full)
        ok = ok && report.residual_out <= tol;
    if (mode == IntertwinerKind::Inner || mode == IntertwinerKind::Full)
        ok = ok && report.residual_inn <= tol;
    report.passed = ok;
    return report;
}

/// Sampled lower-bound oracle for the extremal distance: the minimum of
/// ||U - I|| over `trials` members of the outer family. The first trial is
/// the deterministic candidate u0 = I with s0 = +-I chosen to minimize, so
/// the exact minimizer is always among the samples.
inline double brute_force_min_distance(const HalmosDecomposition& dec, Index trials,
                                       std::uint64_t seed) {
    if (trials < 1)
        throw UsageError("brute_force_min_distance: trials must be >= 1");
    if (!dec.generic())
        throw ScopeError("brute_force_min_distance: pair is not in generic position");
    const Index d5 = dec.dims.d5;
    if (d5 == 0)
        throw ScopeError("brute_force_min_distance: the pair has no generic part (d5 = 0)");

    const ComplexMatrix w0 = base_symmetry(dec);
    const ComplexMatrix id = ComplexMatrix::Identity(2 * d5, 2 * d5);
    const ComplexMatrix eye5 = ComplexMatrix::Identity(d5, d5);

    const double plus = operator_norm(w0 * detail::two_block_diag(eye5, eye5) - id);
    const double minus = operator_norm(w0 * detail::two_block_diag(eye5, -eye5) - id);
    double best = std::min(plus, minus);

    for (Index t = 1; t < trials; ++t) {
        Prng rng(seed, static_cast<std::uint64_t>(t));
        const ComplexMatrix u0 = haar_unitary(d5, rng);
        const ComplexMatrix s0 = haar_unitary(d5, rng);
        best = std::min(best,
                        operator_norm(w0 * detail::two_block_diag(u0, s0) - id));
    }
    return best;
}

} // namespace projpair
