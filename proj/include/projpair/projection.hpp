#pragma once

#include <string>
#include <utility>

#include "projpair/numerics.hpp"

namespace projpair {

/// Scale-aware residual budget shared by the validation and decomposition
/// routines: 1e-8 * n * max(1, ||P||, ||Q||).
inline double default_tolerance(Index n, double norm_p = 1.0, double norm_q = 1.0) {
    return 1e-8 * static_cast<double>(std::max<Index>(n, 1)) *
           std::max({1.0, norm_p, norm_q});
}

constexpr double default_split_threshold = 1e-8;

/// A square matrix certified Hermitian and idempotent within `tol_used`,
/// with the residuals achieved at validation time.
struct OrthoProjection {
    ComplexMatrix matrix;
    double tol_used = 0.0;
    double hermitian_residual = 0.0;
    double idempotency_residual = 0.0;

    Index dimension() const { return matrix.rows(); }
};

/// Checks P = P^H = P^2 within tolerance. A negative `tol` selects the
/// scale-aware default.
inline OrthoProjection validate_projection(const ComplexMatrix& m, double tol = -1.0) {
    if (m.rows() != m.cols())
        throw ValidationError("validate_projection: matrix is not square");
    if (!is_finite(m))
        throw ValidationError("validate_projection: matrix has non-finite entries");
    if (tol < 0.0) tol = default_tolerance(m.rows(), operator_norm(m));

    const double herm_defect = operator_norm(m - m.adjoint());
    if (herm_defect > tol)
        throw ValidationError("validate_projection: Hermitian defect " +
                              std::to_string(herm_defect) + " exceeds tol " +
                              std::to_string(tol));
    const double idem_defect = operator_norm(m * m - m);
    if (idem_defect > tol)
        throw ValidationError("validate_projection: idempotency defect " +
                              std::to_string(idem_defect) + " exceeds tol " +
                              std::to_string(tol));
    return OrthoProjection{m, tol, herm_defect, idem_defect};
}

/// Two orthogonal projections on the same space.
struct ProjectionPair {
    OrthoProjection p;
    OrthoProjection q;

    ProjectionPair(OrthoProjection p_, OrthoProjection q_)
        : p(std::move(p_)), q(std::move(q_)) {
        if (p.dimension() != q.dimension())
            throw UsageError("ProjectionPair: dimension mismatch " +
                             std::to_string(p.dimension()) + " vs " +
                             std::to_string(q.dimension()));
    }

    Index dimension() const { return p.dimension(); }
};

inline ProjectionPair make_projection_pair(const ComplexMatrix& p, const ComplexMatrix& q,
                                double tol = -1.0) {
    return ProjectionPair(validate_projection(p, tol), validate_projection(q, tol));
}

/// ||P - Q||. Equals 1 exactly when R(P) meets N(Q) or N(P) meets R(Q).
inline double norm_distance(const ProjectionPair& pair) {
    return operator_norm(pair.p.matrix - pair.q.matrix);
}

} // namespace projpair
