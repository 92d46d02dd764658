#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "projpair/errors.hpp"

namespace projpair {

using Complex = std::complex<double>;

/// Dense complex matrix, the carrier type for every operator in the library.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline bool is_finite(const ComplexMatrix& m) {
    return m.array().isFinite().all();
}

/// Largest singular value. Zero for empty matrices.
inline double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

/// Deviation from (co-)isometry in operator norm. Square matrices are
/// measured against both Gram matrices, tall ones against M^H M, wide
/// ones against M M^H.
inline double unitarity_defect(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    const auto id_c = ComplexMatrix::Identity(m.cols(), m.cols());
    const auto id_r = ComplexMatrix::Identity(m.rows(), m.rows());
    if (m.rows() > m.cols()) return operator_norm(m.adjoint() * m - id_c);
    if (m.rows() < m.cols()) return operator_norm(m * m.adjoint() - id_r);
    return std::max(operator_norm(m.adjoint() * m - id_c),
                    operator_norm(m * m.adjoint() - id_r));
}

/// Square matrix wrapper that certifies ||M - M^H|| <= tol * max(1, ||M||)
/// at construction time.
class HermitianMatrix {
public:
    static constexpr double default_tol = 1e-10;

    explicit HermitianMatrix(ComplexMatrix m, double tol = default_tol)
        : matrix_(std::move(m)) {
        if (matrix_.rows() != matrix_.cols())
            throw ValidationError("HermitianMatrix: matrix is not square");
        const double defect = operator_norm(matrix_ - matrix_.adjoint());
        const double budget = tol * std::max(1.0, operator_norm(matrix_));
        if (defect > budget)
            throw ValidationError("HermitianMatrix: Hermitian defect " +
                                  std::to_string(defect) + " exceeds tolerance " +
                                  std::to_string(budget));
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    Index size() const { return matrix_.rows(); }

private:
    ComplexMatrix matrix_;
};

/// Spectral data of a Hermitian matrix: eigenvalues ascending, orthonormal
/// eigenvectors as columns.
struct EigenSystem {
    RealVector eigenvalues;
    ComplexMatrix vectors;
};

/// Full eigendecomposition of a Hermitian matrix. The input is symmetrized
/// before solving so the certified Hermitian defect cannot leak into the
/// eigenvector basis.
inline EigenSystem hermitian_eig(const HermitianMatrix& h) {
    const Index n = h.size();
    if (n == 0) return {RealVector(0), ComplexMatrix(0, 0)};

    const ComplexMatrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        const double residual = operator_norm(sym);
        throw NumericalError("hermitian_eig: eigensolver failed to converge", residual);
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Positive square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-tol, 0] are clamped to zero; anything below -tol is
/// rejected. A negative `tol` selects the default window 1e-10 * ||H||.
inline HermitianMatrix psd_sqrt(const HermitianMatrix& h, double tol = -1.0) {
    const Index n = h.size();
    if (n == 0) return HermitianMatrix(ComplexMatrix(0, 0));
    if (tol < 0.0) tol = 1e-10 * operator_norm(h.matrix());

    EigenSystem es = hermitian_eig(h);
    RealVector roots(n);
    for (Index i = 0; i < n; ++i) {
        double lambda = es.eigenvalues(i);
        if (lambda < -tol)
            throw ValidationError("psd_sqrt: eigenvalue " + std::to_string(lambda) +
                                  " below -tol = " + std::to_string(-tol));
        roots(i) = std::sqrt(std::max(lambda, 0.0));
    }
    ComplexMatrix r = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
    return HermitianMatrix(0.5 * (r + r.adjoint()));
}

} // namespace projpair
