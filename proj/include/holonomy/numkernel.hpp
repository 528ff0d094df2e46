#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "holonomy/errors.hpp"

namespace holo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace numkernel {

struct ToleranceConfig {
    double hermiticity_tol = 1e-10;
    double unitarity_tol = 1e-10;
    double rank_tol = 1e-10;

    void validate() const;
};

/// Largest entry modulus, the norm used by most residual checks.
double max_norm(const Matrix& m);

bool is_finite(const Matrix& m);

/// Throws InvalidInput if any entry is NaN or Inf.
void require_finite(const Matrix& m, const char* what);

void require_hermitian(const Matrix& m, double tol, const char* what);

void require_unitary(const Matrix& m, double tol, const char* what);

/// Rotates each column so its first component of modulus above the
/// significance threshold is real positive. Falls back to the largest
/// component when all are below threshold.
void fix_column_phases(Matrix& columns, double significance = 1e-8);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors orthonormal with the deterministic phase convention.
std::pair<Eigen::VectorXd, Matrix> hermitian_eig(const Matrix& m,
                                                 const ToleranceConfig& tol = {});

/// Eigendecomposition of a unitary matrix with a guaranteed orthonormal
/// eigenbasis. Realized by diagonalizing the commuting Hermitian pair
/// (U+U†)/2 and (U−U†)/2i, refining within eigenvalue clusters of the
/// first by the second. Eigenvalues are Rayleigh quotients v†Uv, sorted
/// by their phase in [0, 2π) ascending.
std::pair<Vector, Matrix> unitary_eig(const Matrix& u,
                                      const ToleranceConfig& tol = {});

/// e^{-isH} for Hermitian H, computed through the eigendecomposition.
Matrix expm_i(const Matrix& h, double s, const ToleranceConfig& tol = {});

/// Polar factor of a full-column-rank matrix: the nearest matrix with
/// orthonormal columns in Frobenius norm.
Matrix polar_orthonormalize(const Matrix& m, const ToleranceConfig& tol = {});

/// Deterministic Gram-Schmidt extension: extracts `count` orthonormal
/// vectors from the pool columns (in index order) that are orthogonal to
/// the span of the orthonormal columns of `v`. Candidates whose residual
/// norm falls below rank_tol are skipped.
std::vector<Vector> orthonormal_extension(const Matrix& v, const Matrix& pool,
                                          int count,
                                          const ToleranceConfig& tol = {});

}  // namespace numkernel
}  // namespace holo
