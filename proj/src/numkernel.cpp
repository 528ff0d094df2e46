#include "holonomy/numkernel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace holo::numkernel {

void ToleranceConfig::validate() const {
    if (hermiticity_tol <= 0 || unitarity_tol <= 0 || rank_tol <= 0) {
        throw InvalidInput("tolerances must be strictly positive");
    }
}

double max_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool is_finite(const Matrix& m) {
    return m.allFinite();
}

void require_finite(const Matrix& m, const char* what) {
    if (!is_finite(m)) {
        throw InvalidInput(std::string(what) + ": non-finite entries");
    }
}

void require_hermitian(const Matrix& m, double tol, const char* what) {
    require_finite(m, what);
    if (m.rows() != m.cols()) {
        throw NotHermitian(std::string(what) + ": matrix not square");
    }
    const double dev = max_norm(m - m.adjoint());
    if (dev > tol) {
        throw NotHermitian(std::string(what) + ": ||M - M'|| = " + std::to_string(dev));
    }
}

void require_unitary(const Matrix& m, double tol, const char* what) {
    require_finite(m, what);
    if (m.rows() != m.cols()) {
        throw NotUnitary(std::string(what) + ": matrix not square");
    }
    const Matrix gram = m.adjoint() * m;
    const double dev = max_norm(gram - Matrix::Identity(m.cols(), m.cols()));
    if (dev > tol) {
        throw NotUnitary(std::string(what) + ": ||U'U - I|| = " + std::to_string(dev));
    }
}

void fix_column_phases(Matrix& columns, double significance) {
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = 0; r < columns.rows(); ++r) {
            if (std::abs(columns(r, c)) > significance) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            columns.col(c).cwiseAbs().maxCoeff(&pivot);
        }
        const Complex z = columns(pivot, c);
        const double mod = std::abs(z);
        if (mod > 0) {
            columns.col(c) *= std::conj(z) / mod;
        }
    }
}

std::pair<Eigen::VectorXd, Matrix> hermitian_eig(const Matrix& m,
                                                 const ToleranceConfig& tol) {
    tol.validate();
    require_hermitian(m, tol.hermiticity_tol, "hermitian_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigensolver failed to converge");
    }
    Matrix vectors = solver.eigenvectors();
    fix_column_phases(vectors);
    return {solver.eigenvalues(), std::move(vectors)};
}

namespace {

// Phase of a unit-ish complex number mapped to [0, 2pi), with values
// within wrap_tol of 2pi treated as 0.
double phase_key(Complex z, double wrap_tol = 1e-9) {
    double phi = std::arg(z);
    if (phi < 0) phi += 2.0 * M_PI;
    if (phi >= 2.0 * M_PI - wrap_tol) phi = 0.0;
    return phi;
}

}  // namespace

std::pair<Vector, Matrix> unitary_eig(const Matrix& u, const ToleranceConfig& tol) {
    tol.validate();
    require_unitary(u, tol.unitarity_tol, "unitary_eig");
    const Eigen::Index n = u.rows();

    const Matrix cos_part = 0.5 * (u + u.adjoint());
    const Matrix sin_part = Complex(0.0, -0.5) * (u - u.adjoint());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(cos_part);
    if (solver.info() != Eigen::Success) {
        throw Error("unitary_eig: eigensolver failed to converge");
    }
    const Eigen::VectorXd lam = solver.eigenvalues();
    Matrix vectors = solver.eigenvectors();

    // Within each eigenvalue cluster of (U+U†)/2 the eigenbasis is free;
    // the restriction of (U-U†)/2i fixes it (the two commute for normal U).
    const double cluster_tol = 1e-8 * std::max(1.0, lam.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && lam(stop) - lam(stop - 1) <= cluster_tol) ++stop;
        const Eigen::Index width = stop - start;
        if (width > 1) {
            const Matrix block = vectors.middleCols(start, width);
            Matrix restricted = block.adjoint() * sin_part * block;
            restricted = 0.5 * (restricted + restricted.adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> inner(restricted);
            if (inner.info() != Eigen::Success) {
                throw Error("unitary_eig: cluster refinement failed");
            }
            vectors.middleCols(start, width) = block * inner.eigenvectors();
        }
        start = stop;
    }

    Vector values(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        values(k) = vectors.col(k).dot(u * vectors.col(k));
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return phase_key(values(a)) < phase_key(values(b));
    });

    Vector sorted_values(n);
    Matrix sorted_vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sorted_values(k) = values(order[static_cast<std::size_t>(k)]);
        sorted_vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    fix_column_phases(sorted_vectors);
    return {std::move(sorted_values), std::move(sorted_vectors)};
}

Matrix expm_i(const Matrix& h, double s, const ToleranceConfig& tol) {
    auto [lam, vectors] = hermitian_eig(h, tol);
    Vector diag(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        diag(k) = std::exp(Complex(0.0, -s * lam(k)));
    }
    return vectors * diag.asDiagonal() * vectors.adjoint();
}

Matrix polar_orthonormalize(const Matrix& m, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(m, "polar_orthonormalize");
    if (m.rows() < m.cols() || m.cols() < 1) {
        throw InvalidInput("polar_orthonormalize: need rows >= cols >= 1");
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(m.cols() - 1) <= tol.rank_tol) {
        throw RankDeficient("polar_orthonormalize: smallest singular value " +
                            std::to_string(svd.singularValues()(m.cols() - 1)));
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

std::vector<Vector> orthonormal_extension(const Matrix& v, const Matrix& pool,
                                          int count, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(pool, "orthonormal_extension pool");
    if (count < 0) throw InvalidInput("orthonormal_extension: negative count");
    if (v.cols() > 0) {
        require_finite(v, "orthonormal_extension frame");
        if (pool.rows() != v.rows()) {
            throw InvalidInput("orthonormal_extension: dimension mismatch");
        }
        const Matrix gram = v.adjoint() * v;
        if (max_norm(gram - Matrix::Identity(v.cols(), v.cols())) > tol.unitarity_tol) {
            throw InvalidInput("orthonormal_extension: frame columns not orthonormal");
        }
    }

    std::vector<Vector> found;
    found.reserve(static_cast<std::size_t>(count));
    for (Eigen::Index c = 0; c < pool.cols() && static_cast<int>(found.size()) < count; ++c) {
        Vector r = pool.col(c);
        // Two projection passes keep the result orthogonal well below the
        // requested tolerance even for nearly dependent candidates.
        for (int pass = 0; pass < 2; ++pass) {
            if (v.cols() > 0) r -= v * (v.adjoint() * r);
            for (const Vector& b : found) r -= b * b.dot(r);
        }
        const double norm = r.norm();
        if (norm < tol.rank_tol) continue;
        r /= norm;
        Matrix col = r;
        fix_column_phases(col, 1e-12);
        found.push_back(col.col(0));
    }
    if (static_cast<int>(found.size()) < count) {
        throw InsufficientComplement("orthonormal_extension: pool yields only " +
                                     std::to_string(found.size()) + " of " +
                                     std::to_string(count) + " vectors");
    }
    return found;
}

}  // namespace holo::numkernel
