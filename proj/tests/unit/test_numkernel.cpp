#include <doctest.h>

#include <cmath>

#include "holonomy/numkernel.hpp"
#include "test_helpers.hpp"

using namespace holo;
using namespace holo::numkernel;

TEST_SUITE_BEGIN("numkernel");

TEST_CASE("hermitian_eig handles the zero matrix") {
    const auto [lam, vecs] = hermitian_eig(Matrix::Zero(2, 2));
    CHECK(lam(0) == doctest::Approx(0.0));
    CHECK(lam(1) == doctest::Approx(0.0));
    CHECK(testing::entry_distance(vecs.adjoint() * vecs, Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("hermitian_eig of diag(-1, 1)") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    const auto [lam, vecs] = hermitian_eig(m);
    CHECK(lam(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(lam(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(vecs(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(vecs(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig of the off-diagonal coupling block") {
    // [[0, b], [b, 0]] has eigenvalues -b and b.
    const double b = M_PI * std::sqrt(7.0) / 4.0;
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = b;
    m(1, 0) = b;
    const auto [lam, vecs] = hermitian_eig(m);
    CHECK(lam(0) == doctest::Approx(-b).epsilon(1e-14));
    CHECK(lam(1) == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitian);
    CHECK_THROWS_AS(hermitian_eig(testing::random_gaussian(3, 2, 7)), NotHermitian);
}

TEST_CASE("hermitian_eig reconstructs random matrices") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix m = testing::random_hermitian(5, seed);
        const auto [lam, vecs] = hermitian_eig(m);
        const Matrix rebuilt =
            vecs * lam.cast<Complex>().asDiagonal() * vecs.adjoint();
        const double scale = std::max(1.0, max_norm(m));
        CHECK(testing::entry_distance(rebuilt, m) <= 1e-9 * scale);
        CHECK(testing::entry_distance(vecs.adjoint() * vecs, Matrix::Identity(5, 5)) <
              1e-12);
    }
}

TEST_CASE("unitary_eig of the identity") {
    const auto [mu, vecs] = unitary_eig(Matrix::Identity(3, 3));
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(mu(k) - Complex(1.0, 0.0)) < 1e-12);
    }
    CHECK(testing::entry_distance(vecs.adjoint() * vecs, Matrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("unitary_eig of diag(1, e^{i pi/4})") {
    Matrix u = Matrix::Identity(2, 2);
    u(1, 1) = std::exp(Complex(0.0, M_PI / 4.0));
    const auto [mu, vecs] = unitary_eig(u);
    CHECK(std::abs(mu(0) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(mu(1) - std::exp(Complex(0.0, M_PI / 4.0))) < 1e-12);
    CHECK(std::abs(vecs(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(vecs(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unitary_eig of the Hadamard matrix finds phases 0 and pi") {
    Matrix u(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    u << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    const auto [mu, vecs] = unitary_eig(u);
    CHECK(std::abs(mu(0) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(mu(1) - Complex(-1.0, 0.0)) < 1e-12);
    for (int k = 0; k < 2; ++k) {
        CHECK((u * vecs.col(k) - mu(k) * vecs.col(k)).norm() < 1e-12);
    }
}

TEST_CASE("unitary_eig handles a degenerate spectrum with an orthonormal basis") {
    // CNOT has eigenvalue 1 with multiplicity 3.
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    const auto [mu, vecs] = unitary_eig(u);
    CHECK(testing::entry_distance(vecs.adjoint() * vecs, Matrix::Identity(4, 4)) < 1e-12);
    for (int k = 0; k < 4; ++k) {
        CHECK((u * vecs.col(k) - mu(k) * vecs.col(k)).norm() < 1e-9);
    }
}

TEST_CASE("unitary_eig eigenvalues stay on the unit circle for random unitaries") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Matrix u = testing::random_unitary(4, seed);
        const auto [mu, vecs] = unitary_eig(u);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(std::abs(mu(k)) - 1.0) <= 1e-9);
            CHECK((u * vecs.col(k) - mu(k) * vecs.col(k)).norm() < 1e-9);
        }
    }
}

TEST_CASE("unitary_eig rejects non-unitary input") {
    CHECK_THROWS_AS(unitary_eig(2.0 * Matrix::Identity(2, 2)), NotUnitary);
}

TEST_CASE("expm_i at s = 0 is the identity") {
    const Matrix h = testing::random_hermitian(4, 11);
    CHECK(testing::entry_distance(expm_i(h, 0.0), Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("expm_i of diag(0, pi) at s = 1") {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = M_PI;
    Matrix expected = Matrix::Identity(2, 2);
    expected(1, 1) = -1.0;
    CHECK(testing::entry_distance(expm_i(h, 1.0), expected) < 1e-12);
}

TEST_CASE("expm_i of a rank-two coupling acts as -1 on its span at s = tau") {
    // A = (pi/tau)(|v><w| + |w><v|) squares to (pi/tau)^2 on span{v, w},
    // so e^{-i tau A} is a rotation by pi there and +1 elsewhere.
    const double tau = 0.7;
    Vector v = Vector::Zero(3);
    v(0) = std::sin(M_PI / 8.0);
    v(1) = -std::cos(M_PI / 8.0);
    Vector w = Vector::Zero(3);
    w(2) = 1.0;
    const Matrix a = (M_PI / tau) * (v * w.adjoint() + w * v.adjoint());
    const Matrix u = expm_i(a, tau);
    CHECK((u * v + v).norm() < 1e-12);
    CHECK((u * w + w).norm() < 1e-12);
    Vector fixed(3);
    fixed << std::cos(M_PI / 8.0), std::sin(M_PI / 8.0), 0.0;
    CHECK((u * fixed - fixed).norm() < 1e-12);
}

TEST_CASE("expm_i inverts under s -> -s") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix h = testing::random_hermitian(5, 100 + seed);
        const double s = -10.0 + 2.0 * static_cast<double>(seed);
        const Matrix product = expm_i(h, s) * expm_i(h, -s);
        CHECK(testing::entry_distance(product, Matrix::Identity(5, 5)) < 1e-12);
    }
}

TEST_CASE("polar_orthonormalize fixes an isometry") {
    const Matrix q = testing::random_unitary(4, 3).leftCols(2);
    CHECK(testing::entry_distance(polar_orthonormalize(q), q) < 1e-12);
}

TEST_CASE("polar_orthonormalize normalizes a scaled column") {
    Matrix m = Matrix::Zero(2, 1);
    m(0, 0) = 2.0;
    Matrix expected = Matrix::Zero(2, 1);
    expected(0, 0) = 1.0;
    CHECK(testing::entry_distance(polar_orthonormalize(m), expected) < 1e-12);
}

TEST_CASE("polar_orthonormalize of a 3x2 near-isometry matches the closed form") {
    // For M = [[1,0],[0,1],[e,0]], M'M = diag(1+e^2, 1), so the polar factor
    // is M diag(1/sqrt(1+e^2), 1).
    const double eps = 1e-3;
    Matrix m = Matrix::Zero(3, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 0) = eps;
    const double scale = 1.0 / std::sqrt(1.0 + eps * eps);
    Matrix expected = Matrix::Zero(3, 2);
    expected(0, 0) = scale;
    expected(1, 1) = 1.0;
    expected(2, 0) = eps * scale;
    const Matrix polar = polar_orthonormalize(m);
    CHECK(testing::entry_distance(polar, expected) < 1e-12);
    CHECK(testing::entry_distance(polar.adjoint() * polar, Matrix::Identity(2, 2)) <
          1e-12);
}

TEST_CASE("polar_orthonormalize rejects rank-deficient input") {
    Matrix m(2, 2);
    m << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(polar_orthonormalize(m), RankDeficient);
}

TEST_CASE("polar_orthonormalize is idempotent on its output") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix m = testing::random_gaussian(5, 3, 200 + seed);
        const Matrix once = polar_orthonormalize(m);
        CHECK(testing::entry_distance(polar_orthonormalize(once), once) < 1e-12);
    }
}

TEST_CASE("orthonormal_extension completes |0> to |1>") {
    Matrix v = Matrix::Zero(2, 1);
    v(0, 0) = 1.0;
    const auto ext = orthonormal_extension(v, Matrix::Identity(2, 2), 1);
    REQUIRE(ext.size() == 1);
    CHECK(std::abs(ext[0](1) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("orthonormal_extension picks canonical complement vectors in order") {
    Matrix v = Matrix::Zero(6, 4);
    for (int k = 0; k < 4; ++k) v(k, k) = 1.0;
    const auto ext = orthonormal_extension(v, Matrix::Identity(6, 6), 2);
    REQUIRE(ext.size() == 2);
    CHECK(std::abs(ext[0](4) - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(ext[1](5) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("orthonormal_extension of |+> yields the |-> direction") {
    Matrix v(2, 1);
    v(0, 0) = 1.0 / std::sqrt(2.0);
    v(1, 0) = 1.0 / std::sqrt(2.0);
    const auto ext = orthonormal_extension(v, Matrix::Identity(2, 2), 1);
    REQUIRE(ext.size() == 1);
    CHECK(std::abs(ext[0](0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
    CHECK(std::abs(ext[0](1) - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-12);
}

TEST_CASE("orthonormal_extension reports an exhausted pool") {
    Matrix v = Matrix::Zero(2, 1);
    v(0, 0) = 1.0;
    CHECK_THROWS_AS(orthonormal_extension(v, Matrix::Identity(2, 2), 2),
                    InsufficientComplement);
}

TEST_SUITE_END();
