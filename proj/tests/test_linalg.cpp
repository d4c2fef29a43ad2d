#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mvtreelet/error.hpp"
#include "mvtreelet/linalg.hpp"
#include "mvtreelet/rng.hpp"

#include <cmath>

using namespace mvt;
using namespace testutil;

TEST_CASE("covariance of two identical columns of 1,2,3") {
    const Matrix x(3, 2, {1, 1, 2, 2, 3, 3});
    const Matrix cov = compute_covariance(x);
    CHECK(cov(0, 0) == doctest::Approx(1.0));
    CHECK(cov(0, 1) == doctest::Approx(1.0));
    CHECK(cov(1, 0) == doctest::Approx(1.0));
    CHECK(cov(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("covariance of a constant matrix is zero") {
    const Matrix x = Matrix::constant(4, 3, 2.5);
    const Matrix cov = compute_covariance(x);
    CHECK(cov.frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("covariance of orthogonal centered columns is diagonal") {
    // columns (1,0,-1) and (1,-2,1): centered, orthogonal
    const Matrix x(3, 2, {1, 1, 0, -2, -1, 1});
    const Matrix cov = compute_covariance(x);
    CHECK(cov(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("covariance rejects a single row") {
    const Matrix x(1, 3, {1, 2, 3});
    CHECK_THROWS_AS(compute_covariance(x), Error);
}

TEST_CASE("covariance is exactly symmetric on random data") {
    Rng rng(11);
    const Matrix cov = compute_covariance(random_matrix(rng, 9, 6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(cov(i, j) == cov(j, i));
}

TEST_CASE("correlation of perfectly correlated covariance") {
    const Matrix sigma(2, 2, {1, 1, 1, 1});
    const Matrix rho = compute_correlation(sigma);
    CHECK(rho(0, 1) == doctest::Approx(1.0));
    CHECK(rho(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("correlation of diagonal covariance is the identity") {
    const Matrix sigma(2, 2, {4, 0, 0, 9});
    const Matrix rho = compute_correlation(sigma);
    CHECK(rho(0, 0) == 1.0);
    CHECK(rho(1, 1) == 1.0);
    CHECK(rho(0, 1) == 0.0);
}

TEST_CASE("zero-variance column forces zero correlation") {
    const Matrix sigma(2, 2, {1, 0.5, 0.5, 0});
    const Matrix rho = compute_correlation(sigma);
    CHECK(rho(0, 1) == 0.0);
    CHECK(rho(1, 1) == 0.0);
    CHECK(rho(0, 0) == 1.0);
}

TEST_CASE("correlation entries stay within [-1, 1] on indefinite input") {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const Matrix rho = compute_correlation(random_symmetric(rng, 7));
        for (double v : rho.data()) {
            CHECK(v <= 1.0 + 1e-12);
            CHECK(v >= -1.0 - 1e-12);
        }
    }
}

TEST_CASE("off-diagonal norm") {
    CHECK(off_diagonal_norm(Matrix(3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 3})) == 0.0);
    CHECK(off_diagonal_norm(Matrix(2, 2, {0, 2, 2, 0})) == doctest::Approx(8.0));
    CHECK(off_diagonal_norm(Matrix::identity(5)) == 0.0);
}

TEST_CASE("identity rotation leaves sigma unchanged") {
    Rng rng(3);
    const Matrix sigma = random_symmetric(rng, 5);
    const Matrix out = apply_rotation_symmetric(sigma, JacobiRotation{1, 3, 1.0, 0.0, 0});
    CHECK(max_abs_diff(sigma, out) == 0.0);
}

TEST_CASE("2x2 rotation diagonalizes [[2,1],[1,2]]") {
    const Matrix sigma(2, 2, {2, 1, 1, 2});
    const double c = 1.0 / std::sqrt(2.0);
    const Matrix out = apply_rotation_symmetric(sigma, JacobiRotation{0, 1, c, c, 0});
    CHECK(out(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(out(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(out(0, 1)) < 1e-12);
}

TEST_CASE("rank-2 update agrees with the dense conjugation oracle") {
    Rng rng(17);
    for (int t = 0; t < 25; ++t) {
        const std::size_t p = 4 + rng.below(5);
        const Matrix sigma = random_symmetric(rng, p);
        const double theta = rng.uniform(-1.5, 1.5);
        std::size_t j = rng.below(p);
        std::size_t k = rng.below(p - 1);
        if (k >= j) ++k;
        const JacobiRotation rot{std::min(j, k), std::max(j, k), std::cos(theta),
                                 std::sin(theta), 0};

        Matrix jmat = Matrix::identity(p);
        jmat(rot.j, rot.j) = rot.c;
        jmat(rot.j, rot.k) = -rot.s;
        jmat(rot.k, rot.j) = rot.s;
        jmat(rot.k, rot.k) = rot.c;
        const Matrix dense = jmat.transposed() * sigma * jmat;
        const Matrix fast = apply_rotation_symmetric(sigma, rot);

        CHECK(max_abs_diff(dense, fast) < 1e-12);
        CHECK(std::fabs(off_diagonal_norm(dense) - off_diagonal_norm(fast)) < 1e-12);
    }
}

TEST_CASE("conjugation preserves trace and frobenius norm") {
    Rng rng(29);
    for (int t = 0; t < 25; ++t) {
        const Matrix sigma = random_symmetric(rng, 8);
        const double theta = rng.uniform(-0.7, 0.7);
        const JacobiRotation rot{2, 6, std::cos(theta), std::sin(theta), 0};
        const Matrix out = apply_rotation_symmetric(sigma, rot);
        CHECK(std::fabs(out.trace() - sigma.trace()) < 1e-10);
        CHECK(std::fabs(out.frobenius_norm() - sigma.frobenius_norm()) < 1e-10);
        // off + diagonal mass accounts for the whole squared norm
        double diag = 0.0;
        for (std::size_t i = 0; i < 8; ++i) diag += out(i, i) * out(i, i);
        CHECK(off_diagonal_norm(out) + diag ==
              doctest::Approx(sigma.squared_frobenius_norm()).epsilon(1e-10));
    }
}

TEST_CASE("rotation rejects out-of-range and equal indices") {
    const Matrix sigma = Matrix::identity(3);
    CHECK_THROWS_AS(apply_rotation_symmetric(sigma, JacobiRotation{0, 3, 1, 0, 0}), Error);
    CHECK_THROWS_AS(apply_rotation_symmetric(sigma, JacobiRotation{1, 1, 1, 0, 0}), Error);
}

TEST_CASE("procrustes recovers the identity for B = A") {
    Rng rng(5);
    const Matrix a = random_matrix(rng, 6, 6);
    const Matrix r = orthogonal_procrustes(a, a);
    CHECK((r * a - a).frobenius_norm() < 1e-10);
    CHECK(orthogonality_defect(r) < 1e-10);
}

TEST_CASE("procrustes recovers a planted orthogonal map") {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const Matrix a = random_spd(rng, 6);  // full rank
        const Matrix r_true = random_orthogonal(rng, 6);
        const Matrix b = r_true * a;
        const Matrix r = orthogonal_procrustes(a, b);
        CHECK((r - r_true).frobenius_norm() < 1e-8);
    }
}

TEST_CASE("procrustes beats random orthogonal candidates") {
    Rng rng(13);
    const Matrix a = random_spd(rng, 5);
    const Matrix b = random_matrix(rng, 5, 5);
    const Matrix r = orthogonal_procrustes(a, b);
    const double opt = (r * a - b).frobenius_norm();
    for (int t = 0; t < 100; ++t) {
        const Matrix cand = random_orthogonal(rng, 5);
        CHECK(opt <= (cand * a - b).frobenius_norm() + 1e-9);
    }
}

TEST_CASE("procrustes output is orthogonal for arbitrary input") {
    Rng rng(19);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random_matrix(rng, 4, 7);
        const Matrix b = random_matrix(rng, 4, 7);
        CHECK(orthogonality_defect(orthogonal_procrustes(a, b)) < 1e-10);
    }
    // rank-deficient cross-product still yields an orthogonal map
    const Matrix a = random_matrix(rng, 4, 4);
    CHECK(orthogonality_defect(orthogonal_procrustes(a, Matrix(4, 4))) < 1e-10);
}

TEST_CASE("pearson correlation basics") {
    Rng rng(31);
    const Matrix a = random_matrix(rng, 3, 4);
    CHECK(pearson_correlation(a, a) == doctest::Approx(1.0));
    CHECK(pearson_correlation(a, a.scaled(-1.0)) == doctest::Approx(-1.0));
}

TEST_CASE("pearson correlation matches the direct formula") {
    const Matrix a(2, 2, {1, 2, 3, 4});
    const Matrix b(2, 2, {1, 2, 3, 5});
    // means 2.5, 2.75; sab = 6.5, saa = 5, sbb = 8.75
    CHECK(pearson_correlation(a, b) ==
          doctest::Approx(6.5 / std::sqrt(5.0 * 8.75)).epsilon(1e-12));
}

TEST_CASE("pearson correlation rejects constant input") {
    const Matrix a = Matrix::constant(2, 2, 3.0);
    const Matrix b(2, 2, {1, 2, 3, 4});
    CHECK_THROWS_AS(pearson_correlation(a, b), Error);
}
