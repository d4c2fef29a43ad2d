#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mvtreelet/error.hpp"
#include "mvtreelet/rng.hpp"
#include "mvtreelet/srm.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace mvt;
using namespace testutil;

namespace {

double reconstruction_error(const SrmModel& model, const ViewSet& views, std::size_t i) {
    return (views.view(i) - srm_reconstruct(model, i)).squared_frobenius_norm();
}

// Eckart-Young floor: squared error of the best rank-k approximation.
double best_rank_k_error(const Matrix& x, std::size_t k) {
    Eigen::MatrixXd e(static_cast<Eigen::Index>(x.rows()), static_cast<Eigen::Index>(x.cols()));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(i, j);
    const auto svals = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
    double err = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(k); i < svals.size(); ++i)
        err += svals(i) * svals(i);
    return err;
}

} // namespace

TEST_CASE("full-rank single-view fit is exact") {
    Rng rng(301);
    const ViewSet views({random_symmetric(rng, 7)});
    const SrmModel model = srm_fit(views, 7);
    CHECK(std::sqrt(reconstruction_error(model, views, 0)) < 1e-8);
}

TEST_CASE("all-zero views converge immediately to a zero objective") {
    const ViewSet views({Matrix(4, 4), Matrix(4, 4)});
    const SrmModel model = srm_fit(views, 2);
    CHECK(model.objective_trace.front() == 0.0);
    CHECK(model.objective_trace.back() == 0.0);
    CHECK(srm_reconstruct(model, 0).frobenius_norm() == 0.0);
}

TEST_CASE("objective trace never increases") {
    Rng rng(307);
    for (int t = 0; t < 20; ++t) {
        std::vector<Matrix> views;
        const std::size_t m = 2 + rng.below(3);
        for (std::size_t i = 0; i < m; ++i) views.push_back(random_symmetric(rng, 8));
        const SrmModel model = srm_fit(ViewSet(views), 1 + rng.below(8), 60);
        for (std::size_t i = 1; i < model.objective_trace.size(); ++i) {
            CHECK(model.objective_trace[i] <= model.objective_trace[i - 1] + 1e-10);
        }
    }
}

TEST_CASE("per-view bases stay orthonormal") {
    Rng rng(311);
    std::vector<Matrix> views{random_symmetric(rng, 6), random_symmetric(rng, 6),
                              random_symmetric(rng, 6)};
    const SrmModel model = srm_fit(ViewSet(views), 4);
    for (const Matrix& w : model.bases) {
        CHECK(orthogonality_defect(w) < 1e-8);
    }
}

TEST_CASE("fit is deterministic") {
    Rng rng(313);
    std::vector<Matrix> views{random_symmetric(rng, 5), random_symmetric(rng, 5)};
    const SrmModel a = srm_fit(ViewSet(views), 3);
    const SrmModel b = srm_fit(ViewSet(views), 3);
    CHECK(a.shared == b.shared);
    CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("low-rank reconstruction respects the eckart-young floor") {
    Rng rng(317);
    const Matrix x = random_symmetric(rng, 8);
    const ViewSet views({x});
    for (std::size_t k : {2u, 4u, 6u}) {
        const SrmModel model = srm_fit(views, k);
        CHECK(reconstruction_error(model, views, 0) >= best_rank_k_error(x, k) - 1e-8);
    }
}

TEST_CASE("reconstruction of a zero shared matrix is zero") {
    SrmModel model;
    model.bases = {Matrix::identity(4)};
    model.shared = Matrix(4, 4);
    model.rank = 4;
    CHECK(srm_reconstruct(model, 0).frobenius_norm() == 0.0);
}

TEST_CASE("parameter validation") {
    Rng rng(331);
    const ViewSet views({random_symmetric(rng, 5)});
    CHECK_THROWS_AS(srm_fit(views, 0), Error);
    CHECK_THROWS_AS(srm_fit(views, 6), Error);
    CHECK_THROWS_AS(srm_fit(views, 3, 0), Error);
    SrmModel model = srm_fit(views, 3);
    CHECK_THROWS_AS(srm_reconstruct(model, 1), Error);
}

TEST_CASE("transfer basis maps a held-out view onto a shared space") {
    Rng rng(337);
    std::vector<Matrix> views{random_symmetric(rng, 6), random_symmetric(rng, 6)};
    const SrmModel model = srm_fit(ViewSet(views), 4);
    const Matrix held_out = random_symmetric(rng, 6);
    const Matrix w = srm_transfer_basis(held_out, model.shared);
    CHECK(w.rows() == 6);
    CHECK(w.cols() == 4);
    CHECK(orthogonality_defect(w) < 1e-8);
}
