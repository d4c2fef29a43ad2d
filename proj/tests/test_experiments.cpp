#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mvtreelet/error.hpp"
#include "mvtreelet/experiments.hpp"
#include "mvtreelet/synthgraph.hpp"

#include <cmath>
#include <cstdlib>

using namespace mvt;
using namespace testutil;

namespace {

KroneckerSpec small_spec(double epsilon, std::uint64_t seed) {
    KroneckerSpec spec;
    spec.power = 2;  // 27x27 keeps these tests quick
    spec.noise_level = epsilon;
    spec.seed = seed;
    return spec;
}

} // namespace

TEST_CASE("E_M vanishes for noise-free views") {
    const KroneckerSpec spec = small_spec(0.0, 9);
    const Matrix truth = kronecker_truth(spec);
    for (std::size_t m : {1u, 4u}) {
        const double e = compute_E_M(generate_views(spec, m), truth, 0);
        CHECK(e < 1e-10);
    }
}

TEST_CASE("E_M is positive under noise and dimension-checked") {
    const KroneckerSpec spec = small_spec(0.3, 11);
    const Matrix truth = kronecker_truth(spec);
    CHECK(compute_E_M(generate_views(spec, 3), truth, 0) > 0.0);
    CHECK_THROWS_AS(compute_E_M(generate_views(spec, 2), Matrix::identity(5), 0), Error);
}

TEST_CASE("convergence experiment is deterministic and zero at zero noise") {
    ConvergenceConfig cfg;
    cfg.spec = small_spec(0.0, 0);
    cfg.m_values = {1, 3};
    cfg.epsilon_values = {0.0, 0.2};
    cfg.collections = 3;
    cfg.master_seed = 77;
    const auto a = convergence_experiment(cfg);
    const auto b = convergence_experiment(cfg);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].per_collection_e_m == b[i].per_collection_e_m);
        if (a[i].epsilon == 0.0) {
            CHECK(a[i].e_m_mean < 1e-10);
            CHECK(a[i].e_m_std < 1e-10);
        } else {
            CHECK(a[i].e_m_mean > 0.0);
        }
    }
}

TEST_CASE("results are identical across worker counts") {
    ConvergenceConfig cfg;
    cfg.spec = small_spec(0.0, 0);
    cfg.m_values = {1, 2};
    cfg.epsilon_values = {0.25};
    cfg.collections = 4;
    cfg.master_seed = 31;

    setenv("MVTREELET_THREADS", "1", 1);
    const auto serial = convergence_experiment(cfg);
    setenv("MVTREELET_THREADS", "3", 1);
    const auto threaded = convergence_experiment(cfg);
    unsetenv("MVTREELET_THREADS");

    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].per_collection_e_m == threaded[i].per_collection_e_m);
    }
}

TEST_CASE("convergence experiment validates its configuration") {
    ConvergenceConfig cfg;
    cfg.spec = small_spec(0.0, 0);
    cfg.m_values = {1};
    cfg.epsilon_values = {0.1};
    cfg.collections = 1;
    CHECK_THROWS_AS(convergence_experiment(cfg), Error);
    cfg.collections = 2;
    cfg.epsilon_values.clear();
    CHECK_THROWS_AS(convergence_experiment(cfg), Error);
}

TEST_CASE("stability table summarizes hand-built records") {
    std::vector<ConvergenceRecord> records;
    records.push_back(ConvergenceRecord{0.1, 1, 1.0, 0.2, {}});
    records.push_back(ConvergenceRecord{0.1, 5, 0.5, 0.4, {}});
    records.push_back(ConvergenceRecord{0.3, 1, 2.0, 0.6, {}});
    const auto table = stability_table(records);
    REQUIRE(table.size() == 2);
    CHECK(table[0].epsilon == 0.1);
    CHECK(table[0].stability == doctest::Approx(0.3));
    CHECK(table[0].std_of_stds == doctest::Approx(std::sqrt(0.02)));  // sample std of {0.2, 0.4}
    CHECK(table[1].stability == doctest::Approx(0.6));
    CHECK(table[1].std_of_stds == 0.0);
    CHECK_THROWS_AS(stability_table({}), Error);
}

TEST_CASE("stability is zero when all collections agree") {
    ConvergenceConfig cfg;
    cfg.spec = small_spec(0.0, 0);
    cfg.m_values = {2};
    cfg.epsilon_values = {0.0};
    cfg.collections = 4;
    cfg.master_seed = 5;
    const auto table = stability_table(convergence_experiment(cfg));
    REQUIRE(table.size() == 1);
    CHECK(table[0].stability < 1e-12);
}

TEST_CASE("rate fit recovers a planted exponential") {
    std::vector<RatePoint> series;
    for (int m = 1; m <= 40; ++m) {
        series.push_back({static_cast<double>(m), std::exp(-0.2 * m) + 0.05});
    }
    const RateFit fit = fit_rate(series, 0.3);
    CHECK(fit.rate > -0.22);
    CHECK(fit.rate < -0.18);
    CHECK(fit.bias > 0.04);
    CHECK(fit.bias < 0.06);
    CHECK(fit.epsilon == 0.3);
}

TEST_CASE("rate fit of a constant series is flat") {
    std::vector<RatePoint> series;
    for (int m = 1; m <= 8; ++m) series.push_back({static_cast<double>(m), 0.7});
    const RateFit fit = fit_rate(series, 0.0);
    CHECK(fit.rate == 0.0);
    CHECK(fit.bias == doctest::Approx(0.7));
    CHECK(fit.fit_residual == 0.0);
}

TEST_CASE("rate fit validates its input") {
    std::vector<RatePoint> three{{1, 1.0}, {2, 0.5}, {3, 0.3}};
    CHECK_THROWS_AS(fit_rate(three, 0.1), Error);
    std::vector<RatePoint> unordered{{1, 1.0}, {3, 0.5}, {2, 0.3}, {4, 0.2}};
    CHECK_THROWS_AS(fit_rate(unordered, 0.1), Error);
}

TEST_CASE("single versus multi denoising runs deterministically at desk scale") {
    const KroneckerSpec spec = small_spec(0.3, 21);
    const DenoiseComparison a = single_vs_multi_denoise(spec, 4, 2, 0.05);
    const DenoiseComparison b = single_vs_multi_denoise(spec, 4, 2, 0.05);
    REQUIRE(a.trials.size() == 2);
    CHECK(a.mean_difference == b.mean_difference);
    CHECK(a.trials[0].mean_single_error == b.trials[0].mean_single_error);
    CHECK_THROWS_AS(single_vs_multi_denoise(spec, 1, 2, 0.05), Error);
    CHECK_THROWS_AS(single_vs_multi_denoise(spec, 4, 0, 0.05), Error);
}

TEST_CASE("noise-free comparison shows no meaningful difference") {
    const KroneckerSpec spec = small_spec(0.0, 3);
    const DenoiseComparison cmp = single_vs_multi_denoise(spec, 3, 2, 0.05);
    for (const auto& trial : cmp.trials) {
        CHECK(std::fabs(trial.difference) <= 1e-9);
    }
}

TEST_CASE("srm sweep errors are non-increasing in rank") {
    const Matrix truth = kronecker_truth(small_spec(0.0, 0));
    const auto entries = srm_reconstruction_sweep(truth, {3, 9, 18, 27});
    for (std::size_t i = 1; i < entries.size(); ++i) {
        CHECK(entries[i].error <= entries[i - 1].error + 1e-9);
    }
    CHECK(entries.back().error < 1e-10);  // full rank
    CHECK_THROWS_AS(srm_reconstruction_sweep(truth, {0}), Error);
}

TEST_CASE("shared response rejects tiny view sets and bad parameters") {
    const ViewSet views = generate_views(small_spec(0.2, 4), 3);
    SharedResponseConfig cfg;
    CHECK_THROWS_AS(shared_response(views, cfg), Error);
    const ViewSet enough = generate_views(small_spec(0.2, 4), 4);
    cfg.partitions = 0;
    CHECK_THROWS_AS(shared_response(enough, cfg), Error);
    cfg.partitions = 2;
    cfg.fdr_q = 1.5;
    CHECK_THROWS_AS(shared_response(enough, cfg), Error);
}

TEST_CASE("identical views give a perfect shared response under mvtt") {
    const Matrix truth = kronecker_truth(small_spec(0.0, 0));
    const ViewSet views(std::vector<Matrix>(6, truth));
    SharedResponseConfig cfg;
    cfg.partitions = 3;
    cfg.group_split_seed = 17;
    cfg.fdr_q = 0.5;  // keep plenty of structure on the noiseless graph
    cfg.method = ResponseMethod::Mvtt;
    const SharedResponseResult result = shared_response(views, cfg);
    for (const auto& row : result.rows) {
        CHECK(row.feature_correlation == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("shared response is deterministic and reports both spaces") {
    const ViewSet views = generate_views(small_spec(0.25, 8), 6);
    SharedResponseConfig cfg;
    cfg.partitions = 2;
    cfg.group_split_seed = 99;
    cfg.fdr_q = 0.2;
    cfg.method = ResponseMethod::None;
    const SharedResponseResult a = shared_response(views, cfg);
    const SharedResponseResult b = shared_response(views, cfg);
    REQUIRE(a.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a.rows[i].feature_correlation == b.rows[i].feature_correlation);
        CHECK(a.rows[i].feature_correlation == a.rows[i].label_correlation);
    }
}

TEST_CASE("srm method completes the pipeline") {
    const ViewSet views = generate_views(small_spec(0.25, 12), 6);
    SharedResponseConfig cfg;
    cfg.partitions = 2;
    cfg.group_split_seed = 7;
    cfg.fdr_q = 0.2;
    cfg.method = ResponseMethod::Srm;
    cfg.srm_rank = 9;
    const SharedResponseResult result = shared_response(views, cfg);
    for (const auto& row : result.rows) {
        CHECK(std::fabs(row.feature_correlation) <= 1.0);
        CHECK(std::fabs(row.label_correlation) <= 1.0);
    }
}
