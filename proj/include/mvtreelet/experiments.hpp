#pragma once

#include "mvtreelet/matrix.hpp"
#include "mvtreelet/mvtt.hpp"
#include "mvtreelet/synthgraph.hpp"

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace mvt {

/// Grid for the bootstrap convergence study: noise levels x view counts,
/// `collections` independent view sets per cell, all seeds derived from
/// `master_seed`. `levels` of 0 selects the default floor(p/2).
struct ConvergenceConfig {
    KroneckerSpec spec;
    std::vector<std::size_t> m_values;
    std::vector<double> epsilon_values;
    std::size_t collections = 20;
    std::size_t levels = 0;
    std::uint64_t master_seed = 0;
};

/// One (epsilon, M) cell: mean and standard deviation of the error across
/// collections, plus the raw per-collection values.
struct ConvergenceRecord {
    double epsilon = 0.0;
    std::size_t m = 0;
    double e_m_mean = 0.0;
    double e_m_std = 0.0;
    std::vector<double> per_collection_e_m;
};

/// Exponential-decay fit of an error curve: E_M ~ e^(rate * M) + bias.
struct RateFit {
    double epsilon = 0.0;
    double rate = 0.0;
    double bias = 0.0;
    double fit_residual = 0.0;
};

/// One point of an error curve.
struct RatePoint {
    double m = 0.0;
    double e_m = 0.0;
};

/// Per-noise-level stability summary: the per-M standard deviations of the
/// error, their mean (the stability figure), and the spread of those values.
struct StabilityRow {
    double epsilon = 0.0;
    std::vector<std::pair<std::size_t, double>> per_m_std;
    double stability = 0.0;
    double std_of_stds = 0.0;
};

enum class ResponseSpace { Feature, Label };
enum class ResponseMethod { Mvtt, Srm, None };

/// Shared-response study configuration. `levels` / `srm_rank` of 0 select
/// the defaults floor(p/2) and p.
struct SharedResponseConfig {
    std::uint64_t group_split_seed = 0;
    std::size_t partitions = 5;
    double fdr_q = 0.01;
    ResponseSpace space = ResponseSpace::Feature;
    ResponseMethod method = ResponseMethod::Mvtt;
    std::size_t levels = 0;
    std::size_t srm_rank = 0;
};

struct SharedResponseRow {
    std::size_t partition = 0;
    double feature_correlation = 0.0;
    double label_correlation = 0.0;
};

struct SharedResponseResult {
    std::vector<SharedResponseRow> rows;
    double mean = 0.0;    // over partitions, in the configured space
    double stddev = 0.0;
    ResponseSpace space = ResponseSpace::Feature;
    ResponseMethod method = ResponseMethod::Mvtt;
};

struct DenoiseComparisonTrial {
    std::size_t trial = 0;
    double mean_single_error = 0.0;
    double mean_multi_error = 0.0;
    double difference = 0.0;  // single minus multi
};

struct DenoiseComparison {
    std::vector<DenoiseComparisonTrial> trials;
    double mean_difference = 0.0;
};

struct SrmSweepEntry {
    std::size_t rank = 0;
    double error = 0.0;           // squared Frobenius, averaged over views
    double relative_error = 0.0;  // Frobenius, relative to the truth
    Matrix reconstruction;        // view 0
};

/// || (1/M) sum_i B_mv^T S_i B_mv - B_t^T Truth B_t ||_F^2 where B_mv is the
/// joint basis of the views and B_t the treelet basis of the truth.
double compute_E_M(const ViewSet& views, const Matrix& truth, std::size_t levels);

/// Bootstrap convergence study over the config grid; one record per
/// (epsilon, M) in config order. Deterministic under master_seed.
std::vector<ConvergenceRecord> convergence_experiment(const ConvergenceConfig& config);

/// Groups records by noise level and summarizes the spread of the error.
std::vector<StabilityRow> stability_table(const std::vector<ConvergenceRecord>& records);

/// Fits E_M = e^(rate M) + bias: bias from the mean of the last-quartile
/// values, rate from a log-linear least squares over the earlier points
/// sitting above the bias.
RateFit fit_rate(const std::vector<RatePoint>& series, double epsilon);

/// Per-view denoising error using each view's own treelet basis versus the
/// joint basis of all views, averaged over views and trials.
DenoiseComparison single_vs_multi_denoise(const KroneckerSpec& spec, std::size_t m,
                                          std::size_t trials, double q, std::size_t levels = 0);

/// Fits the shared response model to `m` copies of the truth at each rank
/// and records the reconstruction error.
std::vector<SrmSweepEntry> srm_reconstruction_sweep(const Matrix& truth,
                                                    const std::vector<std::size_t>& ranks,
                                                    std::size_t m = 1);

/// Random group splits, per-group fit on training views, Procrustes
/// registration of the second group's basis (or shared matrix) onto the
/// first, FDR denoising of test views, and the cross-group Pearson
/// correlation of the group-averaged representations. A representation the
/// threshold has reduced to a constant scores correlation 0.
SharedResponseResult shared_response(const ViewSet& views, const SharedResponseConfig& config);

const char* to_string(ResponseSpace space);
const char* to_string(ResponseMethod method);

} // namespace mvt
