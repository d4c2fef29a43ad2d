#include "mvtreelet/experiments.hpp"

#include "mvtreelet/denoise.hpp"
#include "mvtreelet/error.hpp"
#include "mvtreelet/linalg.hpp"
#include "mvtreelet/parallel.hpp"
#include "mvtreelet/rng.hpp"
#include "mvtreelet/srm.hpp"
#include "mvtreelet/treelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvt {

namespace {

std::size_t resolve_levels(std::size_t levels, std::size_t p) {
    return levels == 0 ? default_levels(p) : levels;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

// Sample standard deviation (divisor n-1); 0 for fewer than two values.
double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

Matrix conjugate(const Matrix& basis, const Matrix& sigma) {
    return basis.transposed() * sigma * basis;
}

} // namespace

double compute_E_M(const ViewSet& views, const Matrix& truth, std::size_t levels) {
    require_square(truth, "E_M");
    if (truth.rows() != views.dim()) {
        throw Error(ErrorKind::Dimension, "truth dimension " + std::to_string(truth.rows()) +
                                              " does not match view dimension " +
                                              std::to_string(views.dim()));
    }
    const std::size_t p = views.dim();
    const std::size_t m = views.view_count();
    levels = resolve_levels(levels, p);

    const TreeletBasis joint = mvtt_transform(views, levels);
    Matrix average(p, p);
    for (std::size_t i = 0; i < m; ++i) {
        average = average + conjugate(joint.basis, views.view(i));
    }
    average = average.scaled(1.0 / static_cast<double>(m));

    const TreeletBasis single = treelet_transform(truth, levels);
    return (average - conjugate(single.basis, truth)).squared_frobenius_norm();
}

std::vector<ConvergenceRecord> convergence_experiment(const ConvergenceConfig& config) {
    config.spec.validate();
    if (config.collections < 2) {
        throw Error(ErrorKind::Parameter, "convergence study requires at least two collections");
    }
    if (config.m_values.empty() || config.epsilon_values.empty()) {
        throw Error(ErrorKind::Parameter, "convergence study requires non-empty M and epsilon lists");
    }
    for (double eps : config.epsilon_values) {
        if (eps < 0.0 || !std::isfinite(eps)) {
            throw Error(ErrorKind::Parameter, "noise levels must be finite and >= 0");
        }
    }

    const Matrix truth = kronecker_truth(config.spec);
    const std::size_t levels = resolve_levels(config.levels, truth.rows());

    struct Cell {
        std::size_t eps_index;
        std::size_t m_index;
        std::size_t collection;
    };
    std::vector<Cell> cells;
    cells.reserve(config.epsilon_values.size() * config.m_values.size() * config.collections);
    for (std::size_t ei = 0; ei < config.epsilon_values.size(); ++ei)
        for (std::size_t mi = 0; mi < config.m_values.size(); ++mi)
            for (std::size_t c = 0; c < config.collections; ++c)
                cells.push_back(Cell{ei, mi, c});

    std::vector<double> errors(cells.size(), 0.0);
    parallel_for(cells.size(), [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        KroneckerSpec draw = config.spec;
        draw.noise_level = config.epsilon_values[cell.eps_index];
        draw.seed = derive_seed(derive_seed(derive_seed(config.master_seed, cell.eps_index),
                                            cell.m_index),
                                cell.collection);
        const ViewSet views = generate_views(draw, config.m_values[cell.m_index]);
        errors[idx] = compute_E_M(views, truth, levels);
    });

    std::vector<ConvergenceRecord> records;
    records.reserve(config.epsilon_values.size() * config.m_values.size());
    std::size_t idx = 0;
    for (std::size_t ei = 0; ei < config.epsilon_values.size(); ++ei) {
        for (std::size_t mi = 0; mi < config.m_values.size(); ++mi) {
            ConvergenceRecord rec;
            rec.epsilon = config.epsilon_values[ei];
            rec.m = config.m_values[mi];
            rec.per_collection_e_m.assign(errors.begin() + static_cast<std::ptrdiff_t>(idx),
                                          errors.begin() +
                                              static_cast<std::ptrdiff_t>(idx + config.collections));
            idx += config.collections;
            rec.e_m_mean = mean_of(rec.per_collection_e_m);
            rec.e_m_std = sample_std(rec.per_collection_e_m);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<StabilityRow> stability_table(const std::vector<ConvergenceRecord>& records) {
    if (records.empty()) {
        throw Error(ErrorKind::Parameter, "stability table requires at least one record");
    }
    std::vector<StabilityRow> rows;
    for (const ConvergenceRecord& rec : records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const StabilityRow& row) {
            return row.epsilon == rec.epsilon;
        });
        if (it == rows.end()) {
            rows.push_back(StabilityRow{rec.epsilon, {}, 0.0, 0.0});
            it = rows.end() - 1;
        }
        it->per_m_std.emplace_back(rec.m, rec.e_m_std);
    }
    for (StabilityRow& row : rows) {
        std::vector<double> stds;
        stds.reserve(row.per_m_std.size());
        for (const auto& [m, sd] : row.per_m_std) stds.push_back(sd);
        row.stability = mean_of(stds);
        row.std_of_stds = sample_std(stds);
    }
    return rows;
}

RateFit fit_rate(const std::vector<RatePoint>& series, double epsilon) {
    if (series.size() < 4) {
        throw Error(ErrorKind::Parameter, "rate fit requires at least four points, got " +
                                              std::to_string(series.size()));
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].m <= series[i - 1].m) {
            throw Error(ErrorKind::Parameter, "rate fit requires strictly increasing M values");
        }
    }
    const std::size_t n = series.size();
    const std::size_t tail = (n + 3) / 4;  // last quartile, rounded up

    double bias = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) bias += series[i].e_m;
    bias /= static_cast<double>(tail);

    // Log-linear fit over the pre-tail points that sit above the bias floor.
    // The tail points estimated the bias, so they carry no decay signal and
    // are excluded from the slope.
    constexpr double floor = 1e-12;
    std::vector<double> ms, ys;
    for (std::size_t i = 0; i < n - tail; ++i) {
        const double excess = series[i].e_m - bias;
        if (excess > floor) {
            ms.push_back(series[i].m);
            ys.push_back(std::log(excess));
        }
    }

    RateFit fit;
    fit.epsilon = epsilon;
    fit.bias = bias;
    if (ms.size() < 2) {
        return fit;  // flat curve: rate 0, residual 0
    }

    const double mx = mean_of(ms);
    const double my = mean_of(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        sxx += (ms[i] - mx) * (ms[i] - mx);
        sxy += (ms[i] - mx) * (ys[i] - my);
    }
    fit.rate = sxy / sxx;
    const double intercept = my - fit.rate * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double r = ys[i] - (intercept + fit.rate * ms[i]);
        rss += r * r;
    }
    fit.fit_residual = std::sqrt(rss / static_cast<double>(ms.size()));
    return fit;
}

DenoiseComparison single_vs_multi_denoise(const KroneckerSpec& spec, std::size_t m,
                                          std::size_t trials, double q, std::size_t levels) {
    spec.validate();
    if (m < 2) {
        throw Error(ErrorKind::Parameter, "comparison requires at least two views");
    }
    if (trials < 1) {
        throw Error(ErrorKind::Parameter, "comparison requires at least one trial");
    }
    const Matrix truth = kronecker_truth(spec);
    const std::size_t resolved_levels = resolve_levels(levels, truth.rows());

    DenoiseComparison result;
    result.trials.resize(trials);
    parallel_for(trials, [&](std::size_t t) {
        KroneckerSpec draw = spec;
        draw.seed = derive_seed(spec.seed, t);
        const ViewSet views = generate_views(draw, m);
        const TreeletBasis joint = mvtt_transform(views, resolved_levels);

        double single_sum = 0.0;
        double multi_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const Matrix& view = views.view(i);
            multi_sum += denoise_error(truth, denoise(view, joint, q));
            const TreeletBasis own = treelet_transform(view, resolved_levels);
            single_sum += denoise_error(truth, denoise(view, own, q));
        }
        DenoiseComparisonTrial& row = result.trials[t];
        row.trial = t;
        row.mean_single_error = single_sum / static_cast<double>(m);
        row.mean_multi_error = multi_sum / static_cast<double>(m);
        row.difference = row.mean_single_error - row.mean_multi_error;
    });

    double diff_sum = 0.0;
    for (const DenoiseComparisonTrial& row : result.trials) diff_sum += row.difference;
    result.mean_difference = diff_sum / static_cast<double>(trials);
    return result;
}

std::vector<SrmSweepEntry> srm_reconstruction_sweep(const Matrix& truth,
                                                    const std::vector<std::size_t>& ranks,
                                                    std::size_t m) {
    require_square(truth, "reconstruction sweep");
    if (ranks.empty()) {
        throw Error(ErrorKind::Parameter, "reconstruction sweep requires at least one rank");
    }
    if (m < 1) {
        throw Error(ErrorKind::Parameter, "reconstruction sweep requires at least one copy");
    }
    const ViewSet views(std::vector<Matrix>(m, truth));
    const double truth_norm = truth.frobenius_norm();

    std::vector<SrmSweepEntry> entries;
    entries.reserve(ranks.size());
    for (std::size_t rank : ranks) {
        const SrmModel model = srm_fit(views, rank);
        double err = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            err += denoise_error(truth, srm_reconstruct(model, i));
        }
        err /= static_cast<double>(m);
        SrmSweepEntry entry;
        entry.rank = rank;
        entry.error = err;
        entry.relative_error = truth_norm > 0.0 ? std::sqrt(err) / truth_norm : 0.0;
        entry.reconstruction = srm_reconstruct(model, 0);
        entries.push_back(std::move(entry));
    }
    return entries;
}

namespace {

// Group-averaged denoised representations of a set of test views: feature
// space is the reconstruction, label space the thresholded coefficients
// (optionally rotated into the other group's coefficient space).
struct GroupRepresentation {
    Matrix feature;
    Matrix label;
};

template <typename BasisForView>
GroupRepresentation average_denoised(const std::vector<const Matrix*>& test_views,
                                     BasisForView&& basis_for_view,
                                     const Matrix* label_rotation, double q) {
    GroupRepresentation rep;
    bool first = true;
    for (const Matrix* view : test_views) {
        const Matrix basis = basis_for_view(*view);
        CoefficientSet coeffs{basis.transposed() * (*view), basis};
        const std::vector<double> p_values = coefficient_p_values(coeffs);
        const FdrResult fdr = fdr_threshold(p_values, coeffs.coeffs.data(), q);
        const CoefficientSet kept = hard_threshold(coeffs, fdr.threshold);
        const Matrix feature = reconstruct(kept);
        const Matrix label = label_rotation ? (*label_rotation) * kept.coeffs : kept.coeffs;
        if (first) {
            rep.feature = feature;
            rep.label = label;
            first = false;
        } else {
            rep.feature = rep.feature + feature;
            rep.label = rep.label + label;
        }
    }
    const double scale = 1.0 / static_cast<double>(test_views.size());
    rep.feature = rep.feature.scaled(scale);
    rep.label = rep.label.scaled(scale);
    return rep;
}

Matrix average_views(const std::vector<const Matrix*>& views) {
    Matrix avg = *views.front();
    for (std::size_t i = 1; i < views.size(); ++i) avg = avg + *views[i];
    return avg.scaled(1.0 / static_cast<double>(views.size()));
}

// Thresholding can legitimately zero every coefficient (no FDR rejections),
// leaving a constant representation whose Pearson correlation is undefined;
// a representation with no content is scored as sharing nothing.
double representation_correlation(const Matrix& a, const Matrix& b) {
    if (a.min_entry() == a.max_entry() || b.min_entry() == b.max_entry()) {
        return 0.0;
    }
    return pearson_correlation(a, b);
}

} // namespace

SharedResponseResult shared_response(const ViewSet& views, const SharedResponseConfig& config) {
    const std::size_t m = views.view_count();
    const std::size_t p = views.dim();
    if (m < 4) {
        throw Error(ErrorKind::Parameter,
                    "shared response requires at least four views, got " + std::to_string(m));
    }
    if (config.partitions < 1) {
        throw Error(ErrorKind::Parameter, "shared response requires at least one partition");
    }
    if (!(config.fdr_q > 0.0 && config.fdr_q < 1.0)) {
        throw Error(ErrorKind::Parameter, "FDR rate q must lie in (0, 1)");
    }
    const std::size_t levels = resolve_levels(config.levels, p);
    const std::size_t rank = config.srm_rank == 0 ? p : config.srm_rank;

    SharedResponseResult result;
    result.space = config.space;
    result.method = config.method;
    result.rows.resize(config.partitions);

    parallel_for(config.partitions, [&](std::size_t part) {
        Rng rng(derive_seed(config.group_split_seed, part));
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        for (std::size_t i = m - 1; i > 0; --i) {
            std::swap(order[i], order[rng.below(i + 1)]);
        }

        // Two subject groups; within each, the first half of the views is
        // the training subset and the rest the testing subset.
        const std::size_t g1_size = m / 2;
        auto split_group = [&](std::size_t begin, std::size_t count,
                               std::vector<Matrix>& train,
                               std::vector<const Matrix*>& test) {
            const std::size_t train_size = count / 2;
            for (std::size_t i = 0; i < count; ++i) {
                const Matrix& v = views.view(order[begin + i]);
                if (i < train_size) {
                    train.push_back(v);
                } else {
                    test.push_back(&v);
                }
            }
        };
        std::vector<Matrix> train1, train2;
        std::vector<const Matrix*> test1, test2;
        split_group(0, g1_size, train1, test1);
        split_group(g1_size, m - g1_size, train2, test2);

        SharedResponseRow& row = result.rows[part];
        row.partition = part;

        if (config.method == ResponseMethod::None) {
            const double corr =
                representation_correlation(average_views(test1), average_views(test2));
            row.feature_correlation = corr;
            row.label_correlation = corr;
            return;
        }

        if (config.method == ResponseMethod::Mvtt) {
            const Matrix q1 = mvtt_transform(ViewSet(std::move(train1)), levels).basis;
            const Matrix q2 = mvtt_transform(ViewSet(std::move(train2)), levels).basis;
            // Register the second group's basis onto the first; coefficients
            // taken in the registered basis are already aligned.
            const Matrix q2_registered = orthogonal_procrustes(q2, q1) * q2;

            const GroupRepresentation rep1 = average_denoised(
                test1, [&](const Matrix&) { return q1; }, nullptr, config.fdr_q);
            const GroupRepresentation rep2 = average_denoised(
                test2, [&](const Matrix&) { return q2_registered; }, nullptr, config.fdr_q);
            row.feature_correlation = representation_correlation(rep1.feature, rep2.feature);
            row.label_correlation = representation_correlation(rep1.label, rep2.label);
            return;
        }

        const SrmModel model1 = srm_fit(ViewSet(std::move(train1)), rank);
        const SrmModel model2 = srm_fit(ViewSet(std::move(train2)), rank);
        // Shared matrices live in coefficient space; the registration rotates
        // the second group's coefficients onto the first's.
        const Matrix registration = orthogonal_procrustes(model2.shared, model1.shared);

        const GroupRepresentation rep1 = average_denoised(
            test1, [&](const Matrix& v) { return srm_transfer_basis(v, model1.shared); },
            nullptr, config.fdr_q);
        const GroupRepresentation rep2 = average_denoised(
            test2, [&](const Matrix& v) { return srm_transfer_basis(v, model2.shared); },
            &registration, config.fdr_q);
        row.feature_correlation = representation_correlation(rep1.feature, rep2.feature);
        row.label_correlation = representation_correlation(rep1.label, rep2.label);
    });

    std::vector<double> selected;
    selected.reserve(config.partitions);
    for (const SharedResponseRow& row : result.rows) {
        selected.push_back(config.space == ResponseSpace::Feature ? row.feature_correlation
                                                                  : row.label_correlation);
    }
    result.mean = mean_of(selected);
    result.stddev = sample_std(selected);
    return result;
}

const char* to_string(ResponseSpace space) {
    return space == ResponseSpace::Feature ? "feature" : "label";
}

const char* to_string(ResponseMethod method) {
    switch (method) {
        case ResponseMethod::Mvtt: return "mvtt";
        case ResponseMethod::Srm: return "srm";
        case ResponseMethod::None: return "none";
    }
    return "unknown";
}

} // namespace mvt
