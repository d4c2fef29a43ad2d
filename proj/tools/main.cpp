// mvtreelet command-line front end: deterministic, seeded experiment runs
// with JSON results plus CSV / PGM artifacts.

#include "mvtreelet/denoise.hpp"
#include "mvtreelet/error.hpp"
#include "mvtreelet/experiments.hpp"
#include "mvtreelet/linalg.hpp"
#include "mvtreelet/matrix_io.hpp"
#include "mvtreelet/mvtt.hpp"
#include "mvtreelet/srm.hpp"
#include "mvtreelet/synthgraph.hpp"
#include "mvtreelet/treelet.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mvt;

namespace {

struct CommonArgs {
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
    std::string initiator;
    std::vector<double> epsilons;
    std::vector<std::size_t> views;
    std::size_t levels = 0;  // 0 = floor(p/2)
    double fdr = 0.015;
    std::vector<std::size_t> ranks;
    std::size_t collections = 20;
    std::size_t trials = 30;
    std::size_t partitions = 5;
    std::size_t power = 3;
    double edge_threshold = 0.0;
    std::string space = "feature";
    std::string method = "mvtt";
    std::string basis_path;
    std::string truth_path;
    std::string compare_path;
    std::size_t max_iters = 500;
    double tol = 1e-8;
};

double require_single_epsilon(const CommonArgs& args) {
    if (args.epsilons.size() != 1) {
        throw Error(ErrorKind::Parameter, "exactly one --epsilon value is required here");
    }
    return args.epsilons.front();
}

std::size_t require_single_views(const CommonArgs& args) {
    if (args.views.size() != 1) {
        throw Error(ErrorKind::Parameter, "exactly one --views value is required here");
    }
    return args.views.front();
}

KroneckerSpec make_spec(const CommonArgs& args, double epsilon) {
    KroneckerSpec spec;
    if (!args.initiator.empty()) {
        spec.initiator = read_matrix(args.initiator);
    }
    spec.power = args.power;
    spec.noise_level = epsilon;
    spec.seed = args.seed;
    spec.validate();
    return spec;
}

json matrix_meta(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}};
}

/// View set from either a single CSV (one view) or a directory of *.csv
/// files taken in name order.
ViewSet load_views(const std::string& input) {
    if (input.empty()) {
        throw Error(ErrorKind::Parameter, "--input is required for this command");
    }
    const fs::path path(input);
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw Error(ErrorKind::InputNotFound, "no .csv files in directory: " + input);
        }
        std::vector<Matrix> views;
        views.reserve(files.size());
        for (const fs::path& f : files) views.push_back(read_matrix(f));
        return ViewSet(std::move(views));
    }
    return ViewSet({read_matrix(path)});
}

struct RunContext {
    std::string command;
    fs::path out_dir;
    json config;
    json results = json::array();
    std::vector<std::string> warnings;
    std::vector<std::string> artifacts;

    void write_csv_artifact(const std::string& name, const Matrix& m) {
        write_matrix(out_dir / name, m);
        artifacts.push_back(name);
    }
    void write_pgm_artifact(const std::string& name, const Matrix& m) {
        write_heatmap(out_dir / name, m);
        artifacts.push_back(name);
    }
    void write_table_csv(const std::string& name, const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
        std::string text;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i > 0) text.push_back(',');
            text += header[i];
        }
        text.push_back('\n');
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i > 0) text.push_back(',');
                text += format_double(row[i]);
            }
            text.push_back('\n');
        }
        std::ofstream file(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw Error(ErrorKind::Io, "cannot open output file: " + (out_dir / name).string());
        }
        file.write(text.data(), static_cast<std::streamsize>(text.size()));
        artifacts.push_back(name);
    }
};

json rotation_to_json(const JacobiRotation& rot) {
    return json{{"level", rot.level}, {"j", rot.j}, {"k", rot.k}, {"c", rot.c}, {"s", rot.s}};
}

json basis_summary(const TreeletBasis& basis) {
    json rotations = json::array();
    for (const JacobiRotation& rot : basis.rotations) rotations.push_back(rotation_to_json(rot));
    return json{{"levels", basis.levels},
                {"survivor_order", basis.survivor_order},
                {"rotations", std::move(rotations)}};
}

TreeletBasis basis_from_matrix(Matrix m) {
    TreeletBasis basis;
    basis.basis = std::move(m);
    basis.levels = 0;
    return basis;
}

std::size_t resolved_levels(std::size_t levels, std::size_t p) {
    return levels == 0 ? default_levels(p) : levels;
}

std::size_t synthetic_dim(const KroneckerSpec& spec) {
    std::size_t dim = spec.initiator.rows();
    for (std::size_t i = 0; i < spec.power; ++i) dim *= spec.initiator.rows();
    return dim;
}

void echo_spec(const CommonArgs& args, RunContext& ctx) {
    ctx.config["power"] = args.power;
    ctx.config["initiator"] = args.initiator.empty() ? "default" : args.initiator;
}

// ---------------------------------------------------------------------------
// command bodies

void cmd_generate(const CommonArgs& args, RunContext& ctx) {
    const double epsilon = require_single_epsilon(args);
    const std::size_t m = args.views.empty() ? 1 : require_single_views(args);
    const KroneckerSpec spec = make_spec(args, epsilon);
    const Matrix truth = kronecker_truth(spec);
    const ViewSet views = generate_views(spec, m);

    ctx.config["epsilon"] = epsilon;
    ctx.config["views"] = m;
    echo_spec(args, ctx);
    ctx.write_csv_artifact("truth.csv", truth);
    ctx.write_pgm_artifact("truth.pgm", truth);
    for (std::size_t i = 0; i < m; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "view_%03zu", i);
        ctx.write_csv_artifact(std::string(name) + ".csv", views.view(i));
        ctx.write_pgm_artifact(std::string(name) + ".pgm", views.view(i));
    }
    ctx.results.push_back(json{{"dim", truth.rows()},
                               {"views", m},
                               {"truth_fro", truth.frobenius_norm()}});
}

void cmd_treelet(const CommonArgs& args, RunContext& ctx) {
    const Matrix sigma = read_matrix(args.input);
    const std::size_t levels = resolved_levels(args.levels, sigma.rows());
    const TreeletBasis basis = treelet_transform(sigma, levels);
    ctx.config["levels"] = levels;
    ctx.write_csv_artifact("basis.csv", basis.basis);
    ctx.results.push_back(basis_summary(basis));
}

void cmd_mvtt(const CommonArgs& args, RunContext& ctx) {
    const ViewSet views = load_views(args.input);
    const std::size_t levels = resolved_levels(args.levels, views.dim());
    const TreeletBasis basis = mvtt_transform(views, levels);
    ctx.config["levels"] = levels;
    ctx.config["views"] = views.view_count();
    ctx.write_csv_artifact("basis.csv", basis.basis);
    ctx.results.push_back(basis_summary(basis));
}

void cmd_denoise(const CommonArgs& args, RunContext& ctx) {
    const Matrix x = read_matrix(args.input);
    TreeletBasis basis;
    if (!args.basis_path.empty()) {
        basis = basis_from_matrix(read_matrix(args.basis_path));
        if (!basis.basis.is_square() || basis.basis.rows() != x.rows()) {
            throw Error(ErrorKind::Dimension, "basis shape does not match the input matrix");
        }
    } else {
        const std::size_t levels = resolved_levels(args.levels, x.rows());
        ctx.config["levels"] = levels;
        basis = treelet_transform(x, levels);
    }
    if (!args.truth_path.empty()) ctx.config["truth"] = args.truth_path;
    const DenoiseOutcome outcome = denoise_with_details(x, basis, args.fdr);
    if (outcome.fdr.rejected_count == 0) {
        ctx.warnings.push_back(
            "no coefficients were significant at the requested FDR; output is the zero matrix");
    }
    ctx.config["fdr"] = args.fdr;
    ctx.config["basis"] = args.basis_path.empty() ? "own-treelet" : args.basis_path;
    ctx.write_csv_artifact("denoised.csv", outcome.denoised);
    ctx.write_pgm_artifact("denoised.pgm", outcome.denoised);
    json row{{"threshold", outcome.fdr.threshold},
             {"rejected_count", outcome.fdr.rejected_count},
             {"coefficients", outcome.fdr.p_values.size()}};
    if (!args.truth_path.empty()) {
        const Matrix truth = read_matrix(args.truth_path);
        row["error_vs_truth"] = denoise_error(truth, outcome.denoised);
        row["relative_error_vs_truth"] =
            (truth - outcome.denoised).frobenius_norm() / truth.frobenius_norm();
    }
    ctx.results.push_back(std::move(row));
}

void cmd_srm(const CommonArgs& args, RunContext& ctx) {
    const ViewSet views = load_views(args.input);
    const std::size_t rank = args.ranks.empty() ? views.dim() : args.ranks.front();
    const SrmModel model = srm_fit(views, rank, args.max_iters, args.tol, args.seed);
    ctx.config["rank"] = rank;
    ctx.config["max_iters"] = args.max_iters;
    ctx.config["tol"] = args.tol;
    ctx.write_csv_artifact("shared.csv", model.shared);
    for (std::size_t i = 0; i < views.view_count(); ++i) {
        const Matrix recon = srm_reconstruct(model, i);
        char name[40];
        std::snprintf(name, sizeof(name), "reconstruction_%03zu.csv", i);
        ctx.write_csv_artifact(name, recon);
        ctx.results.push_back(json{{"view", i},
                                   {"reconstruction_error", denoise_error(views.view(i), recon)}});
    }
    ctx.results.push_back(json{{"iterations", model.iterations},
                               {"objective_trace", model.objective_trace},
                               {"final_objective_unsquared", model.final_objective_unsquared}});
}

json convergence_records_json(const std::vector<ConvergenceRecord>& records) {
    json rows = json::array();
    for (const ConvergenceRecord& rec : records) {
        rows.push_back(json{{"epsilon", rec.epsilon},
                            {"M", rec.m},
                            {"E_M_mean", rec.e_m_mean},
                            {"E_M_std", rec.e_m_std},
                            {"per_collection_E_M", rec.per_collection_e_m}});
    }
    return rows;
}

ConvergenceConfig make_convergence_config(const CommonArgs& args) {
    ConvergenceConfig cfg;
    cfg.spec = make_spec(args, 0.0);
    cfg.epsilon_values = args.epsilons;
    cfg.m_values = args.views;
    cfg.collections = args.collections;
    cfg.levels = args.levels;
    cfg.master_seed = args.seed;
    return cfg;
}

void record_convergence_config(const CommonArgs& args, const ConvergenceConfig& cfg,
                               RunContext& ctx) {
    ctx.config["epsilon"] = args.epsilons;
    ctx.config["views"] = args.views;
    ctx.config["collections"] = args.collections;
    ctx.config["levels"] = resolved_levels(cfg.levels, synthetic_dim(cfg.spec));
    echo_spec(args, ctx);
}

void cmd_convergence(const CommonArgs& args, RunContext& ctx) {
    const ConvergenceConfig cfg = make_convergence_config(args);
    const auto records = convergence_experiment(cfg);
    record_convergence_config(args, cfg, ctx);
    ctx.results = convergence_records_json(records);
    std::vector<std::vector<double>> rows;
    for (const ConvergenceRecord& rec : records) {
        rows.push_back({rec.epsilon, static_cast<double>(rec.m), rec.e_m_mean, rec.e_m_std});
    }
    ctx.write_table_csv("convergence.csv", {"epsilon", "M", "E_M_mean", "E_M_std"}, rows);
}

void cmd_stability(const CommonArgs& args, RunContext& ctx) {
    const ConvergenceConfig cfg = make_convergence_config(args);
    const auto table = stability_table(convergence_experiment(cfg));
    record_convergence_config(args, cfg, ctx);
    std::vector<std::vector<double>> rows;
    for (const StabilityRow& row : table) {
        json per_m = json::array();
        for (const auto& [m, sd] : row.per_m_std) {
            per_m.push_back(json{{"M", m}, {"E_M_std", sd}});
        }
        ctx.results.push_back(json{{"epsilon", row.epsilon},
                                   {"stability", row.stability},
                                   {"std_of_stds", row.std_of_stds},
                                   {"per_M", std::move(per_m)}});
        rows.push_back({row.epsilon, row.stability, row.std_of_stds});
    }
    ctx.write_table_csv("stability.csv", {"epsilon", "stability", "std_of_stds"}, rows);
}

void cmd_rate(const CommonArgs& args, RunContext& ctx) {
    const ConvergenceConfig cfg = make_convergence_config(args);
    const auto records = convergence_experiment(cfg);
    record_convergence_config(args, cfg, ctx);
    std::vector<std::vector<double>> rows;
    for (double eps : args.epsilons) {
        std::vector<RatePoint> series;
        for (const ConvergenceRecord& rec : records) {
            if (rec.epsilon == eps) {
                series.push_back({static_cast<double>(rec.m), rec.e_m_mean});
            }
        }
        const RateFit fit = fit_rate(series, eps);
        ctx.results.push_back(json{{"epsilon", fit.epsilon},
                                   {"rate", fit.rate},
                                   {"bias", fit.bias},
                                   {"fit_residual", fit.fit_residual}});
        rows.push_back({fit.epsilon, fit.rate, fit.bias, fit.fit_residual});
    }
    ctx.write_table_csv("rate.csv", {"epsilon", "rate", "bias", "fit_residual"}, rows);
}

void cmd_compare_denoise(const CommonArgs& args, RunContext& ctx) {
    const double epsilon = require_single_epsilon(args);
    const std::size_t m = require_single_views(args);
    const KroneckerSpec spec = make_spec(args, epsilon);
    const DenoiseComparison cmp =
        single_vs_multi_denoise(spec, m, args.trials, args.fdr, args.levels);
    ctx.config["epsilon"] = epsilon;
    ctx.config["views"] = m;
    ctx.config["trials"] = args.trials;
    ctx.config["fdr"] = args.fdr;
    ctx.config["levels"] = resolved_levels(args.levels, synthetic_dim(spec));
    echo_spec(args, ctx);
    std::vector<std::vector<double>> rows;
    for (const DenoiseComparisonTrial& trial : cmp.trials) {
        ctx.results.push_back(json{{"trial", trial.trial},
                                   {"mean_single_error", trial.mean_single_error},
                                   {"mean_multi_error", trial.mean_multi_error},
                                   {"difference", trial.difference}});
        rows.push_back({static_cast<double>(trial.trial), trial.mean_single_error,
                        trial.mean_multi_error, trial.difference});
    }
    ctx.results.push_back(json{{"mean_difference", cmp.mean_difference}});
    ctx.write_table_csv("compare_denoise.csv",
                        {"trial", "mean_single_error", "mean_multi_error", "difference"}, rows);
}

void cmd_srm_sweep(const CommonArgs& args, RunContext& ctx) {
    const Matrix truth = args.input.empty() ? kronecker_truth(make_spec(args, 0.0))
                                            : read_matrix(args.input);
    std::vector<std::size_t> ranks = args.ranks;
    if (ranks.empty()) {
        // nine evenly spaced basis counts up to full rank
        const std::size_t p = truth.rows();
        for (std::size_t i = 1; i <= 9; ++i) ranks.push_back(std::max<std::size_t>(1, i * p / 9));
    }
    const std::size_t m = args.views.empty() ? 1 : require_single_views(args);
    const auto entries = srm_reconstruction_sweep(truth, ranks, m);
    ctx.config["ranks"] = ranks;
    ctx.config["views"] = m;
    if (args.input.empty()) echo_spec(args, ctx);
    std::vector<std::vector<double>> rows;
    for (const SrmSweepEntry& entry : entries) {
        char name[48];
        std::snprintf(name, sizeof(name), "reconstruction_k%03zu.pgm", entry.rank);
        ctx.write_pgm_artifact(name, entry.reconstruction);
        ctx.results.push_back(json{{"rank", entry.rank},
                                   {"error", entry.error},
                                   {"relative_error", entry.relative_error}});
        rows.push_back({static_cast<double>(entry.rank), entry.error, entry.relative_error});
    }
    ctx.write_table_csv("srm_sweep.csv", {"rank", "error", "relative_error"}, rows);
}

void cmd_shared_response(const CommonArgs& args, RunContext& ctx) {
    const ViewSet views = [&]() {
        if (!args.input.empty()) return load_views(args.input);
        const double epsilon = require_single_epsilon(args);
        return generate_views(make_spec(args, epsilon), require_single_views(args));
    }();

    SharedResponseConfig cfg;
    cfg.group_split_seed = args.seed;
    cfg.partitions = args.partitions;
    cfg.fdr_q = args.fdr;
    cfg.levels = args.levels;
    cfg.space = args.space == "label" ? ResponseSpace::Label : ResponseSpace::Feature;
    if (args.method == "mvtt") {
        cfg.method = ResponseMethod::Mvtt;
    } else if (args.method == "srm") {
        cfg.method = ResponseMethod::Srm;
    } else {
        cfg.method = ResponseMethod::None;
    }
    if (!args.ranks.empty()) cfg.srm_rank = args.ranks.front();

    const SharedResponseResult result = shared_response(views, cfg);
    ctx.config["partitions"] = cfg.partitions;
    ctx.config["fdr"] = cfg.fdr_q;
    ctx.config["space"] = to_string(result.space);
    ctx.config["method"] = to_string(result.method);
    ctx.config["views"] = views.view_count();
    ctx.config["levels"] = resolved_levels(cfg.levels, views.dim());
    if (cfg.method == ResponseMethod::Srm) {
        ctx.config["rank"] = cfg.srm_rank == 0 ? views.dim() : cfg.srm_rank;
    }
    if (args.input.empty()) {
        ctx.config["epsilon"] = args.epsilons.front();
        echo_spec(args, ctx);
    }
    // "feature" correlates denoised reconstructions, "label" the thresholded
    // coefficient matrices; both columns are reported for every partition.
    std::vector<std::vector<double>> rows;
    for (const SharedResponseRow& row : result.rows) {
        ctx.results.push_back(json{{"partition", row.partition},
                                   {"feature_correlation", row.feature_correlation},
                                   {"label_correlation", row.label_correlation}});
        rows.push_back({static_cast<double>(row.partition), row.feature_correlation,
                        row.label_correlation});
    }
    ctx.results.push_back(json{{"mean", result.mean}, {"std", result.stddev}});
    ctx.write_table_csv("shared_response.csv",
                        {"partition", "feature_correlation", "label_correlation"}, rows);
}

void cmd_coarsen(const CommonArgs& args, RunContext& ctx) {
    const Matrix a = read_matrix(args.input);
    const Matrix coarse = box_filter_coarsen(a);
    ctx.write_csv_artifact("coarsened.csv", coarse);
    ctx.write_pgm_artifact("coarsened.pgm", coarse);
    ctx.results.push_back(json{{"input", matrix_meta(a)}, {"output", matrix_meta(coarse)}});
}

void cmd_metrics(const CommonArgs& args, RunContext& ctx) {
    const Matrix a = read_matrix(args.input);
    ctx.config["edge_threshold"] = args.edge_threshold;
    json row{{"connection_density", connection_density(a, args.edge_threshold)},
             {"connected_components", connected_components(a, args.edge_threshold)}};
    if (!args.compare_path.empty()) {
        ctx.config["compare"] = args.compare_path;
        row["pearson_correlation"] = pearson_correlation(a, read_matrix(args.compare_path));
    }
    ctx.results.push_back(std::move(row));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-view treelet transform toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    struct Command {
        CLI::App* sub;
        void (*body)(const CommonArgs&, RunContext&);
    };
    std::vector<Command> commands;

    auto add_command = [&](const char* name, const char* desc,
                           void (*body)(const CommonArgs&, RunContext&), bool needs_seed) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--output", args.output, "output directory")->required();
        if (needs_seed) {
            sub->add_option("--seed", args.seed, "random seed (required; no wall-clock seeding)")
                ->required();
        }
        commands.push_back(Command{sub, body});
        return sub;
    };

    {
        CLI::App* sub = add_command("generate", "write a noisy Kronecker graph and its views",
                                    cmd_generate, true);
        sub->add_option("--epsilon", args.epsilons, "noise level")->required();
        sub->add_option("--views", args.views, "number of views");
        sub->add_option("--power", args.power, "Kronecker power (products applied)");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("treelet", "single-view treelet transform of a covariance CSV",
                                    cmd_treelet, false);
        sub->add_option("--input", args.input, "covariance matrix CSV")->required();
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
    }
    {
        CLI::App* sub = add_command("mvtt", "multi-view treelet transform of a view directory",
                                    cmd_mvtt, false);
        sub->add_option("--input", args.input, "view CSV file or directory of .csv views")
            ->required();
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
    }
    {
        CLI::App* sub = add_command("denoise", "FDR hard-threshold denoising in a treelet basis",
                                    cmd_denoise, false);
        sub->add_option("--input", args.input, "matrix CSV to denoise")->required();
        sub->add_option("--basis", args.basis_path, "basis CSV (default: own treelet basis)");
        sub->add_option("--truth", args.truth_path, "truth matrix CSV for error reporting");
        sub->add_option("--fdr", args.fdr, "false discovery rate q in (0,1)");
        sub->add_option("--levels", args.levels, "tree height when the basis is computed here");
    }
    {
        CLI::App* sub = add_command("srm", "non-probabilistic shared response model fit",
                                    cmd_srm, false);
        sub->add_option("--input", args.input, "view CSV file or directory")->required();
        sub->add_option("--rank", args.ranks, "basis count K (default p)");
        sub->add_option("--max-iters", args.max_iters, "iteration cap");
        sub->add_option("--tol", args.tol, "relative objective tolerance");
        sub->add_option("--seed", args.seed, "tie-break seed (solver is deterministic)");
    }
    {
        CLI::App* sub = add_command("convergence", "bootstrap E_M study over a noise/view grid",
                                    cmd_convergence, true);
        sub->add_option("--epsilon", args.epsilons, "noise levels")->required();
        sub->add_option("--views", args.views, "view counts M")->required();
        sub->add_option("--collections", args.collections, "collections per cell");
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("stability", "standard deviation of E_M across collections",
                                    cmd_stability, true);
        sub->add_option("--epsilon", args.epsilons, "noise levels")->required();
        sub->add_option("--views", args.views, "view counts M")->required();
        sub->add_option("--collections", args.collections, "collections per cell");
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("rate", "exponential-decay fit of the E_M curves",
                                    cmd_rate, true);
        sub->add_option("--epsilon", args.epsilons, "noise levels")->required();
        sub->add_option("--views", args.views, "view counts M (at least four)")->required();
        sub->add_option("--collections", args.collections, "collections per cell");
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("compare-denoise",
                                    "single-view versus joint-basis denoising error",
                                    cmd_compare_denoise, true);
        sub->add_option("--epsilon", args.epsilons, "noise level")->required();
        sub->add_option("--views", args.views, "views per trial")->required();
        sub->add_option("--trials", args.trials, "trial count");
        sub->add_option("--fdr", args.fdr, "false discovery rate q");
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("srm-sweep", "SRM reconstruction error across basis counts",
                                    cmd_srm_sweep, false);
        sub->add_option("--input", args.input, "truth matrix CSV (default: Kronecker truth)");
        sub->add_option("--rank", args.ranks, "basis counts (default: nine even steps)");
        sub->add_option("--views", args.views, "copies of the truth to fit");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("shared-response",
                                    "cross-group correlation of registered representations",
                                    cmd_shared_response, true);
        sub->add_option("--input", args.input, "directory of view CSVs (default: synthetic)");
        sub->add_option("--epsilon", args.epsilons, "noise level for synthetic views");
        sub->add_option("--views", args.views, "synthetic view count");
        sub->add_option("--partitions", args.partitions, "random group splits");
        sub->add_option("--fdr", args.fdr, "false discovery rate q");
        sub->add_option("--levels", args.levels, "tree height (default p/2)");
        sub->add_option("--space", args.space, "feature | label")
            ->check(CLI::IsMember({"feature", "label"}));
        sub->add_option("--method", args.method, "mvtt | srm | none")
            ->check(CLI::IsMember({"mvtt", "srm", "none"}));
        sub->add_option("--rank", args.ranks, "SRM basis count (default p)");
        sub->add_option("--power", args.power, "Kronecker power");
        sub->add_option("--initiator", args.initiator, "initiator matrix CSV (3x3)");
    }
    {
        CLI::App* sub = add_command("coarsen", "3x3 box-filter block averaging", cmd_coarsen,
                                    false);
        sub->add_option("--input", args.input, "matrix CSV (dimension divisible by 3)")
            ->required();
    }
    {
        CLI::App* sub = add_command("metrics",
                                    "connection density, components, optional correlation",
                                    cmd_metrics, false);
        sub->add_option("--input", args.input, "matrix CSV")->required();
        sub->add_option("--edge-threshold", args.edge_threshold, "edge magnitude threshold");
        sub->add_option("--compare", args.compare_path, "second matrix CSV for correlation");
    }

    CLI11_PARSE(app, argc, argv);

    const Command* chosen = nullptr;
    for (const Command& cmd : commands) {
        if (cmd.sub->parsed()) {
            chosen = &cmd;
            break;
        }
    }
    if (chosen == nullptr) {
        std::cerr << "no command selected\n";
        return 1;
    }

    RunContext ctx;
    ctx.command = chosen->sub->get_name();
    try {
        ctx.out_dir = fs::path(args.output);
        std::error_code ec;
        fs::create_directories(ctx.out_dir, ec);
        if (ec) {
            throw Error(ErrorKind::Io, "cannot create output directory: " + args.output);
        }
        ctx.config["seed"] = args.seed;
        ctx.config["output"] = args.output;
        if (!args.input.empty()) ctx.config["input"] = args.input;
        if (!args.initiator.empty()) ctx.config["initiator"] = args.initiator;

        chosen->body(args, ctx);

        const json result{{"command", ctx.command},
                          {"config", ctx.config},
                          {"results", ctx.results},
                          {"warnings", ctx.warnings},
                          {"artifacts", ctx.artifacts}};
        const std::string text = result.dump(2) + "\n";
        std::ofstream file(ctx.out_dir / "result.json", std::ios::binary | std::ios::trunc);
        file.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!file) {
            throw Error(ErrorKind::Io, "failed writing result.json");
        }
        std::cout << text;
        return 0;
    } catch (const Error& e) {
        const json error{{"command", ctx.command},
                         {"error", json{{"kind", e.kind_name()}, {"message", e.what()}}}};
        std::cout << error.dump(2) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        const json error{{"command", ctx.command},
                         {"error", json{{"kind", "internal"}, {"message", e.what()}}}};
        std::cout << error.dump(2) << "\n";
        return 1;
    }
}
