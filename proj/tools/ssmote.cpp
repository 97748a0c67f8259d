// Command-line front end: oversample CSV files, run the synthetic benchmark,
// print the projection-distance demo.

#include <iostream>

#include <CLI11.hpp>

#include "ssmote/cli.hpp"

namespace {

using ssmote::cli::RunConfig;

void add_sampler_options(CLI::App& cmd, RunConfig& cfg, std::string& p_text,
                         std::string& safelevel, std::string& symmetrize) {
    cmd.add_option("-k", cfg.k, "Neighborhood size of the minority kNN graph");
    cmd.add_option("-p", p_text, "Maximal simplex dimension (integer or 'max')");
    cmd.add_option("--safelevel-formula", safelevel, "Safe-level weighting: inverse|plus-one");
    cmd.add_option("--symmetrize", symmetrize, "kNN symmetrization: union|mutual");
    cmd.add_option("--subdivision-cap", cfg.subdivision_cap,
                   "Maximum number of simplices produced by clique subdivision");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simplicial oversampling for imbalanced binary datasets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::uint64_t seed = 0;
    std::string method = "simplicial";
    std::string p_text = "max";
    std::string safelevel = "inverse";
    std::string symmetrize = "union";
    std::string methods;
    std::string datasets;
    std::string k_grid;
    std::string p_grid;
    std::size_t target = 0;

    auto* oversample = app.add_subcommand("oversample", "Append synthetic minority rows to a CSV");
    oversample->add_option("input", cfg.input, "Input CSV with a header row")->required();
    oversample->add_option("output", cfg.output, "Output CSV")->required();
    oversample->add_option("--method", method, "Sampling method");
    oversample->add_option("--label-column", cfg.label_column, "Name of the label column");
    auto* target_opt =
        oversample->add_option("--target-count", target, "Number of synthetic rows (default n- - n+)");
    auto* seed_opt_o = oversample->add_option("--seed", seed, "Random seed");
    add_sampler_options(*oversample, cfg, p_text, safelevel, symmetrize);

    auto* benchmark = app.add_subcommand("benchmark", "Run the synthetic-data benchmark");
    benchmark->add_option("--methods", methods, "Comma-separated methods");
    benchmark->add_option("--datasets", datasets, "Comma-separated datasets");
    benchmark->add_flag("--with-variants", cfg.with_variants,
                        "Add borderline, safe-level and ADASYN methods");
    benchmark->add_option("--folds", cfg.folds, "Cross-validation folds");
    benchmark->add_option("--repeats", cfg.repeats, "Cross-validation repeats");
    benchmark->add_flag("--nested", cfg.nested, "Select hyperparameters on inner folds");
    benchmark->add_option("--k-grid", k_grid, "k values, e.g. 3..8 or 3,5,7");
    benchmark->add_option("--p-grid", p_grid, "p values, e.g. 2,3,max");
    benchmark->add_option("--k-clf", cfg.k_clf, "Neighbors used by the kNN classifier");
    benchmark->add_option("--format", cfg.format, "Report format on stdout: csv|text");
    benchmark->add_option("--output", cfg.output, "Write <output>.csv and <output>.txt");
    auto* seed_opt_b = benchmark->add_option("--seed", seed, "Random seed");
    add_sampler_options(*benchmark, cfg, p_text, safelevel, symmetrize);

    auto* demo = app.add_subcommand("distance-demo", "Projection distance to simplicial models");
    auto* seed_opt_d = demo->add_option("--seed", seed, "Random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*seed_opt_o || *seed_opt_b || *seed_opt_d) cfg.seed = seed;
        if (*target_opt) cfg.target_count = target;
        cfg.method = ssmote::parse_method(method);
        cfg.p = ssmote::SimplexDim::parse(p_text);
        cfg.safelevel_formula = ssmote::parse_safelevel_formula(safelevel);
        cfg.symmetrization = ssmote::parse_symmetrization(symmetrize);
        if (!methods.empty()) cfg.methods = ssmote::cli::parse_method_list(methods);
        if (!datasets.empty()) cfg.datasets = ssmote::cli::parse_name_list(datasets);
        if (!k_grid.empty()) cfg.k_grid = ssmote::cli::parse_count_list(k_grid);
        if (!p_grid.empty()) cfg.p_grid = ssmote::cli::parse_dim_list(p_grid);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (oversample->parsed()) return ssmote::cli::cmd_oversample(cfg, std::cerr);
    if (benchmark->parsed()) return ssmote::cli::cmd_benchmark(cfg, std::cout, std::cerr);
    return ssmote::cli::cmd_distance_demo(cfg, std::cout, std::cerr);
}
