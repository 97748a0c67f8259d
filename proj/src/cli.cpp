#include "ssmote/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "ssmote/csv.hpp"
#include "ssmote/report.hpp"

namespace ssmote::cli {

std::vector<Method> default_benchmark_methods() {
    return {Method::kNone, Method::kGaussian, Method::kRandom,
            Method::kGlobal, Method::kSmote, Method::kSimplicial};
}

std::vector<Method> variant_methods() {
    return {Method::kBorderline, Method::kSimplicialBorderline, Method::kSafeLevel,
            Method::kSimplicialSafeLevel, Method::kAdasyn, Method::kSimplicialAdasyn};
}

std::vector<std::size_t> default_benchmark_k_grid() { return {3, 4, 5, 6, 7, 8}; }

std::vector<SimplexDim> default_benchmark_p_grid() { return {SimplexDim::maximal()}; }

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& item : parse_name_list(text)) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoul(item));
                continue;
            }
            const std::size_t lo = std::stoul(item.substr(0, dots));
            const std::size_t hi = std::stoul(item.substr(dots + 2));
            if (lo > hi) throw ParameterError("empty range '" + item + "'");
            for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        } catch (const std::logic_error&) {
            throw ParameterError("cannot parse '" + item + "' as a count or range");
        }
    }
    if (out.empty()) throw ParameterError("empty list '" + text + "'");
    return out;
}

std::vector<SimplexDim> parse_dim_list(const std::string& text) {
    std::vector<SimplexDim> out;
    for (const auto& item : parse_name_list(text)) {
        if (item == "max" || item.find("..") == std::string::npos) {
            out.push_back(SimplexDim::parse(item));
        } else {
            for (std::size_t v : parse_count_list(item)) out.push_back(SimplexDim::of(v));
        }
    }
    if (out.empty()) throw ParameterError("empty list '" + text + "'");
    return out;
}

std::vector<Method> parse_method_list(const std::string& text) {
    std::vector<Method> out;
    for (const auto& item : parse_name_list(text)) out.push_back(parse_method(item));
    if (out.empty()) throw ParameterError("empty method list");
    return out;
}

std::uint64_t resolve_seed(const RunConfig& cfg, std::ostream& log) {
    if (cfg.seed) return *cfg.seed;
    std::random_device device;
    const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    log << "seed: " << seed << " (pass --seed " << seed << " to reproduce)\n";
    return seed;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

int cmd_oversample(const RunConfig& cfg, std::ostream& log) {
    try {
        SamplerConfig sampler;
        sampler.method = cfg.method;
        sampler.k = cfg.k;
        sampler.p = cfg.p;
        sampler.target_count = cfg.target_count;
        sampler.graph.symmetrization = cfg.symmetrization;
        sampler.graph.subdivision_cap = cfg.subdivision_cap;
        sampler.safelevel_formula = cfg.safelevel_formula;
        sampler.validate();
        sampler.seed = resolve_seed(cfg, log);

        const auto input = load_csv_dataset(parse_csv(read_file(cfg.input)), cfg.label_column);
        const auto batch = oversample(input.data, sampler);
        if (batch.k_clamped) {
            log << "note: k clamped from " << batch.k_requested << " to " << batch.k_used
                << " (only " << input.data.n_minority() << " minority rows)\n";
        }
        if (batch.fell_back_to_random) {
            log << "note: a single minority row; synthetic rows are duplicates\n";
        }
        write_file(cfg.output, serialize_with_synthetic(input, batch));
        return 0;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        if (cfg.format != "text" && cfg.format != "csv") {
            throw ParameterError("--format must be 'csv' or 'text', got '" + cfg.format + "'");
        }
        EvalOptions options;
        options.methods = cfg.methods.empty() ? default_benchmark_methods() : cfg.methods;
        if (cfg.with_variants) {
            for (Method m : variant_methods()) {
                if (std::find(options.methods.begin(), options.methods.end(), m) ==
                    options.methods.end()) {
                    options.methods.push_back(m);
                }
            }
        }
        options.k_grid = cfg.k_grid.empty() ? default_benchmark_k_grid() : cfg.k_grid;
        options.p_grid = cfg.p_grid.empty() ? default_benchmark_p_grid() : cfg.p_grid;
        options.graph.symmetrization = cfg.symmetrization;
        options.graph.subdivision_cap = cfg.subdivision_cap;
        options.safelevel_formula = cfg.safelevel_formula;

        CvConfig cv;
        cv.folds = cfg.folds;
        cv.repeats = cfg.repeats;
        cv.nested = cfg.nested;
        cv.k_clf = cfg.k_clf;
        cv.seed = resolve_seed(cfg, log);

        std::vector<NamedDataset> datasets;
        const std::vector<std::string> names =
            cfg.datasets.empty() ? std::vector<std::string>{"moons", "swiss_rolls", "g_circle",
                                                            "circles"}
                                 : cfg.datasets;
        for (const auto& name : names) {
            SyntheticSpec spec;
            spec.shape = parse_shape(name);
            spec.seed = cv.seed;
            datasets.push_back({name, generate_synthetic(spec)});
        }

        const auto report = grid_search_eval(datasets, options, cv);
        const std::string csv = format_report_csv(report);
        const std::string text = format_report_text(report);
        out << (cfg.format == "csv" ? csv : text);
        if (!cfg.output.empty()) {
            write_file(cfg.output + ".csv", csv);
            write_file(cfg.output + ".txt", text);
        }
        if (report.failure_count() > 0) {
            log << "error: " << report.failure_count()
                << " fold(s) had sampler failures; see the report\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_distance_demo(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        const std::vector<double> origin{0.0, 0.0, 0.0};
        const auto edge = PointSet::from_rows({{1, 0, 0}, {0, 1, 0}});
        const auto triangle = PointSet::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        const double d1 = distance_to_simplex(origin, edge);
        const double d2 = distance_to_simplex(origin, triangle);
        out << std::fixed << std::setprecision(4);
        out << "d1 (origin to edge)       = " << d1 << '\n';
        out << "d2 (origin to 2-simplex)  = " << d2 << '\n';

        const std::uint64_t seed = resolve_seed(cfg, log);
        Rng rng(derive_seed(seed, {0xD15A}));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        PointSet minority(24, 3);
        PointSet majority(12, 3);
        for (std::size_t i = 0; i < minority.rows(); ++i) {
            for (std::size_t j = 0; j < 3; ++j) minority(i, j) = unit(rng);
        }
        for (std::size_t i = 0; i < majority.rows(); ++i) {
            for (std::size_t j = 0; j < 3; ++j) majority(i, j) = unit(rng);
        }
        const std::size_t k = 6;
        out << "mean distance of " << majority.rows() << " majority points to the model of "
            << minority.rows() << " minority points, k=" << k << '\n';
        std::vector<SimplexDim> dims;
        for (std::size_t p = 1; p <= k; ++p) dims.push_back(SimplexDim::of(p));
        dims.push_back(SimplexDim::maximal());
        double previous = std::numeric_limits<double>::infinity();
        bool nonincreasing = true;
        for (const auto& p : dims) {
            const double value = mean_model_distance(majority, minority, k, p);
            if (value > previous + 1e-9) nonincreasing = false;
            previous = value;
            out << "  p=" << std::setw(3) << p.to_string() << "  " << value << '\n';
        }
        out << "nonincreasing in p: " << (nonincreasing ? "yes" : "no") << '\n';
        return 0;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ssmote::cli
