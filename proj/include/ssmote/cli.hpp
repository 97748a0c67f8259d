#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ssmote/evaluation.hpp"

namespace ssmote::cli {

struct RunConfig {
    std::string input;
    std::string output;
    Method method = Method::kSimplicial;
    std::size_t k = 5;
    SimplexDim p = SimplexDim::maximal();
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> target_count;
    std::string label_column = "label";
    SafeLevelFormula safelevel_formula = SafeLevelFormula::kInverse;
    Symmetrization symmetrization = Symmetrization::kUnion;
    std::size_t subdivision_cap = kDefaultSubdivisionCap;

    // benchmark
    std::vector<Method> methods;
    std::vector<std::string> datasets;
    bool with_variants = false;
    std::size_t folds = 4;
    std::size_t repeats = 5;
    bool nested = false;
    std::vector<std::size_t> k_grid;
    std::vector<SimplexDim> p_grid;
    std::size_t k_clf = kDefaultClassifierK;
    std::string format = "text";
};

/// Benchmark column order: imbalanced baseline, then the samplers.
std::vector<Method> default_benchmark_methods();
std::vector<Method> variant_methods();
std::vector<std::size_t> default_benchmark_k_grid();
std::vector<SimplexDim> default_benchmark_p_grid();

/// "3..8", "3,5,7" or a mix.
std::vector<std::size_t> parse_count_list(const std::string& text);
/// Like parse_count_list, and accepts "max".
std::vector<SimplexDim> parse_dim_list(const std::string& text);
std::vector<Method> parse_method_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

/// The configured seed, or a fresh random one announced on `log`.
std::uint64_t resolve_seed(const RunConfig& cfg, std::ostream& log);

/// Reads cfg.input, appends synthetic minority rows, writes cfg.output.
int cmd_oversample(const RunConfig& cfg, std::ostream& log);

/// Synthetic benchmark; prints the report in cfg.format and, when
/// cfg.output is set, writes <output>.csv and <output>.txt.
int cmd_benchmark(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Projection distances of the origin to the standard simplex and the
/// model-distance curve over p for a seeded random cloud.
int cmd_distance_demo(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace ssmote::cli
