#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssmote/oversampling.hpp"

namespace ssmote {

// ---------------------------------------------------------------------------
// Synthetic benchmark data

enum class SyntheticShape { kMoons, kSwissRolls, kGaussianInCircle, kCircles };

std::string_view to_string(SyntheticShape shape);
SyntheticShape parse_shape(std::string_view text);
std::vector<SyntheticShape> all_shapes();

/// Default noise for each shape (see generate_synthetic).
double default_noise(SyntheticShape shape);

struct SyntheticSpec {
    SyntheticShape shape = SyntheticShape::kMoons;
    std::size_t n_minority = 50;
    std::size_t n_majority = 300;
    std::optional<double> noise;  ///< shape default when unset
    std::uint64_t seed = 0;
};

/**
 * Two-class 2-D benchmark data.
 *
 * moons: interleaved half circles with Gaussian noise. swiss_rolls: two
 * interleaved spiral arms with Gaussian jitter. g_circle: a Gaussian blob
 * inside a majority annulus. circles: a minority ring inside a majority
 * ring, both annuli of the given width. The majority class is drawn at
 * full size; the minority class is drawn at the same size and subsampled.
 */
Dataset generate_synthetic(const SyntheticSpec& spec);

// ---------------------------------------------------------------------------
// Classifier and metrics

inline constexpr std::size_t kDefaultClassifierK = 5;

/// Majority vote of the k nearest training rows; a tied vote goes to the minority class.
std::vector<int> knn_classify(const Dataset& train, const PointSet& test,
                              std::size_t k_clf = kDefaultClassifierK);

/// Positive = minority (+1).
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts confusion(std::span<const int> truth, std::span<const int> predicted);

/// 2tp / (2tp + fp + fn); 0 when the denominator is 0.
double f1_score(const ConfusionCounts& c);

/// Matthews correlation; 0 when any marginal is empty.
double mcc_score(const ConfusionCounts& c);

// ---------------------------------------------------------------------------
// Cross-validation

struct Split {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/**
 * `repeats` independent stratified `folds`-way partitions.
 *
 * Each class is shuffled and dealt round-robin, continuing the deal across
 * classes, so per-fold class counts differ by at most one.
 */
std::vector<Split> stratified_cv(std::span<const int> labels, std::size_t folds,
                                 std::size_t repeats, std::uint64_t seed);

/// Per-feature z-scoring with statistics from the training rows only.
class Standardizer {
public:
    static Standardizer fit(const PointSet& train);
    PointSet transform(const PointSet& points) const;

    std::span<const double> mean() const { return mean_; }
    std::span<const double> scale() const { return scale_; }

private:
    std::vector<double> mean_;
    std::vector<double> scale_;
};

// ---------------------------------------------------------------------------
// Grid search

struct CvConfig {
    std::size_t folds = 4;
    std::size_t repeats = 5;
    /// Select hyperparameters on inner folds of each outer training split.
    bool nested = false;
    std::size_t inner_folds = 4;
    std::size_t inner_repeats = 1;
    std::size_t k_clf = kDefaultClassifierK;
    std::uint64_t seed = 0;
};

struct NamedDataset {
    std::string name;
    Dataset data;
};

struct EvalOptions {
    std::vector<Method> methods;
    std::vector<std::size_t> k_grid;
    /// Filtered to p <= k per k; empty means {3, ..., k}.
    std::vector<SimplexDim> p_grid;
    GraphOptions graph;
    SafeLevelFormula safelevel_formula = SafeLevelFormula::kInverse;
};

/// {3, 5, ...} up to ceil(cbrt(n+) + ln d).
std::vector<std::size_t> default_k_grid(std::size_t n_minority, std::size_t dim);
/// {3, ..., k}.
std::vector<SimplexDim> default_p_grid(std::size_t k);

struct EvalCell {
    std::string dataset;
    Method method = Method::kNone;
    double f1_mean = 0.0;
    double f1_std = 0.0;
    double mcc_mean = 0.0;
    double mcc_std = 0.0;
    std::optional<std::size_t> best_k;
    std::optional<SimplexDim> best_p;
    std::size_t configs_evaluated = 0;
    /// One entry per fold whose sampler failed (that fold was scored unsampled).
    std::vector<std::string> diagnostics;
};

enum class Metric { kF1, kMcc };
std::string_view to_string(Metric metric);

struct EvalReport {
    std::vector<std::string> datasets;
    std::vector<Method> methods;
    std::vector<EvalCell> cells;  ///< dataset-major, methods in `methods` order
    std::string classifier = "knn";
    std::size_t k_clf = kDefaultClassifierK;
    Symmetrization symmetrization = Symmetrization::kUnion;
    std::string vote_tie_rule = "minority";
    std::uint64_t seed = 0;

    const EvalCell* find(std::string_view dataset, Method method) const;
    std::size_t failure_count() const;
};

/**
 * Scores every method on every dataset.
 *
 * Per fold: standardize on the training split, oversample the standardized
 * training split, classify the test split with kNN. Hyperparameters are
 * chosen by mean F1 (outer folds, or inner folds when cfg.nested).
 */
EvalReport grid_search_eval(std::span<const NamedDataset> datasets, const EvalOptions& options,
                            const CvConfig& cfg);

/// Average rank per method (1 = best), ties share the mean of their ranks.
std::vector<double> rank_methods(const EvalReport& report, Metric metric = Metric::kF1);

/// Same rule on a raw datasets x methods score table.
std::vector<double> rank_scores(const std::vector<std::vector<double>>& scores);

}  // namespace ssmote
