#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ssmote/neighborhood_graph.hpp"
#include "ssmote/point_set.hpp"
#include "ssmote/random.hpp"
#include "ssmote/simplicial_complex.hpp"

namespace ssmote {

inline constexpr int kMinorityLabel = +1;
inline constexpr int kMajorityLabel = -1;

/// Binary labelled data: +1 minority, -1 majority.
class Dataset {
public:
    Dataset() = default;
    Dataset(PointSet features, std::vector<int> labels);

    const PointSet& features() const { return features_; }
    std::span<const int> labels() const { return labels_; }
    int label(std::size_t i) const { return labels_[i]; }
    std::size_t size() const { return labels_.size(); }
    std::size_t dim() const { return features_.cols(); }

    std::size_t n_minority() const { return minority_.size(); }
    std::size_t n_majority() const { return labels_.size() - minority_.size(); }
    /// Dataset rows with label +1, ascending.
    std::span<const std::size_t> minority_indices() const { return minority_; }
    std::vector<std::size_t> majority_indices() const;

    Dataset subset(std::span<const std::size_t> rows) const;

    /// Throws unless 1 <= n+ < n-.
    void require_imbalanced() const;

private:
    PointSet features_;
    std::vector<int> labels_;
    std::vector<std::size_t> minority_;
};

enum class Method {
    kNone,
    kRandom,
    kGlobal,
    kGaussian,
    kSmote,
    kSimplicial,
    kBorderline,
    kSimplicialBorderline,
    kSafeLevel,
    kSimplicialSafeLevel,
    kAdasyn,
    kSimplicialAdasyn,
};

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
/// True for methods that build a minority neighborhood graph (use k).
bool uses_k(Method method);
/// True for the simplicial methods (use p).
bool uses_p(Method method);

/// Which safe-level weighting rule the safe-level samplers apply.
enum class SafeLevelFormula {
    kInverse,  ///< alpha_i = 1 / Delta+(x_i)
    kPlusOne,  ///< alpha_i = 1 + Delta+(x_i)
};

std::string_view to_string(SafeLevelFormula formula);
SafeLevelFormula parse_safelevel_formula(std::string_view text);

/// Graph construction knobs shared by every graph-based sampler.
struct GraphOptions {
    Symmetrization symmetrization = Symmetrization::kUnion;
    std::size_t subdivision_cap = kDefaultSubdivisionCap;
};

struct SamplerConfig {
    Method method = Method::kSimplicial;
    std::size_t k = 5;
    SimplexDim p = SimplexDim::maximal();
    std::uint64_t seed = 0;
    std::optional<std::size_t> target_count;
    GraphOptions graph;
    SafeLevelFormula safelevel_formula = SafeLevelFormula::kInverse;

    /// Throws ParameterError on k = 0, p = 0, or finite p > k.
    void validate() const;
};

enum class ProvenanceSource {
    kSimplex,       ///< convex combination of dataset rows
    kDistribution,  ///< drawn from a fitted parametric distribution
};

/// How a synthetic point was produced. Vertex ids are dataset rows.
struct Provenance {
    std::vector<VertexId> vertices;
    std::vector<double> lambda;
    ProvenanceSource source = ProvenanceSource::kSimplex;
};

struct SyntheticBatch {
    PointSet points;
    std::vector<Provenance> provenance;
    std::size_t k_requested = 0;
    std::size_t k_used = 0;
    bool k_clamped = false;
    /// Set when the sampler degraded to duplication because n+ was too small.
    bool fell_back_to_random = false;
    Symmetrization symmetrization = Symmetrization::kUnion;

    std::size_t size() const { return provenance.size(); }
};

/// Per-simplex Dirichlet concentration; an empty callable means all ones.
using AlphaFn = std::function<std::vector<double>(const Simplex&)>;

/**
 * Barycentric coordinates ~ Dir(alpha).
 *
 * Independent Gamma(alpha_i, 1) variates normalized by their sum; for
 * alpha_i < 1 a Gamma(alpha_i + 1) draw is scaled by U^(1/alpha_i).
 */
std::vector<double> sample_dirichlet(std::span<const double> alpha, Rng& rng);

/// lambda^T X for a (p+1) x d vertex matrix.
std::vector<double> barycentric_to_point(std::span<const double> lambda, const PointSet& vertices);

/// Euclidean projection of v onto the probability simplex.
std::vector<double> project_to_probability_simplex(std::span<const double> v);

/**
 * Distance from q to the convex hull of the vertex rows.
 *
 * Projected gradient on the barycentric coordinates, step 1/L with L the
 * Gram-matrix spectral bound, stopping at max |delta lambda| < 1e-10 or
 * 10^4 iterations.
 */
double distance_to_simplex(std::span<const double> q, const PointSet& vertices);

/// Minority kNN graph and its p-skeleton, with the local-to-row map.
struct MinorityModel {
    std::vector<VertexId> rows;  ///< local vertex i is dataset row rows[i]
    NeighborhoodGraph graph;
    Skeleton skeleton;
    std::size_t k_used = 0;
    bool k_clamped = false;

    /// Maximal simplices expressed in dataset row ids.
    std::vector<Simplex> row_simplices() const;
};

/// Requires n+ >= 2; k is clamped to n+ - 1.
MinorityModel build_minority_model(const Dataset& ds, std::size_t k, SimplexDim p,
                                   const GraphOptions& options = {});

/// Mean over majority points of the distance to the nearest maximal simplex.
double mean_model_distance(const PointSet& majority, const PointSet& minority, std::size_t k,
                           SimplexDim p, const GraphOptions& options = {});

/**
 * Draws m points from `candidates` (dataset-row simplices).
 *
 * Point i uses its own stream point_stream(seed, i): first the simplex
 * (uniform, or by `selection_weights` when non-empty), then lambda.
 */
SyntheticBatch sample_from_simplices(const PointSet& features, std::span<const Simplex> candidates,
                                     std::size_t m, std::uint64_t seed,
                                     std::span<const double> selection_weights = {},
                                     const AlphaFn& alphas = {});

SyntheticBatch oversample_random(const Dataset& ds, std::size_t m, std::uint64_t seed);
SyntheticBatch oversample_global(const Dataset& ds, std::size_t m, std::uint64_t seed);
SyntheticBatch oversample_gaussian(const Dataset& ds, std::size_t m, std::uint64_t seed);
SyntheticBatch oversample_smote(const Dataset& ds, std::size_t k, std::size_t m,
                                std::uint64_t seed, const GraphOptions& options = {});
SyntheticBatch oversample_simplicial(const Dataset& ds, std::size_t k, SimplexDim p,
                                     std::size_t m, std::uint64_t seed,
                                     const GraphOptions& options = {});

/// m = n- - n+ unless the config overrides it.
std::size_t target_count(const Dataset& ds, const SamplerConfig& cfg);

/// Dispatches on cfg.method (including the variants).
SyntheticBatch oversample(const Dataset& ds, const SamplerConfig& cfg);

/// Original rows followed by the synthetic rows labelled minority.
Dataset append_synthetic(const Dataset& ds, const SyntheticBatch& batch);

}  // namespace ssmote
