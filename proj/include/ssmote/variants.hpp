#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ssmote/oversampling.hpp"

namespace ssmote {

/**
 * Class make-up of each minority point's k nearest neighbors, measured on
 * the full dataset (both classes, self excluded).
 */
class NeighborhoodSafety {
public:
    NeighborhoodSafety() = default;
    NeighborhoodSafety(std::size_t k, std::size_t n_rows, std::vector<std::size_t> rows,
                       std::vector<std::size_t> k_plus);

    std::size_t k() const { return k_; }
    /// Minority rows in ascending order; slot i describes rows()[i].
    std::span<const std::size_t> rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    std::size_t k_plus(std::size_t slot) const { return k_plus_[slot]; }
    std::size_t k_minus(std::size_t slot) const { return k_ - k_plus_[slot]; }
    double delta_plus(std::size_t slot) const;
    double delta_minus(std::size_t slot) const;

    std::optional<std::size_t> slot_of(std::size_t row) const;
    double delta_plus_of_row(std::size_t row) const;
    double delta_minus_of_row(std::size_t row) const;

    /// Delta+(a) / Delta+(b); infinite when b has no minority neighbors.
    /// Informational only, no sampler consumes it.
    double safe_level_ratio(std::size_t row_a, std::size_t row_b) const;

private:
    std::size_t at(std::size_t row) const;

    std::size_t k_ = 0;
    std::vector<std::size_t> rows_;
    std::vector<std::size_t> k_plus_;
    std::vector<std::int64_t> slot_of_row_;
};

/// Raised by the borderline samplers when no minority point is borderline.
class EmptyBorderlineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requires 1 <= k < n.
NeighborhoodSafety compute_safety(const Dataset& ds, std::size_t k);

/// Minority rows with 0 < k+ and k+/k < 1/2, ascending.
std::vector<std::size_t> borderline_subset(const Dataset& ds, std::size_t k);
std::vector<std::size_t> borderline_subset(const NeighborhoodSafety& safety);

/// Dirichlet concentration per simplex vertex from the vertices' safe levels.
/// Delta+ is clamped below at 1/k so the inverse rule stays finite.
std::vector<double> safelevel_alphas(const NeighborhoodSafety& safety, const Simplex& simplex,
                                     SafeLevelFormula formula = SafeLevelFormula::kInverse);

/// Selection probabilities proportional to each simplex's mean Delta-;
/// uniform when every simplex is fully safe.
std::vector<double> adasyn_weights(const NeighborhoodSafety& safety,
                                   std::span<const Simplex> simplices);

/// Maximal simplices (row ids) of the minority complex touching a borderline row.
std::vector<Simplex> borderline_candidates(const Dataset& ds, std::size_t k, SimplexDim p,
                                           const GraphOptions& options = {});

// The `simplicial` flag selects the simplicial form; false forces p = 1.

SyntheticBatch oversample_borderline(const Dataset& ds, std::size_t k, SimplexDim p,
                                     std::size_t m, std::uint64_t seed, bool simplicial,
                                     const GraphOptions& options = {});

SyntheticBatch oversample_safelevel(const Dataset& ds, std::size_t k, SimplexDim p,
                                    std::size_t m, std::uint64_t seed, bool simplicial,
                                    SafeLevelFormula formula = SafeLevelFormula::kInverse,
                                    const GraphOptions& options = {});

SyntheticBatch oversample_adasyn(const Dataset& ds, std::size_t k, SimplexDim p, std::size_t m,
                                 std::uint64_t seed, bool simplicial,
                                 const GraphOptions& options = {});

}  // namespace ssmote
