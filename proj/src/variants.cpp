#include "ssmote/variants.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ssmote {

NeighborhoodSafety::NeighborhoodSafety(std::size_t k, std::size_t n_rows,
                                       std::vector<std::size_t> rows,
                                       std::vector<std::size_t> k_plus)
    : k_(k), rows_(std::move(rows)), k_plus_(std::move(k_plus)), slot_of_row_(n_rows, -1) {
    if (k_ == 0) throw ParameterError("safety: k must be >= 1");
    if (rows_.size() != k_plus_.size()) throw ParameterError("safety: rows/counts size mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (k_plus_[i] > k_) throw ParameterError("safety: minority count exceeds k");
        slot_of_row_.at(rows_[i]) = static_cast<std::int64_t>(i);
    }
}

double NeighborhoodSafety::delta_plus(std::size_t slot) const {
    return static_cast<double>(k_plus_[slot]) / static_cast<double>(k_);
}

double NeighborhoodSafety::delta_minus(std::size_t slot) const {
    return static_cast<double>(k_minus(slot)) / static_cast<double>(k_);
}

std::optional<std::size_t> NeighborhoodSafety::slot_of(std::size_t row) const {
    if (row >= slot_of_row_.size() || slot_of_row_[row] < 0) return std::nullopt;
    return static_cast<std::size_t>(slot_of_row_[row]);
}

std::size_t NeighborhoodSafety::at(std::size_t row) const {
    const auto slot = slot_of(row);
    if (!slot) throw ParameterError("safety: row " + std::to_string(row) + " is not a minority point");
    return *slot;
}

double NeighborhoodSafety::delta_plus_of_row(std::size_t row) const { return delta_plus(at(row)); }

double NeighborhoodSafety::delta_minus_of_row(std::size_t row) const {
    return delta_minus(at(row));
}

double NeighborhoodSafety::safe_level_ratio(std::size_t row_a, std::size_t row_b) const {
    const double denom = delta_plus_of_row(row_b);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return delta_plus_of_row(row_a) / denom;
}

NeighborhoodSafety compute_safety(const Dataset& ds, std::size_t k) {
    if (k < 1 || k >= ds.size()) {
        throw ParameterError("safety: k=" + std::to_string(k) + " outside valid interval [1, " +
                             std::to_string(ds.size() == 0 ? 0 : ds.size() - 1) + "]");
    }
    const auto minority = ds.minority_indices();
    std::vector<std::size_t> k_plus;
    k_plus.reserve(minority.size());
    for (std::size_t row : minority) {
        std::size_t count = 0;
        for (std::size_t j : nearest_neighbors(ds.features(), ds.features().row(row), k, row)) {
            if (ds.label(j) == kMinorityLabel) ++count;
        }
        k_plus.push_back(count);
    }
    return NeighborhoodSafety(k, ds.size(), {minority.begin(), minority.end()}, std::move(k_plus));
}

std::vector<std::size_t> borderline_subset(const NeighborhoodSafety& safety) {
    std::vector<std::size_t> out;
    for (std::size_t slot = 0; slot < safety.size(); ++slot) {
        const std::size_t plus = safety.k_plus(slot);
        // plus / k < 1/2 in integer form; plus == 0 is noise.
        if (plus != 0 && 2 * plus < safety.k()) out.push_back(safety.rows()[slot]);
    }
    return out;
}

std::vector<std::size_t> borderline_subset(const Dataset& ds, std::size_t k) {
    return borderline_subset(compute_safety(ds, k));
}

std::vector<double> safelevel_alphas(const NeighborhoodSafety& safety, const Simplex& simplex,
                                     SafeLevelFormula formula) {
    const double floor = 1.0 / static_cast<double>(safety.k());
    std::vector<double> alpha;
    alpha.reserve(simplex.size());
    for (VertexId row : simplex.vertices()) {
        const double level = safety.delta_plus_of_row(row);
        alpha.push_back(formula == SafeLevelFormula::kInverse ? 1.0 / std::max(level, floor)
                                                              : 1.0 + level);
    }
    return alpha;
}

std::vector<double> adasyn_weights(const NeighborhoodSafety& safety,
                                   std::span<const Simplex> simplices) {
    if (simplices.empty()) throw ParameterError("adasyn: empty simplex set");
    std::vector<double> weights;
    weights.reserve(simplices.size());
    double total = 0.0;
    for (const auto& s : simplices) {
        double acc = 0.0;
        for (VertexId row : s.vertices()) acc += safety.delta_minus_of_row(row);
        weights.push_back(acc / static_cast<double>(s.size()));
        total += weights.back();
    }
    if (!(total > 0.0)) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
        return weights;
    }
    for (double& w : weights) w /= total;
    return weights;
}

namespace {

SimplexDim effective_dim(SimplexDim p, bool simplicial) {
    return simplicial ? p : SimplexDim::of(1);
}

void check_dims(std::size_t k, SimplexDim p) {
    SamplerConfig check;
    check.k = k;
    check.p = p;
    check.validate();
}

SyntheticBatch finish(SyntheticBatch batch, const MinorityModel& model, std::size_t k,
                      const GraphOptions& options) {
    batch.k_requested = k;
    batch.k_used = model.k_used;
    batch.k_clamped = model.k_clamped;
    batch.symmetrization = options.symmetrization;
    return batch;
}

SyntheticBatch degenerate(const Dataset& ds, std::size_t k, std::size_t m, std::uint64_t seed) {
    auto batch = oversample_random(ds, m, seed);
    batch.fell_back_to_random = true;
    batch.k_requested = k;
    return batch;
}

}  // namespace

std::vector<Simplex> borderline_candidates(const Dataset& ds, std::size_t k, SimplexDim p,
                                           const GraphOptions& options) {
    const auto border = borderline_subset(ds, k);
    if (border.empty()) {
        throw EmptyBorderlineError(
            "borderline: no minority point is borderline at k=" + std::to_string(k) +
            "; use plain SMOTE or simplicial sampling instead");
    }
    const auto model = build_minority_model(ds, k, p, options);
    std::vector<Simplex> out;
    for (auto& s : model.row_simplices()) {
        const bool touches = std::any_of(border.begin(), border.end(), [&](std::size_t row) {
            return s.contains(static_cast<VertexId>(row));
        });
        if (touches) out.push_back(std::move(s));
    }
    return out;
}

SyntheticBatch oversample_borderline(const Dataset& ds, std::size_t k, SimplexDim p,
                                     std::size_t m, std::uint64_t seed, bool simplicial,
                                     const GraphOptions& options) {
    const SimplexDim dim = effective_dim(p, simplicial);
    check_dims(k, dim);
    if (ds.n_minority() < 1) throw ParameterError("dataset has no minority points");
    if (ds.n_minority() < 2) return degenerate(ds, k, m, seed);
    const auto candidates = borderline_candidates(ds, k, dim, options);
    const auto model = build_minority_model(ds, k, dim, options);
    return finish(sample_from_simplices(ds.features(), candidates, m, seed), model, k, options);
}

SyntheticBatch oversample_safelevel(const Dataset& ds, std::size_t k, SimplexDim p,
                                    std::size_t m, std::uint64_t seed, bool simplicial,
                                    SafeLevelFormula formula, const GraphOptions& options) {
    const SimplexDim dim = effective_dim(p, simplicial);
    check_dims(k, dim);
    if (ds.n_minority() < 1) throw ParameterError("dataset has no minority points");
    if (ds.n_minority() < 2) return degenerate(ds, k, m, seed);
    const auto safety = compute_safety(ds, k);
    const auto model = build_minority_model(ds, k, dim, options);
    const auto candidates = model.row_simplices();
    const AlphaFn alphas = [&](const Simplex& s) { return safelevel_alphas(safety, s, formula); };
    return finish(sample_from_simplices(ds.features(), candidates, m, seed, {}, alphas), model, k,
                  options);
}

SyntheticBatch oversample_adasyn(const Dataset& ds, std::size_t k, SimplexDim p, std::size_t m,
                                 std::uint64_t seed, bool simplicial,
                                 const GraphOptions& options) {
    const SimplexDim dim = effective_dim(p, simplicial);
    check_dims(k, dim);
    if (ds.n_minority() < 1) throw ParameterError("dataset has no minority points");
    if (ds.n_minority() < 2) return degenerate(ds, k, m, seed);
    const auto safety = compute_safety(ds, k);
    const auto model = build_minority_model(ds, k, dim, options);
    const auto candidates = model.row_simplices();
    const auto weights = adasyn_weights(safety, candidates);
    return finish(sample_from_simplices(ds.features(), candidates, m, seed, weights), model, k,
                  options);
}

}  // namespace ssmote
