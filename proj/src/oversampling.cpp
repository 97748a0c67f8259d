#include "ssmote/oversampling.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "ssmote/variants.hpp"

namespace ssmote {

Dataset::Dataset(PointSet features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
    if (features_.rows() != labels_.size()) {
        throw ParameterError("dataset: " + std::to_string(features_.rows()) + " feature rows but " +
                             std::to_string(labels_.size()) + " labels");
    }
    features_.validate_finite();
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == kMinorityLabel) {
            minority_.push_back(i);
        } else if (labels_[i] != kMajorityLabel) {
            throw ParameterError("dataset: label at row " + std::to_string(i) +
                                 " must be +1 or -1, got " + std::to_string(labels_[i]));
        }
    }
}

std::vector<std::size_t> Dataset::majority_indices() const {
    std::vector<std::size_t> out;
    out.reserve(n_majority());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == kMajorityLabel) out.push_back(i);
    }
    return out;
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
    std::vector<int> labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = labels_[rows[i]];
    return Dataset(features_.select(rows), std::move(labels));
}

void Dataset::require_imbalanced() const {
    if (n_minority() < 1 || n_minority() >= n_majority()) {
        throw ParameterError("dataset: oversampling needs 1 <= n+ < n-, got n+=" +
                             std::to_string(n_minority()) +
                             ", n-=" + std::to_string(n_majority()));
    }
}

namespace {

struct MethodName {
    Method method;
    std::string_view name;
};

constexpr std::array<MethodName, 12> kMethodNames{{
    {Method::kNone, "none"},
    {Method::kRandom, "random"},
    {Method::kGlobal, "global"},
    {Method::kGaussian, "gaussian"},
    {Method::kSmote, "smote"},
    {Method::kSimplicial, "simplicial"},
    {Method::kBorderline, "borderline"},
    {Method::kSimplicialBorderline, "s_borderline"},
    {Method::kSafeLevel, "safelevel"},
    {Method::kSimplicialSafeLevel, "s_safelevel"},
    {Method::kAdasyn, "adasyn"},
    {Method::kSimplicialAdasyn, "s_adasyn"},
}};

}  // namespace

std::string_view to_string(Method method) {
    for (const auto& entry : kMethodNames) {
        if (entry.method == method) return entry.name;
    }
    return "unknown";
}

Method parse_method(std::string_view text) {
    if (text == "imbalanced") return Method::kNone;
    for (const auto& entry : kMethodNames) {
        if (entry.name == text) return entry.method;
    }
    std::string valid;
    for (const auto& entry : kMethodNames) {
        if (!valid.empty()) valid += ", ";
        valid += entry.name;
    }
    throw ParameterError("unknown method '" + std::string(text) + "' (valid: " + valid + ")");
}

bool uses_k(Method method) {
    switch (method) {
        case Method::kNone:
        case Method::kRandom:
        case Method::kGlobal:
        case Method::kGaussian:
            return false;
        default:
            return true;
    }
}

bool uses_p(Method method) {
    switch (method) {
        case Method::kSimplicial:
        case Method::kSimplicialBorderline:
        case Method::kSimplicialSafeLevel:
        case Method::kSimplicialAdasyn:
            return true;
        default:
            return false;
    }
}

std::string_view to_string(SafeLevelFormula formula) {
    return formula == SafeLevelFormula::kInverse ? "inverse" : "plus-one";
}

SafeLevelFormula parse_safelevel_formula(std::string_view text) {
    if (text == "inverse") return SafeLevelFormula::kInverse;
    if (text == "plus-one") return SafeLevelFormula::kPlusOne;
    throw ParameterError("safe-level formula must be 'inverse' or 'plus-one', got '" +
                         std::string(text) + "'");
}

void SamplerConfig::validate() const {
    if (uses_k(method) && k < 1) throw ParameterError("k must be >= 1 for " + std::string(to_string(method)));
    if (uses_p(method) && !p.is_maximal()) {
        if (p.value() < 1) throw ParameterError("p must be >= 1 or 'max'");
        if (p.value() > k) {
            throw ParameterError("p=" + std::to_string(p.value()) + " exceeds k=" +
                                 std::to_string(k) + "; need 1 <= p <= k or p='max'");
        }
    }
}

std::vector<double> sample_dirichlet(std::span<const double> alpha, Rng& rng) {
    if (alpha.empty()) throw ParameterError("dirichlet: empty concentration vector");
    for (double a : alpha) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw ParameterError("dirichlet: every alpha must be finite and > 0, got " +
                                 std::to_string(a));
        }
    }
    std::vector<double> lambda(alpha.size());
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double a = alpha[i];
        double g;
        if (a >= 1.0) {
            g = std::gamma_distribution<double>(a, 1.0)(rng);
        } else {
            // Gamma(a) = Gamma(a + 1) * U^(1/a)
            const double boosted = std::gamma_distribution<double>(a + 1.0, 1.0)(rng);
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            g = boosted * std::pow(u, 1.0 / a);
        }
        lambda[i] = g;
        total += g;
    }
    if (!(total > 0.0)) {
        std::fill(lambda.begin(), lambda.end(), 1.0 / static_cast<double>(lambda.size()));
        return lambda;
    }
    for (double& l : lambda) l /= total;
    return lambda;
}

std::vector<double> barycentric_to_point(std::span<const double> lambda, const PointSet& vertices) {
    if (lambda.size() != vertices.rows()) {
        throw ParameterError("barycentric: " + std::to_string(lambda.size()) +
                             " coordinates for " + std::to_string(vertices.rows()) + " vertices");
    }
    std::vector<double> point(vertices.cols(), 0.0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const auto x = vertices.row(i);
        for (std::size_t j = 0; j < point.size(); ++j) point[j] += lambda[i] * x[j];
    }
    return point;
}

std::vector<double> project_to_probability_simplex(std::span<const double> v) {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        cumulative += sorted[j];
        const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (sorted[j] - candidate > 0.0) theta = candidate;
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
    return out;
}

double distance_to_simplex(std::span<const double> q, const PointSet& vertices) {
    const std::size_t s = vertices.rows();
    const std::size_t d = vertices.cols();
    if (s == 0) throw ParameterError("distance to simplex: no vertices");
    if (q.size() != d) {
        throw ParameterError("distance to simplex: query has " + std::to_string(q.size()) +
                             " coordinates, vertices have " + std::to_string(d));
    }
    // Shift so the query is the origin: minimize |sum lambda_i y_i|^2.
    PointSet shifted(s, d);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < d; ++j) shifted(i, j) = vertices(i, j) - q[j];
    }
    std::vector<double> gram(s * s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a; b < s; ++b) {
            double dot = 0.0;
            for (std::size_t j = 0; j < d; ++j) dot += shifted(a, j) * shifted(b, j);
            gram[a * s + b] = dot;
            gram[b * s + a] = dot;
        }
    }
    // Gershgorin bound on the largest eigenvalue of the Gram matrix.
    double lipschitz = 0.0;
    for (std::size_t a = 0; a < s; ++a) {
        double row_sum = 0.0;
        for (std::size_t b = 0; b < s; ++b) row_sum += std::abs(gram[a * s + b]);
        lipschitz = std::max(lipschitz, row_sum);
    }
    if (lipschitz == 0.0) return 0.0;
    const double step = 1.0 / lipschitz;

    constexpr double kTolerance = 1e-10;
    constexpr int kMaxIterations = 10'000;
    std::vector<double> lambda(s, 1.0 / static_cast<double>(s));
    std::vector<double> trial(s);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        for (std::size_t a = 0; a < s; ++a) {
            double grad = 0.0;
            for (std::size_t b = 0; b < s; ++b) grad += gram[a * s + b] * lambda[b];
            trial[a] = lambda[a] - step * grad;
        }
        auto next = project_to_probability_simplex(trial);
        double change = 0.0;
        for (std::size_t a = 0; a < s; ++a) change = std::max(change, std::abs(next[a] - lambda[a]));
        lambda = std::move(next);
        if (change < kTolerance) break;
    }
    double sq = 0.0;
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = 0; b < s; ++b) sq += lambda[a] * gram[a * s + b] * lambda[b];
    }
    return std::sqrt(std::max(sq, 0.0));
}

std::vector<Simplex> MinorityModel::row_simplices() const {
    std::vector<Simplex> out;
    out.reserve(skeleton.maximal_simplices.size());
    for (const auto& s : skeleton.maximal_simplices) {
        std::vector<VertexId> ids;
        ids.reserve(s.size());
        // rows is ascending, so the mapped ids stay ascending.
        for (VertexId v : s.vertices()) ids.push_back(rows[v]);
        out.emplace_back(std::move(ids));
    }
    return out;
}

MinorityModel build_minority_model(const Dataset& ds, std::size_t k, SimplexDim p,
                                   const GraphOptions& options) {
    const std::size_t n_plus = ds.n_minority();
    if (n_plus < 2) {
        throw ParameterError("minority model needs at least 2 minority points, got " +
                             std::to_string(n_plus));
    }
    if (k < 1) throw ParameterError("k must be >= 1");
    MinorityModel model;
    const auto minority = ds.minority_indices();
    model.rows.assign(minority.begin(), minority.end());
    model.k_used = std::min(k, n_plus - 1);
    model.k_clamped = model.k_used != k;
    const PointSet points = ds.features().select(minority);
    model.graph = knn_graph(points, model.k_used, options.symmetrization);
    model.skeleton = p_skeleton(model.graph, p, options.subdivision_cap);
    return model;
}

double mean_model_distance(const PointSet& majority, const PointSet& minority, std::size_t k,
                           SimplexDim p, const GraphOptions& options) {
    if (majority.empty()) throw ParameterError("mean model distance: no majority points");
    std::vector<Simplex> simplices;
    if (minority.rows() == 1) {
        simplices.emplace_back(std::vector<VertexId>{0});
    } else {
        const auto graph = knn_graph(minority, k, options.symmetrization);
        simplices = p_skeleton(graph, p, options.subdivision_cap).maximal_simplices;
    }
    std::vector<PointSet> vertex_sets;
    vertex_sets.reserve(simplices.size());
    for (const auto& s : simplices) {
        std::vector<std::size_t> ids(s.vertices().begin(), s.vertices().end());
        vertex_sets.push_back(minority.select(ids));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < majority.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& verts : vertex_sets) {
            best = std::min(best, distance_to_simplex(majority.row(i), verts));
        }
        total += best;
    }
    return total / static_cast<double>(majority.rows());
}

SyntheticBatch sample_from_simplices(const PointSet& features, std::span<const Simplex> candidates,
                                     std::size_t m, std::uint64_t seed,
                                     std::span<const double> selection_weights,
                                     const AlphaFn& alphas) {
    if (candidates.empty() && m > 0) throw ParameterError("no candidate simplices to sample from");
    if (!selection_weights.empty() && selection_weights.size() != candidates.size()) {
        throw ParameterError("selection weights do not match the candidate count");
    }
    std::vector<double> cumulative;
    if (!selection_weights.empty()) {
        cumulative.resize(selection_weights.size());
        std::partial_sum(selection_weights.begin(), selection_weights.end(), cumulative.begin());
        if (!(cumulative.back() > 0.0)) throw ParameterError("selection weights sum to zero");
    }

    SyntheticBatch batch;
    batch.points = PointSet(m, features.cols());
    batch.provenance.resize(m);
    std::vector<double> ones;
    for (std::size_t i = 0; i < m; ++i) {
        Rng rng = point_stream(seed, i);
        std::size_t pick;
        if (cumulative.empty()) {
            pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng);
        } else {
            const double u = std::uniform_real_distribution<double>(0.0, cumulative.back())(rng);
            pick = static_cast<std::size_t>(
                std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            pick = std::min(pick, candidates.size() - 1);
        }
        const Simplex& simplex = candidates[pick];
        std::vector<double> alpha;
        if (alphas) {
            alpha = alphas(simplex);
        } else {
            alpha.assign(simplex.size(), 1.0);
        }
        auto lambda = sample_dirichlet(alpha, rng);

        auto out = batch.points.row(i);
        std::fill(out.begin(), out.end(), 0.0);
        const auto verts = simplex.vertices();
        for (std::size_t v = 0; v < verts.size(); ++v) {
            const auto x = features.row(verts[v]);
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += lambda[v] * x[j];
        }
        auto& prov = batch.provenance[i];
        prov.vertices.assign(verts.begin(), verts.end());
        prov.lambda = std::move(lambda);
        prov.source = ProvenanceSource::kSimplex;
    }
    return batch;
}

namespace {

void require_minority(const Dataset& ds) {
    if (ds.n_minority() < 1) throw ParameterError("dataset has no minority points");
}

SyntheticBatch random_fallback(const Dataset& ds, std::size_t k, std::size_t m,
                               std::uint64_t seed) {
    auto batch = oversample_random(ds, m, seed);
    batch.fell_back_to_random = true;
    batch.k_requested = k;
    return batch;
}

}  // namespace

SyntheticBatch oversample_random(const Dataset& ds, std::size_t m, std::uint64_t seed) {
    require_minority(ds);
    std::vector<Simplex> singles;
    for (std::size_t row : ds.minority_indices()) {
        singles.emplace_back(std::vector<VertexId>{static_cast<VertexId>(row)});
    }
    return sample_from_simplices(ds.features(), singles, m, seed);
}

SyntheticBatch oversample_global(const Dataset& ds, std::size_t m, std::uint64_t seed) {
    require_minority(ds);
    const std::size_t n_plus = ds.n_minority();
    if (n_plus < 2) return random_fallback(ds, 0, m, seed);
    const auto minority = ds.minority_indices();
    SyntheticBatch batch;
    batch.points = PointSet(m, ds.dim());
    batch.provenance.resize(m);
    const std::array<double, 2> alpha{1.0, 1.0};
    for (std::size_t i = 0; i < m; ++i) {
        Rng rng = point_stream(seed, i);
        const std::size_t a = std::uniform_int_distribution<std::size_t>(0, n_plus - 1)(rng);
        std::size_t b = std::uniform_int_distribution<std::size_t>(0, n_plus - 2)(rng);
        if (b >= a) ++b;
        const auto lo = static_cast<VertexId>(minority[std::min(a, b)]);
        const auto hi = static_cast<VertexId>(minority[std::max(a, b)]);
        auto lambda = sample_dirichlet(alpha, rng);
        auto out = batch.points.row(i);
        const auto x = ds.features().row(lo);
        const auto y = ds.features().row(hi);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = lambda[0] * x[j] + lambda[1] * y[j];
        batch.provenance[i] = Provenance{{lo, hi}, std::move(lambda), ProvenanceSource::kSimplex};
    }
    return batch;
}

SyntheticBatch oversample_gaussian(const Dataset& ds, std::size_t m, std::uint64_t seed) {
    require_minority(ds);
    if (ds.n_minority() < 2) return random_fallback(ds, 0, m, seed);
    const std::size_t d = ds.dim();
    const auto minority = ds.minority_indices();
    const double count = static_cast<double>(minority.size());

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t row : minority) {
        const auto x = ds.features().row(row);
        for (std::size_t j = 0; j < d; ++j) mean[static_cast<Eigen::Index>(j)] += x[j];
    }
    mean /= count;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    for (std::size_t row : minority) {
        const auto x = ds.features().row(row);
        Eigen::VectorXd centered(static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j) {
            centered[static_cast<Eigen::Index>(j)] = x[j] - mean[static_cast<Eigen::Index>(j)];
        }
        cov += centered * centered.transpose();
    }
    cov /= count;
    const double ridge = 1e-6 * cov.trace() / static_cast<double>(d) + 1e-12;
    cov.diagonal().array() += ridge;
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw ParameterError("gaussian: covariance is not positive definite after ridge");
    }
    const Eigen::MatrixXd factor = llt.matrixL();

    SyntheticBatch batch;
    batch.points = PointSet(m, d);
    batch.provenance.resize(m);
    Eigen::VectorXd z(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < m; ++i) {
        Rng rng = point_stream(seed, i);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = normal(rng);
        const Eigen::VectorXd x = mean + factor * z;
        auto out = batch.points.row(i);
        for (std::size_t j = 0; j < d; ++j) out[j] = x[static_cast<Eigen::Index>(j)];
        batch.provenance[i].source = ProvenanceSource::kDistribution;
    }
    return batch;
}

SyntheticBatch oversample_smote(const Dataset& ds, std::size_t k, std::size_t m,
                                std::uint64_t seed, const GraphOptions& options) {
    return oversample_simplicial(ds, k, SimplexDim::of(1), m, seed, options);
}

SyntheticBatch oversample_simplicial(const Dataset& ds, std::size_t k, SimplexDim p,
                                     std::size_t m, std::uint64_t seed,
                                     const GraphOptions& options) {
    require_minority(ds);
    SamplerConfig check;
    check.k = k;
    check.p = p;
    check.validate();
    if (ds.n_minority() < 2) return random_fallback(ds, k, m, seed);
    const auto model = build_minority_model(ds, k, p, options);
    const auto candidates = model.row_simplices();
    auto batch = sample_from_simplices(ds.features(), candidates, m, seed);
    batch.k_requested = k;
    batch.k_used = model.k_used;
    batch.k_clamped = model.k_clamped;
    batch.symmetrization = options.symmetrization;
    return batch;
}

std::size_t target_count(const Dataset& ds, const SamplerConfig& cfg) {
    if (cfg.target_count) return *cfg.target_count;
    ds.require_imbalanced();
    return ds.n_majority() - ds.n_minority();
}

SyntheticBatch oversample(const Dataset& ds, const SamplerConfig& cfg) {
    cfg.validate();
    require_minority(ds);
    const std::size_t m = target_count(ds, cfg);
    switch (cfg.method) {
        case Method::kNone: {
            SyntheticBatch empty;
            empty.points = PointSet(0, ds.dim());
            return empty;
        }
        case Method::kRandom:
            return oversample_random(ds, m, cfg.seed);
        case Method::kGlobal:
            return oversample_global(ds, m, cfg.seed);
        case Method::kGaussian:
            return oversample_gaussian(ds, m, cfg.seed);
        case Method::kSmote:
            return oversample_smote(ds, cfg.k, m, cfg.seed, cfg.graph);
        case Method::kSimplicial:
            return oversample_simplicial(ds, cfg.k, cfg.p, m, cfg.seed, cfg.graph);
        case Method::kBorderline:
        case Method::kSimplicialBorderline:
            return oversample_borderline(ds, cfg.k, cfg.p, m, cfg.seed,
                                         cfg.method == Method::kSimplicialBorderline, cfg.graph);
        case Method::kSafeLevel:
        case Method::kSimplicialSafeLevel:
            return oversample_safelevel(ds, cfg.k, cfg.p, m, cfg.seed,
                                        cfg.method == Method::kSimplicialSafeLevel,
                                        cfg.safelevel_formula, cfg.graph);
        case Method::kAdasyn:
        case Method::kSimplicialAdasyn:
            return oversample_adasyn(ds, cfg.k, cfg.p, m, cfg.seed,
                                     cfg.method == Method::kSimplicialAdasyn, cfg.graph);
    }
    throw ParameterError("unhandled sampling method");
}

Dataset append_synthetic(const Dataset& ds, const SyntheticBatch& batch) {
    PointSet features = ds.features();
    std::vector<int> labels(ds.labels().begin(), ds.labels().end());
    for (std::size_t i = 0; i < batch.points.rows(); ++i) {
        features.append_row(batch.points.row(i));
        labels.push_back(kMinorityLabel);
    }
    return Dataset(std::move(features), std::move(labels));
}

}  // namespace ssmote
