#include "ssmote/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace ssmote {

namespace {

struct ShapeName {
    SyntheticShape shape;
    std::string_view name;
};

constexpr ShapeName kShapeNames[] = {
    {SyntheticShape::kMoons, "moons"},
    {SyntheticShape::kSwissRolls, "swiss_rolls"},
    {SyntheticShape::kGaussianInCircle, "g_circle"},
    {SyntheticShape::kCircles, "circles"},
};

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Ring radii and spiral geometry for the synthetic shapes.
constexpr double kCirclesMinorityRadius = 0.78;
constexpr double kGaussianBlobSigma = 0.5;
constexpr double kSpiralTurns = 1.6;

std::vector<std::size_t> choose_rows(std::size_t available, std::size_t wanted, Rng& rng) {
    std::vector<std::size_t> rows(available);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    for (std::size_t i = 0; i < wanted; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(i, available - 1)(rng);
        std::swap(rows[i], rows[j]);
    }
    rows.resize(wanted);
    std::sort(rows.begin(), rows.end());
    return rows;
}

// Draws `count` points of one class; `position` maps a parameter in [0, 1].
template <typename F>
PointSet draw_class(std::size_t count, Rng& rng, F&& position) {
    PointSet out(count, 2);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
        const auto [x, y] = position(u, rng);
        out(i, 0) = x;
        out(i, 1) = y;
    }
    return out;
}

std::pair<double, double> ring_point(double radius, double width, Rng& rng) {
    const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    const double r =
        radius + std::uniform_real_distribution<double>(-0.5 * width, 0.5 * width)(rng);
    return {r * std::cos(angle), r * std::sin(angle)};
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace

std::string_view to_string(SyntheticShape shape) {
    for (const auto& entry : kShapeNames) {
        if (entry.shape == shape) return entry.name;
    }
    return "unknown";
}

SyntheticShape parse_shape(std::string_view text) {
    for (const auto& entry : kShapeNames) {
        if (entry.name == text) return entry.shape;
    }
    throw ParameterError("unknown dataset '" + std::string(text) +
                         "' (valid: moons, swiss_rolls, g_circle, circles)");
}

std::vector<SyntheticShape> all_shapes() {
    return {SyntheticShape::kMoons, SyntheticShape::kSwissRolls,
            SyntheticShape::kGaussianInCircle, SyntheticShape::kCircles};
}

double default_noise(SyntheticShape shape) {
    switch (shape) {
        case SyntheticShape::kMoons:
            return 0.15;
        case SyntheticShape::kSwissRolls:
            return 0.5;
        case SyntheticShape::kGaussianInCircle:
        case SyntheticShape::kCircles:
            return 0.2;
    }
    return 0.0;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_minority < 1 || spec.n_majority < 1) {
        throw ParameterError("synthetic data needs at least one point per class");
    }
    const double noise = spec.noise.value_or(default_noise(spec.shape));
    if (!(noise >= 0.0)) throw ParameterError("synthetic data: noise must be >= 0");
    Rng rng(derive_seed(spec.seed, {fnv1a(to_string(spec.shape))}));
    std::normal_distribution<double> jitter(0.0, 1.0);
    const std::size_t pool = std::max(spec.n_minority, spec.n_majority);
    constexpr double pi = std::numbers::pi;

    PointSet majority;
    PointSet minority;
    switch (spec.shape) {
        case SyntheticShape::kMoons: {
            majority = draw_class(pool, rng, [&](double u, Rng& g) {
                return std::pair{std::cos(pi * u) + noise * jitter(g),
                                 std::sin(pi * u) + noise * jitter(g)};
            });
            minority = draw_class(pool, rng, [&](double u, Rng& g) {
                return std::pair{1.0 - std::cos(pi * u) + noise * jitter(g),
                                 0.5 - std::sin(pi * u) + noise * jitter(g)};
            });
            break;
        }
        case SyntheticShape::kSwissRolls: {
            // Arm radius grows linearly with the angle; the second arm is the
            // first rotated by half a turn.
            const auto arm = [&](double offset) {
                return [&, offset](double u, Rng& g) {
                    const double t = pi * (1.0 + 2.0 * kSpiralTurns * u);
                    return std::pair{t * std::cos(t + offset) + noise * jitter(g),
                                     t * std::sin(t + offset) + noise * jitter(g)};
                };
            };
            majority = draw_class(pool, rng, arm(0.0));
            minority = draw_class(pool, rng, arm(pi));
            break;
        }
        case SyntheticShape::kGaussianInCircle: {
            majority = draw_class(pool, rng, [&](double, Rng& g) { return ring_point(1.0, noise, g); });
            minority = draw_class(pool, rng, [&](double, Rng& g) {
                return std::pair{kGaussianBlobSigma * jitter(g), kGaussianBlobSigma * jitter(g)};
            });
            break;
        }
        case SyntheticShape::kCircles: {
            majority = draw_class(pool, rng, [&](double, Rng& g) { return ring_point(1.0, noise, g); });
            minority = draw_class(pool, rng, [&](double, Rng& g) {
                return ring_point(kCirclesMinorityRadius, noise, g);
            });
            break;
        }
    }

    const auto keep_major = choose_rows(pool, spec.n_majority, rng);
    const auto keep_minor = choose_rows(pool, spec.n_minority, rng);
    PointSet features(0, 2);
    std::vector<int> labels;
    for (std::size_t row : keep_major) {
        features.append_row(majority.row(row));
        labels.push_back(kMajorityLabel);
    }
    for (std::size_t row : keep_minor) {
        features.append_row(minority.row(row));
        labels.push_back(kMinorityLabel);
    }
    return Dataset(std::move(features), std::move(labels));
}

std::vector<int> knn_classify(const Dataset& train, const PointSet& test, std::size_t k_clf) {
    if (train.size() == 0) throw ParameterError("knn classifier: empty training set");
    if (k_clf < 1) throw ParameterError("knn classifier: k must be >= 1");
    if (test.rows() > 0 && test.cols() != train.dim()) {
        throw ParameterError("knn classifier: test dimension " + std::to_string(test.cols()) +
                             " differs from training dimension " + std::to_string(train.dim()));
    }
    std::vector<int> out(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) {
        std::size_t minority_votes = 0;
        const auto nbrs = nearest_neighbors(train.features(), test.row(i), k_clf);
        for (std::size_t j : nbrs) {
            if (train.label(j) == kMinorityLabel) ++minority_votes;
        }
        out[i] = 2 * minority_votes >= nbrs.size() ? kMinorityLabel : kMajorityLabel;
    }
    return out;
}

ConfusionCounts confusion(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw ParameterError("confusion: label vectors differ in length");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] == kMinorityLabel;
        const bool guess = predicted[i] == kMinorityLabel;
        if (actual && guess) {
            ++c.tp;
        } else if (!actual && guess) {
            ++c.fp;
        } else if (!actual) {
            ++c.tn;
        } else {
            ++c.fn;
        }
    }
    return c;
}

double f1_score(const ConfusionCounts& c) {
    const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp + c.fn);
    return denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(c.tp) / denom;
}

double mcc_score(const ConfusionCounts& c) {
    const double tp = static_cast<double>(c.tp);
    const double tn = static_cast<double>(c.tn);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    const double a = tp + fp;
    const double b = tp + fn;
    const double d = tn + fp;
    const double e = tn + fn;
    if (a == 0.0 || b == 0.0 || d == 0.0 || e == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(a * b * d * e);
}

std::vector<Split> stratified_cv(std::span<const int> labels, std::size_t folds,
                                 std::size_t repeats, std::uint64_t seed) {
    if (folds < 2) throw ParameterError("cross-validation needs at least 2 folds");
    std::vector<std::size_t> minority;
    std::vector<std::size_t> majority;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == kMinorityLabel ? minority : majority).push_back(i);
    }
    for (const auto* cls : {&minority, &majority}) {
        if (cls->size() < folds) {
            throw ParameterError("cross-validation: a class has " + std::to_string(cls->size()) +
                                 " rows, fewer than " + std::to_string(folds) + " folds");
        }
    }
    std::vector<Split> splits;
    splits.reserve(folds * repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
        Rng rng(derive_seed(seed, {r}));
        std::vector<std::size_t> fold_of(labels.size());
        std::size_t offset = 0;
        for (auto cls : {minority, majority}) {
            for (std::size_t i = cls.size(); i > 1; --i) {
                const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
                std::swap(cls[i - 1], cls[j]);
            }
            for (std::size_t i = 0; i < cls.size(); ++i) fold_of[cls[i]] = (offset + i) % folds;
            offset = (offset + cls.size()) % folds;
        }
        for (std::size_t f = 0; f < folds; ++f) {
            Split split;
            split.repeat = r;
            split.fold = f;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                (fold_of[i] == f ? split.test : split.train).push_back(i);
            }
            splits.push_back(std::move(split));
        }
    }
    return splits;
}

Standardizer Standardizer::fit(const PointSet& train) {
    Standardizer s;
    const std::size_t d = train.cols();
    s.mean_.assign(d, 0.0);
    s.scale_.assign(d, 1.0);
    if (train.rows() == 0) return s;
    const double n = static_cast<double>(train.rows());
    for (std::size_t i = 0; i < train.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) s.mean_[j] += train(i, j);
    }
    for (double& m : s.mean_) m /= n;
    std::vector<double> var(d, 0.0);
    for (std::size_t i = 0; i < train.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = train(i, j) - s.mean_[j];
            var[j] += diff * diff;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(var[j] / n);
        s.scale_[j] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

PointSet Standardizer::transform(const PointSet& points) const {
    PointSet out = points;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = (out(i, j) - mean_[j]) / scale_[j];
    }
    return out;
}

std::vector<std::size_t> default_k_grid(std::size_t n_minority, std::size_t dim) {
    const double upper = std::ceil(std::cbrt(static_cast<double>(n_minority)) +
                                   std::log(static_cast<double>(std::max<std::size_t>(dim, 1))));
    std::vector<std::size_t> grid;
    for (std::size_t k = 3; static_cast<double>(k) <= upper; k += 2) grid.push_back(k);
    if (grid.empty()) grid.push_back(3);
    return grid;
}

std::vector<SimplexDim> default_p_grid(std::size_t k) {
    std::vector<SimplexDim> grid;
    for (std::size_t p = 3; p <= k; ++p) grid.push_back(SimplexDim::of(p));
    if (grid.empty()) grid.push_back(SimplexDim::of(std::max<std::size_t>(k, 1)));
    return grid;
}

std::string_view to_string(Metric metric) { return metric == Metric::kF1 ? "f1" : "mcc"; }

const EvalCell* EvalReport::find(std::string_view dataset, Method method) const {
    for (const auto& cell : cells) {
        if (cell.dataset == dataset && cell.method == method) return &cell;
    }
    return nullptr;
}

std::size_t EvalReport::failure_count() const {
    std::size_t total = 0;
    for (const auto& cell : cells) total += cell.diagnostics.size();
    return total;
}

namespace {

struct GridPoint {
    std::optional<std::size_t> k;
    std::optional<SimplexDim> p;
};

std::vector<GridPoint> grid_for(Method method, const EvalOptions& options,
                                std::size_t n_minority, std::size_t dim) {
    if (!uses_k(method)) return {GridPoint{}};
    const auto k_grid = options.k_grid.empty() ? default_k_grid(n_minority, dim) : options.k_grid;
    std::vector<GridPoint> grid;
    for (std::size_t k : k_grid) {
        if (!uses_p(method)) {
            grid.push_back({k, std::nullopt});
            continue;
        }
        const auto p_grid = options.p_grid.empty() ? default_p_grid(k) : options.p_grid;
        for (const auto& p : p_grid) {
            if (!p.is_maximal() && p.value() > k) continue;
            grid.push_back({k, p});
        }
    }
    return grid;
}

std::string describe(const GridPoint& g) {
    std::string out;
    if (g.k) out += " k=" + std::to_string(*g.k);
    if (g.p) out += " p=" + g.p->to_string();
    return out;
}

struct FoldScore {
    double f1 = 0.0;
    double mcc = 0.0;
    std::optional<std::string> failure;
};

// Standardize on train, oversample, classify test.
FoldScore score_fold(const Dataset& ds, const std::vector<std::size_t>& train_rows,
                     const std::vector<std::size_t>& test_rows, Method method,
                     const GridPoint& g, const EvalOptions& options, std::size_t k_clf,
                     std::uint64_t seed) {
    const Dataset raw_train = ds.subset(train_rows);
    const auto scaler = Standardizer::fit(raw_train.features());
    Dataset train(scaler.transform(raw_train.features()),
                  std::vector<int>(raw_train.labels().begin(), raw_train.labels().end()));
    const PointSet test = scaler.transform(ds.features().select(test_rows));

    FoldScore score;
    if (method != Method::kNone) {
        SamplerConfig cfg;
        cfg.method = method;
        cfg.k = g.k.value_or(5);
        cfg.p = g.p.value_or(SimplexDim::maximal());
        cfg.seed = seed;
        cfg.graph = options.graph;
        cfg.safelevel_formula = options.safelevel_formula;
        try {
            train = append_synthetic(train, oversample(train, cfg));
        } catch (const std::exception& e) {
            score.failure = e.what();
        }
    }
    const auto predicted = knn_classify(train, test, k_clf);
    std::vector<int> truth(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i) truth[i] = ds.label(test_rows[i]);
    const auto counts = confusion(truth, predicted);
    score.f1 = f1_score(counts);
    score.mcc = mcc_score(counts);
    return score;
}

struct ConfigResult {
    std::vector<double> f1;
    std::vector<double> mcc;
    std::vector<std::string> failures;
};

ConfigResult run_config(const Dataset& ds, const std::vector<Split>& splits, Method method,
                        const GridPoint& g, const EvalOptions& options, std::size_t k_clf,
                        std::uint64_t method_seed) {
    ConfigResult result;
    for (const auto& split : splits) {
        const auto score = score_fold(ds, split.train, split.test, method, g, options, k_clf,
                                      derive_seed(method_seed, {split.repeat, split.fold}));
        result.f1.push_back(score.f1);
        result.mcc.push_back(score.mcc);
        if (score.failure) {
            result.failures.push_back("repeat " + std::to_string(split.repeat) + " fold " +
                                      std::to_string(split.fold) + describe(g) + ": " +
                                      *score.failure);
        }
    }
    return result;
}

std::size_t argmax_mean(const std::vector<ConfigResult>& results) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (mean(results[i].f1) > mean(results[best].f1)) best = i;
    }
    return best;
}

EvalCell evaluate_cell(const NamedDataset& named, Method method, const EvalOptions& options,
                       const CvConfig& cfg) {
    const Dataset& ds = named.data;
    const std::uint64_t data_key = fnv1a(named.name);
    const auto splits = stratified_cv(ds.labels(), cfg.folds, cfg.repeats,
                                      derive_seed(cfg.seed, {data_key}));
    const std::uint64_t method_seed =
        derive_seed(cfg.seed, {data_key, fnv1a(to_string(method))});
    const auto grid = grid_for(method, options, ds.n_minority(), ds.dim());

    EvalCell cell;
    cell.dataset = named.name;
    cell.method = method;
    cell.configs_evaluated = grid.size();

    if (!cfg.nested) {
        std::vector<ConfigResult> results;
        results.reserve(grid.size());
        for (const auto& g : grid) {
            results.push_back(run_config(ds, splits, method, g, options, cfg.k_clf, method_seed));
        }
        const std::size_t best = argmax_mean(results);
        cell.f1_mean = mean(results[best].f1);
        cell.f1_std = stddev(results[best].f1);
        cell.mcc_mean = mean(results[best].mcc);
        cell.mcc_std = stddev(results[best].mcc);
        cell.best_k = grid[best].k;
        cell.best_p = grid[best].p;
        cell.diagnostics = results[best].failures;
        return cell;
    }

    std::vector<double> f1;
    std::vector<double> mcc;
    std::vector<std::size_t> chosen_count(grid.size(), 0);
    for (const auto& outer : splits) {
        const Dataset inner_ds = ds.subset(outer.train);
        const auto inner_splits =
            stratified_cv(inner_ds.labels(), cfg.inner_folds, cfg.inner_repeats,
                          derive_seed(cfg.seed, {data_key, outer.repeat, outer.fold}));
        std::vector<ConfigResult> inner;
        for (const auto& g : grid) {
            inner.push_back(run_config(inner_ds, inner_splits, method, g, options, cfg.k_clf,
                                       derive_seed(method_seed, {outer.repeat, outer.fold})));
        }
        const std::size_t best = argmax_mean(inner);
        ++chosen_count[best];
        const auto score = score_fold(ds, outer.train, outer.test, method, grid[best], options,
                                      cfg.k_clf, derive_seed(method_seed, {outer.repeat, outer.fold}));
        f1.push_back(score.f1);
        mcc.push_back(score.mcc);
        if (score.failure) {
            cell.diagnostics.push_back("repeat " + std::to_string(outer.repeat) + " fold " +
                                       std::to_string(outer.fold) + describe(grid[best]) + ": " +
                                       *score.failure);
        }
    }
    const auto mode = static_cast<std::size_t>(
        std::max_element(chosen_count.begin(), chosen_count.end()) - chosen_count.begin());
    cell.f1_mean = mean(f1);
    cell.f1_std = stddev(f1);
    cell.mcc_mean = mean(mcc);
    cell.mcc_std = stddev(mcc);
    cell.best_k = grid[mode].k;
    cell.best_p = grid[mode].p;
    return cell;
}

}  // namespace

EvalReport grid_search_eval(std::span<const NamedDataset> datasets, const EvalOptions& options,
                            const CvConfig& cfg) {
    if (options.methods.empty()) throw ParameterError("grid search: no methods selected");
    EvalReport report;
    report.methods = options.methods;
    report.k_clf = cfg.k_clf;
    report.symmetrization = options.graph.symmetrization;
    report.seed = cfg.seed;
    for (const auto& named : datasets) {
        report.datasets.push_back(named.name);
        for (Method method : options.methods) {
            report.cells.push_back(evaluate_cell(named, method, options, cfg));
        }
    }
    return report;
}

std::vector<double> rank_scores(const std::vector<std::vector<double>>& scores) {
    if (scores.empty()) return {};
    const std::size_t n_methods = scores.front().size();
    std::vector<double> total(n_methods, 0.0);
    for (const auto& row : scores) {
        if (row.size() != n_methods) throw ParameterError("rank: ragged score table");
        std::vector<std::size_t> order(n_methods);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
        std::size_t i = 0;
        while (i < n_methods) {
            std::size_t j = i;
            while (j + 1 < n_methods && row[order[j + 1]] == row[order[i]]) ++j;
            // positions i..j tie; ranks are 1-based
            const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t t = i; t <= j; ++t) total[order[t]] += shared;
            i = j + 1;
        }
    }
    for (double& t : total) t /= static_cast<double>(scores.size());
    return total;
}

std::vector<double> rank_methods(const EvalReport& report, Metric metric) {
    std::vector<std::vector<double>> table;
    std::vector<std::string> missing;
    for (const auto& dataset : report.datasets) {
        std::vector<double> row;
        for (Method method : report.methods) {
            const EvalCell* cell = report.find(dataset, method);
            if (!cell) {
                missing.push_back(dataset + "/" + std::string(to_string(method)));
                continue;
            }
            row.push_back(metric == Metric::kF1 ? cell->f1_mean : cell->mcc_mean);
        }
        table.push_back(std::move(row));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw ParameterError("rank: missing report cells: " + list);
    }
    return rank_scores(table);
}

}  // namespace ssmote
