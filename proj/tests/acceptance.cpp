// Acceptance suite: one PASS/FAIL line per numbered check. Exit status is
// nonzero when any gating check fails; check 9 is informational.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ssmote/evaluation.hpp"
#include "ssmote/report.hpp"
#include "ssmote/variants.hpp"

using namespace ssmote;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Records the first few failures of a check.
class Tally {
public:
    void fail(const std::string& what) {
        if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        return ok() ? "" : std::to_string(failures_) + " violation(s): " + notes_;
    }

private:
    std::size_t failures_ = 0;
    std::string notes_;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome projection_distances() {
    const auto start = Clock::now();
    const std::vector<double> origin{0, 0, 0};
    const double d1 = distance_to_simplex(origin, PointSet::from_rows({{1, 0, 0}, {0, 1, 0}}));
    const double d2 =
        distance_to_simplex(origin, PointSet::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = std::abs(d1 - 0.7071) < 1e-4 && std::abs(d2 - 0.5774) < 1e-4 && elapsed < 1.0;
    out.detail = "d1=" + fmt(d1) + " d2=" + fmt(d2) + " in " + fmt(elapsed, 3) + "s";
    return out;
}

Outcome clique_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(20240601);
    Tally tally;
    std::size_t graphs = 0;
    for (double prob : {0.2, 0.5, 0.8}) {
        for (std::size_t rep = 0; rep < 40; ++rep) {
            const std::size_t n = 1 + rep % 12;
            const auto g = oracle::random_graph(n, prob, rng);
            ++graphs;
            const auto tag = "n=" + std::to_string(n) + " prob=" + fmt(prob, 1);
            if (oracle::as_sets(maximal_cliques(g)) != oracle::skeleton(g, std::nullopt)) {
                tally.fail("maximal cliques " + tag);
            }
            for (std::size_t p : {1, 2}) {
                if (oracle::as_sets(p_skeleton(g, SimplexDim::of(p)).maximal_simplices) !=
                    oracle::skeleton(g, p + 1)) {
                    tally.fail("p=" + std::to_string(p) + " " + tag);
                }
            }
            if (oracle::as_sets(p_skeleton(g, SimplexDim::maximal()).maximal_simplices) !=
                oracle::skeleton(g, std::nullopt)) {
                tally.fail("p=max " + tag);
            }
        }
    }
    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = tally.ok() && elapsed < 30.0;
    out.detail = std::to_string(graphs) + " graphs in " + fmt(elapsed, 2) + "s " + tally.summary();
    return out;
}

struct RandomCase {
    Dataset data;
    SamplerConfig cfg;
};

// The 50 datasets shared by checks 3, 4 and 10.
std::vector<RandomCase> random_cases() {
    std::mt19937_64 rng(777);
    std::vector<RandomCase> cases;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t n_plus = std::uniform_int_distribution<std::size_t>(5, 50)(rng);
        const std::size_t n_minus =
            n_plus + std::uniform_int_distribution<std::size_t>(1, 60)(rng);
        const std::size_t d = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
        const double shift = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        RandomCase c{oracle::random_dataset(n_plus, n_minus, d, rng, shift), {}};
        c.cfg.k = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const std::size_t p = std::uniform_int_distribution<std::size_t>(1, c.cfg.k + 1)(rng);
        c.cfg.p = p > c.cfg.k ? SimplexDim::maximal() : SimplexDim::of(p);
        c.cfg.seed = rng();
        if (i % 5 == 4) c.cfg.target_count = 1 + i;
        cases.push_back(std::move(c));
    }
    return cases;
}

const std::vector<Method> kSamplers{
    Method::kRandom,     Method::kGlobal,      Method::kGaussian,
    Method::kSmote,      Method::kSimplicial,  Method::kBorderline,
    Method::kSimplicialBorderline, Method::kSafeLevel, Method::kSimplicialSafeLevel,
    Method::kAdasyn,     Method::kSimplicialAdasyn,
};

Outcome sampler_contracts(const std::vector<RandomCase>& cases) {
    Tally tally;
    std::size_t batches = 0;
    std::size_t skipped = 0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& ds = cases[c].data;
        for (Method method : kSamplers) {
            SamplerConfig cfg = cases[c].cfg;
            cfg.method = method;
            const std::string tag =
                "case " + std::to_string(c) + " " + std::string(to_string(method));
            SyntheticBatch a;
            try {
                a = oversample(ds, cfg);
            } catch (const EmptyBorderlineError&) {
                if (!borderline_subset(ds, cfg.k).empty()) tally.fail(tag + ": spurious empty");
                ++skipped;
                continue;
            }
            ++batches;
            const std::size_t m = cfg.target_count.value_or(ds.n_majority() - ds.n_minority());
            if (a.size() != m || a.points.rows() != m) tally.fail(tag + ": count");
            for (std::size_t i = 0; i < a.size(); ++i) {
                const auto& prov = a.provenance[i];
                if (prov.source != ProvenanceSource::kSimplex) continue;
                if (prov.lambda.size() != prov.vertices.size() || prov.vertices.empty()) {
                    tally.fail(tag + ": provenance shape");
                    continue;
                }
                double sum = 0.0;
                for (double l : prov.lambda) {
                    if (!(l >= 0.0 && l <= 1.0)) tally.fail(tag + ": lambda range");
                    sum += l;
                }
                if (std::abs(sum - 1.0) > 1e-12) tally.fail(tag + ": lambda sum");
                for (std::size_t j = 0; j < ds.dim(); ++j) {
                    double x = 0.0;
                    for (std::size_t v = 0; v < prov.vertices.size(); ++v) {
                        x += prov.lambda[v] * ds.features()(prov.vertices[v], j);
                    }
                    if (std::abs(x - a.points(i, j)) > 1e-9) tally.fail(tag + ": reconstruction");
                }
            }
            const auto b = oversample(ds, cfg);
            if (!(a.points == b.points)) tally.fail(tag + ": not deterministic");
        }
    }
    Outcome out;
    out.pass = tally.ok();
    out.detail = std::to_string(batches) + " batches, " + std::to_string(skipped) +
                 " with no borderline points " + tally.summary();
    return out;
}

Outcome smote_reduction(const std::vector<RandomCase>& cases) {
    Tally tally;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& ds = cases[c].data;
        const std::size_t k = cases[c].cfg.k;
        const auto model = build_minority_model(ds, k, SimplexDim::of(1));
        const auto minority = ds.minority_indices();
        const auto local = ds.features().select(minority);
        const auto graph = knn_graph(local, model.k_used);

        std::set<oracle::VertexSet> expected;
        std::vector<bool> touched(minority.size(), false);
        for (const auto& [u, v] : oracle::knn_edges(local, model.k_used)) {
            expected.insert({static_cast<VertexId>(minority[u]), static_cast<VertexId>(minority[v])});
            touched[u] = touched[v] = true;
        }
        for (std::size_t i = 0; i < minority.size(); ++i) {
            if (!touched[i]) expected.insert({static_cast<VertexId>(minority[i])});
        }
        std::set<oracle::VertexSet> module_edges;
        for (const auto& [u, v] : graph.edges()) {
            module_edges.insert({static_cast<VertexId>(minority[u]), static_cast<VertexId>(minority[v])});
        }
        for (VertexId v = 0; v < graph.n_vertices(); ++v) {
            if (graph.degree(v) == 0) module_edges.insert({static_cast<VertexId>(minority[v])});
        }
        const auto candidates = oracle::as_sets(model.row_simplices());
        const std::set<oracle::VertexSet> got(candidates.begin(), candidates.end());
        const std::string tag = "case " + std::to_string(c);
        if (got != expected) tally.fail(tag + ": candidates differ from brute-force knn edges");
        if (got != module_edges) tally.fail(tag + ": candidates differ from knn_graph edges");

        const auto batch = oversample_simplicial(ds, k, SimplexDim::of(1), 200, cases[c].cfg.seed);
        for (const auto& prov : batch.provenance) {
            if (got.count(prov.vertices) == 0) {
                tally.fail(tag + ": sampled outside candidates");
                break;
            }
        }
    }
    Outcome out;
    out.pass = tally.ok();
    out.detail = std::to_string(cases.size()) + " datasets " + tally.summary();
    return out;
}

Outcome dirichlet_moments() {
    constexpr std::size_t kDraws = 100'000;
    const std::vector<std::vector<double>> alphas{{1, 1}, {1, 1, 1}, {2, 1}, {5, 1, 1, 1}};
    Rng rng(4242);
    Tally tally;
    double worst = 0.0;
    double var_two = 0.0;
    for (const auto& alpha : alphas) {
        const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
        std::vector<double> sum(alpha.size(), 0.0);
        std::vector<double> sq(alpha.size(), 0.0);
        for (std::size_t i = 0; i < kDraws; ++i) {
            const auto l = sample_dirichlet(alpha, rng);
            for (std::size_t j = 0; j < l.size(); ++j) {
                sum[j] += l[j];
                sq[j] += l[j] * l[j];
            }
        }
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            const double target = alpha[j] / total;
            const double var = alpha[j] * (total - alpha[j]) / (total * total * (total + 1));
            const double z = std::abs(sum[j] / kDraws - target) / std::sqrt(var / kDraws);
            worst = std::max(worst, z);
            if (z > 3.0) tally.fail("alpha component " + std::to_string(j) + " z=" + fmt(z, 2));
        }
        if (alpha.size() == 2 && alpha[0] == 1 && alpha[1] == 1) {
            const double mean = sum[0] / kDraws;
            var_two = sq[0] / kDraws - mean * mean;
            if (std::abs(var_two - 1.0 / 12.0) > 0.005) tally.fail("variance " + fmt(var_two, 5));
        }
    }
    Outcome out;
    out.pass = tally.ok();
    out.detail = "max |z|=" + fmt(worst, 2) + " var(1,1)=" + fmt(var_two, 5) + " " + tally.summary();
    return out;
}

Outcome metric_oracles() {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> draw(0, 1000);
    Tally tally;
    double worst = 0.0;
    for (std::size_t i = 0; i < 10'000; ++i) {
        ConfusionCounts c;
        c.tp = draw(rng) % (i % 7 == 0 ? 1 : 1001);
        c.fp = draw(rng);
        c.tn = draw(rng) % (i % 11 == 0 ? 1 : 1001);
        c.fn = draw(rng);
        const double tp = c.tp, fp = c.fp, tn = c.tn, fn = c.fn;
        const double df = std::abs(f1_score(c) - oracle::f1(tp, fp, fn));
        const double dm = std::abs(mcc_score(c) - oracle::mcc(tp, tn, fp, fn));
        worst = std::max({worst, df, dm});
        if (df > 1e-12 || dm > 1e-12) tally.fail("quadruple " + std::to_string(i));
    }
    // Every prediction negative: tp = fp = 0.
    const std::vector<int> truth{1, 1, -1, -1, -1};
    const std::vector<int> none(5, kMajorityLabel);
    const auto c = confusion(truth, none);
    if (f1_score(c) != 0.0) tally.fail("f1 all-negative");
    if (mcc_score(c) != 0.0) tally.fail("mcc all-negative");
    ConfusionCounts empty;
    if (f1_score(empty) != 0.0 || mcc_score(empty) != 0.0) tally.fail("empty counts");
    Outcome out;
    out.pass = tally.ok();
    out.detail = "max abs diff " + fmt(worst, 17) + " " + tally.summary();
    return out;
}

Outcome synthetic_benchmark() {
    const auto start = Clock::now();
    constexpr std::uint64_t kSeed = 1;
    std::vector<NamedDataset> datasets;
    for (SyntheticShape shape : all_shapes()) {
        SyntheticSpec spec;
        spec.shape = shape;
        spec.seed = kSeed;
        datasets.push_back({std::string(to_string(shape)), generate_synthetic(spec)});
    }
    EvalOptions options;
    options.methods = {Method::kNone,  Method::kGaussian, Method::kRandom,
                       Method::kGlobal, Method::kSmote,    Method::kSimplicial};
    options.k_grid = {3, 4, 5, 6, 7, 8};
    options.p_grid = {SimplexDim::maximal()};
    CvConfig cv;
    cv.folds = 4;
    cv.repeats = 5;
    cv.seed = kSeed;
    const auto report = grid_search_eval(datasets, options, cv);
    const auto ranks = rank_methods(report, Metric::kF1);
    const double elapsed = seconds_since(start);

    std::map<Method, double> rank;
    for (std::size_t i = 0; i < options.methods.size(); ++i) rank[options.methods[i]] = ranks[i];
    const double moons = report.find("moons", Method::kSimplicial)->f1_mean;

    std::cout << format_report_text(report);
    Outcome out;
    out.pass = std::abs(moons - 0.9694) <= 0.04 &&
               rank[Method::kSimplicial] <= rank[Method::kGlobal] &&
               rank[Method::kSimplicial] <= rank[Method::kGaussian] && elapsed < 300.0 &&
               report.failure_count() == 0;
    out.detail = "moons simplicial F1=" + fmt(moons) + " ranks simplicial=" +
                 fmt(rank[Method::kSimplicial], 3) + " global=" + fmt(rank[Method::kGlobal], 3) +
                 " gaussian=" + fmt(rank[Method::kGaussian], 3) + " in " + fmt(elapsed, 1) + "s";
    return out;
}

Outcome variant_sanity() {
    Tally tally;
    std::mt19937_64 rng(31337);

    // Borderline restriction.
    std::size_t datasets = 0;
    while (datasets < 20) {
        const auto ds = oracle::random_dataset(
            std::uniform_int_distribution<std::size_t>(8, 30)(rng), 60,
            std::uniform_int_distribution<std::size_t>(2, 6)(rng), rng, 0.8);
        const std::size_t k = 5;
        const auto border = borderline_subset(ds, k);
        if (border.empty()) continue;
        ++datasets;
        const auto batch = oversample_borderline(ds, k, SimplexDim::maximal(), 300, rng(), true);
        for (const auto& prov : batch.provenance) {
            const bool touches = std::any_of(prov.vertices.begin(), prov.vertices.end(), [&](VertexId v) {
                return std::binary_search(border.begin(), border.end(), std::size_t{v});
            });
            if (!touches) tally.fail("borderline provenance outside B");
        }
    }

    // ADASYN selection frequencies; a small minority keeps the number of
    // simultaneous 3 s.e. comparisons low.
    const auto ds = oracle::random_dataset(12, 60, 2, rng, 1.0);
    const std::size_t k = 4;
    const auto simplices = build_minority_model(ds, k, SimplexDim::maximal()).row_simplices();
    const auto weights = adasyn_weights(compute_safety(ds, k), simplices);
    constexpr std::size_t kDraws = 100'000;
    const auto batch = oversample_adasyn(ds, k, SimplexDim::maximal(), kDraws, 5, true);
    std::map<oracle::VertexSet, double> freq;
    for (const auto& prov : batch.provenance) freq[prov.vertices] += 1.0;
    double worst = 0.0;
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        const oracle::VertexSet key(simplices[s].vertices().begin(), simplices[s].vertices().end());
        const double p = weights[s];
        const double se = std::sqrt(p * (1 - p) / kDraws);
        const double dev = std::abs(freq[key] / kDraws - p);
        if (se > 0) worst = std::max(worst, dev / se);
        if (dev > 3 * se + 1e-12) tally.fail("adasyn simplex " + std::to_string(s));
    }

    // Safe-level under uniform safety.
    const NeighborhoodSafety uniform(5, 6, {0, 1, 2, 3, 4, 5}, {5, 5, 5, 5, 5, 5});
    for (const Simplex& s : {Simplex({0, 1, 2}), Simplex({3, 5}), Simplex({4})}) {
        for (double a : safelevel_alphas(uniform, s)) {
            if (a != 1.0) tally.fail("uniform safety alpha != 1");
        }
    }
    const auto safe = Dataset(PointSet::from_rows({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0.5, 0.5},
                                                   {40, 40}, {40, 41}, {41, 40}, {41, 41},
                                                   {42, 42}, {42, 41}, {41, 42}}),
                              {1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1});
    if (!(oversample_safelevel(safe, 3, SimplexDim::maximal(), 100, 9, true).points ==
          oversample_simplicial(safe, 3, SimplexDim::maximal(), 100, 9).points)) {
        tally.fail("safe-level batch differs from plain sampler");
    }

    Outcome out;
    out.pass = tally.ok();
    out.detail = std::to_string(datasets) + " borderline datasets, " +
                 std::to_string(simplices.size()) + " adasyn simplices max |z|=" + fmt(worst, 2) +
                 " " + tally.summary();
    return out;
}

Outcome runtime_ratio() {
    double smote_time = 0.0;
    double simplicial_time = 0.0;
    for (SyntheticShape shape : all_shapes()) {
        SyntheticSpec spec;
        spec.shape = shape;
        spec.seed = 3;
        const auto ds = generate_synthetic(spec);
        const std::size_t m = ds.n_majority() - ds.n_minority();
        for (int rep = 0; rep < 20; ++rep) {
            auto start = Clock::now();
            oversample_smote(ds, 10, m, rep);
            smote_time += seconds_since(start);
            start = Clock::now();
            oversample_simplicial(ds, 10, SimplexDim::of(3), m, rep);
            simplicial_time += seconds_since(start);
        }
    }
    const double ratio = simplicial_time / smote_time;
    Outcome out;
    out.pass = ratio <= 3.0;
    out.detail = "simplicial/smote wall time = " + fmt(ratio, 2) + "x";
    return out;
}

Outcome safety_identity(const std::vector<RandomCase>& cases) {
    Tally tally;
    std::size_t points = 0;
    for (const auto& c : cases) {
        for (std::size_t k : {std::size_t{1}, c.cfg.k, c.data.size() - 1}) {
            const auto safety = compute_safety(c.data, k);
            for (std::size_t slot = 0; slot < safety.size(); ++slot) {
                ++points;
                if (safety.k_plus(slot) + safety.k_minus(slot) != k) tally.fail("k+ + k- != k");
            }
        }
    }
    Outcome out;
    out.pass = tally.ok();
    out.detail = std::to_string(points) + " minority points " + tally.summary();
    return out;
}

}  // namespace

int main() {
    struct Check {
        int id;
        const char* name;
        bool gating;
        std::function<Outcome()> run;
    };
    const auto cases = random_cases();
    const std::vector<Check> checks{
        {1, "projection distances", true, projection_distances},
        {2, "clique and skeleton oracle", true, clique_oracle},
        {3, "sampler contracts", true, [&] { return sampler_contracts(cases); }},
        {4, "p=1 candidate set", true, [&] { return smote_reduction(cases); }},
        {5, "dirichlet moments", true, dirichlet_moments},
        {6, "metric oracles", true, metric_oracles},
        {7, "synthetic benchmark", true, synthetic_benchmark},
        {8, "variant sanity", true, variant_sanity},
        {9, "running-time ratio", false, runtime_ratio},
        {10, "safety identity", true, [&] { return safety_identity(cases); }},
    };

    std::ostringstream lines;
    bool all_ok = true;
    for (const auto& check : checks) {
        Outcome outcome;
        try {
            outcome = check.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const char* status = outcome.pass ? "PASS" : (check.gating ? "FAIL" : "INFO-FAIL");
        lines << "[" << status << "] " << check.id << ". " << check.name << ": " << outcome.detail
              << '\n';
        std::cout << "[" << status << "] " << check.id << ". " << check.name << ": "
                  << outcome.detail << std::endl;
        if (check.gating && !outcome.pass) all_ok = false;
    }
    std::cout << "\nsummary\n" << lines.str();
    return all_ok ? 0 : 1;
}
