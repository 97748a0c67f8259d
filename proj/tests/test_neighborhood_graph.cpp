#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ssmote/neighborhood_graph.hpp"

using namespace ssmote;

namespace {

PointSet line(std::initializer_list<double> xs) {
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    return PointSet::from_rows(rows);
}

std::set<std::pair<VertexId, VertexId>> edge_set(const NeighborhoodGraph& g) {
    return {g.edges().begin(), g.edges().end()};
}

}  // namespace

TEST_CASE("pairwise distances on small inputs") {
    const auto d1 = pairwise_distances(line({0, 3}));
    CHECK(d1(0, 0) == 0.0);
    CHECK(d1(0, 1) == 3.0);
    CHECK(d1(1, 0) == 3.0);

    const auto d2 = pairwise_distances(PointSet::from_rows({{0, 0}, {3, 4}}));
    CHECK(d2(0, 1) == doctest::Approx(5.0));
    CHECK(d2(1, 0) == doctest::Approx(5.0));
}

TEST_CASE("pairwise distances match a double loop") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    PointSet ps(10, 3);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 3; ++j) ps(i, j) = normal(rng);
    }
    const auto d = pairwise_distances(ps);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = 0; j < 10; ++j) {
            CHECK(d(i, j) == doctest::Approx(oracle::distance(ps, i, j)).epsilon(1e-14));
        }
    }
}

TEST_CASE("knn graph on tiny and collinear inputs") {
    CHECK(edge_set(knn_graph(line({0, 1}), 1)) ==
          std::set<std::pair<VertexId, VertexId>>{{0, 1}});
    CHECK(edge_set(knn_graph(line({0, 1, 2, 10}), 1)) ==
          std::set<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}, {2, 3}});
}

TEST_CASE("knn lists break distance ties by index") {
    const auto lists = knn_lists(line({0, 1, 2, 10}), 1);
    CHECK(lists[0] == std::vector<VertexId>{1});
    CHECK(lists[1] == std::vector<VertexId>{0});
    CHECK(lists[2] == std::vector<VertexId>{1});
    CHECK(lists[3] == std::vector<VertexId>{2});
}

TEST_CASE("mutual symmetrization keeps only reciprocal pairs") {
    const auto g = knn_graph(line({0, 1, 2, 10}), 1, Symmetrization::kMutual);
    CHECK(edge_set(g) == std::set<std::pair<VertexId, VertexId>>{{0, 1}});
}

TEST_CASE("k = n-1 gives the complete graph") {
    std::mt19937_64 rng(3);
    const auto ds = oracle::random_dataset(4, 5, 3, rng);
    const auto g = knn_graph(ds.features(), 8);
    CHECK(g.n_edges() == 9 * 8 / 2);
}

TEST_CASE("knn graph matches the brute-force ranking") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + trial % 15;
        const auto ds = oracle::random_dataset(n / 2, n - n / 2, 1 + trial % 4, rng);
        for (std::size_t k = 1; k < n; k += 2) {
            CHECK(edge_set(knn_graph(ds.features(), k)) == oracle::knn_edges(ds.features(), k));
            CHECK(edge_set(knn_graph(ds.features(), k, Symmetrization::kMutual)) ==
                  oracle::knn_edges(ds.features(), k, true));
        }
    }
}

TEST_CASE("knn graph rejects k outside [1, n-1]") {
    const auto ps = line({0, 1, 2});
    CHECK_THROWS_WITH_AS(knn_graph(ps, 0), doctest::Contains("[1, 2]"), ParameterError);
    CHECK_THROWS_AS(knn_graph(ps, 3), ParameterError);
}

TEST_CASE("epsilon graph") {
    CHECK(epsilon_graph(line({0, 1, 2, 10}), 0.0).n_edges() == 0);
    CHECK(edge_set(epsilon_graph(line({0, 1, 2, 10}), 1.5)) ==
          std::set<std::pair<VertexId, VertexId>>{{0, 1}, {1, 2}});
    CHECK(epsilon_graph(line({0, 1, 2, 10}), 10.0).n_edges() == 6);
    CHECK_THROWS_AS(epsilon_graph(line({0, 1}), -0.1), ParameterError);
}

TEST_CASE("graph construction normalizes and validates edges") {
    const NeighborhoodGraph g(3, {{2, 0}, {0, 2}, {1, 2}});
    CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.degree(2) == 2);
    CHECK_THROWS_AS(NeighborhoodGraph(3, {{1, 1}}), ParameterError);
    CHECK_THROWS_AS(NeighborhoodGraph(3, {{0, 3}}), ParameterError);
}

TEST_CASE("induced subgraph relabels vertices") {
    const NeighborhoodGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const std::vector<VertexId> keep{1, 2, 3};
    const auto h = g.induced(keep);
    CHECK(h.n_vertices() == 3);
    CHECK(h.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("symmetrization names round-trip") {
    CHECK(parse_symmetrization("union") == Symmetrization::kUnion);
    CHECK(parse_symmetrization(to_string(Symmetrization::kMutual)) == Symmetrization::kMutual);
    CHECK_THROWS_AS(parse_symmetrization("both"), ParameterError);
}

TEST_CASE("point sets reject non-finite values and ragged rows") {
    CHECK_THROWS_AS(PointSet::from_rows({{0, 1}, {2}}), ParameterError);
    PointSet ps = PointSet::from_rows({{0, std::nan("")}});
    CHECK_THROWS_AS(ps.validate_finite(), ParameterError);
}
