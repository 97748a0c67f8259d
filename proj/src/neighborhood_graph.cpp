#include "ssmote/neighborhood_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ssmote {

std::string_view to_string(Symmetrization mode) {
    return mode == Symmetrization::kUnion ? "union" : "mutual";
}

Symmetrization parse_symmetrization(std::string_view text) {
    if (text == "union") return Symmetrization::kUnion;
    if (text == "mutual") return Symmetrization::kMutual;
    throw ParameterError("symmetrization must be 'union' or 'mutual', got '" + std::string(text) +
                         "'");
}

NeighborhoodGraph::NeighborhoodGraph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)), adjacency_(n_vertices) {
    for (auto& [u, v] : edges_) {
        if (u == v) throw ParameterError("graph: self-loop at vertex " + std::to_string(u));
        if (u >= n_vertices_ || v >= n_vertices_) {
            throw ParameterError("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") out of range for " + std::to_string(n_vertices_) +
                                 " vertices");
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool NeighborhoodGraph::has_edge(VertexId u, VertexId v) const {
    if (u >= n_vertices_ || v >= n_vertices_) return false;
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

NeighborhoodGraph NeighborhoodGraph::induced(std::span<const VertexId> keep) const {
    std::vector<std::int64_t> remap(n_vertices_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> out;
    for (const auto& [u, v] : edges_) {
        if (remap[u] >= 0 && remap[v] >= 0) {
            out.emplace_back(static_cast<VertexId>(remap[u]), static_cast<VertexId>(remap[v]));
        }
    }
    return NeighborhoodGraph(keep.size(), std::move(out));
}

PointSet pairwise_distances(const PointSet& points) {
    const std::size_t n = points.rows();
    PointSet dist(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean_distance(points.row(i), points.row(j));
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
}

std::vector<std::size_t> nearest_neighbors(const PointSet& reference, std::span<const double> query,
                                           std::size_t k, std::optional<std::size_t> exclude) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(reference.rows());
    for (std::size_t j = 0; j < reference.rows(); ++j) {
        if (exclude && *exclude == j) continue;
        ranked.emplace_back(euclidean_distance(query, reference.row(j)), j);
    }
    k = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
    return out;
}

std::vector<std::vector<VertexId>> knn_lists(const PointSet& points, std::size_t k) {
    const std::size_t n = points.rows();
    if (k < 1 || k + 1 > n) {
        throw ParameterError("knn: k=" + std::to_string(k) + " outside valid interval [1, " +
                             std::to_string(n == 0 ? 0 : n - 1) + "] for " + std::to_string(n) +
                             " points");
    }
    std::vector<std::vector<VertexId>> lists(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : nearest_neighbors(points, points.row(i), k, i)) {
            lists[i].push_back(static_cast<VertexId>(j));
        }
    }
    return lists;
}

NeighborhoodGraph knn_graph(const PointSet& points, std::size_t k, Symmetrization mode) {
    const auto lists = knn_lists(points, k);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < lists.size(); ++i) {
        const auto u = static_cast<VertexId>(i);
        for (VertexId v : lists[i]) {
            if (mode == Symmetrization::kMutual) {
                const auto& back = lists[v];
                if (u < v && std::find(back.begin(), back.end(), u) != back.end()) {
                    edges.emplace_back(u, v);
                }
            } else {
                edges.emplace_back(std::min(u, v), std::max(u, v));
            }
        }
    }
    return NeighborhoodGraph(points.rows(), std::move(edges));
}

NeighborhoodGraph epsilon_graph(const PointSet& points, double eps) {
    if (!(eps >= 0.0)) {
        throw ParameterError("epsilon graph: eps must be >= 0, got " + std::to_string(eps));
    }
    const std::size_t n = points.rows();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (euclidean_distance(points.row(i), points.row(j)) <= eps) {
                edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
            }
        }
    }
    return NeighborhoodGraph(n, std::move(edges));
}

}  // namespace ssmote
