#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ssmote/point_set.hpp"

namespace ssmote {

using VertexId = std::uint32_t;

/// Undirected edge stored with first < second.
using Edge = std::pair<VertexId, VertexId>;

/// How the directed k-nearest relation is turned into an undirected graph.
enum class Symmetrization {
    kUnion,   ///< edge if either endpoint lists the other
    kMutual,  ///< edge only if both endpoints list each other
};

std::string_view to_string(Symmetrization mode);
Symmetrization parse_symmetrization(std::string_view text);

/**
 * Simple undirected graph on vertices 0..n-1.
 *
 * Edges are normalized on construction: endpoints ordered, duplicates
 * removed, list sorted lexicographically. Self-loops and out-of-range
 * endpoints are rejected.
 */
class NeighborhoodGraph {
public:
    NeighborhoodGraph() = default;
    NeighborhoodGraph(std::size_t n_vertices, std::vector<Edge> edges);

    std::size_t n_vertices() const { return n_vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t n_edges() const { return edges_.size(); }

    /// Sorted neighbor list of v.
    std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
    bool has_edge(VertexId u, VertexId v) const;

    /// Subgraph induced by `keep` (ascending ids); vertex i of the result is keep[i].
    NeighborhoodGraph induced(std::span<const VertexId> keep) const;

    bool operator==(const NeighborhoodGraph& other) const {
        return n_vertices_ == other.n_vertices_ && edges_ == other.edges_;
    }

private:
    std::size_t n_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

/// Full n x n Euclidean distance matrix.
PointSet pairwise_distances(const PointSet& points);

/**
 * Indices of the k rows of `reference` closest to `query`, nearest first.
 *
 * Equal distances are ordered by ascending row index. `exclude` removes one
 * row from consideration (used to skip the query point itself).
 */
std::vector<std::size_t> nearest_neighbors(const PointSet& reference, std::span<const double> query,
                                           std::size_t k,
                                           std::optional<std::size_t> exclude = std::nullopt);

/// Directed k-nearest lists for every row, self excluded, index tie-break.
std::vector<std::vector<VertexId>> knn_lists(const PointSet& points, std::size_t k);

/// Symmetrized k-nearest-neighbor graph. Requires 1 <= k <= n-1.
NeighborhoodGraph knn_graph(const PointSet& points, std::size_t k,
                            Symmetrization mode = Symmetrization::kUnion);

/// Edge (u,v) iff d(u,v) <= eps. Requires eps >= 0.
NeighborhoodGraph epsilon_graph(const PointSet& points, double eps);

}  // namespace ssmote
