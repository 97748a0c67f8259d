#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssmote/neighborhood_graph.hpp"

namespace ssmote {

/// Vertex subset of a complex, strictly ascending. Dimension is size - 1.
class Simplex {
public:
    Simplex() = default;
    explicit Simplex(std::vector<VertexId> vertices);

    std::span<const VertexId> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t dimension() const { return vertices_.size() - 1; }
    bool contains(VertexId v) const;
    bool is_face_of(const Simplex& other) const;

    auto operator<=>(const Simplex&) const = default;

private:
    std::vector<VertexId> vertices_;
};

/// Maximal simplex dimension: a finite p >= 1 or the whole clique complex.
class SimplexDim {
public:
    static SimplexDim maximal() { return SimplexDim(); }
    static SimplexDim of(std::size_t p) { return SimplexDim(p); }

    bool is_maximal() const { return !value_.has_value(); }
    std::size_t value() const { return *value_; }

    /// "max" or a decimal integer.
    static SimplexDim parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const SimplexDim&) const = default;

private:
    SimplexDim() = default;
    explicit SimplexDim(std::size_t p) : value_(p) {}
    std::optional<std::size_t> value_;
};

/// Raised when subdividing an oversized clique would emit too many simplices.
class SubdivisionCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultSubdivisionCap = 1'000'000;

/// Maximal simplices of the p-skeleton of a clique complex.
struct Skeleton {
    std::size_t n_vertices = 0;
    SimplexDim max_dim = SimplexDim::maximal();
    std::vector<Simplex> maximal_simplices;  // sorted, deduplicated
};

/**
 * All inclusion-maximal cliques of g, sorted.
 *
 * Bron-Kerbosch with Tomita pivoting over a degeneracy ordering of the
 * vertices. Isolated vertices come out as 0-simplices.
 */
std::vector<Simplex> maximal_cliques(const NeighborhoodGraph& g);

/**
 * Maximal simplices of the p-skeleton of the clique complex of g.
 *
 * Maximal cliques with at most p+1 vertices are kept whole; larger ones are
 * replaced by all their (p+1)-subsets. Throws ParameterError for p = 0 and
 * SubdivisionCapError when the subset count would exceed `cap`.
 */
Skeleton p_skeleton(const NeighborhoodGraph& g, SimplexDim p,
                    std::size_t cap = kDefaultSubdivisionCap);

/// Number of maximal simplices containing each vertex.
std::vector<std::size_t> simplex_membership_stats(const Skeleton& sk);

/// n choose r, saturating at SIZE_MAX.
std::size_t binomial(std::size_t n, std::size_t r);

}  // namespace ssmote
