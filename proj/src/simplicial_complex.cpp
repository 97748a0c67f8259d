#include "ssmote/simplicial_complex.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <set>

namespace ssmote {

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw ParameterError("simplex: empty vertex set");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i - 1] >= vertices_[i]) {
            throw ParameterError("simplex: vertices must be strictly ascending");
        }
    }
}

bool Simplex::contains(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const {
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                         vertices_.end());
}

SimplexDim SimplexDim::parse(const std::string& text) {
    if (text == "max" || text == "maximal") return maximal();
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed == 0 || consumed != text.size() || text.front() == '-') {
        throw ParameterError("p must be a non-negative integer or 'max', got '" + text + "'");
    }
    return of(static_cast<std::size_t>(value));
}

std::string SimplexDim::to_string() const {
    return is_maximal() ? "max" : std::to_string(*value_);
}

std::size_t binomial(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= r; ++i) {
        const std::size_t factor = n - r + i;
        // result * factor / i is exact at every step
        if (result > std::numeric_limits<std::size_t>::max() / factor) {
            return std::numeric_limits<std::size_t>::max();
        }
        result = result * factor / i;
    }
    return result;
}

namespace {

using VertexList = std::vector<VertexId>;

VertexList intersect(const VertexList& a, std::span<const VertexId> b) {
    VertexList out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::size_t intersection_size(const VertexList& a, std::span<const VertexId> b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

class BronKerbosch {
public:
    explicit BronKerbosch(const NeighborhoodGraph& g) : g_(g) {}

    std::vector<Simplex> run() {
        for (VertexId v : degeneracy_order()) {
            VertexList later;
            VertexList earlier;
            for (VertexId u : g_.neighbors(v)) {
                (position_[u] > position_[v] ? later : earlier).push_back(u);
            }
            VertexList clique{v};
            expand(clique, later, earlier);
        }
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    std::vector<VertexId> degeneracy_order() {
        const std::size_t n = g_.n_vertices();
        std::vector<std::size_t> degree(n);
        std::set<std::pair<std::size_t, VertexId>> queue;
        for (VertexId v = 0; v < n; ++v) {
            degree[v] = g_.degree(v);
            queue.emplace(degree[v], v);
        }
        std::vector<bool> removed(n, false);
        std::vector<VertexId> order;
        order.reserve(n);
        position_.assign(n, 0);
        while (!queue.empty()) {
            const VertexId v = queue.begin()->second;
            queue.erase(queue.begin());
            removed[v] = true;
            position_[v] = order.size();
            order.push_back(v);
            for (VertexId u : g_.neighbors(v)) {
                if (removed[u]) continue;
                queue.erase({degree[u], u});
                queue.emplace(--degree[u], u);
            }
        }
        return order;
    }

    void expand(VertexList& clique, VertexList candidates, VertexList excluded) {
        if (candidates.empty()) {
            if (excluded.empty()) {
                VertexList sorted = clique;
                std::sort(sorted.begin(), sorted.end());
                out_.emplace_back(std::move(sorted));
            }
            return;
        }
        // Tomita pivot: the vertex of P u X covering most of P.
        VertexId pivot = candidates.front();
        std::size_t best = 0;
        bool have_pivot = false;
        for (const VertexList* pool : {&candidates, &excluded}) {
            for (VertexId u : *pool) {
                const std::size_t score = intersection_size(candidates, g_.neighbors(u));
                if (!have_pivot || score > best) {
                    have_pivot = true;
                    best = score;
                    pivot = u;
                }
            }
        }
        VertexList branch;
        const auto pivot_nbrs = g_.neighbors(pivot);
        std::set_difference(candidates.begin(), candidates.end(), pivot_nbrs.begin(),
                            pivot_nbrs.end(), std::back_inserter(branch));
        for (VertexId v : branch) {
            clique.push_back(v);
            expand(clique, intersect(candidates, g_.neighbors(v)),
                   intersect(excluded, g_.neighbors(v)));
            clique.pop_back();
            candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
            excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
        }
    }

    const NeighborhoodGraph& g_;
    std::vector<std::size_t> position_;
    std::vector<Simplex> out_;
};

// Appends every r-subset of `clique` in lexicographic order.
void append_subsets(std::span<const VertexId> clique, std::size_t r, std::vector<Simplex>& out) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    const std::size_t n = clique.size();
    while (true) {
        VertexList subset(r);
        for (std::size_t i = 0; i < r; ++i) subset[i] = clique[idx[i]];
        out.emplace_back(std::move(subset));
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Drops simplices that are proper faces of another simplex in the set.
void remove_non_maximal(std::vector<Simplex>& simplices, std::size_t n_vertices) {
    std::vector<std::vector<std::size_t>> by_vertex(n_vertices);
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        for (VertexId v : simplices[s].vertices()) by_vertex[v].push_back(s);
    }
    std::vector<bool> drop(simplices.size(), false);
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        const VertexId anchor = simplices[s].vertices().front();
        for (std::size_t t : by_vertex[anchor]) {
            if (t != s && simplices[t].size() > simplices[s].size() &&
                simplices[s].is_face_of(simplices[t])) {
                drop[s] = true;
                break;
            }
        }
    }
    std::size_t w = 0;
    for (std::size_t s = 0; s < simplices.size(); ++s) {
        if (drop[s]) continue;
        if (w != s) simplices[w] = std::move(simplices[s]);
        ++w;
    }
    simplices.resize(w);
}

}  // namespace

std::vector<Simplex> maximal_cliques(const NeighborhoodGraph& g) {
    return BronKerbosch(g).run();
}

Skeleton p_skeleton(const NeighborhoodGraph& g, SimplexDim p, std::size_t cap) {
    if (!p.is_maximal() && p.value() == 0) {
        throw ParameterError(
            "p-skeleton: p must be >= 1 or 'max' (p = 0 is plain duplication; use random "
            "oversampling)");
    }
    Skeleton sk;
    sk.n_vertices = g.n_vertices();
    sk.max_dim = p;
    auto cliques = maximal_cliques(g);
    if (p.is_maximal()) {
        sk.maximal_simplices = std::move(cliques);
        return sk;
    }
    const std::size_t width = p.value() + 1;
    std::size_t total = 0;
    for (const auto& c : cliques) {
        const std::size_t count = c.size() <= width ? 1 : binomial(c.size(), width);
        total = count > cap - std::min(cap, total) ? cap + 1 : total + count;
        if (total > cap) {
            throw SubdivisionCapError(
                "p-skeleton: subdividing a " + std::to_string(c.size()) + "-clique into " +
                std::to_string(width) + "-subsets exceeds the cap of " + std::to_string(cap) +
                " simplices; use a smaller p or k");
        }
    }
    std::vector<Simplex> simplices;
    simplices.reserve(total);
    for (auto& c : cliques) {
        if (c.size() <= width) {
            simplices.push_back(std::move(c));
        } else {
            append_subsets(c.vertices(), width, simplices);
        }
    }
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    remove_non_maximal(simplices, g.n_vertices());
    sk.maximal_simplices = std::move(simplices);
    return sk;
}

std::vector<std::size_t> simplex_membership_stats(const Skeleton& sk) {
    std::vector<std::size_t> counts(sk.n_vertices, 0);
    for (const auto& s : sk.maximal_simplices) {
        for (VertexId v : s.vertices()) ++counts[v];
    }
    return counts;
}

}  // namespace ssmote
