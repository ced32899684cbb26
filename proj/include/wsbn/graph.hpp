#pragma once

// Undirected topologies, labelled graphs (S-graphs), the induced-subgraph
// ordering and topology-class machinery.

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "wsbn/common.hpp"

namespace wsbn {

inline constexpr std::size_t kMaxVertices = 64;
inline constexpr std::size_t kInfiniteDiameter = std::numeric_limits<std::size_t>::max();

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph without self-loops, adjacency kept as bit rows.
class Graph {
public:
    explicit Graph(std::size_t n = 0) : adj_(n, 0) {}

    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph star(std::size_t leaves);
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t size() const { return adj_.size(); }
    std::size_t add_vertex();
    void add_edge(std::size_t u, std::size_t v);
    void remove_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const { return (adj_[u] >> v) & 1U; }
    std::uint64_t neighbors(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return static_cast<std::size_t>(std::popcount(adj_[u])); }
    std::size_t edge_count() const;
    std::vector<Edge> edges() const;
    bool is_complete() const;

    friend auto operator<=>(const Graph&, const Graph&) = default;

private:
    std::vector<std::uint64_t> adj_;
};

template <class Label>
struct LabelledGraph {
    Graph shape;
    std::vector<Label> labels;

    std::size_t size() const { return labels.size(); }

    friend auto operator<=>(const LabelledGraph&, const LabelledGraph&) = default;
};

/// Searches for an injection h with (u,v) in E1 <=> (h(u),h(v)) in E2 and
/// leq(L1(u), L2(h(u))). Backtracking over a connectivity-first vertex order
/// with degree and label pruning; the first injection found is returned.
template <class Label, class Leq>
std::optional<std::vector<std::size_t>> graph_embeds(const LabelledGraph<Label>& small,
                                                     const LabelledGraph<Label>& big, Leq&& leq) {
    const std::size_t n1 = small.size();
    const std::size_t n2 = big.size();
    if (n1 > n2 || small.shape.edge_count() > big.shape.edge_count()) return std::nullopt;
    if (n1 == 0) return std::vector<std::size_t>{};

    std::vector<std::uint64_t> allowed(n1, 0);
    for (std::size_t u = 0; u < n1; ++u) {
        const std::size_t du = small.shape.degree(u);
        for (std::size_t x = 0; x < n2; ++x) {
            if (big.shape.degree(x) >= du && leq(small.labels[u], big.labels[x])) allowed[u] |= std::uint64_t{1} << x;
        }
        if (allowed[u] == 0) return std::nullopt;
    }

    // Connectivity-first order: next vertex has the most already-placed
    // neighbours, ties broken by fewer candidates then higher degree.
    std::vector<std::size_t> order;
    std::vector<bool> placed(n1, false);
    for (std::size_t step = 0; step < n1; ++step) {
        std::size_t best = n1;
        std::tuple<int, int, int> best_key{-1, 0, 0};
        for (std::size_t u = 0; u < n1; ++u) {
            if (placed[u]) continue;
            int linked = 0;
            for (std::size_t w : order) linked += small.shape.has_edge(u, w) ? 1 : 0;
            const std::tuple<int, int, int> key{linked, -std::popcount(allowed[u]),
                                                static_cast<int>(small.shape.degree(u))};
            if (best == n1 || key > best_key) {
                best = u;
                best_key = key;
            }
        }
        placed[best] = true;
        order.push_back(best);
    }

    std::vector<std::size_t> h(n1, 0);
    const std::uint64_t all = n2 == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n2) - 1;
    std::function<bool(std::size_t, std::uint64_t)> extend = [&](std::size_t depth, std::uint64_t used) {
        if (depth == n1) return true;
        const std::size_t u = order[depth];
        std::uint64_t cand = allowed[u] & ~used;
        for (std::size_t i = 0; i < depth && cand != 0; ++i) {
            const std::size_t w = order[i];
            const std::uint64_t row = big.shape.neighbors(h[w]);
            cand &= small.shape.has_edge(u, w) ? row : (~row & all);
        }
        while (cand != 0) {
            const auto x = static_cast<std::size_t>(std::countr_zero(cand));
            cand &= cand - 1;
            h[u] = x;
            if (extend(depth + 1, used | (std::uint64_t{1} << x))) return true;
        }
        return false;
    };
    if (!extend(0, 0)) return std::nullopt;
    return h;
}

/// Multiset ordering: an injection mapping every element below its image,
/// decided by maximum bipartite matching.
template <class Label, class Leq>
bool multiset_embeds(std::span<const Label> small, std::span<const Label> big, Leq&& leq) {
    if (small.size() > big.size()) return false;
    std::vector<std::vector<std::size_t>> adj(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = 0; j < big.size(); ++j) {
            if (leq(small[i], big[j])) adj[i].push_back(j);
        }
        if (adj[i].empty()) return false;
    }
    std::vector<std::size_t> match(big.size(), small.size());
    std::vector<bool> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
        for (std::size_t j : adj[i]) {
            if (seen[j]) continue;
            seen[j] = true;
            if (match[j] == small.size() || augment(match[j])) {
                match[j] = i;
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < small.size(); ++i) {
        seen.assign(big.size(), false);
        if (!augment(i)) return false;
    }
    return true;
}

template <class Label, class Leq>
bool multiset_embeds(const std::vector<Label>& small, const std::vector<Label>& big, Leq&& leq) {
    return multiset_embeds(std::span<const Label>(small), std::span<const Label>(big), std::forward<Leq>(leq));
}

/// Longest simple path, counted in edges.
std::size_t longest_simple_path_length(const Graph& g);
/// kInfiniteDiameter for disconnected graphs.
std::size_t diameter(const Graph& g);
std::size_t max_degree(const Graph& g);
bool is_connected(const Graph& g);

struct TopologyClass {
    enum class Kind { PathBounded, Clique, DiamDeg, Unrestricted };

    Kind kind = Kind::Unrestricted;
    std::size_t k = 0;
    std::size_t d = 0;

    static TopologyClass path_bounded(std::size_t k);
    static TopologyClass clique() { return {Kind::Clique, 0, 0}; }
    static TopologyClass diam_deg(std::size_t k, std::size_t d);
    /// Reconfigurable semantics: any topology, rewritable between broadcasts.
    static TopologyClass unrestricted() { return {Kind::Unrestricted, 0, 0}; }

    bool reconfigurable() const { return kind == Kind::Unrestricted; }

    friend bool operator==(const TopologyClass&, const TopologyClass&) = default;
};

bool belongs(const Graph& g, const TopologyClass& cls);

/// All graphs on |V(g)|+1 vertices whose first |V(g)| vertices induce g, one
/// per neighbour set of the fresh vertex (ascending bitmask order), filtered by
/// class membership. Throws ClassViolation when g is outside the class.
std::vector<Graph> enumerate_extensions(const Graph& g, const TopologyClass& cls);

/// Canonical code: minimum upper-triangle adjacency bit-string over the vertex
/// orderings compatible with an isomorphism-invariant colour refinement.
/// Supports up to 11 vertices.
std::uint64_t canonical_code(const Graph& g);
Graph canonical_graph(const Graph& g);

/// Connected graphs up to isomorphism with at most n_max vertices, diameter at
/// most k and maximum degree at most d; sorted by size then canonical code.
/// Throws ResourceExhausted for n_max > 8.
std::vector<Graph> enumerate_diam_deg_graphs(std::size_t k, std::size_t d, std::size_t n_max);

/// Every graph on exactly n vertices in the class, up to isomorphism (n <= 6).
std::vector<Graph> enumerate_class_graphs(std::size_t n, const TopologyClass& cls);

/// 1 + d * sum_{i<k} (d-1)^i, the classical order bound for diameter k and
/// degree d.
std::size_t moore_bound(std::size_t k, std::size_t d);
/// The closed form (k(k-1)^d - 2)/(k - 2) kept for reference; undefined at k = 2.
std::optional<double> alternative_order_bound(std::size_t k, std::size_t d);

} // namespace wsbn
