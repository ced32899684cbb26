#include "wsbn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace wsbn {

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    }
    return g;
}

Graph Graph::path(std::size_t n) {
    Graph g(n);
    for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph Graph::cycle(std::size_t n) {
    Graph g = path(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

Graph Graph::star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (std::size_t v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

std::size_t Graph::add_vertex() {
    if (adj_.size() >= kMaxVertices) throw ResourceExhausted("graph exceeds 64 vertices");
    adj_.push_back(0);
    return adj_.size() - 1;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw SelfLoop("self-loop on vertex " + std::to_string(u));
    if (u >= size() || v >= size()) throw std::out_of_range("edge references a missing vertex");
    adj_[u] |= std::uint64_t{1} << v;
    adj_[v] |= std::uint64_t{1} << u;
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
    adj_[u] &= ~(std::uint64_t{1} << v);
    adj_[v] &= ~(std::uint64_t{1} << u);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (std::uint64_t row : adj_) twice += static_cast<std::size_t>(std::popcount(row));
    return twice / 2;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 0; u < size(); ++u) {
        for (std::size_t v = u + 1; v < size(); ++v) {
            if (has_edge(u, v)) out.emplace_back(u, v);
        }
    }
    return out;
}

bool Graph::is_complete() const {
    for (std::size_t u = 0; u < size(); ++u) {
        if (degree(u) + 1 != size()) return false;
    }
    return true;
}

std::size_t longest_simple_path_length(const Graph& g) {
    std::size_t best = 0;
    std::function<void(std::size_t, std::uint64_t, std::size_t)> walk = [&](std::size_t u, std::uint64_t seen,
                                                                            std::size_t length) {
        best = std::max(best, length);
        std::uint64_t next = g.neighbors(u) & ~seen;
        while (next != 0) {
            const auto v = static_cast<std::size_t>(std::countr_zero(next));
            next &= next - 1;
            walk(v, seen | (std::uint64_t{1} << v), length + 1);
        }
    };
    for (std::size_t u = 0; u < g.size(); ++u) walk(u, std::uint64_t{1} << u, 0);
    return best;
}

namespace {

std::vector<std::size_t> bfs_distances(const Graph& g, std::size_t source) {
    std::vector<std::size_t> dist(g.size(), kInfiniteDiameter);
    std::queue<std::size_t> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        std::uint64_t next = g.neighbors(u);
        while (next != 0) {
            const auto v = static_cast<std::size_t>(std::countr_zero(next));
            next &= next - 1;
            if (dist[v] == kInfiniteDiameter) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

} // namespace

std::size_t diameter(const Graph& g) {
    std::size_t best = 0;
    for (std::size_t u = 0; u < g.size(); ++u) {
        for (std::size_t d : bfs_distances(g, u)) {
            if (d == kInfiniteDiameter) return kInfiniteDiameter;
            best = std::max(best, d);
        }
    }
    return best;
}

std::size_t max_degree(const Graph& g) {
    std::size_t best = 0;
    for (std::size_t u = 0; u < g.size(); ++u) best = std::max(best, g.degree(u));
    return best;
}

bool is_connected(const Graph& g) {
    if (g.size() == 0) return true;
    const auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kInfiniteDiameter; });
}

TopologyClass TopologyClass::path_bounded(std::size_t k) {
    if (k < 1) throw std::invalid_argument("path bound must be at least 1");
    return {Kind::PathBounded, k, 0};
}

TopologyClass TopologyClass::diam_deg(std::size_t k, std::size_t d) {
    if (k < 1 || d < 1) throw std::invalid_argument("diameter and degree bounds must be at least 1");
    return {Kind::DiamDeg, k, d};
}

bool belongs(const Graph& g, const TopologyClass& cls) {
    switch (cls.kind) {
    case TopologyClass::Kind::PathBounded: return longest_simple_path_length(g) <= cls.k;
    case TopologyClass::Kind::Clique: return g.size() >= 1 && g.is_complete();
    case TopologyClass::Kind::DiamDeg:
        return g.size() >= 1 && max_degree(g) <= cls.d && diameter(g) <= cls.k;
    case TopologyClass::Kind::Unrestricted: return true;
    }
    return false;
}

std::vector<Graph> enumerate_extensions(const Graph& g, const TopologyClass& cls) {
    if (!belongs(g, cls)) throw ClassViolation("graph is outside its topology class");
    if (cls.kind == TopologyClass::Kind::DiamDeg) return {};
    const std::size_t n = g.size();
    if (n >= kMaxVertices) throw ResourceExhausted("graph exceeds 64 vertices");
    if (n > 20) throw ResourceExhausted("too many neighbour sets to extend a graph this large");
    std::vector<Graph> out;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
        if (cls.kind == TopologyClass::Kind::Clique && mask != full) continue;
        Graph h = g;
        const std::size_t v = h.add_vertex();
        for (std::size_t u = 0; u < n; ++u) {
            if ((mask >> u) & 1U) h.add_edge(u, v);
        }
        if (belongs(h, cls)) out.push_back(std::move(h));
    }
    return out;
}

namespace {

// Isomorphism-invariant vertex colouring by iterated neighbourhood refinement.
std::vector<std::size_t> refine_colours(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> colour(n);
    for (std::size_t u = 0; u < n; ++u) colour[u] = g.degree(u);
    std::size_t classes = 0;
    while (true) {
        std::vector<std::vector<std::size_t>> sig(n);
        for (std::size_t u = 0; u < n; ++u) {
            sig[u].push_back(colour[u]);
            std::vector<std::size_t> around;
            for (std::size_t v = 0; v < n; ++v) {
                if (g.has_edge(u, v)) around.push_back(colour[v]);
            }
            std::sort(around.begin(), around.end());
            sig[u].insert(sig[u].end(), around.begin(), around.end());
        }
        std::map<std::vector<std::size_t>, std::size_t> ids;
        for (const auto& s : sig) ids.emplace(s, 0);
        std::size_t next = 0;
        for (auto& [s, id] : ids) id = next++;
        for (std::size_t u = 0; u < n; ++u) colour[u] = ids[sig[u]];
        if (ids.size() == classes) break;
        classes = ids.size();
    }
    return colour;
}

std::uint64_t code_of(const Graph& g, const std::vector<std::size_t>& order) {
    std::uint64_t code = 0;
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) code = (code << 1) | (g.has_edge(order[i], order[j]) ? 1U : 0U);
    }
    return code;
}

std::pair<std::uint64_t, std::vector<std::size_t>> canonical_order(const Graph& g) {
    const std::size_t n = g.size();
    if (n > 11) throw ResourceExhausted("canonical form supports at most 11 vertices");
    const auto colour = refine_colours(g);
    std::vector<std::vector<std::size_t>> cells;
    {
        std::map<std::size_t, std::vector<std::size_t>> by_colour;
        for (std::size_t u = 0; u < n; ++u) by_colour[colour[u]].push_back(u);
        for (auto& [c, members] : by_colour) cells.push_back(std::move(members));
    }
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::size_t> best_order;
    std::vector<std::size_t> order;
    std::function<void(std::size_t)> choose = [&](std::size_t cell) {
        if (cell == cells.size()) {
            const std::uint64_t code = code_of(g, order);
            if (best_order.empty() || code < best) {
                best = code;
                best_order = order;
            }
            return;
        }
        std::vector<std::size_t> members = cells[cell];
        do {
            order.insert(order.end(), members.begin(), members.end());
            choose(cell + 1);
            order.resize(order.size() - members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    choose(0);
    return {best, best_order};
}

} // namespace

std::uint64_t canonical_code(const Graph& g) { return canonical_order(g).first; }

Graph canonical_graph(const Graph& g) {
    const auto order = canonical_order(g).second;
    Graph out(g.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (g.has_edge(order[i], order[j])) out.add_edge(i, j);
        }
    }
    return out;
}

std::vector<Graph> enumerate_diam_deg_graphs(std::size_t k, std::size_t d, std::size_t n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (n_max > 8) throw ResourceExhausted("diameter/degree enumeration supports at most 8 vertices");
    // Connected graphs of bounded degree grow one non-cut vertex at a time;
    // the diameter filter is applied only at the end since it is not
    // hereditary.
    std::vector<Graph> level{Graph(1)};
    std::vector<Graph> result;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (const Graph& g : level) {
            if (diameter(g) <= k) result.push_back(g);
        }
        if (n == n_max) break;
        std::map<std::uint64_t, Graph> next;
        for (const Graph& g : level) {
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                if (static_cast<std::size_t>(std::popcount(mask)) > d) continue;
                bool room = true;
                for (std::size_t u = 0; u < n && room; ++u) {
                    if (((mask >> u) & 1U) && g.degree(u) >= d) room = false;
                }
                if (!room) continue;
                Graph h = g;
                const std::size_t v = h.add_vertex();
                for (std::size_t u = 0; u < n; ++u) {
                    if ((mask >> u) & 1U) h.add_edge(u, v);
                }
                const auto [code, order] = canonical_order(h);
                if (!next.contains(code)) next.emplace(code, canonical_graph(h));
            }
        }
        level.clear();
        for (auto& [code, g] : next) level.push_back(std::move(g));
    }
    return result;
}

std::vector<Graph> enumerate_class_graphs(std::size_t n, const TopologyClass& cls) {
    if (n > 6) throw ResourceExhausted("class enumeration supports at most 6 vertices");
    if (cls.kind == TopologyClass::Kind::Clique) return {Graph::complete(n)};
    std::vector<Edge> pairs;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    std::map<std::uint64_t, Graph> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        Graph g(n);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if ((mask >> i) & 1U) g.add_edge(pairs[i].first, pairs[i].second);
        }
        if (!belongs(g, cls)) continue;
        const std::uint64_t code = canonical_code(g);
        if (!found.contains(code)) found.emplace(code, canonical_graph(g));
    }
    std::vector<Graph> out;
    for (auto& [code, g] : found) out.push_back(std::move(g));
    return out;
}

std::size_t moore_bound(std::size_t k, std::size_t d) {
    std::size_t sum = 0;
    std::size_t power = 1;
    for (std::size_t i = 0; i < k; ++i) {
        sum += power;
        power *= (d == 0 ? 0 : d - 1);
    }
    return 1 + d * sum;
}

std::optional<double> alternative_order_bound(std::size_t k, std::size_t d) {
    if (k == 2) return std::nullopt;
    const double kk = static_cast<double>(k);
    return (kk * std::pow(kk - 1.0, static_cast<double>(d)) - 2.0) / (kk - 2.0);
}

} // namespace wsbn
