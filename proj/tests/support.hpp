#pragma once

// Random instance generators and independent brute-force oracles shared by
// the unit tests and the acceptance binary.

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "wsbn/graph.hpp"
#include "wsbn/model.hpp"
#include "wsbn/pushdown.hpp"
#include "wsbn/vass.hpp"

namespace wsbn::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline ModelFile load_model(const std::string& name) {
    return parse_model(read_file(std::string(WSBN_MODELS_DIR) + "/" + name));
}

inline VassSpec running_example() { return std::get<VassSpec>(load_model("running_example.wsbn").process); }

inline StateId state_of(const VassSpec& spec, const std::string& name) {
    auto it = std::find(spec.state_names.begin(), spec.state_names.end(), name);
    return static_cast<StateId>(it - spec.state_names.begin());
}

inline std::vector<std::string> names(const char* prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

struct VassShape {
    std::size_t max_states = 4;
    std::size_t max_dim = 2;
    std::size_t max_letters = 2;
    std::size_t max_transitions = 6;
    bool broadcast_only = false;
};

inline VassSpec random_vass(Rng& rng, const VassShape& shape = {}) {
    VassSpec spec;
    spec.state_names = names("s", pick(rng, 1, shape.max_states));
    spec.letter_names = names("l", pick(rng, 1, shape.max_letters));
    spec.dimension = pick(rng, 1, shape.max_dim);
    const std::size_t inits = pick(rng, 1, 2);
    for (std::size_t i = 0; i < inits; ++i) {
        Counters u(spec.dimension);
        for (auto& x : u) x = static_cast<std::int64_t>(pick(rng, 0, 1));
        VassConfig c{static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)), u};
        if (std::find(spec.initial.begin(), spec.initial.end(), c) == spec.initial.end()) spec.initial.push_back(c);
    }
    const std::size_t m = pick(rng, 1, shape.max_transitions);
    for (std::size_t i = 0; i < m; ++i) {
        VassTransition t;
        t.source = static_cast<StateId>(pick(rng, 0, spec.state_count() - 1));
        t.target = static_cast<StateId>(pick(rng, 0, spec.state_count() - 1));
        const auto letter = static_cast<LetterId>(pick(rng, 0, spec.letter_count() - 1));
        t.label = (shape.broadcast_only || pick(rng, 0, 1) == 0) ? broadcast(letter) : receive(letter);
        t.delta.resize(spec.dimension);
        for (auto& x : t.delta) x = static_cast<std::int64_t>(pick(rng, 0, 2)) - 1;
        spec.transitions.push_back(t);
    }
    return spec;
}

/// Finite-state process (dimension zero) with up to 4 states, 3 letters and
/// 6 transitions.
inline VassSpec random_finite(Rng& rng, std::size_t max_states = 4, std::size_t max_letters = 3,
                              std::size_t max_transitions = 6) {
    VassSpec spec;
    spec.state_names = names("s", pick(rng, 1, max_states));
    spec.letter_names = names("l", pick(rng, 1, max_letters));
    spec.dimension = 0;
    const std::size_t inits = pick(rng, 1, std::min<std::size_t>(2, spec.state_count()));
    for (std::size_t i = 0; i < inits; ++i) {
        VassConfig c{static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)), {}};
        if (std::find(spec.initial.begin(), spec.initial.end(), c) == spec.initial.end()) spec.initial.push_back(c);
    }
    const std::size_t m = pick(rng, 1, max_transitions);
    for (std::size_t i = 0; i < m; ++i) {
        const auto letter = static_cast<LetterId>(pick(rng, 0, spec.letter_count() - 1));
        spec.transitions.push_back({static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)),
                                    pick(rng, 0, 1) == 0 ? broadcast(letter) : receive(letter), {},
                                    static_cast<StateId>(pick(rng, 0, spec.state_count() - 1))});
    }
    return spec;
}

inline VassConfig random_config(Rng& rng, const VassSpec& spec, std::int64_t max_counter = 2) {
    VassConfig c{static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)), Counters(spec.dimension)};
    for (auto& x : c.counters) x = static_cast<std::int64_t>(pick(rng, 0, static_cast<std::size_t>(max_counter)));
    return c;
}

/// Plain single-process forward search: breadth-first over all labels,
/// configurations with a counter above `cap` pruned, at most `depth` steps.
struct ForwardVerdict {
    bool found = false;
    /// The search ended with an empty frontier and never pruned anything.
    bool exhaustive = false;
};

inline ForwardVerdict forward_cover(const VassSpec& spec, const VassConfig& target, std::int64_t cap = 8,
                                    std::size_t depth = 12) {
    ForwardVerdict out;
    std::set<VassConfig> seen(spec.initial.begin(), spec.initial.end());
    std::vector<VassConfig> frontier(seen.begin(), seen.end());
    bool pruned = false;
    for (std::size_t level = 0;; ++level) {
        for (const auto& c : frontier) {
            if (vass_leq(target, c)) {
                out.found = true;
                return out;
            }
        }
        if (frontier.empty()) {
            out.exhaustive = !pruned;
            return out;
        }
        if (level == depth) return out;
        std::vector<VassConfig> next;
        for (const auto& c : frontier) {
            for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
                for (auto& s : vass_successors(spec, c, label_from_index(li))) {
                    if (std::any_of(s.counters.begin(), s.counters.end(), [&](std::int64_t v) { return v > cap; })) {
                        pruned = true;
                        continue;
                    }
                    if (seen.insert(s).second) next.push_back(s);
                }
            }
        }
        frontier = std::move(next);
    }
}

inline PushdownSpec random_pushdown(Rng& rng) {
    PushdownSpec spec;
    spec.state_names = names("p", pick(rng, 1, 3));
    spec.letter_names = names("l", pick(rng, 1, 2));
    const std::size_t symbols = pick(rng, 1, 2);
    for (std::size_t i = 0; i < symbols; ++i) spec.stack_names.push_back("G" + std::to_string(i));
    spec.initial_states.push_back(static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)));
    const std::size_t m = pick(rng, 1, 5);
    for (std::size_t i = 0; i < m; ++i) {
        PdsRule r;
        r.source = static_cast<StateId>(pick(rng, 0, spec.state_count() - 1));
        r.target = static_cast<StateId>(pick(rng, 0, spec.state_count() - 1));
        const auto letter = static_cast<LetterId>(pick(rng, 0, spec.letter_count() - 1));
        r.label = pick(rng, 0, 1) == 0 ? broadcast(letter) : receive(letter);
        if (pick(rng, 0, 1) == 1) r.pop = static_cast<StackSymbol>(pick(rng, 1, symbols));
        const std::size_t push = pick(rng, 0, 2);
        for (std::size_t k = 0; k < push; ++k) r.push.push_back(static_cast<StackSymbol>(pick(rng, 1, symbols)));
        spec.rules.push_back(r);
    }
    return spec;
}

inline PdsConfig random_pds_target(Rng& rng, const PushdownSpec& spec) {
    PdsConfig c{static_cast<StateId>(pick(rng, 0, spec.state_count() - 1)), {}};
    const std::size_t len = pick(rng, 0, 2);
    for (std::size_t k = 0; k < len; ++k) {
        c.stack.push_back(static_cast<StackSymbol>(pick(rng, 1, spec.stack_alphabet_size() - 1)));
    }
    if (pick(rng, 0, 3) == 0) c.stack.push_back(kBottom);
    return c;
}

/// Breadth-first search over single-process pushdown configurations, stack
/// height capped.
inline ForwardVerdict forward_cover(const PushdownSpec& spec, const PdsConfig& target, std::size_t cap = 8) {
    ForwardVerdict out;
    std::set<PdsConfig> seen;
    std::deque<PdsConfig> queue;
    for (const auto& c : spec.initial_configs()) {
        if (seen.insert(c).second) queue.push_back(c);
    }
    bool pruned = false;
    while (!queue.empty()) {
        const PdsConfig c = queue.front();
        queue.pop_front();
        if (pds_leq(target, c)) {
            out.found = true;
            return out;
        }
        for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
            for (auto& s : pds_successors(spec, c, label_from_index(li))) {
                if (s.stack.size() > cap) {
                    pruned = true;
                    continue;
                }
                if (seen.insert(s).second) queue.push_back(s);
            }
        }
    }
    out.exhaustive = !pruned;
    return out;
}

inline Graph random_graph(Rng& rng, std::size_t n, double density = 0.4) {
    Graph g(n);
    std::bernoulli_distribution coin(density);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (coin(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

inline LabelledGraph<VassConfig> random_labelled(Rng& rng, std::size_t n, std::size_t states = 2,
                                                 std::int64_t max_counter = 2, double density = 0.4) {
    LabelledGraph<VassConfig> g{random_graph(rng, n, density), {}};
    for (std::size_t i = 0; i < n; ++i) {
        g.labels.push_back({static_cast<StateId>(pick(rng, 0, states - 1)),
                            {static_cast<std::int64_t>(pick(rng, 0, static_cast<std::size_t>(max_counter)))}});
    }
    return g;
}

/// Tries every injection of the small vertex set into the big one.
template <class Label, class Leq>
bool brute_force_embeds(const LabelledGraph<Label>& small, const LabelledGraph<Label>& big, Leq leq) {
    const std::size_t n1 = small.size();
    const std::size_t n2 = big.size();
    if (n1 > n2) return false;
    std::vector<std::size_t> h(n1);
    std::vector<bool> used(n2, false);
    std::function<bool(std::size_t)> rec = [&](std::size_t u) {
        if (u == n1) {
            for (std::size_t a = 0; a < n1; ++a) {
                if (!leq(small.labels[a], big.labels[h[a]])) return false;
                for (std::size_t b = a + 1; b < n1; ++b) {
                    if (small.shape.has_edge(a, b) != big.shape.has_edge(h[a], h[b])) return false;
                }
            }
            return true;
        }
        for (std::size_t x = 0; x < n2; ++x) {
            if (used[x]) continue;
            used[x] = true;
            h[u] = x;
            const bool ok = rec(u + 1);
            used[x] = false;
            if (ok) return true;
        }
        return false;
    };
    return rec(0);
}

template <class Label, class Leq>
bool brute_force_multiset(const std::vector<Label>& small, const std::vector<Label>& big, Leq leq) {
    LabelledGraph<Label> a{Graph(small.size()), small};
    LabelledGraph<Label> b{Graph(big.size()), big};
    return brute_force_embeds(a, b, leq);
}

/// Longest simple path by trying every ordered vertex sequence.
inline std::size_t brute_force_longest_path(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::size_t best = 0;
    do {
        std::size_t len = 0;
        for (std::size_t i = 0; i + 1 < n && g.has_edge(order[i], order[i + 1]); ++i) len = i + 1;
        best = std::max(best, len);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

/// All-pairs shortest paths by Floyd-Warshall.
inline std::size_t floyd_diameter(const Graph& g) {
    const std::size_t n = g.size();
    constexpr std::size_t inf = 1'000'000;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t u = 0; u < n; ++u) {
        d[u][u] = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (g.has_edge(u, v)) d[u][v] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] >= inf) return kInfiniteDiameter;
            best = std::max(best, d[i][j]);
        }
    }
    return best;
}

/// Minimum adjacency code over every vertex permutation.
inline std::uint64_t brute_force_canonical(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) code = (code << 1) | (g.has_edge(p[i], p[j]) ? 1U : 0U);
        }
        best = std::min(best, code);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

/// Connected graphs on at most n_max vertices with diameter <= k and degree
/// <= d, by brute force over all edge sets, deduplicated per size by the
/// permutation-minimal code. Returns (size, code) pairs.
inline std::set<std::pair<std::size_t, std::uint64_t>> brute_force_diam_deg(std::size_t k, std::size_t d,
                                                                            std::size_t n_max) {
    std::set<std::pair<std::size_t, std::uint64_t>> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<Edge> slots;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
            Graph g(n);
            bool ok = true;
            for (std::size_t i = 0; i < slots.size() && ok; ++i) {
                if ((mask >> i) & 1U) {
                    g.add_edge(slots[i].first, slots[i].second);
                    ok = g.degree(slots[i].first) <= d && g.degree(slots[i].second) <= d;
                }
            }
            if (!ok) continue;
            const std::size_t diam = floyd_diameter(g);
            if (diam == kInfiniteDiameter || diam > k) continue;
            out.emplace(n, brute_force_canonical(g));
        }
    }
    return out;
}

} // namespace wsbn::testing
