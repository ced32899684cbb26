#pragma once

// Explicit-state semantics of broadcast networks: single broadcast steps,
// reconfiguration, run replay and bounded breadth-first exploration. Positive
// exploration results are exact runs; absence within the bounds proves nothing.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wsbn/common.hpp"
#include "wsbn/graph.hpp"

namespace wsbn {

template <class P>
concept NetworkProcess = requires(const P& p, const typename P::Config& c, TransitionLabel l) {
    typename P::Config;
    { p.successors(c, l) } -> std::convertible_to<std::vector<typename P::Config>>;
    { p.initial_configs() } -> std::convertible_to<std::vector<typename P::Config>>;
    { p.leq(c, c) } -> std::convertible_to<bool>;
    { p.letter_count() } -> std::convertible_to<std::size_t>;
    { p.magnitude(c) } -> std::convertible_to<std::int64_t>;
};

enum class StepKind { Broadcast, Reconfigure };

template <class C>
struct RunStep {
    StepKind kind = StepKind::Broadcast;
    std::size_t vertex = 0;  // broadcaster; unused for reconfiguration
    LetterId letter = 0;     // unused for reconfiguration
    LabelledGraph<C> graph;  // configuration after the step

    friend bool operator==(const RunStep&, const RunStep&) = default;
};

template <class C>
struct Run {
    LabelledGraph<C> initial;
    std::vector<RunStep<C>> steps;

    const LabelledGraph<C>& last() const { return steps.empty() ? initial : steps.back().graph; }
    std::size_t node_count() const { return initial.size(); }
    std::size_t broadcast_count() const {
        return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const RunStep<C>& s) {
            return s.kind == StepKind::Broadcast;
        }));
    }

    friend bool operator==(const Run&, const Run&) = default;
};

template <NetworkProcess P>
bool graph_covers(const P& process, const LabelledGraph<typename P::Config>& g, const typename P::Config& target) {
    return std::any_of(g.labels.begin(), g.labels.end(),
                       [&](const typename P::Config& c) { return process.leq(target, c); });
}

/// Every graph reachable by vertex `v` broadcasting `a`: v takes a !!a
/// successor, each neighbour a ??a successor, everyone else stays put. Empty
/// when v cannot broadcast or some neighbour cannot receive.
template <NetworkProcess P>
std::vector<LabelledGraph<typename P::Config>> bn_step(const P& process, const LabelledGraph<typename P::Config>& theta,
                                                       std::size_t v, LetterId a) {
    using C = typename P::Config;
    std::vector<LabelledGraph<C>> out;
    const std::vector<C> sender = process.successors(theta.labels[v], broadcast(a));
    if (sender.empty()) return out;
    std::vector<std::size_t> receivers;
    std::vector<std::vector<C>> options;
    for (std::size_t u = 0; u < theta.size(); ++u) {
        if (u == v || !theta.shape.has_edge(u, v)) continue;
        receivers.push_back(u);
        options.push_back(process.successors(theta.labels[u], receive(a)));
        if (options.back().empty()) return out;
    }
    std::vector<std::size_t> pick(receivers.size(), 0);
    for (const C& s : sender) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            LabelledGraph<C> next = theta;
            next.labels[v] = s;
            for (std::size_t i = 0; i < receivers.size(); ++i) next.labels[receivers[i]] = options[i][pick[i]];
            out.push_back(std::move(next));
            std::size_t i = 0;
            for (; i < pick.size(); ++i) {
                if (++pick[i] < options[i].size()) break;
                pick[i] = 0;
            }
            if (i == pick.size()) break;
        }
    }
    return out;
}

/// Same vertices and labels, edge set replaced. Throws SelfLoop.
template <class C>
LabelledGraph<C> reconfigure(const LabelledGraph<C>& theta, std::span<const Edge> new_edges) {
    LabelledGraph<C> out{Graph(theta.size()), theta.labels};
    for (const auto& [u, v] : new_edges) out.shape.add_edge(u, v);
    return out;
}

struct ReplayResult {
    bool ok = true;
    /// Index of the offending step; steps.size() refers to the initial graph.
    std::size_t failing_step = 0;
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// Checks that the run starts from an initial graph of the semantics and that
/// every consecutive pair is a legal broadcast (or, for reconfigurable
/// semantics, reconfiguration) step.
template <NetworkProcess P>
ReplayResult replay(const P& process, const Run<typename P::Config>& run, const TopologyClass& semantics) {
    using C = typename P::Config;
    auto fail = [](std::size_t index, std::string why) { return ReplayResult{false, index, std::move(why)}; };
    const std::vector<C> initial = process.initial_configs();
    const std::size_t n = run.initial.size();
    if (run.initial.shape.size() != n) return fail(run.steps.size(), "initial graph has inconsistent size");
    for (const C& c : run.initial.labels) {
        if (std::find(initial.begin(), initial.end(), c) == initial.end()) {
            return fail(run.steps.size(), "initial graph has a non-initial label");
        }
    }
    if (!semantics.reconfigurable() && !belongs(run.initial.shape, semantics)) {
        return fail(run.steps.size(), "initial topology is outside the class");
    }
    const LabelledGraph<C>* prev = &run.initial;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const RunStep<C>& step = run.steps[i];
        const LabelledGraph<C>& next = step.graph;
        if (next.size() != n || next.shape.size() != n) return fail(i, "vertex count changed");
        if (step.kind == StepKind::Reconfigure) {
            if (!semantics.reconfigurable()) return fail(i, "reconfiguration under static semantics");
            if (next.labels != prev->labels) return fail(i, "reconfiguration changed a label");
        } else {
            if (step.vertex >= n) return fail(i, "broadcaster out of range");
            if (step.letter >= process.letter_count()) return fail(i, "letter out of range");
            if (!(next.shape == prev->shape)) return fail(i, "broadcast changed the topology");
            for (std::size_t u = 0; u < n; ++u) {
                const C& before = prev->labels[u];
                const C& after = next.labels[u];
                std::vector<C> allowed;
                if (u == step.vertex) {
                    allowed = process.successors(before, broadcast(step.letter));
                } else if (prev->shape.has_edge(u, step.vertex)) {
                    allowed = process.successors(before, receive(step.letter));
                } else {
                    if (!(after == before)) return fail(i, "non-neighbour changed during a broadcast");
                    continue;
                }
                if (std::find(allowed.begin(), allowed.end(), after) == allowed.end()) {
                    return fail(i, u == step.vertex ? "broadcaster label is not a !! successor"
                                                    : "neighbour label is not a ?? successor");
                }
            }
        }
        prev = &next;
    }
    return {};
}

struct ExploreOptions {
    TopologyClass semantics = TopologyClass::unrestricted();
    std::size_t n_nodes = 1;
    /// Number of broadcasts; reconfigurations are free and inserted as needed.
    std::size_t depth = 0;
    /// Configurations above this magnitude (counter value, stack height) are pruned.
    std::int64_t magnitude_cap = 8;
    std::size_t max_states = 2'000'000;
};

template <class C>
struct ExploreResult {
    std::optional<Run<C>> witness;
    std::size_t states = 0;
    /// Some successor was pruned by the magnitude cap.
    bool cap_hit = false;
    /// The bounded space ran out before the depth limit.
    bool saturated = false;
};

namespace detail {

template <class C>
struct SearchNode {
    std::vector<C> labels;
    std::size_t shape = 0;
    std::size_t parent = static_cast<std::size_t>(-1);
    std::size_t vertex = 0;
    LetterId letter = 0;
    std::uint64_t receivers = 0;
    std::size_t depth = 0;
};

template <class C>
std::vector<std::vector<C>> initial_labellings(const std::vector<C>& initial, std::size_t n, bool as_multisets) {
    std::vector<std::vector<C>> out;
    std::vector<std::size_t> pick(n, 0);
    if (initial.empty()) return out;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == n) {
            std::vector<C> labels;
            for (std::size_t i : pick) labels.push_back(initial[i]);
            out.push_back(std::move(labels));
            return;
        }
        for (std::size_t i = as_multisets ? from : 0; i < initial.size(); ++i) {
            pick[pos] = i;
            rec(pos + 1, i);
        }
    };
    rec(0, 0);
    return out;
}

} // namespace detail

/// Breadth-first search over networks of exactly `n_nodes` vertices. Static
/// semantics start from every class member shape (up to isomorphism) with every
/// initial labelling; reconfigurable semantics track labels only and choose the
/// broadcaster's neighbourhood freely at each broadcast.
template <NetworkProcess P>
ExploreResult<typename P::Config> explore(const P& process, const ExploreOptions& options,
                                          const typename P::Config& target) {
    using C = typename P::Config;
    using Node = detail::SearchNode<C>;
    if (options.n_nodes == 0) throw std::invalid_argument("explore needs at least one node");
    const bool rbn = options.semantics.reconfigurable();
    const std::size_t n = options.n_nodes;
    if (n > 6) throw ResourceExhausted("explore supports at most 6 nodes");

    std::vector<Graph> shapes;
    if (rbn) {
        shapes.push_back(Graph(n));
    } else if (options.semantics.kind == TopologyClass::Kind::DiamDeg) {
        for (Graph& g : enumerate_diam_deg_graphs(options.semantics.k, options.semantics.d, n)) {
            if (g.size() == n) shapes.push_back(std::move(g));
        }
    } else {
        shapes = enumerate_class_graphs(n, options.semantics);
    }

    ExploreResult<C> result;
    std::vector<Node> nodes;
    std::set<std::pair<std::size_t, std::vector<C>>> seen;
    auto key_of = [&](const Node& node) {
        std::vector<C> k = node.labels;
        if (rbn) std::sort(k.begin(), k.end());
        return std::make_pair(node.shape, std::move(k));
    };

    auto materialize = [&](std::size_t leaf) {
        std::vector<std::size_t> chain;
        for (std::size_t i = leaf; i != static_cast<std::size_t>(-1); i = nodes[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        const Node& root = nodes[chain.front()];
        Run<C> run;
        run.initial = {shapes[root.shape], root.labels};
        if (rbn && chain.size() > 1) {
            const Node& first = nodes[chain[1]];
            for (std::size_t u = 0; u < n; ++u) {
                if ((first.receivers >> u) & 1U) run.initial.shape.add_edge(first.vertex, u);
            }
        }
        LabelledGraph<C> current = run.initial;
        for (std::size_t i = 1; i < chain.size(); ++i) {
            const Node& step = nodes[chain[i]];
            if (rbn && current.shape.neighbors(step.vertex) != step.receivers) {
                for (std::size_t u = 0; u < n; ++u) {
                    if (u != step.vertex) current.shape.remove_edge(step.vertex, u);
                    if ((step.receivers >> u) & 1U) current.shape.add_edge(step.vertex, u);
                }
                run.steps.push_back({StepKind::Reconfigure, 0, 0, current});
            }
            current.labels = step.labels;
            run.steps.push_back({StepKind::Broadcast, step.vertex, step.letter, current});
        }
        return run;
    };

    const std::vector<C> initial = process.initial_configs();
    std::vector<std::size_t> frontier;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        for (auto& labels : detail::initial_labellings(initial, n, rbn)) {
            Node root{std::move(labels), s};
            if (!seen.insert(key_of(root)).second) continue;
            nodes.push_back(std::move(root));
            frontier.push_back(nodes.size() - 1);
            if (graph_covers(process, LabelledGraph<C>{shapes[s], nodes.back().labels}, target)) {
                result.states = nodes.size();
                result.witness = materialize(nodes.size() - 1);
                return result;
            }
        }
    }

    auto admit = [&](Node&& node) -> std::optional<Run<C>> {
        for (const C& c : node.labels) {
            if (process.magnitude(c) > options.magnitude_cap) {
                result.cap_hit = true;
                return std::nullopt;
            }
        }
        if (!seen.insert(key_of(node)).second) return std::nullopt;
        if (nodes.size() >= options.max_states) throw ResourceExhausted("explore exceeded its state budget");
        nodes.push_back(std::move(node));
        const Node& added = nodes.back();
        if (std::any_of(added.labels.begin(), added.labels.end(), [&](const C& c) { return process.leq(target, c); })) {
            return materialize(nodes.size() - 1);
        }
        return std::nullopt;
    };

    for (std::size_t level = 0; level < options.depth && !frontier.empty(); ++level) {
        std::vector<std::size_t> next_frontier;
        for (std::size_t index : frontier) {
            for (std::size_t v = 0; v < n; ++v) {
                for (LetterId a = 0; a < process.letter_count(); ++a) {
                    // Copy: `nodes` grows while successors are admitted.
                    const Node parent = nodes[index];
                    if (!rbn) {
                        const LabelledGraph<C> theta{shapes[parent.shape], parent.labels};
                        for (LabelledGraph<C>& g : bn_step(process, theta, v, a)) {
                            Node child{std::move(g.labels), parent.shape, index, v, a, g.shape.neighbors(v),
                                       parent.depth + 1};
                            const std::size_t before = nodes.size();
                            if (auto run = admit(std::move(child))) {
                                result.states = nodes.size();
                                result.witness = std::move(run);
                                return result;
                            }
                            if (nodes.size() > before) next_frontier.push_back(nodes.size() - 1);
                        }
                        continue;
                    }
                    const std::vector<C> sender = process.successors(parent.labels[v], broadcast(a));
                    if (sender.empty()) continue;
                    std::vector<std::vector<C>> options_of(n);
                    std::uint64_t capable = 0;
                    for (std::size_t u = 0; u < n; ++u) {
                        if (u == v) continue;
                        options_of[u] = process.successors(parent.labels[u], receive(a));
                        if (!options_of[u].empty()) capable |= std::uint64_t{1} << u;
                    }
                    // Enumerate receiver subsets of the capable vertices.
                    std::uint64_t subset = 0;
                    while (true) {
                        std::vector<std::size_t> members;
                        for (std::size_t u = 0; u < n; ++u) {
                            if ((subset >> u) & 1U) members.push_back(u);
                        }
                        for (const C& s : sender) {
                            std::vector<std::size_t> pick(members.size(), 0);
                            while (true) {
                                Node child{parent.labels, 0, index, v, a, subset, parent.depth + 1};
                                child.labels[v] = s;
                                for (std::size_t i = 0; i < members.size(); ++i) {
                                    child.labels[members[i]] = options_of[members[i]][pick[i]];
                                }
                                const std::size_t before = nodes.size();
                                if (auto run = admit(std::move(child))) {
                                    result.states = nodes.size();
                                    result.witness = std::move(run);
                                    return result;
                                }
                                if (nodes.size() > before) next_frontier.push_back(nodes.size() - 1);
                                std::size_t i = 0;
                                for (; i < pick.size(); ++i) {
                                    if (++pick[i] < options_of[members[i]].size()) break;
                                    pick[i] = 0;
                                }
                                if (i == pick.size()) break;
                            }
                        }
                        if (subset == capable) break;
                        subset = (subset - capable) & capable;
                    }
                }
            }
        }
        frontier = std::move(next_frontier);
    }
    result.states = nodes.size();
    result.saturated = frontier.empty();
    return result;
}

} // namespace wsbn
