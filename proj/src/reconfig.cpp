#include "wsbn/reconfig.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "wsbn/wqo.hpp"

namespace wsbn {

namespace {

std::vector<VassConfig> capable_of(const VassSpec& spec, LetterId a) { return vass_min_enabling(spec, a); }
std::vector<PdsConfig> capable_of(const PushdownSpec& spec, LetterId a) { return pds_Ca(spec, a); }

// Coverability in a single process, reporting exhaustion by exception.
struct SingleCover {
    const ResourceLimits& limits;
    std::size_t effort = 0;

    Outcome operator()(const VassSpec& spec, const VassConfig& c) {
        const VassSpace space(spec);
        const Verdict<VassConfig> v = backward_coverability(space, c, limits);
        effort = v.iterations;
        return v.outcome;
    }
    Outcome operator()(const PushdownSpec& spec, const PdsConfig& c) {
        const PdsVerdict v = pds_coverable(spec, c);
        effort = v.automaton_transitions;
        return v.outcome;
    }
};

template <class Spec>
RbnResult run_unlocking(const Spec& original, const typename Spec::Config& target, const ResourceLimits& limits) {
    using C = typename Spec::Config;
    RbnResult result;
    SaturationTrace& trace = result.trace;
    const std::size_t letters = original.letter_count();
    trace.letter_count = letters;
    trace.unlock_round.assign(letters, 0);
    trace.unlock_witness.assign(letters, 0);

    std::vector<std::vector<C>> ca(letters);
    for (LetterId a = 0; a < letters; ++a) {
        ca[a] = capable_of(original, a);
        trace.c_total += ca[a].size();
    }

    SingleCover cover{limits};
    Spec current = strip_receives(original);
    std::vector<bool> pending(letters, true);
    for (std::size_t sweep = 1;; ++sweep) {
        SaturationRound round;
        for (LetterId a = 0; a < letters; ++a) {
            if (!pending[a]) continue;
            for (std::size_t i = 0; i < ca[a].size(); ++i) {
                const Outcome o = cover(current, ca[a][i]);
                ++round.queries;
                trace.queries.push_back({sweep, a, i, original.format(ca[a][i]), o});
                if (o == Outcome::ResourceExhausted) {
                    trace.rounds.push_back(round);
                    result.outcome = Outcome::ResourceExhausted;
                    return result;
                }
                if (o == Outcome::Coverable) {
                    round.unlocked.push_back(a);
                    trace.unlock_witness[a] = i;
                    break;
                }
            }
        }
        // Receives unlocked in this sweep become available only afterwards.
        for (LetterId a : round.unlocked) {
            pending[a] = false;
            trace.unlock_round[a] = sweep;
            current = add_receives(current, original, a);
        }
        const bool progress = !round.unlocked.empty();
        trace.rounds.push_back(std::move(round));
        if (!progress) break;
    }
    for (LetterId a = 0; a < letters; ++a) {
        if (!pending[a]) trace.final_unlocked.push_back(a);
    }
    result.outcome = cover(current, target);
    result.final_effort = cover.effort;
    return result;
}

template <class Spec>
Spec unlocked_at(const Spec& spec, const SaturationTrace& trace, std::size_t level) {
    Spec out = strip_receives(spec);
    for (LetterId a = 0; a < trace.unlock_round.size(); ++a) {
        if (trace.unlock_round[a] != 0 && trace.unlock_round[a] <= level) out = add_receives(out, spec, a);
    }
    return out;
}

template <class C>
struct LocalPath {
    C start;
    std::vector<std::pair<TransitionLabel, C>> steps;
};

// A single-process path from an initial configuration to one covering `target`.
std::optional<LocalPath<VassConfig>> local_path(const VassSpec& spec, const VassConfig& target,
                                                const ResourceLimits& limits) {
    const VassSpace space(spec);
    const Verdict<VassConfig> v = backward_coverability(space, target, limits);
    if (!v.coverable()) return std::nullopt;
    const VassConfig& first = v.witness_chain.front();
    auto it = std::find_if(spec.initial.begin(), spec.initial.end(),
                           [&](const VassConfig& s0) { return vass_leq(first, s0); });
    if (it == spec.initial.end()) return std::nullopt;
    LocalPath<VassConfig> path{*it, {}};
    VassConfig current = *it;
    for (std::size_t i = 0; i < v.witness_labels.size(); ++i) {
        const TransitionLabel l = label_from_index(v.witness_labels[i]);
        bool moved = false;
        for (VassConfig& next : spec.successors(current, l)) {
            if (vass_leq(v.witness_chain[i + 1], next)) {
                current = std::move(next);
                path.steps.push_back({l, current});
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
    }
    return path;
}

std::optional<LocalPath<PdsConfig>> local_path(const PushdownSpec& spec, const PdsConfig& target,
                                               const ResourceLimits&) {
    constexpr std::size_t kBudget = 500'000;
    for (std::size_t cap = target.stack.size() + 4; cap <= 64; cap *= 2) {
        struct Node {
            PdsConfig config;
            std::size_t parent;
            TransitionLabel label;
        };
        std::vector<Node> nodes;
        std::set<PdsConfig> seen;
        std::deque<std::size_t> queue;
        for (const PdsConfig& s0 : spec.initial_configs()) {
            if (seen.insert(s0).second) {
                nodes.push_back({s0, static_cast<std::size_t>(-1), {}});
                queue.push_back(nodes.size() - 1);
            }
        }
        bool truncated = false;
        while (!queue.empty() && nodes.size() < kBudget) {
            const std::size_t i = queue.front();
            queue.pop_front();
            if (pds_leq(target, nodes[i].config)) {
                std::vector<std::size_t> chain;
                for (std::size_t j = i; j != static_cast<std::size_t>(-1); j = nodes[j].parent) chain.push_back(j);
                std::reverse(chain.begin(), chain.end());
                LocalPath<PdsConfig> path{nodes[chain.front()].config, {}};
                for (std::size_t j = 1; j < chain.size(); ++j) {
                    path.steps.push_back({nodes[chain[j]].label, nodes[chain[j]].config});
                }
                return path;
            }
            for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
                const TransitionLabel l = label_from_index(li);
                for (PdsConfig& next : spec.successors(nodes[i].config, l)) {
                    if (next.stack.size() > cap) {
                        truncated = true;
                        continue;
                    }
                    if (!seen.insert(next).second) continue;
                    nodes.push_back({std::move(next), i, l});
                    queue.push_back(nodes.size() - 1);
                }
            }
        }
        if (!truncated) return std::nullopt;
    }
    return std::nullopt;
}

template <class C>
struct Event {
    std::size_t broadcaster;
    LetterId letter;
    std::optional<std::size_t> receiver;
    C broadcaster_next;
    std::optional<C> receiver_next;
};

template <class Spec>
class Stitcher {
public:
    using C = typename Spec::Config;

    Stitcher(const Spec& spec, const SaturationTrace& trace, const WitnessOptions& options)
        : spec_(spec), trace_(trace), options_(options) {}

    Run<C> stitch(const C& target) {
        auto path = local_path(unlocked_at(spec_, trace_, trace_.rounds.size()), target, options_.limits);
        if (!path) throw WitnessExtractionFailed("no single-process path to the target in the unlocked process");
        const std::size_t main = add_node(path->start);
        realize(main, *path, std::nullopt, std::nullopt, 0);
        return materialize();
    }

private:
    std::size_t add_node(const C& start) {
        if (initial_.size() >= options_.max_nodes) throw WitnessExtractionFailed("stitched run needs too many nodes");
        initial_.push_back(start);
        return initial_.size() - 1;
    }

    // Emits the events of `node` following `path`. When `receiver` is set the
    // path's last step is a broadcast heard by that node, which moves to
    // `receiver_next`.
    void realize(std::size_t node, const LocalPath<C>& path, std::optional<std::size_t> receiver,
                 std::optional<C> receiver_next, std::size_t depth) {
        if (depth > trace_.letter_count + 1) throw WitnessExtractionFailed("helper recursion too deep");
        for (std::size_t i = 0; i < path.steps.size(); ++i) {
            const auto& [label, next] = path.steps[i];
            const bool last = i + 1 == path.steps.size();
            if (label.kind == Direction::Broadcast) {
                if (last && receiver) {
                    events_.push_back({node, label.letter, receiver, next, receiver_next});
                } else {
                    events_.push_back({node, label.letter, std::nullopt, next, std::nullopt});
                }
                continue;
            }
            const LetterId a = label.letter;
            const std::size_t round = trace_.unlock_round.at(a);
            if (round == 0) throw WitnessExtractionFailed("path uses a receive that was never unlocked");
            const Spec helper_spec = unlocked_at(spec_, trace_, round - 1);
            const C enabling = capable_of(spec_, a).at(trace_.unlock_witness.at(a));
            auto helper_path = local_path(helper_spec, enabling, options_.limits);
            if (!helper_path) throw WitnessExtractionFailed("helper cannot reach its broadcasting configuration");
            const C& end = helper_path->steps.empty() ? helper_path->start : helper_path->steps.back().second;
            const std::vector<C> after = spec_.successors(end, broadcast(a));
            if (after.empty()) throw WitnessExtractionFailed("helper cannot broadcast the letter it was built for");
            helper_path->steps.push_back({broadcast(a), after.front()});
            const std::size_t helper = add_node(helper_path->start);
            realize(helper, *helper_path, node, next, depth + 1);
        }
    }

    Run<C> materialize() const {
        const std::size_t n = initial_.size();
        Run<C> run;
        run.initial = {Graph(n), initial_};
        auto wanted = [](const Event<C>& e) {
            return e.receiver ? std::uint64_t{1} << *e.receiver : std::uint64_t{0};
        };
        auto star = [&](const Event<C>& e) {
            Graph g(n);
            if (e.receiver) g.add_edge(e.broadcaster, *e.receiver);
            return g;
        };
        if (!events_.empty()) run.initial.shape = star(events_.front());
        LabelledGraph<C> current = run.initial;
        for (const Event<C>& e : events_) {
            if (current.shape.neighbors(e.broadcaster) != wanted(e)) {
                current.shape = star(e);
                run.steps.push_back({StepKind::Reconfigure, 0, 0, current});
            }
            current.labels[e.broadcaster] = e.broadcaster_next;
            if (e.receiver) current.labels[*e.receiver] = *e.receiver_next;
            run.steps.push_back({StepKind::Broadcast, e.broadcaster, e.letter, current});
        }
        return run;
    }

    const Spec& spec_;
    const SaturationTrace& trace_;
    const WitnessOptions& options_;
    std::vector<C> initial_;
    std::vector<Event<C>> events_;
};

template <class Spec>
Run<typename Spec::Config> witness_for(const Spec& spec, const typename Spec::Config& target,
                                       const SaturationTrace& trace, const WitnessOptions& options) {
    using C = typename Spec::Config;
    Run<C> run = Stitcher<Spec>(spec, trace, options).stitch(target);
    const TopologyClass rbn = TopologyClass::unrestricted();
    if (const ReplayResult r = replay(spec, run, rbn); !r) {
        throw WitnessExtractionFailed("stitched run failed replay: " + r.reason);
    }

    std::int64_t cap = 1;
    for (const C& c : run.initial.labels) cap = std::max(cap, spec.magnitude(c));
    for (const auto& step : run.steps) {
        for (const C& c : step.graph.labels) cap = std::max(cap, spec.magnitude(c));
    }
    const std::size_t limit = std::min(run.node_count(), options.compact_nodes);
    for (std::size_t n = 1; n <= limit; ++n) {
        ExploreOptions eo;
        eo.semantics = rbn;
        eo.n_nodes = n;
        eo.depth = run.broadcast_count();
        eo.magnitude_cap = cap;
        eo.max_states = options.compact_states;
        try {
            ExploreResult<C> found = explore(spec, eo, target);
            if (!found.witness) continue;
            const Run<C>& shorter = *found.witness;
            const bool better = shorter.node_count() < run.node_count() ||
                                (shorter.node_count() == run.node_count() && shorter.steps.size() < run.steps.size());
            if (better && replay(spec, shorter, rbn)) run = shorter;
            break;
        } catch (const ResourceExhausted&) {
            break;
        }
    }
    return run;
}

} // namespace

RbnResult rbn_coverable(const VassSpec& spec, const VassConfig& target, const ResourceLimits& limits) {
    return run_unlocking(spec, target, limits);
}

RbnResult rbn_coverable(const PushdownSpec& spec, const PdsConfig& target, const ResourceLimits& limits) {
    return run_unlocking(spec, target, limits);
}

VassSpec unlocked_process(const VassSpec& spec, const SaturationTrace& trace, std::size_t level) {
    return unlocked_at(spec, trace, level);
}

PushdownSpec unlocked_process(const PushdownSpec& spec, const SaturationTrace& trace, std::size_t level) {
    return unlocked_at(spec, trace, level);
}

Run<VassConfig> rbn_witness(const VassSpec& spec, const VassConfig& target, const SaturationTrace& trace,
                            const WitnessOptions& options) {
    return witness_for(spec, target, trace, options);
}

Run<PdsConfig> rbn_witness(const PushdownSpec& spec, const PdsConfig& target, const SaturationTrace& trace,
                           const WitnessOptions& options) {
    return witness_for(spec, target, trace, options);
}

} // namespace wsbn
