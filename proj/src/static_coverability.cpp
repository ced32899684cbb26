#include "wsbn/static_coverability.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace wsbn {

namespace {

std::vector<StateId> concrete_states(const VassGraph& g) {
    std::vector<StateId> out;
    for (const VassConfig& c : g.labels) {
        if (!c.is_wildcard()) out.push_back(c.state);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool identity_leq(const VassGraph& small, const VassGraph& big) {
    for (std::size_t u = 0; u < small.size(); ++u) {
        if (!vass_leq(small.labels[u], big.labels[u])) return false;
    }
    for (std::size_t u = 0; u < small.size(); ++u) {
        for (std::size_t v = u + 1; v < small.size(); ++v) {
            if (small.shape.has_edge(u, v) != big.shape.has_edge(u, v)) return false;
        }
    }
    return true;
}

// Does some broadcast of `a` by `v` take `before` into up(theta)?
bool steps_into(const VassSpec& spec, const VassGraph& before, std::size_t v, LetterId a, const VassGraph& theta) {
    for (const VassGraph& after : bn_step(spec, before, v, a)) {
        if (identity_leq(theta, after) || graph_leq(theta, after)) return true;
    }
    return false;
}

// Calls `visit` with every labelling obtained by giving vertex slots[i] one of
// options[i].
void for_each_choice(const VassGraph& base, const std::vector<std::size_t>& slots,
                     const std::vector<std::vector<VassConfig>>& options,
                     const std::function<void(const VassGraph&)>& visit) {
    std::vector<std::size_t> pick(slots.size(), 0);
    VassGraph g = base;
    while (true) {
        for (std::size_t i = 0; i < slots.size(); ++i) g.labels[slots[i]] = options[i][pick[i]];
        visit(g);
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) return;
    }
}

} // namespace

bool graph_leq(const VassGraph& small, const VassGraph& big) {
    if (small.size() > big.size() || small.shape.edge_count() > big.shape.edge_count()) return false;
    const std::vector<StateId> s = concrete_states(small);
    const std::vector<StateId> b = concrete_states(big);
    if (!std::includes(b.begin(), b.end(), s.begin(), s.end())) return false;
    if (small.shape.is_complete() && big.shape.is_complete()) {
        return multiset_embeds(small.labels, big.labels, vass_leq);
    }
    return graph_embeds(small, big, vass_leq).has_value();
}

std::vector<VassGraph> static_pre_basis(const VassSpec& spec, const VassGraph& theta, const TopologyClass& cls,
                                        LetterId a, std::size_t max_candidates) {
    std::vector<VassGraph> out;
    auto emit = [&](const VassGraph& g) {
        if (out.size() >= max_candidates) throw ResourceExhausted("static pre-basis exceeded its candidate budget");
        out.push_back(g);
    };
    const std::size_t n = theta.size();

    // Broadcaster inside theta.
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> slots{v};
        std::vector<std::vector<VassConfig>> options{vass_pre_basis(spec, broadcast(a), {theta.labels[v]})};
        if (options[0].empty()) continue;
        bool blocked = false;
        for (std::size_t u = 0; u < n && !blocked; ++u) {
            if (u == v || !theta.shape.has_edge(u, v)) continue;
            slots.push_back(u);
            options.push_back(vass_pre_basis(spec, receive(a), {theta.labels[u]}));
            blocked = options.back().empty();
        }
        if (blocked) continue;
        for_each_choice(theta, slots, options, [&](const VassGraph& before) {
            if (steps_into(spec, before, v, a, theta)) emit(before);
        });
    }

    // Broadcaster is a fresh vertex attached to some of theta's vertices.
    if (cls.kind != TopologyClass::Kind::DiamDeg) {
        const std::vector<VassConfig> enabling = vass_min_enabling(spec, broadcast(a));
        if (!enabling.empty()) {
            for (const Graph& h : enumerate_extensions(theta.shape, cls)) {
                VassGraph base{h, theta.labels};
                base.labels.push_back(enabling.front());
                std::vector<std::size_t> slots{n};
                std::vector<std::vector<VassConfig>> options{enabling};
                bool blocked = false;
                for (std::size_t u = 0; u < n && !blocked; ++u) {
                    if (!h.has_edge(u, n)) continue;
                    slots.push_back(u);
                    options.push_back(vass_pre_basis(spec, receive(a), {theta.labels[u]}));
                    blocked = options.back().empty();
                }
                if (blocked) continue;
                for_each_choice(base, slots, options, [&](const VassGraph& before) {
                    if (steps_into(spec, before, n, a, theta)) emit(before);
                });
            }
        }
    }
    return minimize(out, graph_leq);
}

std::vector<VassGraph> static_pre_basis(const VassSpec& spec, const VassGraph& theta, const TopologyClass& cls) {
    std::vector<VassGraph> all;
    for (LetterId a = 0; a < spec.letter_count(); ++a) {
        for (VassGraph& g : static_pre_basis(spec, theta, cls, a)) all.push_back(std::move(g));
    }
    return minimize(all, graph_leq);
}

bool GraphSpace::covered_by_initial(const VassGraph& g) const {
    return std::all_of(g.labels.begin(), g.labels.end(),
                       [&](const VassConfig& c) { return wsbn::covered_by_initial(*spec_, c); });
}

namespace {

Verdict<VassGraph> saturate(const VassSpec& spec, const VassGraph& seed, const TopologyClass& cls,
                            const ResourceLimits& limits) {
    const GraphSpace space(spec, cls, limits.max_basis);
    try {
        return backward_coverability(space, seed, limits);
    } catch (const ResourceExhausted&) {
        Verdict<VassGraph> v;
        v.outcome = Outcome::ResourceExhausted;
        return v;
    }
}

} // namespace

StaticResult static_coverable(const VassSpec& spec, const VassConfig& target, const TopologyClass& cls,
                              const ResourceLimits& limits) {
    if (cls.kind != TopologyClass::Kind::PathBounded && cls.kind != TopologyClass::Kind::Clique) {
        throw std::invalid_argument("static_coverable handles path-bounded and clique semantics only");
    }
    StaticResult result;
    result.verdict = saturate(spec, VassGraph{Graph(1), {target}}, cls, limits);
    result.seeds = 1;
    if (result.verdict.coverable()) result.witness = static_witness(spec, result.verdict, cls);
    return result;
}

StaticResult diam_deg_coverable(const VassSpec& spec, const VassConfig& target, std::size_t k, std::size_t d,
                                std::size_t n_max, const ResourceLimits& limits) {
    const TopologyClass cls = TopologyClass::diam_deg(k, d);
    StaticResult result;
    bool exhausted = false;
    const std::vector<Graph> shapes = enumerate_diam_deg_graphs(k, d, n_max);
    result.shapes = shapes.size();
    for (const Graph& g : shapes) {
        for (std::size_t pos = 0; pos < g.size(); ++pos) {
            VassGraph seed{g, std::vector<VassConfig>(g.size(), VassConfig::wildcard())};
            seed.labels[pos] = target;
            Verdict<VassGraph> v = saturate(spec, seed, cls, limits);
            ++result.seeds;
            result.verdict.iterations += v.iterations;
            result.verdict.elements_generated += v.elements_generated;
            if (v.coverable()) {
                v.iterations = result.verdict.iterations;
                v.elements_generated = result.verdict.elements_generated;
                result.verdict = std::move(v);
                result.witness = static_witness(spec, result.verdict, cls);
                return result;
            }
            if (v.outcome == Outcome::ResourceExhausted) exhausted = true;
            result.verdict.basis.insert(result.verdict.basis.end(), v.basis.begin(), v.basis.end());
        }
    }
    result.verdict.outcome = exhausted ? Outcome::ResourceExhausted : Outcome::NotCoverable;
    return result;
}

std::optional<Run<VassConfig>> static_witness(const VassSpec& spec, const Verdict<VassGraph>& verdict,
                                              const TopologyClass& cls) {
    if (!verdict.coverable() || verdict.witness_chain.empty()) return std::nullopt;
    const VassGraph& first = verdict.witness_chain.front();
    Run<VassConfig> run;
    run.initial.shape = first.shape;
    for (const VassConfig& c : first.labels) {
        auto it = std::find_if(spec.initial.begin(), spec.initial.end(),
                               [&](const VassConfig& s0) { return vass_leq(c, s0); });
        if (it == spec.initial.end()) return std::nullopt;
        run.initial.labels.push_back(*it);
    }
    VassGraph current = run.initial;
    for (std::size_t i = 0; i < verdict.witness_labels.size(); ++i) {
        const auto a = static_cast<LetterId>(verdict.witness_labels[i]);
        const VassGraph& next = verdict.witness_chain[i + 1];
        bool moved = false;
        for (std::size_t w = 0; w < current.size() && !moved; ++w) {
            for (VassGraph& g : bn_step(spec, current, w, a)) {
                if (graph_leq(next, g)) {
                    current = std::move(g);
                    run.steps.push_back({StepKind::Broadcast, w, a, current});
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) return std::nullopt;
    }
    if (!replay(spec, run, cls)) return std::nullopt;
    return run;
}

} // namespace wsbn
