#include "wsbn/runner.hpp"

#include <chrono>

#include "wsbn/reconfig.hpp"
#include "wsbn/static_coverability.hpp"

namespace wsbn {

namespace {

WitnessLabel label_of(const VassSpec& spec, const VassConfig& c) {
    return {spec.state_names.at(c.state), c.counters, std::nullopt};
}

WitnessLabel label_of(const PushdownSpec& spec, const PdsConfig& c) {
    std::vector<std::string> stack;
    for (StackSymbol s : c.stack) stack.push_back(spec.stack_names.at(s));
    return {spec.state_names.at(c.state), std::nullopt, stack};
}

std::optional<StateId> state_id(const std::vector<std::string>& names, const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) return std::nullopt;
    return static_cast<StateId>(it - names.begin());
}

std::optional<VassConfig> config_of(const VassSpec& spec, const WitnessLabel& l) {
    auto q = state_id(spec.state_names, l.state);
    if (!q || l.stack) return std::nullopt;
    Counters u = l.vector.value_or(Counters{});
    if (u.size() != spec.dimension) return std::nullopt;
    if (std::any_of(u.begin(), u.end(), [](std::int64_t v) { return v < 0; })) return std::nullopt;
    return VassConfig{*q, std::move(u)};
}

std::optional<PdsConfig> config_of(const PushdownSpec& spec, const WitnessLabel& l) {
    auto q = state_id(spec.state_names, l.state);
    if (!q || l.vector || !l.stack) return std::nullopt;
    PdsConfig c{*q, {}};
    for (const std::string& s : *l.stack) {
        auto sym = state_id(spec.stack_names, s);
        if (!sym) return std::nullopt;
        c.stack.push_back(*sym);
    }
    return c;
}

template <class Spec>
WitnessGraph graph_of(const Spec& spec, const LabelledGraph<typename Spec::Config>& g) {
    WitnessGraph out;
    out.edges = g.shape.edges();
    for (const auto& c : g.labels) out.labels.push_back(label_of(spec, c));
    return out;
}

template <class Spec>
WitnessRun witness_of(const Spec& spec, const Query& q, const Run<typename Spec::Config>& run,
                      typename Spec::Config target) {
    WitnessRun w;
    w.semantics = format_semantics(q.semantics);
    w.target = label_of(spec, target);
    w.initial = graph_of(spec, run.initial);
    for (const auto& step : run.steps) {
        WitnessStep s;
        s.kind = step.kind == StepKind::Broadcast ? "broadcast" : "reconfigure";
        if (step.kind == StepKind::Broadcast) {
            s.vertex = step.vertex;
            s.letter = spec.letter_names.at(step.letter);
        }
        s.graph = graph_of(spec, step.graph);
        w.steps.push_back(std::move(s));
    }
    return w;
}

template <class Spec>
std::optional<LabelledGraph<typename Spec::Config>> graph_from(const Spec& spec, const WitnessGraph& g,
                                                               std::string& why) {
    LabelledGraph<typename Spec::Config> out{Graph(g.labels.size()), {}};
    if (g.labels.size() > kMaxVertices) {
        why = "graph has too many vertices";
        return std::nullopt;
    }
    for (const WitnessLabel& l : g.labels) {
        auto c = config_of(spec, l);
        if (!c) {
            why = "label does not match the model: state " + l.state;
            return std::nullopt;
        }
        out.labels.push_back(std::move(*c));
    }
    for (const auto& [u, v] : g.edges) {
        if (u >= out.size() || v >= out.size() || u == v) {
            why = "edge refers to a missing vertex or is a self-loop";
            return std::nullopt;
        }
        out.shape.add_edge(u, v);
    }
    return out;
}

template <class Spec>
ReplayResult replay_on(const Spec& spec, const WitnessRun& w) {
    using C = typename Spec::Config;
    auto fail = [](std::size_t index, std::string why) { return ReplayResult{false, index, std::move(why)}; };
    auto sem = parse_semantics(w.semantics);
    if (!sem) return fail(w.steps.size(), "unknown semantics " + w.semantics);
    auto target = config_of(spec, w.target);
    if (!target) return fail(w.steps.size(), "target does not match the model");
    std::string why;
    Run<C> run;
    auto initial = graph_from(spec, w.initial, why);
    if (!initial) return fail(w.steps.size(), why);
    run.initial = std::move(*initial);
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const WitnessStep& s = w.steps[i];
        RunStep<C> step;
        step.kind = s.kind == "broadcast" ? StepKind::Broadcast : StepKind::Reconfigure;
        if (step.kind == StepKind::Broadcast) {
            auto a = state_id(spec.letter_names, s.letter);
            if (!a) return fail(i, "unknown letter " + s.letter);
            step.vertex = s.vertex;
            step.letter = *a;
        }
        auto g = graph_from(spec, s.graph, why);
        if (!g) return fail(i, why);
        step.graph = std::move(*g);
        run.steps.push_back(std::move(step));
    }
    if (sem->cls.kind == TopologyClass::Kind::DiamDeg && run.initial.size() > sem->n_max) {
        return fail(w.steps.size(), "network is larger than the diam-deg size bound");
    }
    ReplayResult r = replay(spec, run, sem->cls);
    if (!r) return r;
    if (!graph_covers(spec, run.last(), *target)) return fail(w.steps.size(), "final graph does not cover the target");
    return r;
}

ResourceLimits limits_for(const Query& q, const RunOptions& o) {
    ResourceLimits limits;
    limits.max_basis = q.max_basis.value_or(o.max_basis.value_or(limits.max_basis));
    limits.max_iterations = q.max_iterations.value_or(o.max_iterations.value_or(limits.max_iterations));
    limits.audit = o.audit;
    return limits;
}

template <class Spec>
void record_rbn(QueryReport& r, const ModelFile& model, const Query& q, const Spec& spec,
                const typename Spec::Config& target, const ResourceLimits& limits, const RunOptions& options) {
    const RbnResult res = rbn_coverable(spec, target, limits);
    r.verdict = res.outcome;
    r.trace = res.trace;
    r.stats["sweeps"] = res.trace.rounds.size();
    r.stats["unlock_queries"] = res.trace.queries.size();
    r.stats["final_effort"] = res.final_effort;
    if (res.coverable() && options.witnesses) {
        WitnessOptions wo;
        wo.limits = limits;
        try {
            const auto run = rbn_witness(spec, target, res.trace, wo);
            r.witness = to_witness(model, q, run);
            r.stats["witness_nodes"] = run.node_count();
            r.stats["witness_steps"] = run.steps.size();
        } catch (const WitnessExtractionFailed& e) {
            r.witness_error = e.what();
        }
    }
}

} // namespace

WitnessRun to_witness(const ModelFile& model, const Query& query, const Run<VassConfig>& run) {
    const auto& spec = std::get<VassSpec>(model.process);
    return witness_of(spec, query, run, VassConfig{query.state, query.vector});
}

WitnessRun to_witness(const ModelFile& model, const Query& query, const Run<PdsConfig>& run) {
    const auto& spec = std::get<PushdownSpec>(model.process);
    return witness_of(spec, query, run, PdsConfig{query.state, query.stack});
}

QueryReport run_query(const ModelFile& model, const Query& q, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    QueryReport r;
    r.line = q.line;
    r.target = model.format_target(q);
    r.semantics = format_semantics(q.semantics);
    const ResourceLimits limits = limits_for(q, options);
    try {
        if (const auto* pds = std::get_if<PushdownSpec>(&model.process)) {
            record_rbn(r, model, q, *pds, PdsConfig{q.state, q.stack}, limits, options);
        } else {
            const auto& spec = std::get<VassSpec>(model.process);
            const VassConfig target{q.state, q.vector};
            if (q.semantics.cls.reconfigurable()) {
                record_rbn(r, model, q, spec, target, limits, options);
            } else {
                const StaticResult res =
                    q.semantics.cls.kind == TopologyClass::Kind::DiamDeg
                        ? diam_deg_coverable(spec, target, q.semantics.cls.k, q.semantics.cls.d, q.semantics.n_max,
                                             limits)
                        : static_coverable(spec, target, q.semantics.cls, limits);
                r.verdict = res.outcome();
                r.stats["iterations"] = res.verdict.iterations;
                r.stats["basis_size"] = res.verdict.basis.size();
                r.stats["elements_generated"] = res.verdict.elements_generated;
                r.stats["seeds"] = res.seeds;
                if (q.semantics.cls.kind == TopologyClass::Kind::DiamDeg) r.stats["shapes"] = res.shapes;
                if (res.witness && options.witnesses) {
                    r.witness = to_witness(model, q, *res.witness);
                    r.stats["witness_nodes"] = res.witness->node_count();
                    r.stats["witness_steps"] = res.witness->steps.size();
                } else if (res.verdict.coverable() && options.witnesses) {
                    r.witness_error = "the saturation chain could not be replayed forwards";
                }
            }
        }
    } catch (const ResourceExhausted& e) {
        r.verdict = Outcome::ResourceExhausted;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Report run_queries(const ModelFile& model, const RunOptions& options, std::string model_name) {
    Report report;
    report.model = std::move(model_name);
    report.process = std::string(to_string(model.kind));
    report.letters = model.letter_names();
    for (const Query& q : model.queries) report.queries.push_back(run_query(model, q, options));
    return report;
}

int exit_status(const Report& report) {
    const bool exhausted = std::any_of(report.queries.begin(), report.queries.end(),
                                       [](const QueryReport& q) { return q.verdict == Outcome::ResourceExhausted; });
    return exhausted ? 2 : 0;
}

ExploreSummary explore_query(const ModelFile& model, const Query& query, std::size_t nodes, std::size_t depth,
                             std::int64_t magnitude_cap) {
    ExploreOptions eo;
    eo.semantics = query.semantics.cls;
    eo.n_nodes = nodes;
    eo.depth = depth;
    eo.magnitude_cap = magnitude_cap;
    ExploreSummary out;
    auto fill = [&](const auto& spec, const auto& target) {
        auto res = explore(spec, eo, target);
        out.states = res.states;
        out.cap_hit = res.cap_hit;
        out.saturated = res.saturated;
        if (res.witness) out.witness = to_witness(model, query, *res.witness);
    };
    if (const auto* pds = std::get_if<PushdownSpec>(&model.process)) {
        fill(*pds, PdsConfig{query.state, query.stack});
    } else {
        fill(std::get<VassSpec>(model.process), VassConfig{query.state, query.vector});
    }
    return out;
}

ReplayResult replay_witness(const ModelFile& model, const WitnessRun& witness) {
    return std::visit([&](const auto& spec) { return replay_on(spec, witness); }, model.process);
}

} // namespace wsbn
