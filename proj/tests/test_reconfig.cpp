#include <doctest.h>

#include "support.hpp"
#include "wsbn/reconfig.hpp"

using namespace wsbn;
using namespace wsbn::testing;

namespace {

VassConfig cfg(const VassSpec& spec, const char* q, std::int64_t n) { return {state_of(spec, q), {n}}; }

template <class Spec>
void check_witness(const Spec& spec, const typename Spec::Config& target, const RbnResult& res) {
    const auto run = rbn_witness(spec, target, res.trace);
    CHECK(replay(spec, run, TopologyClass::unrestricted()).ok);
    CHECK(graph_covers(spec, run.last(), target));
}

} // namespace

TEST_CASE("running example under reconfiguration") {
    const VassSpec spec = running_example();
    InvariantAudit audit;
    ResourceLimits limits;
    limits.audit = &audit;
    for (const char* q : {"q4", "q5"}) {
        const RbnResult res = rbn_coverable(spec, cfg(spec, q, 0), limits);
        REQUIRE(res.coverable());
        CHECK(res.trace.sweeps_within_bound());
        CHECK(res.trace.queries_within_bound());
        const auto run = rbn_witness(spec, cfg(spec, q, 0), res.trace);
        CHECK(replay(spec, run, TopologyClass::unrestricted()).ok);
        CHECK(graph_covers(spec, run.last(), cfg(spec, q, 0)));
        CHECK(run.node_count() <= 3);
        CHECK(run.steps.size() <= 12);
    }
    CHECK(audit.violations == 0);
}

TEST_CASE("unlock trace of the running example") {
    const VassSpec spec = running_example();
    const RbnResult res = rbn_coverable(spec, cfg(spec, "q4", 0));
    const SaturationTrace& t = res.trace;
    CHECK(t.letter_count == 4);
    // a needs nothing, b needs ??a, c needs ??a, d needs ??b and ??c.
    CHECK(t.unlock_round == std::vector<std::size_t>{1, 2, 2, 3});
    CHECK(t.final_unlocked.size() == 4);
    CHECK(t.rounds.size() <= 5);
    CHECK(unlocked_process(spec, t, 0).transitions == strip_receives(spec).transitions);
    const VassSpec level1 = unlocked_process(spec, t, 1);
    CHECK(std::count_if(level1.transitions.begin(), level1.transitions.end(), [](const VassTransition& tr) {
              return tr.label.kind == Direction::Receive;
          }) > 0);
}

TEST_CASE("receive-only process stays put under reconfiguration") {
    const VassSpec spec = std::get<VassSpec>(load_model("two_state.wsbn").process);
    const RbnResult res = rbn_coverable(spec, VassConfig{state_of(spec, "q'"), {}});
    CHECK(res.outcome == Outcome::NotCoverable);
    CHECK(res.trace.final_unlocked.empty());
    CHECK_THROWS_AS(rbn_witness(spec, VassConfig{state_of(spec, "q'"), {}}, res.trace), WitnessExtractionFailed);
}

TEST_CASE("broadcast-only processes reduce to plain coverability") {
    Rng rng(71);
    VassShape shape;
    shape.broadcast_only = true;
    for (int round = 0; round < 100; ++round) {
        const VassSpec spec = random_vass(rng, shape);
        const VassConfig target = random_config(rng, spec);
        const RbnResult res = rbn_coverable(spec, target);
        const auto plain = backward_coverability(VassSpace(spec), target);
        CHECK(res.outcome == plain.outcome);
    }
}

TEST_CASE("explored runs are confirmed by the decision procedure") {
    Rng rng(72);
    int positives = 0;
    for (int round = 0; round < 80; ++round) {
        const VassSpec spec = random_finite(rng);
        const VassConfig target{StateId(pick(rng, 0, spec.state_count() - 1)), {}};
        const RbnResult res = rbn_coverable(spec, target);
        CHECK(res.trace.sweeps_within_bound());
        CHECK(res.trace.queries_within_bound());
        ExploreOptions o;
        o.n_nodes = 3;
        o.depth = 8;
        const auto ex = explore(spec, o, target);
        if (ex.witness) {
            ++positives;
            CHECK(res.coverable());
        }
        if (res.coverable()) check_witness(spec, target, res);
    }
    CHECK(positives > 20);
}

TEST_CASE("witnesses for random VASS replay") {
    Rng rng(73);
    int positives = 0;
    for (int round = 0; round < 100; ++round) {
        const VassSpec spec = random_vass(rng);
        const VassConfig target = random_config(rng, spec);
        const RbnResult res = rbn_coverable(spec, target);
        if (!res.coverable()) continue;
        ++positives;
        check_witness(spec, target, res);
    }
    CHECK(positives > 20);
}

TEST_CASE("pushdown handshake") {
    const ModelFile m = load_model("handshake.wsbn");
    const PushdownSpec& spec = std::get<PushdownSpec>(m.process);
    std::vector<Outcome> got;
    for (const Query& q : m.queries) {
        const PdsConfig target{q.state, q.stack};
        const RbnResult res = rbn_coverable(spec, target);
        got.push_back(res.outcome);
        CHECK(res.trace.sweeps_within_bound());
        CHECK(res.trace.queries_within_bound());
        if (res.coverable()) check_witness(spec, target, res);
    }
    CHECK(got == std::vector<Outcome>{Outcome::Coverable, Outcome::Coverable, Outcome::NotCoverable,
                                      Outcome::Coverable});
}

TEST_CASE("pushdown explored runs are confirmed") {
    Rng rng(74);
    for (int round = 0; round < 60; ++round) {
        const PushdownSpec spec = random_pushdown(rng);
        const PdsConfig target = random_pds_target(rng, spec);
        const RbnResult res = rbn_coverable(spec, target);
        ExploreOptions o;
        o.n_nodes = 2;
        o.depth = 6;
        o.magnitude_cap = 6;
        if (explore(spec, o, target).witness) CHECK(res.coverable());
        if (res.coverable()) check_witness(spec, target, res);
    }
}

TEST_CASE("broadcast-only witnesses use one node") {
    Rng rng(75);
    VassShape shape;
    shape.broadcast_only = true;
    int positives = 0;
    for (int round = 0; round < 60; ++round) {
        const VassSpec spec = random_vass(rng, shape);
        const VassConfig target = random_config(rng, spec);
        const RbnResult res = rbn_coverable(spec, target);
        if (!res.coverable()) continue;
        ++positives;
        const auto run = rbn_witness(spec, target, res.trace);
        CHECK(run.node_count() == 1);
        CHECK(std::none_of(run.steps.begin(), run.steps.end(),
                           [](const RunStep<VassConfig>& s) { return s.kind == StepKind::Reconfigure; }));
    }
    CHECK(positives > 5);
}

TEST_CASE("the three-node run of the running example") {
    const VassSpec spec = running_example();
    const VassConfig target = cfg(spec, "q4", 0);
    const RbnResult res = rbn_coverable(spec, target);
    const auto run = rbn_witness(spec, target, res.trace);
    CHECK(run.node_count() == 3);
    CHECK(run.broadcast_count() == 5);
    std::multiset<StateId> initial;
    for (const auto& c : run.initial.labels) initial.insert(c.state);
    CHECK(initial == std::multiset<StateId>{state_of(spec, "q0"), state_of(spec, "q0"), state_of(spec, "q6")});
}
