#include <doctest.h>

#include "support.hpp"

using namespace wsbn;
using namespace wsbn::testing;

namespace {

void for_each_config(const VassSpec& spec, std::int64_t max_counter, const std::function<void(const VassConfig&)>& f) {
    for (StateId q = 0; q < spec.state_count(); ++q) {
        Counters u(spec.dimension, 0);
        while (true) {
            f(VassConfig{q, u});
            std::size_t i = 0;
            for (; i < u.size(); ++i) {
                if (++u[i] <= max_counter) break;
                u[i] = 0;
            }
            if (i == u.size()) break;
        }
    }
}

bool in_up(const std::vector<VassConfig>& basis, const VassConfig& c) {
    return std::any_of(basis.begin(), basis.end(), [&](const VassConfig& b) { return vass_leq(b, c); });
}

} // namespace

TEST_CASE("successors follow the transition list") {
    Rng rng(5);
    for (int round = 0; round < 200; ++round) {
        const VassSpec spec = random_vass(rng);
        const VassConfig c = random_config(rng, spec);
        for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
            const TransitionLabel l = label_from_index(li);
            std::vector<VassConfig> expected;
            for (const VassTransition& t : spec.transitions) {
                if (t.source != c.state || !(t.label == l)) continue;
                Counters u = c.counters;
                bool ok = true;
                for (std::size_t i = 0; i < u.size(); ++i) {
                    u[i] += t.delta[i];
                    ok = ok && u[i] >= 0;
                }
                if (ok) expected.push_back({t.target, u});
            }
            CHECK(vass_successors(spec, c, l) == expected);
        }
    }
}

TEST_CASE("pre-basis is exact on a bounded box") {
    Rng rng(6);
    for (int round = 0; round < 150; ++round) {
        const VassSpec spec = random_vass(rng);
        const VassConfig target = random_config(rng, spec);
        for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
            const TransitionLabel l = label_from_index(li);
            const auto pre = vass_pre_basis(spec, l, {target});
            CHECK(is_antichain(std::span<const VassConfig>(pre), vass_leq));
            for_each_config(spec, 6, [&](const VassConfig& c) {
                const auto succ = vass_successors(spec, c, l);
                const bool expected =
                    std::any_of(succ.begin(), succ.end(), [&](const VassConfig& s) { return vass_leq(target, s); });
                CHECK(in_up(pre, c) == expected);
            });
        }
    }
}

TEST_CASE("minimal enabling configurations") {
    Rng rng(7);
    for (int round = 0; round < 150; ++round) {
        const VassSpec spec = random_vass(rng);
        for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
            const TransitionLabel l = label_from_index(li);
            const auto m = vass_min_enabling(spec, l);
            for_each_config(spec, 4, [&](const VassConfig& c) {
                CHECK(in_up(m, c) == !vass_successors(spec, c, l).empty());
            });
            CHECK(vass_pre_basis(spec, l, {VassConfig::wildcard()}) == m);
        }
    }
}

TEST_CASE("minimal enabling on the running example") {
    const VassSpec spec = running_example();
    const auto ca = vass_min_enabling(spec, LetterId{0});
    REQUIRE(ca.size() == 1);
    CHECK(ca[0] == VassConfig{state_of(spec, "q0"), {1}});
    const auto cd = vass_min_enabling(spec, LetterId{3});
    REQUIRE(cd.size() == 1);
    CHECK(cd[0] == VassConfig{state_of(spec, "q3"), {1}});
}

TEST_CASE("larger configurations simulate smaller ones") {
    Rng rng(8);
    for (int round = 0; round < 300; ++round) {
        const VassSpec spec = random_vass(rng);
        const VassConfig c = random_config(rng, spec);
        VassConfig bigger = c;
        for (auto& x : bigger.counters) x += static_cast<std::int64_t>(pick(rng, 0, 2));
        REQUIRE(vass_leq(c, bigger));
        for (std::size_t li = 0; li < 2 * spec.letter_count(); ++li) {
            const TransitionLabel l = label_from_index(li);
            const auto big_succ = vass_successors(spec, bigger, l);
            for (const VassConfig& s : vass_successors(spec, c, l)) {
                CHECK(std::any_of(big_succ.begin(), big_succ.end(), [&](const VassConfig& t) { return vass_leq(s, t); }));
            }
        }
    }
}

TEST_CASE("wildcard lies below everything") {
    CHECK(vass_leq(VassConfig::wildcard(), VassConfig{3, {5, 1}}));
    CHECK_FALSE(vass_leq(VassConfig{3, {5, 1}}, VassConfig::wildcard()));
    CHECK(vass_leq(VassConfig{1, {0}}, VassConfig{1, {2}}));
    CHECK_FALSE(vass_leq(VassConfig{1, {0}}, VassConfig{2, {2}}));
}

TEST_CASE("strip and add receives round trip") {
    Rng rng(9);
    for (int round = 0; round < 100; ++round) {
        const VassSpec spec = random_vass(rng);
        const VassSpec stripped = strip_receives(spec);
        for (const auto& t : stripped.transitions) CHECK(t.label.kind == Direction::Broadcast);
        VassSpec rebuilt = stripped;
        for (LetterId a = 0; a < spec.letter_count(); ++a) rebuilt = add_receives(rebuilt, spec, a);
        CHECK(rebuilt.transitions == spec.transitions);
        const LetterId a = static_cast<LetterId>(pick(rng, 0, spec.letter_count() - 1));
        const VassSpec once = add_receives(stripped, spec, a);
        CHECK(add_receives(once, spec, a).transitions == once.transitions);
    }
}

TEST_CASE("receive completion") {
    Rng rng(10);
    for (int round = 0; round < 100; ++round) {
        VassSpec spec = random_vass(rng);
        spec.state_names.push_back("dead");
        const StateId dead = static_cast<StateId>(spec.state_count() - 1);
        const VassSpec done = complete_receives(spec, dead);
        CHECK(std::equal(spec.transitions.begin(), spec.transitions.end(), done.transitions.begin()));
        for (StateId q = 0; q < done.state_count(); ++q) {
            for (LetterId a = 0; a < done.letter_count(); ++a) {
                CHECK(std::any_of(done.transitions.begin(), done.transitions.end(), [&](const VassTransition& t) {
                    return t.source == q && t.label == receive(a);
                }));
            }
        }
        for (LetterId a = 0; a < done.letter_count(); ++a) {
            const Counters zero(done.dimension, 0);
            CHECK(vass_successors(done, VassConfig{dead, zero}, receive(a)) ==
                  std::vector<VassConfig>{VassConfig{dead, zero}});
        }
    }
}

TEST_CASE("finite-state specs become dimension-zero VASS") {
    FiniteSpec f;
    f.state_names = {"q", "q'"};
    f.letter_names = {"a"};
    f.initial_states = {0};
    f.transitions = {{0, receive(0), 1}};
    const VassSpec v = to_vass(f);
    CHECK(v.dimension == 0);
    CHECK(v.initial == std::vector<VassConfig>{VassConfig{0, {}}});
    CHECK(vass_successors(v, VassConfig{0, {}}, receive(0)) == std::vector<VassConfig>{VassConfig{1, {}}});
    CHECK(vass_successors(v, VassConfig{0, {}}, broadcast(0)).empty());
}

TEST_CASE("validate rejects malformed specs") {
    VassSpec spec = running_example();
    CHECK_NOTHROW(spec.validate());
    spec.transitions[0].delta = {1, 1};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("running example successors and predecessors") {
    const VassSpec spec = running_example();
    const auto q = [&](const char* s) { return state_of(spec, s); };
    CHECK(vass_successors(spec, {q("q0"), {1}}, broadcast(0)) == std::vector<VassConfig>{{q("q1"), {0}}});
    CHECK(vass_successors(spec, {q("q1"), {0}}, broadcast(0)).empty());
    CHECK(vass_pre_basis(spec, broadcast(3), {{q("q5"), {0}}}) == std::vector<VassConfig>{{q("q3"), {1}}});
    CHECK(vass_pre_basis(spec, broadcast(3), {}).empty());
    const VassSpec stripped = strip_receives(spec);
    CHECK(stripped.transitions.size() == 4);
    VassSpec silent = spec;
    silent.letter_names.push_back("e");
    CHECK(vass_min_enabling(silent, LetterId{4}).empty());
}
