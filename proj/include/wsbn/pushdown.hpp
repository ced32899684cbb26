#pragma once

// Pushdown processes. Configurations are ordered by stack prefix, which is not
// a well-quasi-order, so these models never go through backward saturation;
// coverability is decided by post* automaton saturation instead.

#include <optional>
#include <string>
#include <vector>

#include "wsbn/common.hpp"

namespace wsbn {

using StackSymbol = std::uint32_t;

/// The end-of-stack marker; never pushed or popped.
inline constexpr StackSymbol kBottom = 0;

/// Control state plus stack word, top first. Reachable configurations end in
/// exactly one kBottom; coverability targets may be bare prefixes.
struct PdsConfig {
    StateId state = 0;
    std::vector<StackSymbol> stack;

    friend auto operator<=>(const PdsConfig&, const PdsConfig&) = default;
};

/// (source, label, pop, target, push). An empty `pop` matches any stack and
/// leaves it in place below `push`.
struct PdsRule {
    StateId source = 0;
    TransitionLabel label;
    std::optional<StackSymbol> pop;
    StateId target = 0;
    std::vector<StackSymbol> push;

    friend bool operator==(const PdsRule&, const PdsRule&) = default;
};

struct PushdownSpec {
    using Config = PdsConfig;

    std::vector<std::string> state_names;
    std::vector<std::string> letter_names;
    /// Index 0 is the bottom marker.
    std::vector<std::string> stack_names{"bot"};
    std::vector<StateId> initial_states;
    std::vector<PdsRule> rules;
    std::optional<StateId> dead_state;

    std::size_t state_count() const { return state_names.size(); }
    std::size_t letter_count() const { return letter_names.size(); }
    std::size_t stack_alphabet_size() const { return stack_names.size(); }

    std::vector<PdsConfig> successors(const PdsConfig& c, TransitionLabel l) const;
    std::vector<PdsConfig> initial_configs() const;
    bool leq(const PdsConfig& a, const PdsConfig& b) const;
    /// Stack height, used by bounded exploration.
    std::int64_t magnitude(const PdsConfig& c) const { return static_cast<std::int64_t>(c.stack.size()); }
    std::string format(const PdsConfig& c) const;

    void validate() const;
};

/// Prefix order with equal control states.
bool pds_leq(const PdsConfig& a, const PdsConfig& b);

std::vector<PdsConfig> pds_successors(const PushdownSpec& spec, const PdsConfig& c, TransitionLabel l);

struct PdsVerdict {
    Outcome outcome = Outcome::NotCoverable;
    /// Transitions in the saturated post* automaton.
    std::size_t automaton_transitions = 0;

    bool coverable() const { return outcome == Outcome::Coverable; }
};

/// Is some configuration (target.state, target.stack . w) reachable from an
/// initial (q0, bot)?
PdsVerdict pds_coverable(const PushdownSpec& spec, const PdsConfig& target);

/// C_a: one (q, g) per rule (q, !!a, g, q', h); an epsilon pop yields (q, empty).
std::vector<PdsConfig> pds_Ca(const PushdownSpec& spec, LetterId a);

PushdownSpec strip_receives(const PushdownSpec& spec);
PushdownSpec add_receives(const PushdownSpec& current, const PushdownSpec& original, LetterId a);
PushdownSpec complete_receives(const PushdownSpec& spec, StateId dead);

} // namespace wsbn
