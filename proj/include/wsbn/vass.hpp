#pragma once

// Finite-state and VASS process models. Finite-state processes are VASS of
// dimension zero.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsbn/common.hpp"
#include "wsbn/wqo.hpp"

namespace wsbn {

using Counters = std::vector<std::int64_t>;

/// Sentinel control state of the "unconstrained vertex" label. It lies below
/// every configuration, so its upward closure is the whole configuration space.
inline constexpr StateId kAnyState = std::numeric_limits<StateId>::max();

struct VassConfig {
    StateId state = 0;
    Counters counters;

    bool is_wildcard() const { return state == kAnyState; }
    static VassConfig wildcard() { return {kAnyState, {}}; }

    friend auto operator<=>(const VassConfig&, const VassConfig&) = default;
};

struct VassTransition {
    StateId source = 0;
    TransitionLabel label;
    Counters delta;
    StateId target = 0;

    friend bool operator==(const VassTransition&, const VassTransition&) = default;
};

/// A VASS process. `initial` lists the initial configurations; the common case
/// is one vector u0 shared by every initial control state.
struct VassSpec {
    using Config = VassConfig;

    std::vector<std::string> state_names;
    std::vector<std::string> letter_names;
    std::size_t dimension = 0;
    std::vector<VassConfig> initial;
    std::vector<VassTransition> transitions;
    std::optional<StateId> dead_state;

    std::size_t state_count() const { return state_names.size(); }
    std::size_t letter_count() const { return letter_names.size(); }

    std::vector<VassConfig> successors(const VassConfig& c, TransitionLabel l) const;
    std::vector<VassConfig> initial_configs() const { return initial; }
    bool leq(const VassConfig& a, const VassConfig& b) const;
    /// Largest counter value, used by bounded exploration to cap the state space.
    std::int64_t magnitude(const VassConfig& c) const;
    std::string format(const VassConfig& c) const;

    /// Throws std::invalid_argument when the spec is malformed.
    void validate() const;
};

/// Surface type for finite-state processes: transitions without counters.
struct FiniteTransition {
    StateId source = 0;
    TransitionLabel label;
    StateId target = 0;
};

struct FiniteSpec {
    std::vector<std::string> state_names;
    std::vector<std::string> letter_names;
    std::vector<StateId> initial_states;
    std::vector<FiniteTransition> transitions;
};

VassSpec to_vass(const FiniteSpec& spec);

bool vass_leq(const VassConfig& a, const VassConfig& b);

/// All (q, u+v) over transitions (c.state, l, v, q) with u+v >= 0, in
/// declaration order.
std::vector<VassConfig> vass_successors(const VassSpec& spec, const VassConfig& c, TransitionLabel l);

/// Minimal basis of the l-predecessors of up(b). A wildcard element of `b`
/// stands for the whole space and contributes the minimal l-enabled configs.
std::vector<VassConfig> vass_pre_basis(const VassSpec& spec, TransitionLabel l,
                                       const std::vector<VassConfig>& b);

/// Minimal configurations at which some transition labelled `l` is enabled.
std::vector<VassConfig> vass_min_enabling(const VassSpec& spec, TransitionLabel l);

/// C_a: the minimal configurations that can broadcast `a`.
inline std::vector<VassConfig> vass_min_enabling(const VassSpec& spec, LetterId a) {
    return vass_min_enabling(spec, broadcast(a));
}

bool covered_by_initial(const VassSpec& spec, const VassConfig& c);

VassSpec strip_receives(const VassSpec& spec);

/// Restores the receive transitions on `a` from `original`, keeping the
/// original declaration order. Idempotent.
VassSpec add_receives(const VassSpec& current, const VassSpec& original, LetterId a);

/// Sends every missing (state, ??a) pair to `dead`, and gives `dead` a
/// zero-delta receive self-loop for every letter.
VassSpec complete_receives(const VassSpec& spec, StateId dead);

/// Adapter exposing a VASS process as an OrderedSpace over its own transition
/// labels.
class VassSpace {
public:
    using Config = VassConfig;

    explicit VassSpace(const VassSpec& spec) : spec_(&spec) {}

    bool leq(const VassConfig& a, const VassConfig& b) const { return vass_leq(a, b); }
    bool covered_by_initial(const VassConfig& c) const { return wsbn::covered_by_initial(*spec_, c); }
    std::size_t label_count() const { return 2 * spec_->letter_count(); }
    std::vector<VassConfig> pre_basis(std::size_t label, const VassConfig& c) const {
        return vass_pre_basis(*spec_, label_from_index(label), {c});
    }

private:
    const VassSpec* spec_;
};

} // namespace wsbn
