#pragma once

// Coverability under reconfiguration semantics. Receive transitions are
// unlocked letter by letter once some node can broadcast the letter, then the
// target is checked on the single process with the unlocked receives.

#include <optional>
#include <string>
#include <vector>

#include "wsbn/network.hpp"
#include "wsbn/pushdown.hpp"
#include "wsbn/vass.hpp"

namespace wsbn {

/// One "is c coverable in P'" question asked while unlocking letters.
struct UnlockQuery {
    std::size_t sweep = 0;  // 1-based
    LetterId letter = 0;
    std::size_t ca_index = 0;
    std::string config;
    Outcome outcome = Outcome::NotCoverable;

    friend bool operator==(const UnlockQuery&, const UnlockQuery&) = default;
};

struct SaturationRound {
    std::vector<LetterId> unlocked;
    std::size_t queries = 0;

    friend bool operator==(const SaturationRound&, const SaturationRound&) = default;
};

struct SaturationTrace {
    std::vector<SaturationRound> rounds;
    std::vector<LetterId> final_unlocked;
    std::vector<UnlockQuery> queries;
    /// Per letter: the sweep whose end added its receives (0 = never).
    std::vector<std::size_t> unlock_round;
    /// Per letter: index into C_a of the configuration found coverable.
    std::vector<std::size_t> unlock_witness;
    /// Sum over letters of |C_a|.
    std::size_t c_total = 0;
    std::size_t letter_count = 0;

    bool sweeps_within_bound() const { return rounds.size() <= letter_count + 1; }
    bool queries_within_bound() const { return queries.size() <= c_total * c_total; }

    friend bool operator==(const SaturationTrace&, const SaturationTrace&) = default;
};

struct RbnResult {
    Outcome outcome = Outcome::NotCoverable;
    SaturationTrace trace;
    /// Backward iterations (VASS) or automaton transitions (pushdown) of the final query.
    std::size_t final_effort = 0;

    bool coverable() const { return outcome == Outcome::Coverable; }
};

RbnResult rbn_coverable(const VassSpec& spec, const VassConfig& target, const ResourceLimits& limits = {});
RbnResult rbn_coverable(const PushdownSpec& spec, const PdsConfig& target, const ResourceLimits& limits = {});

/// The process P' after the given sweep: no receives except those unlocked by
/// the end of sweep `level` (level 0 is the stripped process).
VassSpec unlocked_process(const VassSpec& spec, const SaturationTrace& trace, std::size_t level);
PushdownSpec unlocked_process(const PushdownSpec& spec, const SaturationTrace& trace, std::size_t level);

struct WitnessOptions {
    /// Largest stitched network before giving up.
    std::size_t max_nodes = 64;
    /// Try to replace the stitched run by a shortest run on at most this many nodes.
    std::size_t compact_nodes = 4;
    std::size_t compact_states = 300'000;
    ResourceLimits limits{};
};

/// A replay-validated run covering `target`, built by joining independent
/// helper runs that each end in a broadcast to the node that needs it, then
/// shortened by bounded search when possible. Throws WitnessExtractionFailed.
Run<VassConfig> rbn_witness(const VassSpec& spec, const VassConfig& target, const SaturationTrace& trace,
                            const WitnessOptions& options = {});
Run<PdsConfig> rbn_witness(const PushdownSpec& spec, const PdsConfig& target, const SaturationTrace& trace,
                           const WitnessOptions& options = {});

} // namespace wsbn
