#pragma once

// Coverability for static topologies (k-path-bounded, clique, bounded
// diameter and degree) by backward saturation over labelled graphs ordered by
// induced-subgraph embedding.

#include <optional>
#include <vector>

#include "wsbn/graph.hpp"
#include "wsbn/network.hpp"
#include "wsbn/vass.hpp"
#include "wsbn/wqo.hpp"

namespace wsbn {

using VassGraph = LabelledGraph<VassConfig>;

/// Induced-subgraph order on labelled graphs, with cheap necessary-condition
/// filters in front of the backtracking matcher and the multiset shortcut for
/// cliques.
bool graph_leq(const VassGraph& small, const VassGraph& big);

/// Basis of the one-step predecessors of up(theta) via broadcasts of `letter`.
/// `extend` enables predecessors with one additional (broadcasting) vertex;
/// it is ignored for the diameter/degree class. Throws ResourceExhausted when
/// more than `max_candidates` graphs are generated.
std::vector<VassGraph> static_pre_basis(const VassSpec& spec, const VassGraph& theta, const TopologyClass& cls,
                                        LetterId letter, std::size_t max_candidates = 1'000'000);

/// Union over all letters, minimized.
std::vector<VassGraph> static_pre_basis(const VassSpec& spec, const VassGraph& theta, const TopologyClass& cls);

/// OrderedSpace over labelled graphs of one topology class; labels are letters.
class GraphSpace {
public:
    using Config = VassGraph;

    GraphSpace(const VassSpec& spec, TopologyClass cls, std::size_t max_candidates = 1'000'000)
        : spec_(&spec), cls_(cls), max_candidates_(max_candidates) {}

    bool leq(const VassGraph& a, const VassGraph& b) const { return graph_leq(a, b); }
    bool covered_by_initial(const VassGraph& g) const;
    std::size_t label_count() const { return spec_->letter_count(); }
    std::vector<VassGraph> pre_basis(std::size_t letter, const VassGraph& g) const {
        return static_pre_basis(*spec_, g, cls_, static_cast<LetterId>(letter), max_candidates_);
    }

private:
    const VassSpec* spec_;
    TopologyClass cls_;
    std::size_t max_candidates_;
};

struct StaticResult {
    Verdict<VassGraph> verdict;
    std::optional<Run<VassConfig>> witness;
    /// Diameter/degree only: number of (graph, position) saturation runs.
    std::size_t seeds = 0;
    std::size_t shapes = 0;

    Outcome outcome() const { return verdict.outcome; }
};

/// path_bounded or clique semantics; throws std::invalid_argument otherwise.
StaticResult static_coverable(const VassSpec& spec, const VassConfig& target, const TopologyClass& cls,
                              const ResourceLimits& limits = {});

StaticResult diam_deg_coverable(const VassSpec& spec, const VassConfig& target, std::size_t k, std::size_t d,
                                std::size_t n_max, const ResourceLimits& limits = {});

/// Replays a positive saturation chain forwards on a concrete network whose
/// shape is the chain's first graph. Returns nothing when some step cannot be
/// matched (possible when receives are incomplete).
std::optional<Run<VassConfig>> static_witness(const VassSpec& spec, const Verdict<VassGraph>& verdict,
                                              const TopologyClass& cls);

} // namespace wsbn
