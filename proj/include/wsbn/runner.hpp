#pragma once

// Dispatches parsed queries to the deciders and assembles reports.

#include <optional>
#include <string>

#include "wsbn/model.hpp"
#include "wsbn/network.hpp"
#include "wsbn/report.hpp"

namespace wsbn {

struct RunOptions {
    /// Used for queries that do not set their own limits.
    std::optional<std::size_t> max_basis;
    std::optional<std::size_t> max_iterations;
    bool witnesses = true;
    InvariantAudit* audit = nullptr;
};

QueryReport run_query(const ModelFile& model, const Query& query, const RunOptions& options = {});
Report run_queries(const ModelFile& model, const RunOptions& options = {}, std::string model_name = {});

/// 0 when every query completed, 2 when some query ran out of resources.
int exit_status(const Report& report);

WitnessRun to_witness(const ModelFile& model, const Query& query, const Run<VassConfig>& run);
WitnessRun to_witness(const ModelFile& model, const Query& query, const Run<PdsConfig>& run);

struct ExploreSummary {
    std::optional<WitnessRun> witness;
    std::size_t states = 0;
    bool cap_hit = false;
    bool saturated = false;
};

ExploreSummary explore_query(const ModelFile& model, const Query& query, std::size_t nodes, std::size_t depth,
                             std::int64_t magnitude_cap = 8);

/// Checks the run step by step against the model and that its final graph
/// covers the witness target.
ReplayResult replay_witness(const ModelFile& model, const WitnessRun& witness);

} // namespace wsbn
