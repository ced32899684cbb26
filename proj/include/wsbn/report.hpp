#pragma once

// Machine-readable reports and witness files (JSON). Both carry a "format"
// tag and a "version" number; readers reject unknown fields.
//
// Witness labels: {"state": "q0", "vector": [1]} for finite/VASS processes,
// {"state": "q0", "stack": ["A", "bot"]} for pushdown processes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsbn/common.hpp"
#include "wsbn/reconfig.hpp"

namespace wsbn {

inline constexpr int kReportVersion = 1;

class FormatError : public Error {
public:
    using Error::Error;
};

struct WitnessLabel {
    std::string state;
    std::optional<std::vector<std::int64_t>> vector;
    std::optional<std::vector<std::string>> stack;

    friend bool operator==(const WitnessLabel&, const WitnessLabel&) = default;
};

struct WitnessGraph {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<WitnessLabel> labels;

    friend bool operator==(const WitnessGraph&, const WitnessGraph&) = default;
};

struct WitnessStep {
    /// "broadcast" or "reconfigure".
    std::string kind;
    std::size_t vertex = 0;
    std::string letter;
    WitnessGraph graph;

    friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

struct WitnessRun {
    std::string semantics;
    WitnessLabel target;
    WitnessGraph initial;
    std::vector<WitnessStep> steps;

    friend bool operator==(const WitnessRun&, const WitnessRun&) = default;
};

struct QueryReport {
    std::size_t line = 0;
    std::string target;
    std::string semantics;
    Outcome verdict = Outcome::NotCoverable;
    double seconds = 0.0;
    std::map<std::string, std::uint64_t> stats;
    std::optional<SaturationTrace> trace;
    std::optional<WitnessRun> witness;
    std::optional<std::string> witness_error;

    friend bool operator==(const QueryReport&, const QueryReport&) = default;
};

struct Report {
    std::string model;
    std::string process;
    std::vector<std::string> letters;
    std::vector<QueryReport> queries;

    friend bool operator==(const Report&, const Report&) = default;
};

std::string emit_report(const Report& r);
/// Throws FormatError on malformed input, a wrong format tag or version, or
/// unknown fields.
Report read_report(const std::string& text);

std::string emit_witness(const WitnessRun& w);
WitnessRun read_witness(const std::string& text);

/// Accepts either a witness file or a report; returns every witness inside.
std::vector<WitnessRun> read_witnesses(const std::string& text);

std::optional<Outcome> outcome_from_string(std::string_view s);

} // namespace wsbn
