#include "wsbn/report.hpp"

#include <algorithm>
#include <json.hpp>

namespace wsbn {

using nlohmann::json;

namespace {

constexpr const char* kReportTag = "wsbn-report";
constexpr const char* kWitnessTag = "wsbn-witness";

void check_keys(const json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional,
                const char* where) {
    if (!j.is_object()) throw FormatError(std::string(where) + ": expected an object");
    for (const char* key : required) {
        if (!j.contains(key)) throw FormatError(std::string(where) + ": missing field \"" + key + "\"");
    }
    for (const auto& [key, value] : j.items()) {
        auto known = [&](const char* k) { return key == k; };
        if (std::none_of(required.begin(), required.end(), known) && std::none_of(optional.begin(), optional.end(), known)) {
            throw FormatError(std::string(where) + ": unknown field \"" + key + "\"");
        }
    }
}

json label_json(const WitnessLabel& l) {
    json j{{"state", l.state}};
    if (l.vector) j["vector"] = *l.vector;
    if (l.stack) j["stack"] = *l.stack;
    return j;
}

WitnessLabel label_from(const json& j) {
    check_keys(j, {"state"}, {"vector", "stack"}, "label");
    WitnessLabel l;
    l.state = j.at("state").get<std::string>();
    if (j.contains("vector")) l.vector = j.at("vector").get<std::vector<std::int64_t>>();
    if (j.contains("stack")) l.stack = j.at("stack").get<std::vector<std::string>>();
    return l;
}

json graph_json(const WitnessGraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    json labels = json::array();
    for (const auto& l : g.labels) labels.push_back(label_json(l));
    return {{"edges", edges}, {"labels", labels}};
}

WitnessGraph graph_from(const json& j) {
    check_keys(j, {"edges", "labels"}, {}, "graph");
    WitnessGraph g;
    for (const json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw FormatError("graph: an edge is a pair of vertex indices");
        g.edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    for (const json& l : j.at("labels")) g.labels.push_back(label_from(l));
    return g;
}

json run_json(const WitnessRun& w) {
    json steps = json::array();
    for (const WitnessStep& s : w.steps) {
        json step{{"kind", s.kind}, {"graph", graph_json(s.graph)}};
        if (s.kind == "broadcast") {
            step["vertex"] = s.vertex;
            step["letter"] = s.letter;
        }
        steps.push_back(std::move(step));
    }
    return {{"semantics", w.semantics},
            {"target", label_json(w.target)},
            {"initial", graph_json(w.initial)},
            {"steps", steps}};
}

WitnessRun run_from(const json& j) {
    check_keys(j, {"semantics", "target", "initial", "steps"}, {}, "run");
    WitnessRun w;
    w.semantics = j.at("semantics").get<std::string>();
    w.target = label_from(j.at("target"));
    w.initial = graph_from(j.at("initial"));
    for (const json& s : j.at("steps")) {
        check_keys(s, {"kind", "graph"}, {"vertex", "letter"}, "step");
        WitnessStep step;
        step.kind = s.at("kind").get<std::string>();
        if (step.kind != "broadcast" && step.kind != "reconfigure") {
            throw FormatError("step: kind must be \"broadcast\" or \"reconfigure\"");
        }
        if (step.kind == "broadcast") {
            if (!s.contains("vertex") || !s.contains("letter")) {
                throw FormatError("step: a broadcast needs \"vertex\" and \"letter\"");
            }
            step.vertex = s.at("vertex").get<std::size_t>();
            step.letter = s.at("letter").get<std::string>();
        } else if (s.contains("vertex") || s.contains("letter")) {
            throw FormatError("step: a reconfiguration has no vertex or letter");
        }
        step.graph = graph_from(s.at("graph"));
        w.steps.push_back(std::move(step));
    }
    return w;
}

json trace_json(const SaturationTrace& t) {
    json rounds = json::array();
    for (const SaturationRound& r : t.rounds) rounds.push_back({{"unlocked", r.unlocked}, {"queries", r.queries}});
    json queries = json::array();
    for (const UnlockQuery& q : t.queries) {
        queries.push_back({{"sweep", q.sweep},
                           {"letter", q.letter},
                           {"ca_index", q.ca_index},
                           {"config", q.config},
                           {"outcome", std::string(to_string(q.outcome))}});
    }
    return {{"rounds", rounds},
            {"final_unlocked", t.final_unlocked},
            {"queries", queries},
            {"unlock_round", t.unlock_round},
            {"unlock_witness", t.unlock_witness},
            {"c_total", t.c_total},
            {"letter_count", t.letter_count}};
}

Outcome outcome_from(const json& j) {
    auto o = outcome_from_string(j.get<std::string>());
    if (!o) throw FormatError("unknown verdict \"" + j.get<std::string>() + "\"");
    return *o;
}

SaturationTrace trace_from(const json& j) {
    check_keys(j, {"rounds", "final_unlocked", "queries", "unlock_round", "unlock_witness", "c_total", "letter_count"},
               {}, "trace");
    SaturationTrace t;
    for (const json& r : j.at("rounds")) {
        check_keys(r, {"unlocked", "queries"}, {}, "round");
        t.rounds.push_back({r.at("unlocked").get<std::vector<LetterId>>(), r.at("queries").get<std::size_t>()});
    }
    t.final_unlocked = j.at("final_unlocked").get<std::vector<LetterId>>();
    for (const json& q : j.at("queries")) {
        check_keys(q, {"sweep", "letter", "ca_index", "config", "outcome"}, {}, "query");
        t.queries.push_back({q.at("sweep").get<std::size_t>(), q.at("letter").get<LetterId>(),
                             q.at("ca_index").get<std::size_t>(), q.at("config").get<std::string>(),
                             outcome_from(q.at("outcome"))});
    }
    t.unlock_round = j.at("unlock_round").get<std::vector<std::size_t>>();
    t.unlock_witness = j.at("unlock_witness").get<std::vector<std::size_t>>();
    t.c_total = j.at("c_total").get<std::size_t>();
    t.letter_count = j.at("letter_count").get<std::size_t>();
    return t;
}

json query_json(const QueryReport& q) {
    json j{{"line", q.line},
           {"target", q.target},
           {"semantics", q.semantics},
           {"verdict", std::string(to_string(q.verdict))},
           {"seconds", q.seconds},
           {"stats", q.stats}};
    if (q.trace) j["trace"] = trace_json(*q.trace);
    if (q.witness) j["witness"] = run_json(*q.witness);
    if (q.witness_error) j["witness_error"] = *q.witness_error;
    return j;
}

QueryReport query_from(const json& j) {
    check_keys(j, {"line", "target", "semantics", "verdict", "seconds", "stats"}, {"trace", "witness", "witness_error"},
               "query report");
    QueryReport q;
    q.line = j.at("line").get<std::size_t>();
    q.target = j.at("target").get<std::string>();
    q.semantics = j.at("semantics").get<std::string>();
    q.verdict = outcome_from(j.at("verdict"));
    q.seconds = j.at("seconds").get<double>();
    q.stats = j.at("stats").get<std::map<std::string, std::uint64_t>>();
    if (j.contains("trace")) q.trace = trace_from(j.at("trace"));
    if (j.contains("witness")) q.witness = run_from(j.at("witness"));
    if (j.contains("witness_error")) q.witness_error = j.at("witness_error").get<std::string>();
    return q;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

void check_header(const json& j, const char* tag) {
    if (!j.is_object() || !j.contains("format") || !j.contains("version")) {
        throw FormatError("missing \"format\"/\"version\" header");
    }
    if (j.at("format") != tag) throw FormatError(std::string("expected format \"") + tag + "\"");
    if (j.at("version") != kReportVersion) throw FormatError("unsupported version");
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("ill-typed field: ") + e.what());
    }
}

} // namespace

std::optional<Outcome> outcome_from_string(std::string_view s) {
    for (Outcome o : {Outcome::Coverable, Outcome::NotCoverable, Outcome::ResourceExhausted}) {
        if (to_string(o) == s) return o;
    }
    return std::nullopt;
}

std::string emit_report(const Report& r) {
    json queries = json::array();
    for (const QueryReport& q : r.queries) queries.push_back(query_json(q));
    const json j{{"format", kReportTag}, {"version", kReportVersion}, {"model", r.model},
                 {"process", r.process},  {"letters", r.letters},    {"queries", queries}};
    return j.dump(2) + "\n";
}

Report read_report(const std::string& text) {
    const json j = parse_json(text);
    check_header(j, kReportTag);
    return guarded([&] {
        check_keys(j, {"format", "version", "model", "process", "letters", "queries"}, {}, "report");
        Report r;
        r.model = j.at("model").get<std::string>();
        r.process = j.at("process").get<std::string>();
        r.letters = j.at("letters").get<std::vector<std::string>>();
        for (const json& q : j.at("queries")) r.queries.push_back(query_from(q));
        return r;
    });
}

std::string emit_witness(const WitnessRun& w) {
    const json j{{"format", kWitnessTag}, {"version", kReportVersion}, {"run", run_json(w)}};
    return j.dump(2) + "\n";
}

WitnessRun read_witness(const std::string& text) {
    const json j = parse_json(text);
    check_header(j, kWitnessTag);
    return guarded([&] {
        check_keys(j, {"format", "version", "run"}, {}, "witness");
        return run_from(j.at("run"));
    });
}

std::vector<WitnessRun> read_witnesses(const std::string& text) {
    const json j = parse_json(text);
    if (j.is_object() && j.contains("format") && j.at("format") == kReportTag) {
        std::vector<WitnessRun> out;
        for (const QueryReport& q : read_report(text).queries) {
            if (q.witness) out.push_back(*q.witness);
        }
        return out;
    }
    return {read_witness(text)};
}

} // namespace wsbn
