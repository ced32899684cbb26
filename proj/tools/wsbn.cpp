// wsbn: coverability checker for broadcast networks of well-structured and
// pushdown processes.
//
// Exit status: 0 success, 1 input error, 2 resource exhaustion, 3 invalid
// witness run (replay only).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wsbn/model.hpp"
#include "wsbn/report.hpp"
#include "wsbn/runner.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kInvalidRun = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

wsbn::ModelFile load(const std::string& path) { return wsbn::parse_model(slurp(path)); }

int verify(const std::string& path, const std::string& report_path, std::optional<std::size_t> max_basis,
           std::optional<std::size_t> max_iters, bool witnesses) {
    const wsbn::ModelFile model = load(path);
    wsbn::RunOptions options;
    options.max_basis = max_basis;
    options.max_iterations = max_iters;
    options.witnesses = witnesses;
    const wsbn::Report report = wsbn::run_queries(model, options, path);
    for (const wsbn::QueryReport& q : report.queries) {
        std::cout << "line " << q.line << ": cover " << q.target << " under " << q.semantics << ": "
                  << wsbn::to_string(q.verdict) << " (" << std::fixed << std::setprecision(3) << q.seconds << " s)";
        if (q.witness) {
            const std::size_t n = q.witness->initial.labels.size();
            std::cout << ", witness " << n << (n == 1 ? " node / " : " nodes / ") << q.witness->steps.size()
                      << " steps";
        } else if (q.witness_error) {
            std::cout << ", no witness: " << *q.witness_error;
        }
        std::cout << "\n";
    }
    if (!report_path.empty()) write_file(report_path, wsbn::emit_report(report));
    return wsbn::exit_status(report);
}

int explore(const std::string& path, std::size_t nodes, std::size_t depth, std::int64_t cap,
            const std::string& witness_path) {
    const wsbn::ModelFile model = load(path);
    bool written = false;
    for (const wsbn::Query& q : model.queries) {
        const wsbn::ExploreSummary s = wsbn::explore_query(model, q, nodes, depth, cap);
        std::cout << "line " << q.line << ": cover " << model.format_target(q) << " under "
                  << wsbn::format_semantics(q.semantics) << ": ";
        if (s.witness) {
            std::cout << "found a run with " << s.witness->steps.size() << " steps";
            if (!witness_path.empty() && !written) {
                write_file(witness_path, wsbn::emit_witness(*s.witness));
                written = true;
                std::cout << " (written to " << witness_path << ")";
            }
        } else {
            std::cout << "no run within " << nodes << " nodes and " << depth << " broadcasts";
            if (s.saturated && !s.cap_hit) std::cout << " (search space exhausted)";
            if (s.cap_hit) std::cout << " (magnitude cap " << cap << " reached)";
        }
        std::cout << ", " << s.states << " states\n";
    }
    return 0;
}

int replay(const std::string& path, const std::string& witness_path) {
    const wsbn::ModelFile model = load(path);
    const std::vector<wsbn::WitnessRun> runs = wsbn::read_witnesses(slurp(witness_path));
    if (runs.empty()) {
        std::cerr << "wsbn: " << witness_path << " contains no witness run\n";
        return kInputError;
    }
    bool all_valid = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const wsbn::ReplayResult r = wsbn::replay_witness(model, runs[i]);
        std::cout << "run " << i + 1 << " (" << runs[i].semantics << ", " << runs[i].steps.size() << " steps): ";
        if (r) {
            std::cout << "valid\n";
        } else {
            all_valid = false;
            std::cout << "invalid";
            if (r.failing_step < runs[i].steps.size()) std::cout << " at step " << r.failing_step + 1;
            std::cout << ": " << r.reason << "\n";
        }
    }
    return all_valid ? 0 : kInvalidRun;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverability checker for broadcast networks of well-structured and pushdown processes"};
    app.require_subcommand(1);

    std::string model_path;
    std::string report_path;
    std::optional<std::size_t> max_basis;
    std::optional<std::size_t> max_iters;
    bool no_witness = false;
    auto* verify_cmd = app.add_subcommand("verify", "Decide every query in a model file");
    verify_cmd->add_option("file", model_path, "Model file")->required();
    verify_cmd->add_option("--report", report_path, "Write a JSON report to this path");
    verify_cmd->add_option("--max-basis", max_basis, "Basis size limit for queries without their own");
    verify_cmd->add_option("--max-iters", max_iters, "Iteration limit for queries without their own");
    verify_cmd->add_flag("--no-witness", no_witness, "Skip witness construction");

    std::size_t nodes = 1;
    std::size_t depth = 0;
    std::int64_t cap = 8;
    std::string witness_out;
    auto* explore_cmd = app.add_subcommand("explore", "Bounded forward search for a covering run");
    explore_cmd->add_option("file", model_path, "Model file")->required();
    explore_cmd->add_option("--nodes", nodes, "Number of nodes")->required()->check(CLI::Range(1, 6));
    explore_cmd->add_option("--depth", depth, "Maximum number of broadcasts")->required();
    explore_cmd->add_option("--counter-cap", cap, "Prune configurations above this counter value or stack height");
    explore_cmd->add_option("--witness", witness_out, "Write the first run found to this path");

    std::string witness_in;
    auto* replay_cmd = app.add_subcommand("replay", "Validate witness runs against a model");
    replay_cmd->add_option("file", model_path, "Model file")->required();
    replay_cmd->add_option("--witness", witness_in, "Witness file or report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*verify_cmd) return verify(model_path, report_path, max_basis, max_iters, !no_witness);
        if (*explore_cmd) return explore(model_path, nodes, depth, cap, witness_out);
        if (*replay_cmd) return replay(model_path, witness_in);
    } catch (const wsbn::ParseError& e) {
        std::cerr << model_path << ": " << e.what() << "\n";
        return kInputError;
    } catch (const wsbn::ResourceExhausted& e) {
        std::cerr << "wsbn: resource limit reached: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "wsbn: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
