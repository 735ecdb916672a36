// actflood: command-line driver for typed configuration-model flooding runs.
//
//   actflood validate   SPEC [--out report.json]
//   actflood generate   SPEC [--seed S] [--out edges.txt]
//   actflood flood      (--spec SPEC | --graph EDGES) [--lambda11 L] [--lambda12 L]
//                       [--source ID|uniform] [--seed S] [--out row.csv]
//   actflood experiment --config PLAN --out DIR [--check] [--threads N]
//
// Exit codes: 0 success, 1 validation or verdict failure, 2 usage/config
// error, 3 generation saturation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "actflood/degree_model.hpp"
#include "actflood/errors.hpp"
#include "actflood/experiment.hpp"
#include "actflood/fpp.hpp"
#include "actflood/graph_gen.hpp"
#include "actflood/io.hpp"
#include "actflood/rng.hpp"

namespace {

using namespace actflood;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSaturation = 3;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return in;
}

DegreeSpec load_spec(const std::string& path) {
    auto in = open_input(path);
    return read_spec(in);
}

// Writes to `path`, or stdout when the path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    fn(out);
}

struct ValidateArgs {
    std::string spec;
    std::string out;
};

int cmd_validate(const ValidateArgs& args) {
    const auto spec = load_spec(args.spec);
    const auto report = validate_spec(spec);

    for (const auto& rule : report.rules) {
        std::cout << (rule.passed ? "PASS " : "FAIL ") << rule.id << "  " << rule.description;
        if (!rule.detail.empty()) std::cout << "  [" << rule.detail << "]";
        std::cout << '\n';
    }
    std::cout << (report.all_passed() ? "valid" : "invalid") << " (n1=" << spec.n1
              << ", n2=" << spec.n2 << ")\n";

    if (!args.out.empty()) {
        nlohmann::json doc;
        doc["n1"] = spec.n1;
        doc["n2"] = spec.n2;
        doc["valid"] = report.all_passed();
        for (const auto& rule : report.rules) {
            doc["rules"].push_back({{"id", rule.id},
                                    {"description", rule.description},
                                    {"passed", rule.passed},
                                    {"detail", rule.detail}});
        }
        with_output(args.out, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    }
    return report.all_passed() ? kExitOk : kExitFailure;
}

struct GenerateArgs {
    std::string spec;
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    std::size_t max_attempts = kDefaultMaxAttempts;
    bool erased = false;
};

int cmd_generate(const GenerateArgs& args) {
    const auto spec = load_spec(args.spec);
    Rng rng(args.seed);
    const auto mode = args.erased ? SimplicityMode::Erase : SimplicityMode::Reject;
    const auto gen = generate_simple(spec, rng, args.max_attempts, mode);
    if (args.erased) std::cerr << "note: erased multigraph (off-model)\n";
    const EdgeListHeader header{spec.n1, spec.n2, args.seed, gen.attempts};
    with_output(args.out, [&](std::ostream& out) {
        write_edge_list(out, gen.graph.canonical(), header);
    });
    std::cerr << "generated " << gen.graph.edge_count() << " edges in " << gen.attempts
              << " attempt(s)\n";
    return kExitOk;
}

struct FloodArgs {
    std::string spec;
    std::string graph;
    std::string out;
    std::string reach_curve;
    std::string source = "uniform";
    std::uint64_t seed = kDefaultSeed;
    double lambda11 = 1.0;
    double lambda12 = 1.0;
    std::size_t max_attempts = kDefaultMaxAttempts;
    bool erased = false;
    bool keep_unreachable = false;
};

int cmd_flood(const FloodArgs& args) {
    Rng rng(args.seed);
    TypedMultigraph graph;
    std::optional<std::vector<double>> weights;
    if (!args.graph.empty()) {
        auto in = open_input(args.graph);
        auto loaded = read_edge_list(in);
        graph = std::move(loaded.graph);
        weights = std::move(loaded.weights);
    } else {
        const auto mode = args.erased ? SimplicityMode::Erase : SimplicityMode::Reject;
        graph = generate_simple(load_spec(args.spec), rng, args.max_attempts, mode).graph;
    }
    if (graph.n1() == 0) throw PreconditionError("graph has no active nodes");

    const auto weighted = weights ? WeightedGraph(graph, std::move(*weights))
                                  : sample_weights(graph, args.lambda11, args.lambda12, rng);

    NodeId source = 0;
    if (args.source == "uniform") {
        source = static_cast<NodeId>(rng.below(graph.n1()));
    } else {
        std::uint64_t id = 0;
        std::istringstream parse(args.source);
        if (!(parse >> id) || !parse.eof()) {
            throw ConfigError("--source must be a node id or 'uniform'");
        }
        if (id >= graph.node_count()) throw PreconditionError("source " + args.source + " is not a node");
        source = static_cast<NodeId>(id);
    }

    const auto result = flooding(weighted, source, !args.reach_curve.empty());
    if (result.unreachable_count > 0 && !args.keep_unreachable) {
        std::cerr << "error: " << result.unreachable_count
                  << " node(s) have no walkable path from the source; pass --keep-unreachable "
                     "to report flood=inf\n";
        return kExitFailure;
    }
    with_output(args.out, [&](std::ostream& out) {
        write_fpp_header(out);
        write_fpp_row(out, result);
    });
    if (!args.reach_curve.empty()) {
        with_output(args.reach_curve, [&](std::ostream& out) { write_reach_curve(out, result.reach_curve); });
    }
    return kExitOk;
}

struct ExperimentArgs {
    std::string config;
    std::string out;
    std::string records;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 1;
    bool check = false;
};

void print_failure_table(std::ostream& os, const std::vector<KappaSummary>& table) {
    os << "kappa,n_success,n_failed,n_discarded\n";
    for (const auto& s : table) {
        os << s.kappa << ',' << s.n_success << ',' << s.n_failed << ',' << s.n_discarded << '\n';
    }
}

int cmd_experiment(const ExperimentArgs& args) {
    auto plan_in = open_input(args.config);
    auto plan = read_plan(plan_in);
    if (args.seed) plan.base_seed = *args.seed;

    std::filesystem::create_directories(args.out);
    const std::filesystem::path dir(args.out);

    std::vector<KappaSummary> summaries;
    if (!args.records.empty()) {
        auto in = open_input(args.records);
        const auto records = read_records_csv(in);
        std::vector<double> limits;
        for (auto kappa : plan.kappa_grid) limits.push_back(plan_limit(plan, kappa));
        summaries = summarize(records, plan.kappa_grid, limits);
    } else {
        ExperimentResult result;
        try {
            result = run_experiment(plan, args.threads);
        } catch (const ExperimentAborted& err) {
            std::cerr << "error: " << err.what() << '\n';
            print_failure_table(std::cerr, err.table());
            return kExitSaturation;
        }
        with_output((dir / "records.csv").string(),
                    [&](std::ostream& out) { write_records_csv(out, result.records); });
        summaries = std::move(result.summaries);
    }
    with_output((dir / "summary.csv").string(),
                [&](std::ostream& out) { write_summary_csv(out, summaries); });

    for (const auto& s : summaries) {
        std::cout << "kappa=" << s.kappa << " success=" << s.n_success << " failed=" << s.n_failed
                  << " discarded=" << s.n_discarded << " median=" << format_double(s.median_norm)
                  << " limit=" << format_double(s.limit) << " gap=" << format_double(s.abs_gap)
                  << '\n';
    }

    try {
        const auto report = convergence_report(summaries, plan.check_band);
        std::cout << "trend: " << report.inversions << " inversion(s), "
                  << (report.trend_pass ? "pass" : "fail");
        if (report.band_pass) std::cout << "; band: " << (*report.band_pass ? "pass" : "fail");
        std::cout << "\nverdict: " << (report.verdict ? "PASS" : "FAIL") << '\n';
        if (args.check && !report.verdict) return kExitFailure;
    } catch (const RefusalError& err) {
        std::cout << "verdict: unavailable (" << err.what() << ")\n";
        if (args.check) return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flooding times on typed (active/passive) random graphs"};
    app.require_subcommand(1);

    ValidateArgs validate;
    auto* validate_cmd = app.add_subcommand("validate", "Check a degree spec for realizability");
    validate_cmd->add_option("spec", validate.spec, "Degree spec file")->required();
    validate_cmd->add_option("--out", validate.out, "Write a JSON report here");

    GenerateArgs generate;
    auto* generate_cmd = app.add_subcommand("generate", "Sample a simple graph and dump its edges");
    generate_cmd->add_option("spec", generate.spec, "Degree spec file")->required();
    generate_cmd->add_option("--seed", generate.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--out", generate.out, "Edge-list output (default stdout)");
    generate_cmd->add_option("--max-attempts", generate.max_attempts)->capture_default_str();
    generate_cmd->add_flag("--erased", generate.erased, "Erase loops/multi-edges instead of rejecting (off-model)");

    FloodArgs flood;
    auto* flood_cmd = app.add_subcommand("flood", "Flooding time from one active source");
    auto* spec_opt = flood_cmd->add_option("--spec", flood.spec, "Degree spec to sample a graph from");
    auto* graph_opt = flood_cmd->add_option("--graph", flood.graph, "Edge-list file (weights optional)");
    spec_opt->excludes(graph_opt);
    flood_cmd->add_option("--lambda11", flood.lambda11, "Rate of 11-edge weights")->capture_default_str();
    flood_cmd->add_option("--lambda12", flood.lambda12, "Rate of 12-edge weights")->capture_default_str();
    flood_cmd->add_option("--source", flood.source, "Active node id or 'uniform'")->capture_default_str();
    flood_cmd->add_option("--seed", flood.seed, "Random seed")->capture_default_str();
    flood_cmd->add_option("--out", flood.out, "CSV output (default stdout)");
    flood_cmd->add_option("--reach-curve", flood.reach_curve, "Write k,T(k) pairs here");
    flood_cmd->add_option("--max-attempts", flood.max_attempts)->capture_default_str();
    flood_cmd->add_flag("--erased", flood.erased, "Erased multigraph (off-model)");
    flood_cmd->add_flag("--keep-unreachable", flood.keep_unreachable, "Report flood=inf instead of failing");

    ExperimentArgs experiment;
    auto* experiment_cmd = app.add_subcommand("experiment", "Monte Carlo run over a kappa grid");
    experiment_cmd->add_option("--config", experiment.config, "Plan file")->required();
    experiment_cmd->add_option("--out", experiment.out, "Output directory")->required();
    experiment_cmd->add_option("--seed", experiment.seed, "Override the plan's base_seed");
    experiment_cmd->add_option("--threads", experiment.threads, "Worker threads")->capture_default_str();
    experiment_cmd->add_option("--records", experiment.records, "Summarize an existing records CSV instead of simulating");
    experiment_cmd->add_flag("--check", experiment.check, "Exit 1 unless the convergence verdict passes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(validate);
        if (*generate_cmd) return cmd_generate(generate);
        if (*flood_cmd) {
            if (flood.spec.empty() == flood.graph.empty()) {
                throw ConfigError("flood needs exactly one of --spec or --graph");
            }
            return cmd_flood(flood);
        }
        if (*experiment_cmd) return cmd_experiment(experiment);
    } catch (const SaturationError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitSaturation;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
