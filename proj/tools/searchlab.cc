// Command-line front end: analytic sweeps, Monte-Carlo simulations, and
// planner runs with deterministic CSV/JSON artifacts.
//
//   searchlab analyze  --spec '{"figure":"1a","b":4,"dstar":6,"lengths":[6]}'
//   searchlab simulate --spec '{"type":"tree","b":3,"dstar":3,"g":1}'
//                      --algo brfs --trials 1000 --seed 7 --out runs.csv
//   searchlab plan     --spec '{"domain":"d.pddl","problem":"p.pddl"}'
//                      --algo ehc:brfs --trials 5 --format json
//   searchlab validate --spec '{"domain":"d.pddl","problem":"p.pddl","plan":"p.txt"}'
//
// --spec takes inline JSON or a path to a JSON file. Exit codes: 0 success,
// 1 domain failure (no solution, invalid plan, budget exhausted), 2 usage or
// parse error. Output files are byte-deterministic for a given manifest,
// independent of --jobs; wall-clock time goes to stderr only.

#include "searchlab/experiment.h"
#include "searchlab/strips.h"
#include "searchlab/synthetic.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;
namespace experiment = searchlab::experiment;
namespace strips = searchlab::strips;

constexpr int kExitSuccess = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string spec;
    std::string algo = "brfs";
    uint64_t trials = 1;
    uint64_t seed = 0;
    std::optional<uint64_t> max_generations;
    std::optional<uint64_t> max_walks;
    unsigned jobs = 1;
    std::string out;
    std::string format = "csv";
};

void add_common_flags(CLI::App& cmd, CommonOptions& opt, bool wants_algo) {
    cmd.add_option("--spec", opt.spec, "Inline JSON or path to a JSON spec file")
        ->required();
    if (wants_algo)
        cmd.add_option("--algo", opt.algo,
                       "brfs | crrw:L | luby:M | ehc:brfs | ehc:crrw:L | ehc:luby:M");
    cmd.add_option("--trials", opt.trials, "Number of independent seeded runs");
    cmd.add_option("--seed", opt.seed, "Master seed; trial i uses stream (seed, i)");
    cmd.add_option("--max-generations", opt.max_generations,
                   "Cap on generated states per trial");
    cmd.add_option("--max-walks", opt.max_walks, "Cap on started walks per trial");
    cmd.add_option("--jobs", opt.jobs, "Worker threads (never changes output bytes)");
    cmd.add_option("--out", opt.out, "Output path (stdout when omitted)");
    cmd.add_option("--format", opt.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

// --spec accepts the JSON text itself or a file containing it.
json load_spec(const std::string& spec) {
    std::string text = spec;
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '['))
        text = experiment::read_text_file(spec);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument("--spec is not valid JSON: " + std::string(e.what()));
    }
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + out_path);
    out << content;
}

experiment::Manifest make_manifest(const CommonOptions& opt) {
    experiment::Manifest manifest;
    manifest.spec = load_spec(opt.spec);
    manifest.algo = experiment::parse_algo(opt.algo);
    manifest.trials = opt.trials;
    manifest.master_seed = opt.seed;
    manifest.max_generations = opt.max_generations;
    manifest.max_walks = opt.max_walks;
    manifest.jobs = opt.jobs == 0 ? 1 : opt.jobs;
    return manifest;
}

int cmd_analyze(const CommonOptions& opt) {
    const experiment::AnalyzeResult result = experiment::run_analyze(load_spec(opt.spec));
    write_output(opt.out, opt.format == "json" ? experiment::to_json(result).dump(2) + "\n"
                                               : experiment::to_csv(result));
    return kExitSuccess;
}

int cmd_simulate(const CommonOptions& opt) {
    const experiment::Manifest manifest = make_manifest(opt);
    const experiment::SimulationResult result = experiment::run_simulation(manifest);
    for (const std::string& warning : result.warnings)
        std::cerr << "warning: " << warning << "\n";
    write_output(opt.out, opt.format == "json" ? experiment::to_json(result).dump(2) + "\n"
                                               : experiment::to_csv(result));
    return kExitSuccess;
}

int cmd_plan(const CommonOptions& opt) {
    if (opt.format == "csv")
        throw std::invalid_argument("plan reports are JSON; use --format json");
    const experiment::Manifest manifest = make_manifest(opt);
    const auto start = std::chrono::steady_clock::now();
    const experiment::PlanResult result = experiment::run_plan(manifest);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    // Timing is observability, not part of the deterministic artifact.
    std::fprintf(stderr, "wall_seconds: %.3f\n", wall.count());
    write_output(opt.out, experiment::to_json(result).dump(2) + "\n");
    return result.solved == result.trials ? kExitSuccess : kExitDomainFailure;
}

int cmd_validate(const CommonOptions& opt) {
    const json spec = load_spec(opt.spec);
    for (const char* field : {"domain", "problem", "plan"})
        if (!spec.contains(field))
            throw std::invalid_argument(
                "validate: spec must be {\"domain\": ..., \"problem\": ..., "
                "\"plan\": ...}");
    const auto [domain, problem] =
        strips::parse(experiment::read_text_file(spec.at("domain").get<std::string>()),
                      experiment::read_text_file(spec.at("problem").get<std::string>()));
    const strips::GroundTask task = strips::ground(domain, problem);
    const auto steps =
        strips::parse_plan(experiment::read_text_file(spec.at("plan").get<std::string>()));
    const strips::ValidationResult result = strips::validate_plan(task, steps);

    std::string report;
    if (opt.format == "json") {
        json j;
        j["valid"] = result.valid;
        if (result.failing_step)
            j["failing_step"] = *result.failing_step;
        if (!result.reason.empty())
            j["reason"] = result.reason;
        report = j.dump(2) + "\n";
    } else {
        report = result.valid ? "valid plan\n" : "invalid plan: " + result.reason + "\n";
    }
    write_output(opt.out, report);
    return result.valid ? kExitSuccess : kExitDomainFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected-runtime laboratory for breadth-first search, restarting "
                 "random walks, and enforced hill-climbing"};
    app.require_subcommand(1);

    CommonOptions analyze_opt, simulate_opt, plan_opt, validate_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "Closed-form sweep tables");
    add_common_flags(*analyze, analyze_opt, /*wants_algo=*/false);
    CLI::App* simulate = app.add_subcommand("simulate", "Seeded Monte-Carlo runs");
    add_common_flags(*simulate, simulate_opt, /*wants_algo=*/true);
    CLI::App* plan = app.add_subcommand("plan", "Run an EHC planner on PDDL files");
    add_common_flags(*plan, plan_opt, /*wants_algo=*/true);
    plan_opt.format = "json";
    CLI::App* validate = app.add_subcommand("validate", "Check a plan file");
    add_common_flags(*validate, validate_opt, /*wants_algo=*/false);
    validate_opt.format = "text";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints --help itself and returns 0 for it; real parse
        // errors map onto the usage exit code.
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(analyze_opt);
        if (simulate->parsed())
            return cmd_simulate(simulate_opt);
        if (plan->parsed())
            return cmd_plan(plan_opt);
        return cmd_validate(validate_opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const strips::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainFailure;
    }
}
