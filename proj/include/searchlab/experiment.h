#ifndef SEARCHLAB_EXPERIMENT_H
#define SEARCHLAB_EXPERIMENT_H

#include "searchlab/rational.h"
#include "searchlab/run_stats.h"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

/*
  Experiment runner behind the command-line tool: algorithm-string parsing,
  seeded Monte-Carlo simulation with deterministic parallelism, analytic
  sweep tables, and planner runs. Everything here is deterministic given
  the manifest: worker count never changes any output byte.
*/
namespace searchlab::experiment {

struct AlgoSpec {
    enum class Kind { BRFS, CRRW, LUBY, EHC_BRFS, EHC_CRRW, EHC_LUBY };

    Kind kind = Kind::BRFS;
    uint64_t param = 0;  // walk length (crrw) or Luby multiplier

    bool uses_walks() const {
        return kind == Kind::CRRW || kind == Kind::LUBY || kind == Kind::EHC_CRRW ||
               kind == Kind::EHC_LUBY;
    }
    bool is_ehc() const {
        return kind == Kind::EHC_BRFS || kind == Kind::EHC_CRRW || kind == Kind::EHC_LUBY;
    }
    std::string canonical() const;
};

// Accepts brfs | crrw:L | luby:M | ehc:brfs | ehc:crrw:L | ehc:luby:M
// (L, M positive integers). Throws std::invalid_argument otherwise.
AlgoSpec parse_algo(const std::string& text);

// Restarting-walk runs get finite caps unless the caller overrides them:
// without at least one cap a walk policy may never terminate.
inline constexpr uint64_t kDefaultRrwGenerations = 100000000;  // 10^8
inline constexpr uint64_t kDefaultRrwWalks = 1000000;          // 10^6

// Stream indices >= 2^32 are reserved for per-trial goal placement, so
// trial streams (index = trial) never collide with placement streams.
inline constexpr uint64_t kPlacementStreamBase = uint64_t{1} << 32;

struct Manifest {
    nlohmann::json spec;  // task spec (simulate), sweep spec (analyze), files (plan)
    AlgoSpec algo;
    uint64_t trials = 1;
    uint64_t master_seed = 0;
    std::optional<uint64_t> max_generations;
    std::optional<uint64_t> max_walks;
    unsigned jobs = 1;

    Budget resolve_budget() const;
};

// ------------------------------------------------------------- simulate

struct TrialRow {
    uint64_t trial = 0;
    uint64_t seed = 0;  // master seed; (seed, trial) reproduces the run
    uint64_t goal_tests = 0;
    uint64_t generations = 0;
    uint64_t walks = 0;
    bool solved = false;
    std::optional<uint64_t> solution_length;
};

// Sample statistics of one counter over the solved trials.
struct MetricAggregate {
    std::string metric;
    uint64_t n = 0;     // solved trials
    Rational mean = 0;  // exact; meaningful when n >= 1
    Rational sd = 0;    // sample standard deviation; meaningful when n >= 2
    Rational se = 0;    // sd / sqrt(n); meaningful when n >= 2
};

struct SimulationResult {
    std::vector<TrialRow> rows;  // ordered by trial index
    std::vector<MetricAggregate> aggregates;
    uint64_t solved = 0;
    uint64_t trials = 0;
    std::vector<std::string> warnings;  // analytic prechecks; not part of the output file
};

SimulationResult run_simulation(const Manifest& manifest);
std::string to_csv(const SimulationResult& result);
nlohmann::json to_json(const SimulationResult& result);

// -------------------------------------------------------------- analyze

// A rendered table: cells are final strings (integers plain, rationals as
// 6-significant-digit decimals, "inf" for unbounded values).
struct AnalyzeResult {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/*
  Sweep spec forms:
    {"figure": "1a", "b": B, "dstar": D, "lengths": [L...]}
        expected-runtime curves over g = 1..B^D: columns g, e_brfs,
        rrw_bound_l<L>..., brfs_floor.
    {"figure": "1b", "b": B, "dstar_min": LO, "dstar_max": HI,
     "ell_errors": [E...]}   (E: integers or strings like "0.5", "1/4")
        goal-crossover curve: dstar, e, walk_len, crossover, crossover_ceil.
    {"figure": "1c", ...same fields as 1b...}
        density-crossover curve: dstar, e, walk_len, density.
*/
AnalyzeResult run_analyze(const nlohmann::json& spec);
std::string to_csv(const AnalyzeResult& result);
nlohmann::json to_json(const AnalyzeResult& result);

// ----------------------------------------------------------------- plan

struct PlanRun {
    uint64_t trial = 0;
    bool solved = false;            // search solved AND the plan validated
    std::string termination;        // "solved" | "no_solution" | "budget_exceeded"
    std::vector<std::string> plan;  // ground action names
    uint64_t plan_length = 0;
    uint64_t goal_tests = 0;
    uint64_t generations = 0;
    uint64_t walks = 0;
    uint64_t heuristic_evals = 0;
    uint64_t escape_searches = 0;
    bool validated = false;
};

struct PlanResult {
    std::string domain_path;
    std::string problem_path;
    std::string algo;
    std::vector<PlanRun> runs;
    uint64_t solved = 0;
    uint64_t trials = 0;
};

// spec: {"domain": "path", "problem": "path"}; algo must be an ehc variant.
PlanResult run_plan(const Manifest& manifest);
nlohmann::json to_json(const PlanResult& result);

// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace searchlab::experiment

#endif
