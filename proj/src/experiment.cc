#include "searchlab/experiment.h"

#include "searchlab/analysis.h"
#include "searchlab/brfs.h"
#include "searchlab/ehc.h"
#include "searchlab/rrw.h"
#include "searchlab/strips.h"
#include "searchlab/synthetic.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

using nlohmann::json;

namespace searchlab::experiment {

namespace {

using synthetic::DeadLeafTreeSpec;
using synthetic::StarTaskSpec;
using synthetic::TreeTaskSpec;
using synthetic::UhrChainSpec;

[[noreturn]] void bad_algo(const std::string& text) {
    throw std::invalid_argument(
        "bad algorithm '" + text +
        "'; expected brfs, crrw:L, luby:M, ehc:brfs, ehc:crrw:L, or ehc:luby:M");
}

uint64_t parse_positive(const std::string& text, const std::string& whole) {
    if (text.empty() || text.size() > 18)
        bad_algo(whole);
    uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            bad_algo(whole);
        value = value * 10 + static_cast<uint64_t>(c - '0');
    }
    if (value == 0)
        bad_algo(whole);
    return value;
}

}  // namespace

std::string AlgoSpec::canonical() const {
    switch (kind) {
        case Kind::BRFS:
            return "brfs";
        case Kind::CRRW:
            return "crrw:" + std::to_string(param);
        case Kind::LUBY:
            return "luby:" + std::to_string(param);
        case Kind::EHC_BRFS:
            return "ehc:brfs";
        case Kind::EHC_CRRW:
            return "ehc:crrw:" + std::to_string(param);
        case Kind::EHC_LUBY:
            return "ehc:luby:" + std::to_string(param);
    }
    return "";
}

AlgoSpec parse_algo(const std::string& text) {
    std::string rest = text;
    bool is_ehc = false;
    if (rest.rfind("ehc:", 0) == 0) {
        is_ehc = true;
        rest = rest.substr(4);
    }
    AlgoSpec algo;
    if (rest == "brfs") {
        algo.kind = is_ehc ? AlgoSpec::Kind::EHC_BRFS : AlgoSpec::Kind::BRFS;
        return algo;
    }
    if (rest.rfind("crrw:", 0) == 0) {
        algo.kind = is_ehc ? AlgoSpec::Kind::EHC_CRRW : AlgoSpec::Kind::CRRW;
        algo.param = parse_positive(rest.substr(5), text);
        return algo;
    }
    if (rest.rfind("luby:", 0) == 0) {
        algo.kind = is_ehc ? AlgoSpec::Kind::EHC_LUBY : AlgoSpec::Kind::LUBY;
        algo.param = parse_positive(rest.substr(5), text);
        return algo;
    }
    bad_algo(text);
}

Budget Manifest::resolve_budget() const {
    Budget budget;
    if (algo.uses_walks()) {
        budget.max_generations = kDefaultRrwGenerations;
        budget.max_walks = kDefaultRrwWalks;
    }
    if (max_generations)
        budget.max_generations = *max_generations;
    if (max_walks)
        budget.max_walks = *max_walks;
    return budget;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ------------------------------------------------------------- simulate

namespace {

// Runs `body(trial)` for every trial index on `jobs` threads (the calling
// thread is one of them). Trials are claimed from a shared counter, so the
// schedule is nondeterministic, but each body writes only to its own slot;
// callers emit results in index order, keeping output independent of the
// schedule. The first exception to arrive is rethrown.
template <typename Body>
void for_each_trial(uint64_t trials, unsigned jobs, const Body& body) {
    if (jobs <= 1 || trials <= 1) {
        for (uint64_t i = 0; i < trials; ++i)
            body(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&]() {
        for (;;) {
            const uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= trials)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(trials, std::memory_order_relaxed);  // stop claiming
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs - 1);
    for (unsigned t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

template <SearchTask Task>
SearchResult<typename Task::State> dispatch_basic(const Task& task, const AlgoSpec& algo,
                                                  RngStream& rng, const Budget& budget,
                                                  RunStats& stats) {
    switch (algo.kind) {
        case AlgoSpec::Kind::BRFS:
            return brfs(task, rng, budget, stats);
        case AlgoSpec::Kind::CRRW:
            return rrw(task, ConstantDepth{algo.param}, rng, budget, stats);
        case AlgoSpec::Kind::LUBY:
            return rrw(task, LubyDepth{algo.param}, rng, budget, stats);
        default:
            throw std::invalid_argument(
                "algorithm '" + algo.canonical() +
                "' needs a heuristic; synthetic specs other than uhr_chain provide none");
    }
}

EscapeStrategy escape_strategy(const AlgoSpec& algo) {
    switch (algo.kind) {
        case AlgoSpec::Kind::EHC_BRFS:
            return BrfsEscape{};
        case AlgoSpec::Kind::EHC_CRRW:
            return ConstantRrwEscape{algo.param};
        case AlgoSpec::Kind::EHC_LUBY:
            return LubyRrwEscape{algo.param};
        default:
            throw std::logic_error("not an ehc algorithm");
    }
}

// Closed-form sanity check before a long crrw run: warn when the expected
// runtime bound is infinite or above 1% of the generation budget.
void analytic_precheck(const TreeTaskSpec& spec, const AlgoSpec& algo, const Budget& budget,
                       std::vector<std::string>& warnings) {
    if (algo.kind != AlgoSpec::Kind::CRRW || spec.b < 2 || spec.deeper_levels > 0)
        return;
    const BigInt size_at = synthetic::tree_states_at(BigInt(spec.b), spec.dstar);
    const Rational p = algo.param >= spec.dstar ? Rational(BigInt(spec.g), size_at)
                                                : Rational(0);
    const analysis::Quantity bound = analysis::rrw_upper(algo.param, p);
    std::string text;
    if (bound.infinite) {
        text = "walk length " + std::to_string(algo.param) +
               " can never reach the goal depth (success probability 0); every trial "
               "will exhaust its budget";
    } else if (budget.max_generations != Budget::kUnlimited &&
               bound.value * 100 > Rational(BigInt(budget.max_generations))) {
        text = "expected runtime bound " + analysis::to_decimal(bound) +
               " exceeds 1% of the generation budget " +
               std::to_string(budget.max_generations);
    }
    if (!text.empty())
        warnings.push_back(std::move(text));
}

struct TrialOutcomes {
    std::vector<RunStats> stats;

    explicit TrialOutcomes(uint64_t trials) : stats(trials) {}
};

SimulationResult summarize(const Manifest& manifest, const TrialOutcomes& outcomes) {
    SimulationResult result;
    result.trials = manifest.trials;
    result.rows.reserve(manifest.trials);
    for (uint64_t i = 0; i < manifest.trials; ++i) {
        const RunStats& s = outcomes.stats[i];
        TrialRow row;
        row.trial = i;
        row.seed = manifest.master_seed;
        row.goal_tests = s.goal_tests;
        row.generations = s.generations;
        row.walks = s.walks_started;
        row.solved = s.terminated == Termination::SOLVED;
        row.solution_length = s.solution_length;
        result.solved += row.solved ? 1 : 0;
        result.rows.push_back(row);
    }

    const auto aggregate = [&](const std::string& metric, auto&& get) {
        MetricAggregate agg;
        agg.metric = metric;
        BigInt sum = 0, sum_sq = 0;
        for (const TrialRow& row : result.rows) {
            if (!row.solved)
                continue;
            const BigInt v(get(row));
            sum += v;
            sum_sq += v * v;
            ++agg.n;
        }
        if (agg.n >= 1)
            agg.mean = Rational(sum, BigInt(agg.n));
        if (agg.n >= 2) {
            const BigInt n(agg.n);
            const Rational variance(n * sum_sq - sum * sum, n * (n - 1));
            // Sample sd and se are reported as the exact rational image of
            // the correctly rounded double square root: deterministic bytes.
            const double sd = std::sqrt(variance.convert_to<double>());
            agg.sd = Rational(sd);
            agg.se = Rational(std::sqrt((variance / n).convert_to<double>()));
        }
        result.aggregates.push_back(std::move(agg));
    };
    aggregate("goal_tests", [](const TrialRow& r) { return r.goal_tests; });
    aggregate("generations", [](const TrialRow& r) { return r.generations; });
    aggregate("walks", [](const TrialRow& r) { return r.walks; });
    aggregate("solution_length",
              [](const TrialRow& r) { return r.solution_length.value_or(0); });
    return result;
}

}  // namespace

SimulationResult run_simulation(const Manifest& manifest) {
    if (manifest.trials < 1)
        throw std::invalid_argument("simulate: trials must be >= 1");
    const synthetic::TaskSpec spec = synthetic::parse_task_spec(manifest.spec);
    const Budget budget = manifest.resolve_budget();
    TrialOutcomes outcomes(manifest.trials);
    std::vector<std::string> warnings;

    std::visit(
        [&](const auto& s) {
            using Spec = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<Spec, UhrChainSpec>) {
                const auto task = synthetic::build_task(s);
                const synthetic::UhrChainHeuristic h{s.k};
                for_each_trial(manifest.trials, manifest.jobs, [&](uint64_t i) {
                    RngStream rng(manifest.master_seed, i);
                    if (manifest.algo.is_ehc())
                        ehc(task, h, escape_strategy(manifest.algo), rng, budget,
                            outcomes.stats[i]);
                    else
                        dispatch_basic(task, manifest.algo, rng, budget, outcomes.stats[i]);
                });
            } else {
                if (manifest.algo.is_ehc())
                    throw std::invalid_argument(
                        "algorithm '" + manifest.algo.canonical() +
                        "' needs a heuristic; synthetic specs other than uhr_chain "
                        "provide none");
                if constexpr (std::is_same_v<Spec, TreeTaskSpec>)
                    analytic_precheck(s, manifest.algo, budget, warnings);
                if (s.goal_seed) {
                    const auto task = synthetic::build_task(s);
                    for_each_trial(manifest.trials, manifest.jobs, [&](uint64_t i) {
                        RngStream rng(manifest.master_seed, i);
                        dispatch_basic(task, manifest.algo, rng, budget, outcomes.stats[i]);
                    });
                } else {
                    // Per-trial uniform goal placement from a reserved stream.
                    for_each_trial(manifest.trials, manifest.jobs, [&](uint64_t i) {
                        RngStream placement(manifest.master_seed, kPlacementStreamBase + i);
                        const auto task = synthetic::build_task(s, placement);
                        RngStream rng(manifest.master_seed, i);
                        dispatch_basic(task, manifest.algo, rng, budget, outcomes.stats[i]);
                    });
                }
            }
        },
        spec);

    SimulationResult result = summarize(manifest, outcomes);
    result.warnings = std::move(warnings);
    return result;
}

namespace {

std::string optional_u64(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : "";
}

void append_aggregate_csv(std::string& out, const MetricAggregate& agg) {
    out += "#agg," + agg.metric + ",";
    if (agg.n >= 1)
        out += to_decimal(agg.mean);
    out += ",";
    if (agg.n >= 2)
        out += to_decimal(agg.sd);
    out += ",";
    if (agg.n >= 2)
        out += to_decimal(agg.se);
    out += "," + std::to_string(agg.n) + "\n";
}

}  // namespace

std::string to_csv(const SimulationResult& result) {
    std::string out = "trial,seed,goal_tests,generations,walks,solved,solution_length\n";
    for (const TrialRow& row : result.rows) {
        out += std::to_string(row.trial) + "," + std::to_string(row.seed) + "," +
               std::to_string(row.goal_tests) + "," + std::to_string(row.generations) + "," +
               std::to_string(row.walks) + "," + (row.solved ? "true" : "false") + "," +
               optional_u64(row.solution_length) + "\n";
    }
    for (const MetricAggregate& agg : result.aggregates)
        append_aggregate_csv(out, agg);
    out += "#agg,solved," + std::to_string(result.solved) + ",,," +
           std::to_string(result.trials) + "\n";
    return out;
}

json to_json(const SimulationResult& result) {
    json rows = json::array();
    for (const TrialRow& row : result.rows) {
        json r;
        r["trial"] = row.trial;
        r["seed"] = row.seed;
        r["goal_tests"] = row.goal_tests;
        r["generations"] = row.generations;
        r["walks"] = row.walks;
        r["solved"] = row.solved;
        if (row.solution_length)
            r["solution_length"] = *row.solution_length;
        rows.push_back(std::move(r));
    }
    json aggregates = json::array();
    for (const MetricAggregate& agg : result.aggregates) {
        json a;
        a["metric"] = agg.metric;
        a["n"] = agg.n;
        if (agg.n >= 1) {
            a["mean"] = to_decimal(agg.mean);
            a["mean_exact"] = to_fraction(agg.mean);
        }
        if (agg.n >= 2) {
            a["sd"] = to_decimal(agg.sd);
            a["se"] = to_decimal(agg.se);
        }
        aggregates.push_back(std::move(a));
    }
    json out;
    out["rows"] = std::move(rows);
    out["aggregates"] = std::move(aggregates);
    out["solved"] = result.solved;
    out["trials"] = result.trials;
    return out;
}

// -------------------------------------------------------------- analyze

namespace {

void check_analyze_fields(const json& j, std::initializer_list<const char*> required) {
    for (const char* f : required)
        if (!j.contains(f))
            throw std::invalid_argument(std::string("analyze spec: missing field '") + f +
                                        "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = it.key() == "figure";
        for (const char* f : required)
            known = known || it.key() == f;
        if (!known)
            throw std::invalid_argument("analyze spec: unknown field '" + it.key() + "'");
    }
}

Rational json_rational(const json& v) {
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(BigInt(v.get<int64_t>()));
    throw std::invalid_argument(
        "analyze spec: fractional values take strings like \"0.5\" or \"1/4\"");
}

AnalyzeResult analyze_runtime_curves(const json& spec) {
    check_analyze_fields(spec, {"b", "dstar", "lengths"});
    const uint64_t b = spec.at("b").get<uint64_t>();
    const uint32_t dstar = spec.at("dstar").get<uint32_t>();
    std::vector<uint64_t> lengths;
    for (const json& l : spec.at("lengths"))
        lengths.push_back(l.get<uint64_t>());
    if (b < 2)
        throw std::invalid_argument("analyze spec: b must be >= 2");
    if (dstar < 1)
        throw std::invalid_argument("analyze spec: dstar must be >= 1");
    if (lengths.empty())
        throw std::invalid_argument("analyze spec: lengths must be non-empty");
    for (uint64_t l : lengths)
        if (l < dstar)
            throw std::invalid_argument(
                "analyze spec: every walk length must be >= dstar (success probability "
                "has no closed form below the goal depth)");

    const BigInt size_at = synthetic::tree_states_at(BigInt(b), dstar);
    if (size_at > BigInt(1) << 20)
        throw std::invalid_argument("analyze spec: b^dstar rows would exceed 2^20");
    const BigInt size_below = synthetic::tree_states_below(BigInt(b), dstar);

    AnalyzeResult out;
    out.columns = {"g", "e_brfs"};
    for (uint64_t l : lengths)
        out.columns.push_back("rrw_bound_l" + std::to_string(l));
    out.columns.push_back("brfs_floor");

    const uint64_t goals_max = size_at.convert_to<uint64_t>();
    for (uint64_t g = 1; g <= goals_max; ++g) {
        std::vector<std::string> row;
        row.push_back(std::to_string(g));
        row.push_back(to_decimal(analysis::expected_brfs(size_below, size_at, g)));
        const Rational p(BigInt(g), size_at);
        for (uint64_t l : lengths)
            row.push_back(analysis::to_decimal(analysis::rrw_upper(l, p)));
        row.push_back(size_below.str());
        out.rows.push_back(std::move(row));
    }
    return out;
}

AnalyzeResult analyze_crossover_curves(const json& spec, bool density) {
    check_analyze_fields(spec, {"b", "dstar_min", "dstar_max", "ell_errors"});
    const uint64_t b = spec.at("b").get<uint64_t>();
    const uint32_t dstar_min = spec.at("dstar_min").get<uint32_t>();
    const uint32_t dstar_max = spec.at("dstar_max").get<uint32_t>();
    std::vector<Rational> ell_errors;
    for (const json& e : spec.at("ell_errors"))
        ell_errors.push_back(json_rational(e));
    if (ell_errors.empty())
        throw std::invalid_argument("analyze spec: ell_errors must be non-empty");
    if (dstar_max - dstar_min > 4096)
        throw std::invalid_argument("analyze spec: dstar range too large");

    const auto points = analysis::crossover_curves(b, dstar_min, dstar_max, ell_errors);
    AnalyzeResult out;
    out.columns = {"dstar", "e", "walk_len"};
    if (density) {
        out.columns.push_back("density");
    } else {
        out.columns.push_back("crossover");
        out.columns.push_back("crossover_ceil");
    }
    for (const analysis::CrossoverPoint& p : points) {
        std::vector<std::string> row;
        row.push_back(std::to_string(p.dstar));
        row.push_back(to_decimal(p.ell_error));
        row.push_back(std::to_string(p.walk_len));
        if (density) {
            row.push_back(to_decimal(p.density));
        } else {
            row.push_back(to_decimal(p.crossover));
            row.push_back(ceil_rational(p.crossover).str());
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace

AnalyzeResult run_analyze(const json& spec) {
    if (!spec.is_object() || !spec.contains("figure"))
        throw std::invalid_argument(
            "analyze spec: expected an object with a 'figure' field (\"1a\", \"1b\", "
            "or \"1c\")");
    const std::string figure = spec.at("figure").get<std::string>();
    if (figure == "1a")
        return analyze_runtime_curves(spec);
    if (figure == "1b")
        return analyze_crossover_curves(spec, /*density=*/false);
    if (figure == "1c")
        return analyze_crossover_curves(spec, /*density=*/true);
    throw std::invalid_argument("analyze spec: unknown figure '" + figure + "'");
}

std::string to_csv(const AnalyzeResult& result) {
    std::string out;
    for (size_t i = 0; i < result.columns.size(); ++i)
        out += (i ? "," : "") + result.columns[i];
    out += "\n";
    for (const auto& row : result.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

json to_json(const AnalyzeResult& result) {
    json out;
    out["columns"] = result.columns;
    json rows = json::array();
    for (const auto& row : result.rows)
        rows.push_back(row);
    out["rows"] = std::move(rows);
    return out;
}

// ----------------------------------------------------------------- plan

PlanResult run_plan(const Manifest& manifest) {
    if (!manifest.algo.is_ehc())
        throw std::invalid_argument("plan: algorithm must be ehc:brfs, ehc:crrw:L, or "
                                    "ehc:luby:M");
    if (!manifest.spec.is_object() || !manifest.spec.contains("domain") ||
        !manifest.spec.contains("problem"))
        throw std::invalid_argument(
            "plan: spec must be {\"domain\": \"path\", \"problem\": \"path\"}");

    PlanResult result;
    result.domain_path = manifest.spec.at("domain").get<std::string>();
    result.problem_path = manifest.spec.at("problem").get<std::string>();
    result.algo = manifest.algo.canonical();
    result.trials = manifest.trials;

    const auto [domain, problem] = strips::parse(read_text_file(result.domain_path),
                                                 read_text_file(result.problem_path));
    const strips::GroundTask task = strips::ground(domain, problem);
    const strips::FfHeuristic heuristic(task);
    const Budget budget = manifest.resolve_budget();

    result.runs.resize(manifest.trials);
    for_each_trial(manifest.trials, manifest.jobs, [&](uint64_t i) {
        RngStream rng(manifest.master_seed, i);
        RunStats stats;
        const auto search =
            ehc(task, heuristic, escape_strategy(manifest.algo), rng, budget, stats);

        PlanRun& run = result.runs[i];
        run.trial = i;
        run.goal_tests = stats.goal_tests;
        run.generations = stats.generations;
        run.walks = stats.walks_started;
        run.heuristic_evals = stats.heuristic_evals;
        run.escape_searches = stats.escape_searches;
        switch (search.terminated) {
            case Termination::SOLVED:
                run.termination = "solved";
                break;
            case Termination::EXHAUSTED:
                run.termination = "no_solution";
                break;
            case Termination::BUDGET_EXCEEDED:
                run.termination = "budget_exceeded";
                break;
        }
        if (search.solved()) {
            const auto ids = task.actions_along(*search.path);
            if (ids) {
                run.validated = strips::validate_plan(task, *ids).valid;
                for (uint32_t id : *ids)
                    run.plan.push_back(task.actions[id].name);
                run.plan_length = run.plan.size();
            }
            run.solved = run.validated;
        }
    });
    for (const PlanRun& run : result.runs)
        result.solved += run.solved ? 1 : 0;
    return result;
}

json to_json(const PlanResult& result) {
    json runs = json::array();
    for (const PlanRun& run : result.runs) {
        json r;
        r["trial"] = run.trial;
        r["solved"] = run.solved;
        r["termination"] = run.termination;
        r["plan"] = run.plan;
        r["plan_length"] = run.plan_length;
        r["goal_tests"] = run.goal_tests;
        r["generations"] = run.generations;
        r["walks"] = run.walks;
        r["heuristic_evals"] = run.heuristic_evals;
        r["escape_searches"] = run.escape_searches;
        r["validated"] = run.validated;
        runs.push_back(std::move(r));
    }
    json out;
    out["domain"] = result.domain_path;
    out["problem"] = result.problem_path;
    out["algo"] = result.algo;
    out["runs"] = std::move(runs);
    out["solved"] = result.solved;
    out["trials"] = result.trials;
    return out;
}

}  // namespace searchlab::experiment
