#ifndef SEARCHLAB_RUN_STATS_H
#define SEARCHLAB_RUN_STATS_H

#include <cstdint>
#include <limits>
#include <optional>

namespace searchlab {

enum class Termination {
    SOLVED,           // a valid path to a goal state was returned
    EXHAUSTED,        // the reachable space was provably exhausted (no solution)
    BUDGET_EXCEEDED,  // a generation or walk cap fired before a decision
};

/*
  Counters accumulated across one top-level search run. The bookkeeping
  contract for every search entry point (brfs, rrw, ehc): the initial state
  is goal-tested exactly once, every generated state is goal-tested exactly
  once at generation time, and nothing else is tested. Hence
  goal_tests == generations + 1 always holds after a run.
*/
struct RunStats {
    uint64_t goal_tests = 0;
    uint64_t generations = 0;
    uint64_t heuristic_evals = 0;
    uint64_t walks_started = 0;
    uint64_t escape_searches = 0;
    std::optional<uint64_t> solution_length;  // transitions, set when solved
    Termination terminated = Termination::EXHAUSTED;
};

// Caps on cumulative RunStats counters. Defaults are unlimited; callers that
// run restarting walks on tasks with possibly-zero goal probability must set
// at least one finite cap or the run may never terminate.
struct Budget {
    static constexpr uint64_t kUnlimited = std::numeric_limits<uint64_t>::max();

    uint64_t max_generations = kUnlimited;
    uint64_t max_walks = kUnlimited;

    bool generations_left(const RunStats& stats) const {
        return stats.generations < max_generations;
    }
    bool walks_left(const RunStats& stats) const {
        return stats.walks_started < max_walks;
    }
};

}  // namespace searchlab

#endif
