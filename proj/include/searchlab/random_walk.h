#ifndef SEARCHLAB_RANDOM_WALK_H
#define SEARCHLAB_RANDOM_WALK_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "searchlab/brfs.h"
#include "searchlab/path.h"
#include "searchlab/rng.h"
#include "searchlab/run_stats.h"
#include "searchlab/task.h"

namespace searchlab {

enum class WalkOutcome {
    SUCCESS,          // a sampled state satisfied the goal test
    DEAD_END,         // reached a state with no successors before the limit
    DEPTH_EXHAUSTED,  // took max_depth steps without hitting a goal
};

namespace internal {

/*
  One unbiased random walk of at most max_depth steps from `start`. Each
  step samples uniformly among the successors of the current state; the
  sampled state is counted as a generation and goal-tested. The start state
  is not tested here (restart loops test it once up front). Only the choice
  indices are recorded; successful walks are replayed into a Path so the
  overwhelmingly common failed walk allocates nothing.

  Returns nullopt if the generation budget ran out mid-walk.
*/
template <SearchTask Task>
std::optional<WalkOutcome> walk_choices(const Task& task, const typename Task::State& start,
                                        uint64_t max_depth, RngStream& rng,
                                        const Budget& budget, RunStats& stats,
                                        std::vector<uint64_t>& choices,
                                        std::vector<typename Task::State>& buf) {
    using State = typename Task::State;
    State cur = start;
    for (uint64_t step = 0; step < max_depth; ++step) {
        size_t n;
        if constexpr (IndexedSuccessorTask<Task>) {
            n = task.successor_count(cur);
        } else {
            buf.clear();
            task.append_successors(cur, buf);
            n = buf.size();
        }
        if (n == 0)
            return WalkOutcome::DEAD_END;
        if (!budget.generations_left(stats))
            return std::nullopt;
        const uint64_t i = rng.uniform_below(n);
        if constexpr (IndexedSuccessorTask<Task>)
            cur = task.successor_at(cur, static_cast<size_t>(i));
        else
            cur = std::move(buf[i]);
        choices.push_back(i);
        ++stats.generations;
        ++stats.goal_tests;
        if (task.goal_test(cur))
            return WalkOutcome::SUCCESS;
    }
    return WalkOutcome::DEPTH_EXHAUSTED;
}

// Rebuild the state sequence of a walk from its recorded choices.
template <SearchTask Task>
Path<typename Task::State> replay_choices(const Task& task, typename Task::State start,
                                          const std::vector<uint64_t>& choices) {
    using State = typename Task::State;
    Path<State> path;
    path.states.reserve(choices.size() + 1);
    path.states.push_back(std::move(start));
    std::vector<State> buf;
    for (const uint64_t i : choices) {
        const State& cur = path.states.back();
        if constexpr (IndexedSuccessorTask<Task>) {
            path.states.push_back(task.successor_at(cur, static_cast<size_t>(i)));
        } else {
            buf.clear();
            task.append_successors(cur, buf);
            path.states.push_back(std::move(buf[i]));
        }
    }
    return path;
}

}  // namespace internal

template <typename State>
struct WalkResult {
    WalkOutcome outcome;
    Path<State> path;  // walk prefix walked so far; ends at a goal on SUCCESS
};

// Single unbiased random walk from the initial state. Sampled states are
// goal-tested; the start state is not (callers running restart loops test
// it exactly once before the first walk).
template <SearchTask Task>
WalkResult<typename Task::State> random_walk(const Task& task, uint64_t max_depth,
                                             RngStream& rng, RunStats& stats) {
    std::vector<uint64_t> choices;
    std::vector<typename Task::State> buf;
    ++stats.walks_started;
    const auto outcome = internal::walk_choices(task, task.initial_state(), max_depth,
                                                rng, Budget{}, stats, choices, buf);
    return {*outcome, internal::replay_choices(task, task.initial_state(), choices)};
}

}  // namespace searchlab

#endif
