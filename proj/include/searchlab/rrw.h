#ifndef SEARCHLAB_RRW_H
#define SEARCHLAB_RRW_H

#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

#include "searchlab/luby.h"
#include "searchlab/random_walk.h"

namespace searchlab {

// Walk-length schedule for restarting random walks; next_depth receives the
// 1-based index of the walk about to start.
template <typename P>
concept DepthPolicy = requires(const P& p, uint64_t i) {
    { p.next_depth(i) } -> std::convertible_to<uint64_t>;
};

struct ConstantDepth {
    uint64_t walk_len;
    uint64_t next_depth(uint64_t) const { return walk_len; }
};

// Luby-scheduled lengths m * luby(i); competitive with the best fixed
// length without knowing it, at a logarithmic overhead factor.
struct LubyDepth {
    uint64_t multiplier;
    uint64_t next_depth(uint64_t walk_index) const { return multiplier * luby(walk_index); }
};

namespace internal {

template <SearchTask Task, DepthPolicy Policy>
SearchResult<typename Task::State> rrw_impl(const Task& task, const Policy& policy,
                                            RngStream& rng, const Budget& budget,
                                            RunStats& stats, bool test_root) {
    using State = typename Task::State;

    State root = task.initial_state();
    if (test_root) {
        ++stats.goal_tests;
        if (task.goal_test(root)) {
            stats.solution_length = 0;
            stats.terminated = Termination::SOLVED;
            return {Termination::SOLVED, Path<State>{{std::move(root)}}};
        }
    }

    std::vector<uint64_t> choices;
    std::vector<State> buf;
    for (;;) {
        if (!budget.walks_left(stats) || !budget.generations_left(stats)) {
            stats.terminated = Termination::BUDGET_EXCEEDED;
            return {Termination::BUDGET_EXCEEDED, std::nullopt};
        }
        const uint64_t walk_index = ++stats.walks_started;
        choices.clear();
        const auto outcome = walk_choices(task, root, policy.next_depth(walk_index), rng,
                                          budget, stats, choices, buf);
        if (!outcome) {
            stats.terminated = Termination::BUDGET_EXCEEDED;
            return {Termination::BUDGET_EXCEEDED, std::nullopt};
        }
        if (*outcome == WalkOutcome::SUCCESS) {
            Path<State> path = replay_choices(task, root, choices);
            stats.solution_length = path.num_transitions();
            stats.terminated = Termination::SOLVED;
            return {Termination::SOLVED, std::move(path)};
        }
        // DEAD_END or DEPTH_EXHAUSTED: restart from the initial state.
    }
}

}  // namespace internal

/*
  Restarting random walks: the initial state is goal-tested once, then
  fixed- or Luby-scheduled walks restart from it until one samples a goal.
  Memoryless between walks; expected goal tests are bounded by
  len/p_goal + 1 for constant length, and infinite when p_goal = 0 -- which
  is why a finite Budget is mandatory for tasks that may have no goal in
  walk range.
*/
template <SearchTask Task, DepthPolicy Policy>
SearchResult<typename Task::State> rrw(const Task& task, const Policy& policy, RngStream& rng,
                                       const Budget& budget, RunStats& stats) {
    return internal::rrw_impl(task, policy, rng, budget, stats, /*test_root=*/true);
}

}  // namespace searchlab

#endif
