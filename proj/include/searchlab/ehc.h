#ifndef SEARCHLAB_EHC_H
#define SEARCHLAB_EHC_H

#include <utility>
#include <variant>

#include "searchlab/brfs.h"
#include "searchlab/escape.h"
#include "searchlab/heuristic.h"
#include "searchlab/rrw.h"

namespace searchlab {

// Escape strategies for enforced hill-climbing: breadth-first search, or
// restarting random walks with a constant or Luby-scheduled walk length.
struct BrfsEscape {};
struct ConstantRrwEscape {
    uint64_t walk_len;
};
struct LubyRrwEscape {
    uint64_t multiplier;
};
using EscapeStrategy = std::variant<BrfsEscape, ConstantRrwEscape, LubyRrwEscape>;

namespace internal {
template <class... Ts>
struct overloads : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloads(Ts...) -> overloads<Ts...>;
}  // namespace internal

/*
  Enforced hill-climbing. From the current state, run the escape strategy on
  the re-rooted escape view (goal: a real goal or any state with heuristic
  value strictly below the current one), commit to the first escape found by
  appending its path, and repeat until the committed state is a real goal.

  Commitment is irrevocable: escape-local open/closed structures are
  dropped after every phase, so the heuristic value of the committed prefix
  decreases strictly per phase and the number of escape searches is bounded
  by h(s_I). An exhausted escape search means the current plateau has no
  exit; that is reported as EXHAUSTED (no solution) even if the global task
  is solvable, which is the known incompleteness of hill-climbing.

  Bookkeeping: the initial state is goal-tested once up front; inner escape
  searches skip their root test (the root is the committed state, already
  tested when it was generated), so goal_tests == generations + 1 holds for
  the whole run. Every state generated during an escape phase is evaluated
  by the heuristic at most once per phase via the escape view's memo.
*/
template <SearchTask Task, HeuristicFor<Task> H>
SearchResult<typename Task::State> ehc(const Task& task, const H& h,
                                       const EscapeStrategy& strategy, RngStream& rng,
                                       const Budget& budget, RunStats& stats) {
    using State = typename Task::State;

    State current = task.initial_state();
    ++stats.goal_tests;
    Path<State> plan{{current}};
    if (task.goal_test(current)) {
        stats.solution_length = 0;
        stats.terminated = Termination::SOLVED;
        return {Termination::SOLVED, std::move(plan)};
    }
    ++stats.heuristic_evals;
    HeuristicValue current_h = h.evaluate(current);
    if (is_infinite_h(current_h)) {
        stats.terminated = Termination::EXHAUSTED;
        return {Termination::EXHAUSTED, std::nullopt};
    }

    for (;;) {
        auto escape = make_escape_task(task, h, current, current_h, stats);
        ++stats.escape_searches;
        SearchResult<State> found = std::visit(
            internal::overloads{
                [&](const BrfsEscape&) {
                    return internal::brfs_impl(escape, rng, budget, stats, /*test_root=*/false);
                },
                [&](const ConstantRrwEscape& c) {
                    return internal::rrw_impl(escape, ConstantDepth{c.walk_len}, rng, budget,
                                              stats, /*test_root=*/false);
                },
                [&](const LubyRrwEscape& l) {
                    return internal::rrw_impl(escape, LubyDepth{l.multiplier}, rng, budget,
                                              stats, /*test_root=*/false);
                },
            },
            strategy);

        if (found.terminated != Termination::SOLVED) {
            stats.terminated = found.terminated;
            return {found.terminated, std::nullopt};
        }

        plan = concat(plan, *found.path, ConcatForm::SHARED_ENDPOINT);
        current = plan.last();
        if (task.goal_test(current)) {  // re-check of a tested state; not counted
            stats.solution_length = plan.num_transitions();
            stats.terminated = Termination::SOLVED;
            return {Termination::SOLVED, std::move(plan)};
        }
        // Not a goal, so the escape fired on heuristic improvement; the value
        // is in the phase memo, no re-evaluation happens.
        current_h = escape.cached_h(current);
    }
}

}  // namespace searchlab

#endif
