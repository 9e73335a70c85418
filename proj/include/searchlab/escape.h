#ifndef SEARCHLAB_ESCAPE_H
#define SEARCHLAB_ESCAPE_H

#include <unordered_map>
#include <utility>
#include <vector>

#include "searchlab/heuristic.h"
#include "searchlab/run_stats.h"
#include "searchlab/task.h"

namespace searchlab {

/*
  View of a task re-rooted at an escape entry state. The goal test succeeds
  on real goals of the base task and on any state whose heuristic value is
  strictly below the entry's value, which is exactly the local search a
  hill-climber runs to leave a heuristic plateau or local minimum.

  Successors whose heuristic value is infinite are filtered out at
  generation time, so recognized dead ends are invisible to the search; a
  state all of whose successors are recognized dead ends simply has none.

  Heuristic values are memoized for the lifetime of the view (one escape
  phase), so each distinct state is evaluated at most once and the filter
  and the goal test share the same evaluation. The memo and scratch buffer
  make instances stateful: one view must not be shared across threads.
*/
template <SearchTask Task, HeuristicFor<Task> H>
class EscapeTask {
public:
    using State = typename Task::State;

    EscapeTask(const Task& base, const H& h, State entry, HeuristicValue entry_h,
               RunStats& stats)
        : base_(&base), h_(&h), entry_(std::move(entry)), entry_h_(entry_h), stats_(&stats) {}

    State initial_state() const { return entry_; }

    bool goal_test(const State& s) const {
        if (base_->goal_test(s))
            return true;
        return cached_h(s) < entry_h_;
    }

    void append_successors(const State& s, std::vector<State>& out) const {
        scratch_.clear();
        base_->append_successors(s, scratch_);
        for (auto& succ : scratch_)
            if (!is_infinite_h(cached_h(succ)))
                out.push_back(std::move(succ));
    }

    // Memoized heuristic lookup; counts one evaluation per distinct state.
    HeuristicValue cached_h(const State& s) const {
        auto it = memo_.find(s);
        if (it != memo_.end())
            return it->second;
        const HeuristicValue value = h_->evaluate(s);
        ++stats_->heuristic_evals;
        memo_.emplace(s, value);
        return value;
    }

    HeuristicValue entry_h() const { return entry_h_; }

private:
    const Task* base_;
    const H* h_;
    State entry_;
    HeuristicValue entry_h_;
    RunStats* stats_;
    mutable std::unordered_map<State, HeuristicValue, StateHash<State>> memo_;
    mutable std::vector<State> scratch_;
};

template <SearchTask Task, HeuristicFor<Task> H>
EscapeTask<Task, H> make_escape_task(const Task& base, const H& h,
                                     typename Task::State entry,
                                     HeuristicValue entry_h, RunStats& stats) {
    return EscapeTask<Task, H>(base, h, std::move(entry), entry_h, stats);
}

}  // namespace searchlab

#endif
