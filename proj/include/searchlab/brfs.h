#ifndef SEARCHLAB_BRFS_H
#define SEARCHLAB_BRFS_H

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "searchlab/path.h"
#include "searchlab/rng.h"
#include "searchlab/run_stats.h"
#include "searchlab/task.h"

namespace searchlab {

template <typename State>
struct SearchResult {
    Termination terminated;
    std::optional<Path<State>> path;

    bool solved() const { return terminated == Termination::SOLVED; }
};

namespace internal {

/*
  Breadth-first search with uniformly random tie-breaking among equal-depth
  states, realized with two queues: states are selected uniformly without
  replacement from the current-depth queue, their successors are pushed onto
  the next-depth queue, and the queues swap when the current one empties.

  Every newly generated state is goal-tested immediately (generation-time
  testing), and duplicate detection guarantees each state is goal-tested at
  most once. `test_root` is false when the search continues an outer run
  whose current state was already tested (hill-climbing escapes).
*/
template <SearchTask Task>
SearchResult<typename Task::State> brfs_impl(const Task& task, RngStream& rng,
                                             const Budget& budget, RunStats& stats,
                                             bool test_root) {
    using State = typename Task::State;
    struct Node {
        State state;
        uint32_t parent;
    };
    constexpr uint32_t kNoParent = UINT32_MAX;

    State root = task.initial_state();
    if (test_root) {
        ++stats.goal_tests;
        if (task.goal_test(root)) {
            stats.solution_length = 0;
            stats.terminated = Termination::SOLVED;
            return {Termination::SOLVED, Path<State>{{std::move(root)}}};
        }
    }

    std::vector<Node> nodes;
    nodes.push_back(Node{std::move(root), kNoParent});
    std::vector<uint32_t> current{0};
    std::vector<uint32_t> next;
    std::unordered_set<State, StateHash<State>> seen;
    if constexpr (!is_acyclic_task<Task>())
        seen.insert(nodes[0].state);
    std::vector<State> succ_buf;

    auto reconstruct = [&nodes](uint32_t idx) {
        Path<State> path;
        for (uint32_t i = idx; i != kNoParent; i = nodes[i].parent)
            path.states.push_back(nodes[i].state);
        std::reverse(path.states.begin(), path.states.end());
        return path;
    };

    auto handle_generated = [&](State&& s, uint32_t parent_id)
        -> std::optional<SearchResult<State>> {
        if constexpr (!is_acyclic_task<Task>()) {
            if (!seen.insert(s).second)
                return std::nullopt;  // duplicate: neither counted nor tested
        }
        if (!budget.generations_left(stats)) {
            stats.terminated = Termination::BUDGET_EXCEEDED;
            return SearchResult<State>{Termination::BUDGET_EXCEEDED, std::nullopt};
        }
        ++stats.generations;
        ++stats.goal_tests;
        nodes.push_back(Node{std::move(s), parent_id});
        const uint32_t id = static_cast<uint32_t>(nodes.size() - 1);
        if (task.goal_test(nodes[id].state)) {
            Path<State> path = reconstruct(id);
            stats.solution_length = path.num_transitions();
            stats.terminated = Termination::SOLVED;
            return SearchResult<State>{Termination::SOLVED, std::move(path)};
        }
        next.push_back(id);
        return std::nullopt;
    };

    for (;;) {
        if (current.empty()) {
            std::swap(current, next);
            if (current.empty()) {
                stats.terminated = Termination::EXHAUSTED;
                return {Termination::EXHAUSTED, std::nullopt};
            }
        }
        const size_t pick = static_cast<size_t>(rng.uniform_below(current.size()));
        const uint32_t node_id = current[pick];
        current[pick] = current.back();
        current.pop_back();

        // Copy: generating successors may reallocate the node arena.
        const State parent = nodes[node_id].state;
        if constexpr (IndexedSuccessorTask<Task>) {
            const size_t n = task.successor_count(parent);
            for (size_t i = 0; i < n; ++i) {
                if (auto done = handle_generated(task.successor_at(parent, i), node_id))
                    return std::move(*done);
            }
        } else {
            succ_buf.clear();
            task.append_successors(parent, succ_buf);
            for (auto& s : succ_buf) {
                if (auto done = handle_generated(std::move(s), node_id))
                    return std::move(*done);
            }
        }
    }
}

}  // namespace internal

// Breadth-first search with random tie-breaking; goal tests happen at
// generation time, so expected runtime on uniform-random goal placements
// follows the first-goal-position law rather than full-level sweeps.
template <SearchTask Task>
SearchResult<typename Task::State> brfs(const Task& task, RngStream& rng,
                                        const Budget& budget, RunStats& stats) {
    return internal::brfs_impl(task, rng, budget, stats, /*test_root=*/true);
}

}  // namespace searchlab

#endif
