#ifndef SEARCHLAB_TASK_H
#define SEARCHLAB_TASK_H

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "searchlab/path.h"

namespace searchlab {

/*
  A search task exposes an initial state, a goal predicate, and a
  deterministic ordered successor list per state. States are opaque values
  owned by the task implementation; they must be copyable, equality
  comparable, and expose a 64-bit hash() for duplicate detection.

  Tasks are pure: goal_test and successor enumeration have no side effects,
  so instrumentation (goal-test and generation counting) is the calling
  algorithm's job. A task object is safe to share across threads; anything
  with internal scratch state (e.g. escape views) documents otherwise.
*/
template <typename T>
concept SearchTask = requires(const T& t, const typename T::State& s,
                              std::vector<typename T::State>& out) {
    typename T::State;
    { t.initial_state() } -> std::same_as<typename T::State>;
    { t.goal_test(s) } -> std::same_as<bool>;
    { t.append_successors(s, out) };
    { s == s } -> std::convertible_to<bool>;
    { s.hash() } -> std::convertible_to<uint64_t>;
};

// Refinement for tasks that can serve the i-th successor without
// materializing the whole list; random walks sample through this.
template <typename T>
concept IndexedSuccessorTask = SearchTask<T> &&
    requires(const T& t, const typename T::State& s, size_t i) {
        { t.successor_count(s) } -> std::convertible_to<size_t>;
        { t.successor_at(s, i) } -> std::same_as<typename T::State>;
    };

// Tasks whose reachable state graph is a tree (no transpositions) may set
// `static constexpr bool kAcyclic = true`; search then skips the seen set,
// which is semantically a no-op but saves the hashing.
template <typename T>
constexpr bool is_acyclic_task() {
    if constexpr (requires { T::kAcyclic; })
        return T::kAcyclic;
    else
        return false;
}

template <typename State>
struct StateHash {
    size_t operator()(const State& s) const { return static_cast<size_t>(s.hash()); }
};

// Materialized ordered successor list.
template <SearchTask Task>
std::vector<typename Task::State> successors(const Task& task, const typename Task::State& s) {
    std::vector<typename Task::State> out;
    task.append_successors(s, out);
    return out;
}

// True iff every consecutive pair of the path is a real transition of the
// task and the path starts somewhere at all (used by tests and validators).
template <SearchTask Task>
bool is_valid_path(const Task& task, const Path<typename Task::State>& path) {
    if (path.states.empty())
        return false;
    std::vector<typename Task::State> succ;
    for (size_t i = 0; i + 1 < path.states.size(); ++i) {
        succ.clear();
        task.append_successors(path.states[i], succ);
        bool found = false;
        for (const auto& s : succ)
            found = found || s == path.states[i + 1];
        if (!found)
            return false;
    }
    return true;
}

}  // namespace searchlab

#endif
