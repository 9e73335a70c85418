#include "searchlab/strips.h"

namespace searchlab::strips {

namespace {
constexpr int32_t kNoLayer = -1;
}

/*
  Relaxed planning graph, unit costs. Forward pass: facts in the state sit
  at layer 0; an action fires at the first layer where all its
  preconditions are present and writes its add effects into the next
  layer. Within a layer actions fire in id order, and a fact keeps its
  first writer, so every fact's achiever is the lowest-id action of the
  earliest possible layer. Backward pass: classic relaxed-plan extraction,
  marking each subgoal fact once at its first layer and selecting each
  achiever at most once.
*/
RelaxedPlanResult FfHeuristic::relaxed_plan(const FactSet& state) const {
    const GroundTask& task = *task_;
    RelaxedPlanResult result;
    if (task.goal_test(state))
        return result;  // value 0, empty plan

    const size_t num_facts = task.fact_names.size();
    const size_t num_actions = task.actions.size();
    std::vector<int32_t> fact_layer(num_facts, kNoLayer);
    std::vector<int32_t> action_layer(num_actions, kNoLayer);
    std::vector<int32_t> achiever(num_facts, -1);
    std::vector<uint32_t> pre_remaining(num_actions);

    // Per-fact list of actions having the fact as a precondition.
    std::vector<std::vector<uint32_t>> consumers(num_facts);
    for (uint32_t a = 0; a < num_actions; ++a) {
        pre_remaining[a] = static_cast<uint32_t>(task.actions[a].preconditions.size());
        for (FactId f : task.actions[a].preconditions)
            consumers[f].push_back(a);
    }

    size_t goal_missing = task.goal.size();
    std::vector<FactId> frontier;
    const auto add_fact = [&](FactId f, int32_t layer, int32_t by) {
        if (fact_layer[f] != kNoLayer)
            return;
        fact_layer[f] = layer;
        achiever[f] = by;
        frontier.push_back(f);
        if (std::binary_search(task.goal.begin(), task.goal.end(), f))
            --goal_missing;
    };

    for (FactId f : state.facts)
        add_fact(f, 0, -1);

    std::vector<uint32_t> triggered;
    for (uint32_t a = 0; a < num_actions; ++a)
        if (pre_remaining[a] == 0)
            triggered.push_back(a);  // no preconditions: fires at layer 0

    int32_t layer = 0;
    while (goal_missing > 0) {
        // Actions whose last missing precondition arrived with `frontier`.
        for (FactId f : frontier)
            for (uint32_t a : consumers[f])
                if (--pre_remaining[a] == 0)
                    triggered.push_back(a);
        frontier.clear();
        if (triggered.empty()) {
            result.value = kInfiniteH;  // fixpoint without the goal
            return result;
        }
        std::sort(triggered.begin(), triggered.end());  // lowest id writes first
        for (uint32_t a : triggered) {
            action_layer[a] = layer;
            for (FactId f : task.actions[a].add_effects)
                add_fact(f, layer + 1, static_cast<int32_t>(a));
        }
        triggered.clear();
        ++layer;
    }

    // Backward extraction. needed[L] holds subgoal facts first reached at
    // layer L; processing from the deepest layer down keeps every
    // precondition request at or below the current layer.
    const int32_t max_layer = layer;
    std::vector<std::vector<FactId>> needed(static_cast<size_t>(max_layer) + 1);
    std::vector<bool> fact_marked(num_facts, false);
    std::vector<bool> action_selected(num_actions, false);
    const auto need = [&](FactId f) {
        if (fact_marked[f] || fact_layer[f] == 0)
            return;  // already requested, or free in the state
        fact_marked[f] = true;
        needed[static_cast<size_t>(fact_layer[f])].push_back(f);
    };
    for (FactId f : task.goal)
        need(f);

    for (int32_t l = max_layer; l >= 1; --l) {
        for (size_t i = 0; i < needed[static_cast<size_t>(l)].size(); ++i) {
            const FactId f = needed[static_cast<size_t>(l)][i];
            const auto a = static_cast<uint32_t>(achiever[f]);
            if (action_selected[a])
                continue;
            action_selected[a] = true;
            result.actions.push_back(a);
            for (FactId pre : task.actions[a].preconditions)
                need(pre);
        }
    }

    std::sort(result.actions.begin(), result.actions.end(), [&](uint32_t a, uint32_t b) {
        return std::pair(action_layer[a], a) < std::pair(action_layer[b], b);
    });
    result.value = static_cast<HeuristicValue>(result.actions.size());
    return result;
}

}  // namespace searchlab::strips
