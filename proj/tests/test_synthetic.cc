#include <doctest.h>

#include "searchlab/random_walk.h"
#include "searchlab/synthetic.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

using namespace searchlab;
using namespace searchlab::synthetic;
using nlohmann::json;

namespace {

// Enumerate all states of a task by depth via its successor relation;
// independent of the census implementation (plain recursive walk).
template <typename Task>
void count_goals_by_depth(const Task& task, const typename Task::State& s, uint32_t depth,
                          std::map<uint32_t, uint64_t>& states,
                          std::map<uint32_t, uint64_t>& goals) {
    ++states[depth];
    if (task.goal_test(s))
        ++goals[depth];
    std::vector<typename Task::State> succ;
    task.append_successors(s, succ);
    for (const auto& child : succ)
        count_goals_by_depth(task, child, depth + 1, states, goals);
}

}  // namespace

TEST_CASE("census matches the uniform-tree closed forms") {
    for (uint64_t b = 1; b <= 5; ++b) {
        for (uint32_t dstar = 1; dstar <= (b >= 4 ? 5u : 6u); ++dstar) {
            TreeTaskSpec spec;
            spec.b = b;
            spec.dstar = dstar;
            spec.g = 1;
            spec.goal_seed = 1;
            const auto task = build_task(spec);
            const auto c = census(task);
            REQUIRE(c.per_depth.size() == dstar + 1);
            for (uint32_t d = 0; d <= dstar; ++d)
                REQUIRE(BigInt(c.per_depth[d]) == tree_states_at(b, d));
            REQUIRE(BigInt(c.below(dstar)) == tree_states_below(b, dstar));
            REQUIRE(BigInt(c.at(dstar)) == tree_states_at(b, dstar));
        }
    }
    // b = 1 chain: |S_<5| = 5, |S_5| = 1.
    CHECK(tree_states_below(1, 5) == 5);
    CHECK(tree_states_at(1, 5) == 1);
    CHECK(tree_states_below(2, 6) == 63);
    CHECK(tree_states_at(2, 6) == 64);
}

TEST_CASE("census covers deeper levels below the goal depth") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;
    spec.goal_seed = 3;
    spec.deeper_levels = 2;
    const auto task = build_task(spec);
    const auto c = census(task);
    CHECK(c.per_depth == std::vector<uint64_t>{1, 2, 4, 8, 16});
    CHECK(c.total() == 31);
    CHECK(c.below(2) == 3);
    CHECK(c.at(2) == 4);
    CHECK(c.at(4) == 16);
}

TEST_CASE("census enforces its node cap") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 10;
    spec.g = 1;
    spec.goal_seed = 0;
    const auto task = build_task(spec);
    CHECK_THROWS_AS(census(task, 100), EnumerationLimit);
}

TEST_CASE("goal placement: deterministic, distinct, at the right depth") {
    TreeTaskSpec spec;
    spec.b = 3;
    spec.dstar = 3;
    spec.g = 5;
    spec.goal_seed = 42;

    const auto a = build_task(spec);
    const auto b = build_task(spec);
    REQUIRE(a.goal_codes() == b.goal_codes());
    REQUIRE(a.goal_codes().size() == 5);

    std::map<uint32_t, uint64_t> states, goals;
    count_goals_by_depth(a, a.initial_state(), 0, states, goals);
    CHECK(states[3] == 27);
    CHECK(goals[3] == 5);
    CHECK(goals[0] == 0);
    CHECK(goals[1] == 0);
    CHECK(goals[2] == 0);

    // Full placement: every leaf is a goal.
    TreeTaskSpec full = spec;
    full.g = 27;
    std::map<uint32_t, uint64_t> fstates, fgoals;
    const auto ftask = build_task(full);
    count_goals_by_depth(ftask, ftask.initial_state(), 0, fstates, fgoals);
    CHECK(fgoals[3] == 27);
}

TEST_CASE("goal placement: single goal is uniform over the leaves") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;

    std::map<uint64_t, int> hits;
    const int trials = 4000;
    for (int i = 0; i < trials; ++i) {
        RngStream place(601, static_cast<uint64_t>(i));
        const auto task = build_task(spec, place);
        REQUIRE(task.goal_codes().size() == 1);
        ++hits[task.goal_codes()[0]];
    }
    REQUIRE(hits.size() == 4);
    // Expected 1000 per leaf, sd = sqrt(4000 * 3/16) ~ 27.4.
    for (const auto& entry : hits) {
        CHECK(entry.second > 890);
        CHECK(entry.second < 1110);
    }
}

TEST_CASE("deeper goals land strictly below the shallowest goal depth") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;
    spec.goal_seed = 11;
    spec.deeper_levels = 2;
    spec.deeper_goals = 3;
    const auto task = build_task(spec);

    std::map<uint32_t, uint64_t> states, goals;
    count_goals_by_depth(task, task.initial_state(), 0, states, goals);
    CHECK(goals[2] == 1);
    CHECK(goals[3] + goals[4] == 3);
    CHECK(goals[0] == 0);
    CHECK(goals[1] == 0);

    const auto again = build_task(spec);
    CHECK(task.goal_codes() == again.goal_codes());
}

TEST_CASE("spec validation rejects bad parameters") {
    TreeTaskSpec t;
    t.b = 0;
    CHECK_THROWS_AS(t.validate(), SpecError);
    t = TreeTaskSpec{};
    t.dstar = 0;
    CHECK_THROWS_AS(t.validate(), SpecError);
    t = TreeTaskSpec{};
    t.b = 2;
    t.dstar = 2;
    t.g = 5;  // > b^dstar
    CHECK_THROWS_WITH_AS(t.validate(), "tree: g must be in [1, b^dstar]", SpecError);
    t.g = 0;
    CHECK_THROWS_AS(t.validate(), SpecError);
    t = TreeTaskSpec{};
    t.b = 2;
    t.dstar = 63;  // 2^63 + ... states: beyond the 2^62 code cap
    CHECK_THROWS_WITH_AS(t.validate(), "tree: state space exceeds 2^62 states", SpecError);
    t = TreeTaskSpec{};
    t.b = 2;
    t.dstar = 2;
    t.deeper_goals = 1;  // without deeper_levels
    CHECK_THROWS_AS(t.validate(), SpecError);

    StarTaskSpec s;
    s.n = 0;
    CHECK_THROWS_AS(s.validate(), SpecError);
    s = StarTaskSpec{};
    s.n = 3;
    s.g = 4;
    CHECK_THROWS_AS(s.validate(), SpecError);

    DeadLeafTreeSpec d;
    d.dead_prob = 1.0;
    CHECK_THROWS_AS(d.validate(), SpecError);
    d = DeadLeafTreeSpec{};
    d.dead_prob = -0.1;
    CHECK_THROWS_AS(d.validate(), SpecError);

    UhrChainSpec u;
    u.k = 0;
    CHECK_THROWS_AS(u.validate(), SpecError);
    u = UhrChainSpec{};
    u.k = 2;
    u.uhrs = {{2, 1, 1}};  // wrong count
    CHECK_THROWS_AS(u.validate(), SpecError);
    u.uhrs = {{2, 2, 3}, {2, 1, 1}};  // exit_count 3 > b^(exit_depth-1) = 2
    CHECK_THROWS_WITH_AS(u.validate(),
                         "uhr_chain: exit_count must be in [1, b^(exit_depth-1)]", SpecError);
}

TEST_CASE("dead-leaf tree with dead_prob 0 is the full uniform tree") {
    DeadLeafTreeSpec spec;
    spec.b = 3;
    spec.dstar = 3;
    spec.g = 4;
    spec.goal_seed = 8;
    spec.dead_prob = 0.0;
    const auto task = build_task(spec);
    CHECK(task.reachable_at_goal_depth() == 27);
    const auto c = census(task);
    CHECK(c.per_depth == std::vector<uint64_t>{1, 3, 9, 27});
    CHECK(exact_reach_prob(spec) == Rational(1));
    CHECK(exact_success_prob(spec, 3) == Rational(4, 27));
}

TEST_CASE("dead-leaf tree: hand-checked half-dead layer") {
    // Find a structure seed where exactly one of the two depth-1 states is
    // dead: the walk then survives to depth 2 with probability exactly 1/2.
    DeadLeafTreeSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;
    spec.goal_seed = 1;
    spec.dead_prob = 0.5;

    bool found = false;
    for (uint64_t seed = 0; seed < 64 && !found; ++seed) {
        spec.structure_seed = seed;
        DeadLeafTreeTask task;
        try {
            task = build_task(spec);
        } catch (const SpecError&) {
            continue;  // both depth-1 states dead: nothing reachable
        }
        const bool left_dead = task.is_dead({2, 1});
        const bool right_dead = task.is_dead({3, 1});
        if (left_dead == right_dead)
            continue;
        found = true;

        CHECK(task.reachable_at_goal_depth() == 2);
        CHECK(exact_reach_prob(spec) == Rational(1, 2));
        // One goal among the two reachable leaves: success = 1/2 * 1/2.
        CHECK(exact_success_prob(spec, 2) == Rational(1, 4));
        // Both reachable leaves goals: success = reach probability.
        DeadLeafTreeSpec both = spec;
        both.g = 2;
        CHECK(exact_success_prob(both, 2) == Rational(1, 2));
        // More goals than reachable leaves: named in the error.
        DeadLeafTreeSpec over = spec;
        over.g = 3;
        CHECK_THROWS_WITH_AS(
            build_task(over),
            "dead_leaf_tree: only 2 reachable depth-dstar states, cannot place g=3 goals",
            SpecError);

        // Structure is a pure function of the seed.
        const auto again = build_task(spec);
        CHECK(again.is_dead({2, 1}) == left_dead);
        CHECK(again.goal_codes() == task.goal_codes());
    }
    REQUIRE(found);
}

TEST_CASE("exact walk success probability on the uniform tree") {
    TreeTaskSpec spec;
    spec.b = 4;
    spec.dstar = 6;
    spec.g = 64;
    spec.goal_seed = 2;
    CHECK(exact_success_prob(spec, 6) == Rational(1, 64));   // g / b^dstar
    CHECK(exact_success_prob(spec, 5) == Rational(0));       // cannot reach the goals
    CHECK(exact_success_prob(spec, 12) == Rational(1, 64));  // walk dies at depth 6
    CHECK(exact_reach_prob(spec) == Rational(1));

    TreeTaskSpec more = spec;
    more.g = 128;
    CHECK(exact_success_prob(more, 6) == Rational(1, 32));
}

TEST_CASE("success probability is monotone in walk length with deeper goals") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;
    spec.goal_seed = 9;
    spec.deeper_levels = 2;
    spec.deeper_goals = 3;

    Rational prev = 0;
    for (uint64_t len = 1; len <= 4; ++len) {
        const Rational p = exact_success_prob(spec, len);
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(exact_success_prob(spec, 1) == Rational(0));
    CHECK(exact_success_prob(spec, 2) == Rational(1, 4));
    CHECK(exact_success_prob(spec, 4) > Rational(1, 4));
}

TEST_CASE("exact success probability agrees with Monte-Carlo walks") {
    DeadLeafTreeSpec spec;
    spec.b = 3;
    spec.dstar = 3;
    spec.g = 2;
    spec.goal_seed = 5;
    spec.dead_prob = 0.25;
    spec.structure_seed = 77;

    DeadLeafTreeTask task;
    try {
        task = build_task(spec);
    } catch (const SpecError&) {
        // If this particular seed kills too much of the tree, pick another:
        // the test needs at least two reachable leaves.
        spec.structure_seed = 78;
        task = build_task(spec);
    }
    const Rational exact = exact_success_prob(spec, 3);
    REQUIRE(exact > 0);

    const int walks = 200000;
    int succ = 0;
    RngStream rng(701, 0);
    for (int i = 0; i < walks; ++i) {
        RunStats stats;
        if (random_walk(task, 3, rng, stats).outcome == WalkOutcome::SUCCESS)
            ++succ;
    }
    const double p = exact.convert_to<double>();
    const double se = std::sqrt(p * (1 - p) / walks);
    CHECK(std::abs(static_cast<double>(succ) / walks - p) < 4 * se);
}

TEST_CASE("region chain: structure, exits, and heuristic") {
    UhrChainSpec spec;
    spec.k = 2;
    spec.uhrs = {{2, 2, 1}, {3, 1, 1}};
    spec.seed = 9;
    const auto task = build_task(spec);

    const ChainStateId root{0, 0, 1};
    CHECK(!task.goal_test(root));
    CHECK(task.successor_count(root) == 2);

    // Exactly one of the two depth-1 states exits to region 1.
    std::vector<ChainStateId> level;
    task.append_successors(root, level);
    REQUIRE(level.size() == 2);
    int exits = 0;
    for (const auto& s : level) {
        if (task.is_exit(s)) {
            ++exits;
            std::vector<ChainStateId> next;
            task.append_successors(s, next);
            REQUIRE(next.size() == 1);
            CHECK(next[0] == ChainStateId{1, 0, 1});
        } else {
            CHECK(task.successor_count(s) == 0);
        }
    }
    CHECK(exits == 1);

    // Region 1 has exit depth 1: its entry leads straight to the goal.
    const ChainStateId entry{1, 0, 1};
    CHECK(task.is_exit(entry));
    std::vector<ChainStateId> goal;
    task.append_successors(entry, goal);
    REQUIRE(goal.size() == 1);
    CHECK(task.goal_test(goal[0]));

    const UhrChainHeuristic h{spec.k};
    CHECK(h.evaluate(root) == 2);
    CHECK(h.evaluate(entry) == 1);
    CHECK(h.evaluate(goal[0]) == 0);

    // Exit placement is a pure function of the spec seed.
    const auto again = build_task(spec);
    for (const auto& s : level)
        CHECK(task.is_exit(s) == again.is_exit(s));
    CHECK(spec.max_exit_depth() == 2);
}

TEST_CASE("task spec JSON round-trips") {
    TreeTaskSpec tree;
    tree.b = 4;
    tree.dstar = 6;
    tree.g = 64;
    tree.goal_seed = 17;
    tree.deeper_levels = 2;
    tree.deeper_goals = 5;

    StarTaskSpec star;
    star.n = 20;
    star.g = 5;

    DeadLeafTreeSpec dead;
    dead.b = 3;
    dead.dstar = 4;
    dead.g = 2;
    dead.dead_prob = 0.25;
    dead.structure_seed = 7;
    dead.goal_seed = 3;

    UhrChainSpec chain;
    chain.k = 2;
    chain.uhrs = {{2, 2, 1}, {3, 3, 4}};
    chain.seed = 12;

    for (const TaskSpec& spec :
         {TaskSpec{tree}, TaskSpec{star}, TaskSpec{dead}, TaskSpec{chain}}) {
        const json j = to_json(spec);
        const TaskSpec back = parse_task_spec(j);
        CHECK(to_json(back) == j);
    }

    // Optional fields are omitted when unset.
    TreeTaskSpec plain;
    plain.b = 2;
    plain.dstar = 1;
    plain.g = 1;
    const json j = to_json(TaskSpec{plain});
    CHECK(j == json({{"type", "tree"}, {"b", 2}, {"dstar", 1}, {"g", 1}}));
}

TEST_CASE("task spec JSON rejects malformed input") {
    CHECK_THROWS_AS(parse_task_spec(json::parse("[]")), SpecError);
    CHECK_THROWS_AS(parse_task_spec(json::parse(R"({"b":2})")), SpecError);
    CHECK_THROWS_WITH_AS(parse_task_spec(json::parse(R"({"type":"blah"})")),
                         "task spec: unknown type 'blah'", SpecError);
    CHECK_THROWS_WITH_AS(
        parse_task_spec(json::parse(R"({"type":"tree","b":2,"dstar":1,"g":1,"bogus":3})")),
        "task spec: unknown field 'bogus'", SpecError);
    CHECK_THROWS_WITH_AS(parse_task_spec(json::parse(R"({"type":"tree","b":2,"g":1})")),
                         "task spec: missing field 'dstar'", SpecError);
    // Validation runs on parsed specs too.
    CHECK_THROWS_AS(parse_task_spec(json::parse(R"({"type":"tree","b":2,"dstar":2,"g":9})")),
                    SpecError);
    CHECK_THROWS_AS(parse_task_spec(json::parse(
                        R"({"type":"uhr_chain","k":1,"seed":0,"uhrs":[{"b":2}]})")),
                    SpecError);
}

TEST_CASE("spec-only builders require a fixed goal seed") {
    TreeTaskSpec spec;
    spec.b = 2;
    spec.dstar = 2;
    spec.g = 1;
    CHECK_THROWS_WITH_AS(build_task(spec),
                         "tree: goal_seed required (or supply a placement stream)", SpecError);
}
