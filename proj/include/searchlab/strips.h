#ifndef SEARCHLAB_STRIPS_H
#define SEARCHLAB_STRIPS_H

#include "searchlab/heuristic.h"
#include "searchlab/task.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/*
  A small STRIPS planning stack: a PDDL-subset parser (requirements
  :strips, :typing, :constants; positive preconditions and goals; add and
  delete effects), a grounder producing an explicit fact/action task, and
  a unit-cost delete-relaxation heuristic with dead-end recognition.
*/
namespace searchlab::strips {

struct SourcePos {
    int line = 0;  // 1-based; 0 when unknown
    int col = 0;
};

// Parse or validation failure, carrying the source position it points at.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourcePos pos)
        : std::runtime_error(pos.line > 0 ? std::to_string(pos.line) + ":" +
                                                std::to_string(pos.col) + ": " + message
                                          : message),
          pos_(pos) {}

    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

struct TypedName {
    std::string name;
    std::string type;  // "object" when untyped
};

struct Predicate {
    std::string name;
    std::vector<std::string> param_types;  // arity == size()
};

// Positive ground or schematic atom; args are variables (leading '?') or
// object/constant names.
struct Literal {
    std::string predicate;
    std::vector<std::string> args;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;  // names keep their leading '?'
    std::vector<Literal> preconditions;
    std::vector<Literal> add_effects;
    std::vector<Literal> del_effects;
};

struct Domain {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypedName> types;  // name -> parent type ("object" default)
    std::vector<TypedName> constants;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> actions;

    // True iff `type` equals `ancestor` or derives from it (single
    // inheritance, everything below "object").
    bool is_subtype(const std::string& type, const std::string& ancestor) const;
    const Predicate* find_predicate(const std::string& name) const;
};

struct Problem {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;  // problem objects only, not constants
    std::vector<Literal> init;
    std::vector<Literal> goal;
};

// Parses and cross-validates both files. All names are case-normalized to
// lower case. Throws ParseError with a line/column position on malformed
// input, unsupported requirements/constructs, arity mismatches, and
// unknown predicates/objects/types.
Domain parse_domain(const std::string& text);
Problem parse_problem(const std::string& text, const Domain& domain);
std::pair<Domain, Problem> parse(const std::string& domain_text,
                                 const std::string& problem_text);

using FactId = uint32_t;

struct GroundAction {
    std::string name;  // canonical "(schema obj1 obj2)"
    std::vector<FactId> preconditions;  // each list sorted, duplicate-free
    std::vector<FactId> add_effects;
    std::vector<FactId> del_effects;
};

// A state: sorted duplicate-free vector of fact ids.
struct FactSet {
    std::vector<FactId> facts;

    bool contains(FactId f) const {
        return std::binary_search(facts.begin(), facts.end(), f);
    }
    bool contains_all(const std::vector<FactId>& sorted) const;

    uint64_t hash() const;
    friend bool operator==(const FactSet&, const FactSet&) = default;
};

/*
  Explicit ground task. Facts and actions are ordered lexicographically by
  their canonical names, so grounding the same inputs twice yields
  byte-identical tables. Successors are produced in action-id order:
  applying every applicable action to the state.
*/
struct GroundTask {
    using State = FactSet;

    std::vector<std::string> fact_names;
    std::vector<GroundAction> actions;
    FactSet init;
    std::vector<FactId> goal;  // sorted

    State initial_state() const { return init; }
    bool goal_test(const State& s) const { return s.contains_all(goal); }
    void append_successors(const State& s, std::vector<State>& out) const;

    bool applicable(const GroundAction& action, const State& s) const {
        return s.contains_all(action.preconditions);
    }
    State apply(const GroundAction& action, const State& s) const;

    std::optional<uint32_t> find_action(const std::string& canonical_name) const;
    // Action ids along `path`, or nullopt if some step is not a transition.
    std::optional<std::vector<uint32_t>> actions_along(const Path<State>& path) const;
};

// Enumerates type-consistent bindings for every schema. Ground instances
// that would add and delete the same fact are dropped. Throws ParseError
// when the instance count exceeds `max_actions`.
GroundTask ground(const Domain& domain, const Problem& problem,
                  size_t max_actions = 1000000);

struct RelaxedPlanResult {
    HeuristicValue value = 0;        // kInfiniteH when the goal is unreachable
    std::vector<uint32_t> actions;   // ordered by (graph layer, action id)
};

/*
  Unit-cost delete-relaxation heuristic: builds the relaxed planning graph
  (delete lists ignored) until the goal appears or fixpoint, then extracts
  a relaxed plan backward picking for each subgoal fact the achiever from
  the earliest layer, ties broken by lowest action id. The value is the
  relaxed plan length; infinity at fixpoint without the goal marks a
  recognized dead end. Stateless between calls, so concurrent evaluation
  is safe.
*/
class FfHeuristic {
public:
    explicit FfHeuristic(const GroundTask& task) : task_(&task) {}

    HeuristicValue evaluate(const FactSet& state) const {
        return relaxed_plan(state).value;
    }
    RelaxedPlanResult relaxed_plan(const FactSet& state) const;

private:
    const GroundTask* task_;
};

struct PlanStep {
    std::string name;
    std::vector<std::string> args;
    SourcePos pos;

    std::string canonical() const;  // "(name arg1 arg2)"
};

// One "(name obj1 obj2)" per line; ';' comments and blank lines ignored.
std::vector<PlanStep> parse_plan(const std::string& text);
std::string format_plan(const GroundTask& task, const std::vector<uint32_t>& action_ids);

struct ValidationResult {
    bool valid = false;
    // 1-based index of the inapplicable step; empty when the replay ran
    // through but the goal is unsatisfied (reason says so).
    std::optional<size_t> failing_step;
    std::string reason;  // empty when valid
};

// Replays the actions from the initial state, checking each precondition,
// then checks the goal.
ValidationResult validate_plan(const GroundTask& task,
                               const std::vector<uint32_t>& action_ids);
// Name-based variant: resolves steps against the ground action table;
// unknown steps are reported as that step failing.
ValidationResult validate_plan(const GroundTask& task, const std::vector<PlanStep>& steps);

}  // namespace searchlab::strips

#endif
