#ifndef SEARCHLAB_SYNTHETIC_H
#define SEARCHLAB_SYNTHETIC_H

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "searchlab/heuristic.h"
#include "searchlab/rational.h"
#include "searchlab/rng.h"
#include "searchlab/task.h"

namespace searchlab::synthetic {

// Raised for ill-formed spec parameters (bad ranges, too many goals, state
// spaces beyond the enumerable cap, ...).
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an exhaustive operation (census, exact probabilities) would
// visit more states than its cap allows.
class EnumerationLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
  Task specifications. These are plain serializable descriptions; build_*
  turns them into runnable tasks. Goal placement is a uniformly random
  g-subset of the depth-d* states drawn by a seeded partial Fisher-Yates
  selection: either from the fixed goal_seed, or from a caller-supplied
  stream when an experiment wants a fresh placement per trial.
*/
struct TreeTaskSpec {
    uint64_t b = 2;                     // branching factor >= 1
    uint32_t dstar = 1;                 // shallowest goal depth >= 1
    uint64_t g = 1;                     // goals at depth dstar, in [1, b^dstar]
    std::optional<uint64_t> goal_seed;  // fixed placement when set
    uint32_t deeper_levels = 0;         // extra tree depth below dstar
    uint64_t deeper_goals = 0;          // extra goals strictly below dstar (default off)

    void validate() const;
};

// A depth-1 tree: the initial state has n successors, g of which are goals.
struct StarTaskSpec {
    uint64_t n = 1;
    uint64_t g = 1;
    std::optional<uint64_t> goal_seed;

    void validate() const;
};

// Uniform tree where each non-root state shallower than dstar independently
// becomes a dead end (keeps its place as a successor, loses its own
// successors) with probability dead_prob, deterministically realized from
// structure_seed. Goals are placed among the reachable depth-dstar states.
struct DeadLeafTreeSpec {
    uint64_t b = 2;
    uint32_t dstar = 1;
    uint64_t g = 1;
    std::optional<uint64_t> goal_seed;
    double dead_prob = 0.0;  // in [0, 1)
    uint64_t structure_seed = 0;

    void validate() const;
};

/*
  A chain of k uninformative regions. Region i is a uniform tree of
  branching b; its states all share heuristic value k - i. The states at
  depth exit_depth - 1 include exit_count seeded exits whose single
  successor is the entry of region i + 1 (or the goal after the last
  region); the other states at that depth are unrecognized dead ends.
  exit_depth is therefore the number of steps from the region entry to the
  improving state: a walk needs length >= exit_depth to escape, and a
  breadth-first escape returns a path of exactly exit_depth transitions.
*/
struct UhrSpec {
    uint64_t b = 2;
    uint32_t exit_depth = 1;
    uint64_t exit_count = 1;
};

struct UhrChainSpec {
    uint32_t k = 1;
    std::vector<UhrSpec> uhrs;  // size k
    uint64_t seed = 0;

    void validate() const;
    uint32_t max_exit_depth() const;
};

using TaskSpec = std::variant<TreeTaskSpec, StarTaskSpec, DeadLeafTreeSpec, UhrChainSpec>;

// JSON round-trip; parse throws SpecError on malformed input. The "type"
// field selects the spec: tree | star | dead_leaf_tree | uhr_chain.
nlohmann::json to_json(const TaskSpec& spec);
TaskSpec parse_task_spec(const nlohmann::json& j);

/*
  States of the uniform-tree tasks are packed root paths: the root has code
  1 and the i-th child of code c is c * m + i with m = max(b, 2), which is
  injective across depths. The builder rejects trees with more than 2^62
  states so codes never overflow. Equality and hashing are O(1), successor
  generation allocates nothing.
*/
struct TreeNodeId {
    uint64_t code;
    uint32_t depth;

    friend bool operator==(const TreeNodeId&, const TreeNodeId&) = default;
    uint64_t hash() const { return mix64(code); }
};

class TreeTask {
public:
    using State = TreeNodeId;
    static constexpr bool kAcyclic = true;

    State initial_state() const { return {1, 0}; }

    bool goal_test(const State& s) const {
        if (s.depth < dstar_)
            return false;
        return std::binary_search(goal_codes_.begin(), goal_codes_.end(), s.code);
    }

    size_t successor_count(const State& s) const {
        return s.depth < total_depth_ ? static_cast<size_t>(b_) : 0;
    }

    State successor_at(const State& s, size_t i) const {
        return {s.code * m_ + i, s.depth + 1};
    }

    void append_successors(const State& s, std::vector<State>& out) const {
        const size_t n = successor_count(s);
        for (size_t i = 0; i < n; ++i)
            out.push_back(successor_at(s, i));
    }

    uint64_t branching() const { return b_; }
    uint32_t goal_depth() const { return dstar_; }
    uint32_t total_depth() const { return total_depth_; }
    const std::vector<uint64_t>& goal_codes() const { return goal_codes_; }

private:
    friend TreeTask build_task(const TreeTaskSpec&, RngStream&);
    friend TreeTask build_task(const StarTaskSpec&, RngStream&);

    uint64_t b_ = 2, m_ = 2;
    uint32_t dstar_ = 1, total_depth_ = 1;
    std::vector<uint64_t> goal_codes_;  // sorted packed codes, any depth
};

class DeadLeafTreeTask {
public:
    using State = TreeNodeId;
    static constexpr bool kAcyclic = true;

    State initial_state() const { return {1, 0}; }

    bool goal_test(const State& s) const {
        if (s.depth != dstar_)
            return false;
        return std::binary_search(goal_codes_.begin(), goal_codes_.end(), s.code);
    }

    size_t successor_count(const State& s) const {
        if (s.depth >= dstar_ || is_dead(s))
            return 0;
        return static_cast<size_t>(b_);
    }

    State successor_at(const State& s, size_t i) const {
        return {s.code * m_ + i, s.depth + 1};
    }

    void append_successors(const State& s, std::vector<State>& out) const {
        const size_t n = successor_count(s);
        for (size_t i = 0; i < n; ++i)
            out.push_back(successor_at(s, i));
    }

    // A dead state exists as its parent's successor but has none itself.
    bool is_dead(const State& s) const {
        return s.depth > 0 && s.depth < dstar_ &&
               mix64(structure_seed_ ^ mix64(s.code)) < dead_threshold_;
    }

    uint64_t branching() const { return b_; }
    uint32_t goal_depth() const { return dstar_; }
    uint64_t reachable_at_goal_depth() const { return reachable_at_goal_depth_; }
    const std::vector<uint64_t>& goal_codes() const { return goal_codes_; }

private:
    friend DeadLeafTreeTask build_task(const DeadLeafTreeSpec&, RngStream&);

    uint64_t b_ = 2, m_ = 2;
    uint32_t dstar_ = 1;
    uint64_t structure_seed_ = 0;
    uint64_t dead_threshold_ = 0;
    uint64_t reachable_at_goal_depth_ = 0;
    std::vector<uint64_t> goal_codes_;
};

struct ChainStateId {
    uint32_t uhr;
    uint32_t depth;
    uint64_t code;

    friend bool operator==(const ChainStateId&, const ChainStateId&) = default;
    uint64_t hash() const { return mix64(code ^ (uint64_t{uhr} << 48)); }
};

class UhrChainTask {
public:
    using State = ChainStateId;
    // Not a tree: all exits of a region lead to the same entry state.

    State initial_state() const { return {0, 0, 1}; }

    bool goal_test(const State& s) const { return s.uhr == k_; }

    size_t successor_count(const State& s) const {
        if (s.uhr == k_)
            return 0;
        const Region& r = regions_[s.uhr];
        if (s.depth + 1 < r.exit_depth)
            return static_cast<size_t>(r.b);
        return is_exit(s) ? 1 : 0;
    }

    State successor_at(const State& s, size_t i) const {
        const Region& r = regions_[s.uhr];
        if (s.depth + 1 < r.exit_depth)
            return {s.uhr, s.depth + 1, s.code * r.m + i};
        return {s.uhr + 1, 0, 1};
    }

    void append_successors(const State& s, std::vector<State>& out) const {
        const size_t n = successor_count(s);
        for (size_t i = 0; i < n; ++i)
            out.push_back(successor_at(s, i));
    }

    bool is_exit(const State& s) const {
        const Region& r = regions_[s.uhr];
        return s.depth + 1 == r.exit_depth &&
               std::binary_search(r.exit_codes.begin(), r.exit_codes.end(), s.code);
    }

    uint32_t num_regions() const { return k_; }
    uint32_t exit_depth(uint32_t region) const { return regions_[region].exit_depth; }

private:
    friend UhrChainTask build_task(const UhrChainSpec&);

    struct Region {
        uint64_t b = 2, m = 2;
        uint32_t exit_depth = 1;
        std::vector<uint64_t> exit_codes;  // sorted, at depth exit_depth - 1
    };

    uint32_t k_ = 1;
    std::vector<Region> regions_;
};

// Heuristic that is blind inside each region: h = k - region index, hence
// h(s_I) = k and goals get 0.
struct UhrChainHeuristic {
    uint32_t k;
    HeuristicValue evaluate(const ChainStateId& s) const {
        return static_cast<HeuristicValue>(k) - static_cast<HeuristicValue>(s.uhr);
    }
};

// Builders validate the spec and realize seeded placements. The overloads
// taking a stream draw the goal placement from it (per-trial placements);
// the spec-only overloads require goal_seed and derive the stream from it.
TreeTask build_task(const TreeTaskSpec& spec, RngStream& placement);
TreeTask build_task(const TreeTaskSpec& spec);
TreeTask build_task(const StarTaskSpec& spec, RngStream& placement);
TreeTask build_task(const StarTaskSpec& spec);
DeadLeafTreeTask build_task(const DeadLeafTreeSpec& spec, RngStream& placement);
DeadLeafTreeTask build_task(const DeadLeafTreeSpec& spec);
UhrChainTask build_task(const UhrChainSpec& spec);

/*
  Exhaustive breadth-first census of reachable states per depth. Throws
  EnumerationLimit beyond node_cap. With goal depth d*, below(d*) and
  at(d*) are the |S_<d*| and |S_d*| every closed-form expectation uses.
*/
struct DepthCensus {
    std::vector<uint64_t> per_depth;

    uint64_t total() const;
    uint64_t below(uint32_t depth) const;
    uint64_t at(uint32_t depth) const;
};

inline constexpr uint64_t kDefaultNodeCap = uint64_t{1} << 22;

DepthCensus census(const TreeTask& task, uint64_t node_cap = kDefaultNodeCap);
DepthCensus census(const DeadLeafTreeTask& task, uint64_t node_cap = kDefaultNodeCap);
DepthCensus census(const UhrChainTask& task, uint64_t node_cap = kDefaultNodeCap);

/*
  Exact single-walk probabilities by path enumeration: every root-to-state
  path contributes the product of 1/|successors| along it. reach: the walk
  survives to the goal depth; success: a walk of at most walk_len steps
  samples a goal (it stops there, so deeper goals on the same path do not
  double count). Both throw EnumerationLimit beyond the cap.
*/
Rational exact_reach_prob(const TreeTaskSpec& spec, uint64_t node_cap = kDefaultNodeCap);
Rational exact_reach_prob(const DeadLeafTreeSpec& spec, uint64_t node_cap = kDefaultNodeCap);
Rational exact_success_prob(const TreeTaskSpec& spec, uint64_t walk_len,
                            uint64_t node_cap = kDefaultNodeCap);
Rational exact_success_prob(const DeadLeafTreeSpec& spec, uint64_t walk_len,
                            uint64_t node_cap = kDefaultNodeCap);

// Closed forms for the uniform tree: |S_<d*| = (b^d* - 1)/(b - 1) (d* for
// b = 1) and |S_d*| = b^d*.
BigInt tree_states_below(const BigInt& b, uint32_t dstar);
BigInt tree_states_at(const BigInt& b, uint32_t dstar);

}  // namespace searchlab::synthetic

#endif
