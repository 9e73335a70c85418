#ifndef SEARCHLAB_ANALYSIS_H
#define SEARCHLAB_ANALYSIS_H

#include "searchlab/rational.h"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

/*
  Closed-form expected runtimes, bounds, and crossover solvers for
  breadth-first search vs. restarting random walks on uniform-goal search
  spaces, all in exact rational arithmetic. Decimal strings are produced
  only at the output boundary.

  Throughout:
    size_below  number of states strictly above the goal depth (|S_<d*|),
                root included;
    size_at     number of states at the goal depth (|S_d*|);
    goals       how many of the size_at states are goals (g);
    walk_len    restart length of a constant-depth random walk (l);
    reach_prob  probability a single walk reaches the goal depth (p_d*);
    success_prob probability a single walk ends at a goal (p_g).
*/
namespace searchlab::analysis {

// A rational that may be infinite (e.g. expected walk runtime when the
// success probability is zero).
struct Quantity {
    bool infinite = false;
    Rational value = 0;

    static Quantity inf() { return Quantity{true, 0}; }
    static Quantity of(Rational v) { return Quantity{false, std::move(v)}; }

    friend bool operator==(const Quantity& a, const Quantity& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

// Renders "inf" or the decimal form of the value.
std::string to_decimal(const Quantity& q, int significant_digits = 6);
// Renders "inf" or the exact fraction.
std::string to_fraction(const Quantity& q);

// Bundle of the symbols the closed forms consume, serializable so sweeps
// can be described in manifests. success_prob is optional; when absent it
// is derived as reach_prob * goals / size_at (a lower bound that is exact
// on uniform trees with goals only at the goal depth and walk_len >= dstar).
struct AnalysisInput {
    BigInt size_below = 1;
    BigInt size_at = 1;
    uint64_t goals = 1;
    uint64_t walk_len = 1;
    Rational reach_prob = 1;
    std::optional<Rational> success_prob;
    uint32_t dstar = 1;
    Rational ell_error = 0;

    void validate() const;  // throws std::invalid_argument
    Rational derived_success_prob() const;
};

nlohmann::json to_json(const AnalysisInput& input);
AnalysisInput parse_analysis_input(const nlohmann::json& j);

// Expected number of goal tests of breadth-first search with uniform
// tie-breaking when the goals are uniformly placed among the size_at
// states: size_below + (size_at + 1)/(goals + 1).
Rational expected_brfs(const BigInt& size_below, const BigInt& size_at, uint64_t goals);
Rational expected_brfs(const AnalysisInput& input);

// Hard bounds on the same quantity for any single run:
// [size_below + 1, size_below + size_at].
std::pair<BigInt, BigInt> brfs_bounds(const BigInt& size_below, const BigInt& size_at);
std::pair<BigInt, BigInt> brfs_bounds(const AnalysisInput& input);

// Upper bound on the expected goal tests of restarting random walks with
// fixed restart length: walk_len / success_prob + 1, infinite when the
// success probability is zero.
Quantity rrw_upper(uint64_t walk_len, const Rational& success_prob);
Quantity rrw_upper(const AnalysisInput& input);

// Both closed forms on the uniform tree with branching factor b and goal
// depth dstar, where size_at = b^dstar, size_below is the geometric sum,
// and success_prob = goals / b^dstar (walk_len >= dstar required).
struct TreeExpectations {
    BigInt size_below;
    BigInt size_at;
    Rational brfs;
    Rational success_prob;
    Quantity rrw;
};
TreeExpectations tree_expectations(uint64_t b, uint32_t dstar, uint64_t goals,
                                   uint64_t walk_len);

// Smallest single-walk success probability at which the restarting-walk
// bound drops to the breadth-first expectation:
// walk_len / (expected_brfs - 1). Plugging the result back into rrw_upper
// reproduces expected_brfs exactly.
Rational min_success_prob_for_crossover(uint64_t walk_len, const BigInt& size_below,
                                        const BigInt& size_at, uint64_t goals);
Rational min_success_prob_for_crossover(const AnalysisInput& input);

// Goal-count threshold above which the restarting-walk bound beats the
// breadth-first expectation, using the coarse success-probability bound
// p_g >= reach_prob * g / size_at:
//   g >= walk_len * size_at / (reach_prob * size_below).
// Infinite when reach_prob = 0.
Quantity goal_crossover_simple(const BigInt& size_below, const BigInt& size_at,
                               uint64_t walk_len, const Rational& reach_prob);

// Sharper threshold: with kappa = max(1, (size_at + 1)/(simple + 1)),
//   g >= walk_len * size_at / (reach_prob * (size_below + kappa - 1)).
// Never exceeds the simple threshold.
Quantity goal_crossover_accurate(const BigInt& size_below, const BigInt& size_at,
                                 uint64_t walk_len, const Rational& reach_prob);

// One goal-crossover sample on the uniform tree: for goal depth dstar and
// relative walk-length error e, the walk length is ceil((1+e) * dstar) and
// the threshold has the closed form walk_len * (b-1) * b^dstar/(b^dstar - 1)
// (reach_prob = 1). density = crossover / b^dstar.
struct CrossoverPoint {
    uint32_t dstar;
    Rational ell_error;
    uint64_t walk_len;
    Rational crossover;
    Rational density;
};
std::vector<CrossoverPoint> crossover_curves(uint64_t b, uint32_t dstar_min,
                                             uint32_t dstar_max,
                                             const std::vector<Rational>& ell_errors);

// Depth-1 comparison (star with n leaves, g goals, walk_len 1): returns
// (expected_brfs, exact restarting-walk expectation) =
// (1 + (n+1)/(g+1), 1 + n/g) and checks the first is strictly smaller.
// Requires 1 <= g < n.
std::pair<Rational, Rational> check_depth1_dominance(uint64_t n, uint64_t g);

// Sufficient condition for the all-goals case (every goal-depth state a
// goal) to favor walks: reach_prob >= dstar / size_below.
bool check_all_goals_condition(uint32_t dstar, const BigInt& size_below,
                               const Rational& reach_prob);

// Verifies, by exact finite differences, that
//   f(g) = N + (D+1)/(g+1) - L*D/g - 1
// is strictly increasing over the integer range [g_lo, g_hi]; this is the
// monotonicity fact behind the goal-crossover thresholds.
bool derivative_positivity_check(const BigInt& N, const BigInt& D, uint64_t L,
                                 uint64_t g_lo, uint64_t g_hi);

// Lower bound on the single-walk success probability from the goal-depth
// reach probability: p_g >= reach_prob * goals / size_at.
Rational success_prob_lower_bound(const Rational& reach_prob, uint64_t goals,
                                  const BigInt& size_at);

}  // namespace searchlab::analysis

#endif
