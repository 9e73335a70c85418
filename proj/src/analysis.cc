#include "searchlab/analysis.h"

#include <stdexcept>

using nlohmann::json;

namespace searchlab::analysis {

namespace {

BigInt big_pow(const BigInt& b, uint32_t e) { return boost::multiprecision::pow(b, e); }

void require(bool ok, const char* message) {
    if (!ok)
        throw std::invalid_argument(message);
}

}  // namespace

std::string to_decimal(const Quantity& q, int significant_digits) {
    return q.infinite ? "inf" : searchlab::to_decimal(q.value, significant_digits);
}

std::string to_fraction(const Quantity& q) {
    return q.infinite ? "inf" : searchlab::to_fraction(q.value);
}

void AnalysisInput::validate() const {
    require(size_below >= 1, "analysis: size_below must be >= 1");
    require(size_at >= 1, "analysis: size_at must be >= 1");
    require(goals >= 1 && BigInt(goals) <= size_at, "analysis: goals must be in [1, size_at]");
    require(walk_len >= 1, "analysis: walk_len must be >= 1");
    require(reach_prob >= 0 && reach_prob <= 1, "analysis: reach_prob must be in [0, 1]");
    if (success_prob)
        require(*success_prob >= 0 && *success_prob <= 1,
                "analysis: success_prob must be in [0, 1]");
    require(dstar >= 1, "analysis: dstar must be >= 1");
    require(ell_error >= 0, "analysis: ell_error must be >= 0");
}

Rational AnalysisInput::derived_success_prob() const {
    if (success_prob)
        return *success_prob;
    return success_prob_lower_bound(reach_prob, goals, size_at);
}

json to_json(const AnalysisInput& input) {
    json j;
    j["size_below"] = input.size_below.str();
    j["size_at"] = input.size_at.str();
    j["goals"] = input.goals;
    j["walk_len"] = input.walk_len;
    j["reach_prob"] = searchlab::to_fraction(input.reach_prob);
    if (input.success_prob)
        j["success_prob"] = searchlab::to_fraction(*input.success_prob);
    j["dstar"] = input.dstar;
    j["ell_error"] = searchlab::to_fraction(input.ell_error);
    return j;
}

AnalysisInput parse_analysis_input(const json& j) {
    const auto as_rational = [](const json& v) -> Rational {
        if (v.is_string())
            return parse_rational(v.get<std::string>());
        if (v.is_number_integer())
            return Rational(BigInt(v.get<int64_t>()));
        throw std::invalid_argument(
            "analysis: rational fields take strings like \"1/64\" or \"0.25\" "
            "(or whole numbers)");
    };
    const auto as_bigint = [](const json& v) -> BigInt {
        if (v.is_string())
            return BigInt(v.get<std::string>());
        if (v.is_number_integer())
            return BigInt(v.get<int64_t>());
        throw std::invalid_argument("analysis: integer fields take numbers or decimal strings");
    };
    try {
        AnalysisInput input;
        if (j.contains("size_below"))
            input.size_below = as_bigint(j.at("size_below"));
        if (j.contains("size_at"))
            input.size_at = as_bigint(j.at("size_at"));
        if (j.contains("goals"))
            input.goals = j.at("goals").get<uint64_t>();
        if (j.contains("walk_len"))
            input.walk_len = j.at("walk_len").get<uint64_t>();
        if (j.contains("reach_prob"))
            input.reach_prob = as_rational(j.at("reach_prob"));
        if (j.contains("success_prob"))
            input.success_prob = as_rational(j.at("success_prob"));
        if (j.contains("dstar"))
            input.dstar = j.at("dstar").get<uint32_t>();
        if (j.contains("ell_error"))
            input.ell_error = as_rational(j.at("ell_error"));
        input.validate();
        return input;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("analysis input: ") + e.what());
    }
}

Rational expected_brfs(const BigInt& size_below, const BigInt& size_at, uint64_t goals) {
    require(goals >= 1, "expected_brfs: goals must be >= 1");
    require(BigInt(goals) <= size_at, "expected_brfs: goals must be <= size_at");
    return Rational(size_below) + Rational(size_at + 1, BigInt(goals) + 1);
}

Rational expected_brfs(const AnalysisInput& input) {
    return expected_brfs(input.size_below, input.size_at, input.goals);
}

std::pair<BigInt, BigInt> brfs_bounds(const BigInt& size_below, const BigInt& size_at) {
    return {size_below + 1, size_below + size_at};
}

std::pair<BigInt, BigInt> brfs_bounds(const AnalysisInput& input) {
    return brfs_bounds(input.size_below, input.size_at);
}

Quantity rrw_upper(uint64_t walk_len, const Rational& success_prob) {
    require(walk_len >= 1, "rrw_upper: walk_len must be >= 1");
    require(success_prob >= 0 && success_prob <= 1, "rrw_upper: success_prob not in [0, 1]");
    if (success_prob == 0)
        return Quantity::inf();
    return Quantity::of(Rational(walk_len) / success_prob + 1);
}

Quantity rrw_upper(const AnalysisInput& input) {
    return rrw_upper(input.walk_len, input.derived_success_prob());
}

TreeExpectations tree_expectations(uint64_t b, uint32_t dstar, uint64_t goals,
                                   uint64_t walk_len) {
    require(b >= 2, "tree_expectations: b must be >= 2");
    require(dstar >= 1, "tree_expectations: dstar must be >= 1");
    require(walk_len >= dstar, "tree_expectations: walk_len must be >= dstar");
    TreeExpectations out;
    out.size_at = big_pow(BigInt(b), dstar);
    out.size_below = (out.size_at - 1) / (BigInt(b) - 1);
    require(goals >= 1 && BigInt(goals) <= out.size_at,
            "tree_expectations: goals must be in [1, b^dstar]");
    out.brfs = expected_brfs(out.size_below, out.size_at, goals);
    out.success_prob = Rational(BigInt(goals), out.size_at);
    out.rrw = rrw_upper(walk_len, out.success_prob);
    return out;
}

Rational min_success_prob_for_crossover(uint64_t walk_len, const BigInt& size_below,
                                        const BigInt& size_at, uint64_t goals) {
    const Rational denom = expected_brfs(size_below, size_at, goals) - 1;
    require(denom > 0, "min_success_prob_for_crossover: degenerate search space");
    return Rational(walk_len) / denom;
}

Rational min_success_prob_for_crossover(const AnalysisInput& input) {
    return min_success_prob_for_crossover(input.walk_len, input.size_below, input.size_at,
                                          input.goals);
}

Quantity goal_crossover_simple(const BigInt& size_below, const BigInt& size_at,
                               uint64_t walk_len, const Rational& reach_prob) {
    require(size_below >= 1, "goal_crossover_simple: size_below must be >= 1");
    require(size_at >= 1, "goal_crossover_simple: size_at must be >= 1");
    require(walk_len >= 1, "goal_crossover_simple: walk_len must be >= 1");
    require(reach_prob >= 0 && reach_prob <= 1,
            "goal_crossover_simple: reach_prob not in [0, 1]");
    if (reach_prob == 0)
        return Quantity::inf();
    return Quantity::of(Rational(BigInt(walk_len) * size_at) / (reach_prob * size_below));
}

Quantity goal_crossover_accurate(const BigInt& size_below, const BigInt& size_at,
                                 uint64_t walk_len, const Rational& reach_prob) {
    const Quantity simple = goal_crossover_simple(size_below, size_at, walk_len, reach_prob);
    if (simple.infinite)
        return simple;
    Rational kappa = Rational(size_at + 1) / (simple.value + 1);
    if (kappa < 1)
        kappa = 1;
    return Quantity::of(Rational(BigInt(walk_len) * size_at) /
                        (reach_prob * (kappa + size_below - 1)));
}

std::vector<CrossoverPoint> crossover_curves(uint64_t b, uint32_t dstar_min,
                                             uint32_t dstar_max,
                                             const std::vector<Rational>& ell_errors) {
    require(b >= 2, "crossover_curves: b must be >= 2");
    require(dstar_min >= 1 && dstar_min <= dstar_max, "crossover_curves: bad dstar range");
    for (const Rational& e : ell_errors)
        require(e >= 0, "crossover_curves: ell_error must be >= 0");
    std::vector<CrossoverPoint> out;
    for (const Rational& e : ell_errors) {
        for (uint32_t d = dstar_min; d <= dstar_max; ++d) {
            CrossoverPoint p;
            p.dstar = d;
            p.ell_error = e;
            p.walk_len = static_cast<uint64_t>(ceil_rational((1 + e) * d));
            const BigInt at = big_pow(BigInt(b), d);
            p.crossover = Rational(BigInt(p.walk_len) * (BigInt(b) - 1) * at) / (at - 1);
            p.density = p.crossover / at;
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::pair<Rational, Rational> check_depth1_dominance(uint64_t n, uint64_t g) {
    require(g >= 1, "check_depth1_dominance: g must be >= 1");
    require(g < n, "check_depth1_dominance: requires g < n");
    const Rational brfs = 1 + Rational(BigInt(n) + 1, BigInt(g) + 1);
    const Rational walks = 1 + Rational(BigInt(n), BigInt(g));
    require(brfs < walks, "check_depth1_dominance: dominance violated");  // provably unreachable
    return {brfs, walks};
}

bool check_all_goals_condition(uint32_t dstar, const BigInt& size_below,
                               const Rational& reach_prob) {
    return reach_prob >= Rational(BigInt(dstar), size_below);
}

bool derivative_positivity_check(const BigInt& N, const BigInt& D, uint64_t L,
                                 uint64_t g_lo, uint64_t g_hi) {
    require(N >= 1 && D >= 1, "derivative_positivity_check: N, D must be >= 1");
    require(L >= 2, "derivative_positivity_check: L must be >= 2");
    require(g_lo >= 1 && g_lo <= g_hi, "derivative_positivity_check: bad g range");
    const auto f = [&](uint64_t g) {
        return Rational(N) + Rational(D + 1, BigInt(g) + 1) -
               Rational(BigInt(L) * D, BigInt(g)) - 1;
    };
    Rational prev = f(g_lo);
    for (uint64_t g = g_lo + 1; g <= g_hi; ++g) {
        Rational cur = f(g);
        if (!(cur > prev))
            return false;
        prev = std::move(cur);
    }
    return true;
}

Rational success_prob_lower_bound(const Rational& reach_prob, uint64_t goals,
                                  const BigInt& size_at) {
    require(goals >= 1 && BigInt(goals) <= size_at,
            "success_prob_lower_bound: goals must be in [1, size_at]");
    return reach_prob * goals / size_at;
}

}  // namespace searchlab::analysis
