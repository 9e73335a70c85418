#include "searchlab/synthetic.h"

#include <unordered_set>

using nlohmann::json;

namespace searchlab::synthetic {

namespace {

constexpr uint64_t kStateCountCap = uint64_t{1} << 62;

// b^e with a hard failure beyond the enumerable-state cap.
uint64_t checked_pow(uint64_t b, uint32_t e, const char* what) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; ++i) {
        if (b != 0 && r > kStateCountCap / b)
            throw SpecError(std::string(what) + ": state space exceeds 2^62 states");
        r *= b;
    }
    return r;
}

// Packed code of the depth-d state with the given rank (digits base b,
// packing base m); for m == b this is just m^d + rank.
uint64_t rank_to_code(uint64_t rank, uint32_t depth, uint64_t b, uint64_t m) {
    uint64_t digits[64];
    for (uint32_t j = 0; j < depth; ++j) {
        digits[j] = rank % b;
        rank /= b;
    }
    uint64_t code = 1;
    for (uint32_t j = depth; j > 0; --j)
        code = code * m + digits[j - 1];
    return code;
}

std::vector<uint64_t> sorted_codes_from_ranks(std::vector<uint64_t> ranks, uint32_t depth,
                                              uint64_t b, uint64_t m) {
    std::vector<uint64_t> codes;
    codes.reserve(ranks.size());
    for (uint64_t r : ranks)
        codes.push_back(rank_to_code(r, depth, b, m));
    std::sort(codes.begin(), codes.end());
    return codes;
}

}  // namespace

// ---------------------------------------------------------------- specs

void TreeTaskSpec::validate() const {
    if (b < 1)
        throw SpecError("tree: b must be >= 1");
    if (dstar < 1)
        throw SpecError("tree: dstar must be >= 1");
    const uint64_t m = std::max<uint64_t>(b, 2);
    checked_pow(m, dstar + deeper_levels, "tree");
    const uint64_t at = checked_pow(b, dstar, "tree");
    if (g < 1 || g > at)
        throw SpecError("tree: g must be in [1, b^dstar]");
    if (deeper_goals > 0) {
        if (deeper_levels == 0)
            throw SpecError("tree: deeper_goals requires deeper_levels > 0");
        uint64_t deep_total = 0;
        uint64_t level = at;
        for (uint32_t d = 0; d < deeper_levels; ++d) {
            level *= b;
            deep_total += level;
        }
        if (deeper_goals > deep_total)
            throw SpecError("tree: deeper_goals exceeds the number of deeper states");
    }
}

void StarTaskSpec::validate() const {
    if (n < 1)
        throw SpecError("star: n must be >= 1");
    if (g < 1 || g > n)
        throw SpecError("star: g must be in [1, n]");
}

void DeadLeafTreeSpec::validate() const {
    if (b < 1)
        throw SpecError("dead_leaf_tree: b must be >= 1");
    if (dstar < 1)
        throw SpecError("dead_leaf_tree: dstar must be >= 1");
    if (!(dead_prob >= 0.0 && dead_prob < 1.0))
        throw SpecError("dead_leaf_tree: dead_prob must be in [0, 1)");
    const uint64_t at = checked_pow(b, dstar, "dead_leaf_tree");
    if (g < 1 || g > at)
        throw SpecError("dead_leaf_tree: g must be in [1, b^dstar]");
}

void UhrChainSpec::validate() const {
    if (k < 1)
        throw SpecError("uhr_chain: k must be >= 1");
    if (uhrs.size() != k)
        throw SpecError("uhr_chain: uhrs must list exactly k regions");
    for (const UhrSpec& u : uhrs) {
        if (u.b < 1)
            throw SpecError("uhr_chain: region b must be >= 1");
        if (u.exit_depth < 1)
            throw SpecError("uhr_chain: exit_depth must be >= 1");
        const uint64_t layer = checked_pow(u.b, u.exit_depth - 1, "uhr_chain");
        if (u.exit_count < 1 || u.exit_count > layer)
            throw SpecError("uhr_chain: exit_count must be in [1, b^(exit_depth-1)]");
    }
}

uint32_t UhrChainSpec::max_exit_depth() const {
    uint32_t m = 0;
    for (const UhrSpec& u : uhrs)
        m = std::max(m, u.exit_depth);
    return m;
}

// --------------------------------------------------------------- builders

TreeTask build_task(const TreeTaskSpec& spec, RngStream& placement) {
    spec.validate();
    TreeTask task;
    task.b_ = spec.b;
    task.m_ = std::max<uint64_t>(spec.b, 2);
    task.dstar_ = spec.dstar;
    task.total_depth_ = spec.dstar + spec.deeper_levels;

    const uint64_t at = checked_pow(spec.b, spec.dstar, "tree");
    task.goal_codes_ =
        sorted_codes_from_ranks(sample_without_replacement(placement, at, spec.g),
                                spec.dstar, task.b_, task.m_);

    if (spec.deeper_goals > 0) {
        // Extra goals uniformly over all states strictly below dstar.
        std::vector<uint64_t> level_sizes;
        uint64_t deep_total = 0, level = at;
        for (uint32_t d = 0; d < spec.deeper_levels; ++d) {
            level *= spec.b;
            level_sizes.push_back(level);
            deep_total += level;
        }
        std::vector<uint64_t> extra;
        for (uint64_t flat : sample_without_replacement(placement, deep_total, spec.deeper_goals)) {
            uint32_t d = 0;
            while (flat >= level_sizes[d]) {
                flat -= level_sizes[d];
                ++d;
            }
            extra.push_back(rank_to_code(flat, spec.dstar + d + 1, task.b_, task.m_));
        }
        task.goal_codes_.insert(task.goal_codes_.end(), extra.begin(), extra.end());
        std::sort(task.goal_codes_.begin(), task.goal_codes_.end());
    }
    return task;
}

TreeTask build_task(const TreeTaskSpec& spec) {
    if (!spec.goal_seed)
        throw SpecError("tree: goal_seed required (or supply a placement stream)");
    RngStream placement(*spec.goal_seed, 0);
    return build_task(spec, placement);
}

TreeTask build_task(const StarTaskSpec& spec, RngStream& placement) {
    spec.validate();
    TreeTaskSpec tree;
    tree.b = spec.n;
    tree.dstar = 1;
    tree.g = spec.g;
    tree.goal_seed = spec.goal_seed;
    return build_task(tree, placement);
}

TreeTask build_task(const StarTaskSpec& spec) {
    if (!spec.goal_seed)
        throw SpecError("star: goal_seed required (or supply a placement stream)");
    RngStream placement(*spec.goal_seed, 0);
    return build_task(spec, placement);
}

DeadLeafTreeTask build_task(const DeadLeafTreeSpec& spec, RngStream& placement) {
    spec.validate();
    DeadLeafTreeTask task;
    task.b_ = spec.b;
    task.m_ = std::max<uint64_t>(spec.b, 2);
    task.dstar_ = spec.dstar;
    task.structure_seed_ = spec.structure_seed;
    task.dead_threshold_ =
        static_cast<uint64_t>(spec.dead_prob * 18446744073709551616.0);  // q * 2^64

    // Goals may only sit on depth-dstar states whose ancestors all survive.
    std::vector<uint64_t> reachable;
    std::vector<TreeNodeId> stack{task.initial_state()};
    uint64_t visited = 0;
    while (!stack.empty()) {
        const TreeNodeId s = stack.back();
        stack.pop_back();
        if (++visited > kDefaultNodeCap)
            throw EnumerationLimit("dead_leaf_tree: too many states to enumerate goals");
        if (s.depth == task.dstar_) {
            reachable.push_back(s.code);
            continue;
        }
        const size_t n = task.successor_count(s);
        for (size_t i = 0; i < n; ++i)
            stack.push_back(task.successor_at(s, i));
    }
    if (spec.g > reachable.size())
        throw SpecError("dead_leaf_tree: only " + std::to_string(reachable.size()) +
                        " reachable depth-dstar states, cannot place g=" +
                        std::to_string(spec.g) + " goals");
    task.reachable_at_goal_depth_ = reachable.size();
    std::sort(reachable.begin(), reachable.end());
    std::vector<uint64_t> codes;
    for (uint64_t idx : sample_without_replacement(placement, reachable.size(), spec.g))
        codes.push_back(reachable[idx]);
    std::sort(codes.begin(), codes.end());
    task.goal_codes_ = std::move(codes);
    return task;
}

DeadLeafTreeTask build_task(const DeadLeafTreeSpec& spec) {
    if (!spec.goal_seed)
        throw SpecError("dead_leaf_tree: goal_seed required (or supply a placement stream)");
    RngStream placement(*spec.goal_seed, 0);
    return build_task(spec, placement);
}

UhrChainTask build_task(const UhrChainSpec& spec) {
    spec.validate();
    UhrChainTask task;
    task.k_ = spec.k;
    for (uint32_t i = 0; i < spec.k; ++i) {
        const UhrSpec& u = spec.uhrs[i];
        UhrChainTask::Region region;
        region.b = u.b;
        region.m = std::max<uint64_t>(u.b, 2);
        region.exit_depth = u.exit_depth;
        const uint64_t layer = checked_pow(u.b, u.exit_depth - 1, "uhr_chain");
        RngStream exits(spec.seed, i);
        region.exit_codes = sorted_codes_from_ranks(
            sample_without_replacement(exits, layer, u.exit_count), u.exit_depth - 1,
            region.b, region.m);
        task.regions_.push_back(std::move(region));
    }
    return task;
}

// ----------------------------------------------------------------- census

uint64_t DepthCensus::total() const {
    uint64_t t = 0;
    for (uint64_t c : per_depth)
        t += c;
    return t;
}

uint64_t DepthCensus::below(uint32_t depth) const {
    uint64_t t = 0;
    for (uint32_t d = 0; d < depth && d < per_depth.size(); ++d)
        t += per_depth[d];
    return t;
}

uint64_t DepthCensus::at(uint32_t depth) const {
    return depth < per_depth.size() ? per_depth[depth] : 0;
}

namespace {

template <SearchTask Task>
DepthCensus census_impl(const Task& task, uint64_t node_cap) {
    DepthCensus out;
    std::vector<typename Task::State> current{task.initial_state()}, next;
    std::unordered_set<typename Task::State, StateHash<typename Task::State>> seen;
    if constexpr (!is_acyclic_task<Task>())
        seen.insert(current.front());
    uint64_t total = 1;
    std::vector<typename Task::State> succ;
    while (!current.empty()) {
        out.per_depth.push_back(current.size());
        next.clear();
        for (const auto& s : current) {
            succ.clear();
            task.append_successors(s, succ);
            for (auto& s2 : succ) {
                if constexpr (!is_acyclic_task<Task>()) {
                    if (!seen.insert(s2).second)
                        continue;
                }
                if (++total > node_cap)
                    throw EnumerationLimit("census: more than " + std::to_string(node_cap) +
                                           " reachable states; raise the cap or shrink the task");
                next.push_back(std::move(s2));
            }
        }
        std::swap(current, next);
    }
    return out;
}

}  // namespace

DepthCensus census(const TreeTask& task, uint64_t node_cap) { return census_impl(task, node_cap); }
DepthCensus census(const DeadLeafTreeTask& task, uint64_t node_cap) {
    return census_impl(task, node_cap);
}
DepthCensus census(const UhrChainTask& task, uint64_t node_cap) {
    return census_impl(task, node_cap);
}

// --------------------------------------------------- exact walk probabilities

namespace {

// Sum over surviving root-to-depth-`target` paths of prod(1 / |successors|).
template <SearchTask Task>
Rational reach_prob_impl(const Task& task, uint32_t target, uint64_t node_cap) {
    uint64_t visited = 0;
    auto rec = [&](auto&& self, const typename Task::State& s, uint32_t depth,
                   const Rational& prob) -> Rational {
        if (++visited > node_cap)
            throw EnumerationLimit("exact_reach_prob: enumeration cap exceeded");
        if (depth == target)
            return prob;
        const size_t n = task.successor_count(s);
        if (n == 0)
            return Rational(0);
        Rational acc(0);
        const Rational step = prob / n;
        for (size_t i = 0; i < n; ++i)
            acc += self(self, task.successor_at(s, i), depth + 1, step);
        return acc;
    };
    return rec(rec, task.initial_state(), 0, Rational(1));
}

// Probability that a single walk of at most walk_len steps samples a goal;
// the walk stops at the first goal it steps on.
template <SearchTask Task>
Rational success_prob_impl(const Task& task, uint64_t walk_len, uint64_t node_cap) {
    uint64_t visited = 0;
    auto rec = [&](auto&& self, const typename Task::State& s, uint64_t steps_left,
                   const Rational& prob) -> Rational {
        if (++visited > node_cap)
            throw EnumerationLimit("exact_success_prob: enumeration cap exceeded");
        if (steps_left == 0)
            return Rational(0);
        const size_t n = task.successor_count(s);
        if (n == 0)
            return Rational(0);
        Rational acc(0);
        const Rational step = prob / n;
        for (size_t i = 0; i < n; ++i) {
            const auto child = task.successor_at(s, i);
            if (task.goal_test(child))
                acc += step;
            else
                acc += self(self, child, steps_left - 1, step);
        }
        return acc;
    };
    return rec(rec, task.initial_state(), walk_len, Rational(1));
}

}  // namespace

Rational exact_reach_prob(const TreeTaskSpec& spec, uint64_t node_cap) {
    return reach_prob_impl(build_task(spec), spec.dstar, node_cap);
}

Rational exact_reach_prob(const DeadLeafTreeSpec& spec, uint64_t node_cap) {
    return reach_prob_impl(build_task(spec), spec.dstar, node_cap);
}

Rational exact_success_prob(const TreeTaskSpec& spec, uint64_t walk_len, uint64_t node_cap) {
    return success_prob_impl(build_task(spec), walk_len, node_cap);
}

Rational exact_success_prob(const DeadLeafTreeSpec& spec, uint64_t walk_len, uint64_t node_cap) {
    return success_prob_impl(build_task(spec), walk_len, node_cap);
}

BigInt tree_states_at(const BigInt& b, uint32_t dstar) {
    return boost::multiprecision::pow(b, dstar);
}

BigInt tree_states_below(const BigInt& b, uint32_t dstar) {
    if (b == 1)
        return BigInt(dstar);
    return (boost::multiprecision::pow(b, dstar) - 1) / (b - 1);
}

// ------------------------------------------------------------------- json

namespace {

void check_fields(const json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
    for (const char* f : required)
        if (!j.contains(f))
            throw SpecError(std::string("task spec: missing field '") + f + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto known = [&](std::initializer_list<const char*> list) {
            for (const char* f : list)
                if (it.key() == f)
                    return true;
            return false;
        };
        if (!known(required) && !known(optional))
            throw SpecError("task spec: unknown field '" + it.key() + "'");
    }
}

}  // namespace

json to_json(const TaskSpec& spec) {
    json j;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TreeTaskSpec>) {
                j["type"] = "tree";
                j["b"] = s.b;
                j["dstar"] = s.dstar;
                j["g"] = s.g;
                if (s.goal_seed)
                    j["goal_seed"] = *s.goal_seed;
                if (s.deeper_levels)
                    j["deeper_levels"] = s.deeper_levels;
                if (s.deeper_goals)
                    j["deeper_goals"] = s.deeper_goals;
            } else if constexpr (std::is_same_v<T, StarTaskSpec>) {
                j["type"] = "star";
                j["n"] = s.n;
                j["g"] = s.g;
                if (s.goal_seed)
                    j["goal_seed"] = *s.goal_seed;
            } else if constexpr (std::is_same_v<T, DeadLeafTreeSpec>) {
                j["type"] = "dead_leaf_tree";
                j["b"] = s.b;
                j["dstar"] = s.dstar;
                j["g"] = s.g;
                if (s.goal_seed)
                    j["goal_seed"] = *s.goal_seed;
                j["dead_prob"] = s.dead_prob;
                j["structure_seed"] = s.structure_seed;
            } else {
                j["type"] = "uhr_chain";
                j["k"] = s.k;
                j["seed"] = s.seed;
                json uhrs = json::array();
                for (const UhrSpec& u : s.uhrs)
                    uhrs.push_back({{"b", u.b}, {"exit_depth", u.exit_depth},
                                    {"exit_count", u.exit_count}});
                j["uhrs"] = uhrs;
            }
        },
        spec);
    return j;
}

TaskSpec parse_task_spec(const json& j) {
    try {
        if (!j.is_object() || !j.contains("type"))
            throw SpecError("task spec: expected an object with a 'type' field");
        const std::string type = j.at("type").get<std::string>();
        if (type == "tree") {
            check_fields(j, {"type", "b", "dstar", "g"},
                         {"goal_seed", "deeper_levels", "deeper_goals"});
            TreeTaskSpec s;
            s.b = j.at("b").get<uint64_t>();
            s.dstar = j.at("dstar").get<uint32_t>();
            s.g = j.at("g").get<uint64_t>();
            if (j.contains("goal_seed"))
                s.goal_seed = j.at("goal_seed").get<uint64_t>();
            if (j.contains("deeper_levels"))
                s.deeper_levels = j.at("deeper_levels").get<uint32_t>();
            if (j.contains("deeper_goals"))
                s.deeper_goals = j.at("deeper_goals").get<uint64_t>();
            s.validate();
            return s;
        }
        if (type == "star") {
            check_fields(j, {"type", "n", "g"}, {"goal_seed"});
            StarTaskSpec s;
            s.n = j.at("n").get<uint64_t>();
            s.g = j.at("g").get<uint64_t>();
            if (j.contains("goal_seed"))
                s.goal_seed = j.at("goal_seed").get<uint64_t>();
            s.validate();
            return s;
        }
        if (type == "dead_leaf_tree") {
            check_fields(j, {"type", "b", "dstar", "g", "dead_prob", "structure_seed"},
                         {"goal_seed"});
            DeadLeafTreeSpec s;
            s.b = j.at("b").get<uint64_t>();
            s.dstar = j.at("dstar").get<uint32_t>();
            s.g = j.at("g").get<uint64_t>();
            if (j.contains("goal_seed"))
                s.goal_seed = j.at("goal_seed").get<uint64_t>();
            s.dead_prob = j.at("dead_prob").get<double>();
            s.structure_seed = j.at("structure_seed").get<uint64_t>();
            s.validate();
            return s;
        }
        if (type == "uhr_chain") {
            check_fields(j, {"type", "k", "uhrs", "seed"}, {});
            UhrChainSpec s;
            s.k = j.at("k").get<uint32_t>();
            s.seed = j.at("seed").get<uint64_t>();
            for (const json& u : j.at("uhrs")) {
                check_fields(u, {"b", "exit_depth", "exit_count"}, {});
                UhrSpec us;
                us.b = u.at("b").get<uint64_t>();
                us.exit_depth = u.at("exit_depth").get<uint32_t>();
                us.exit_count = u.at("exit_count").get<uint64_t>();
                s.uhrs.push_back(us);
            }
            s.validate();
            return s;
        }
        throw SpecError("task spec: unknown type '" + type + "'");
    } catch (const json::exception& e) {
        throw SpecError(std::string("task spec: ") + e.what());
    }
}

}  // namespace searchlab::synthetic
