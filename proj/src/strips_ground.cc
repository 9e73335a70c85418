#include "searchlab/strips.h"

#include <map>
#include <unordered_map>

namespace searchlab::strips {

namespace {

std::string canonical_atom(const std::string& head, const std::vector<std::string>& args) {
    std::string out = "(" + head;
    for (const std::string& a : args)
        out += " " + a;
    out += ")";
    return out;
}

void sort_unique(std::vector<FactId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool FactSet::contains_all(const std::vector<FactId>& sorted) const {
    // Both sides sorted: linear merge scan.
    size_t i = 0;
    for (FactId f : sorted) {
        while (i < facts.size() && facts[i] < f)
            ++i;
        if (i == facts.size() || facts[i] != f)
            return false;
    }
    return true;
}

uint64_t FactSet::hash() const {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the id bytes
    for (FactId f : facts) {
        for (int shift = 0; shift < 32; shift += 8) {
            h ^= (f >> shift) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

void GroundTask::append_successors(const State& s, std::vector<State>& out) const {
    for (const GroundAction& action : actions)
        if (applicable(action, s))
            out.push_back(apply(action, s));
}

GroundTask::State GroundTask::apply(const GroundAction& action, const State& s) const {
    State next;
    next.facts.reserve(s.facts.size() + action.add_effects.size());
    // (s - deletes) ∪ adds, all three lists sorted: one merge pass.
    size_t di = 0, ai = 0;
    for (FactId f : s.facts) {
        while (di < action.del_effects.size() && action.del_effects[di] < f)
            ++di;
        if (di < action.del_effects.size() && action.del_effects[di] == f)
            continue;
        while (ai < action.add_effects.size() && action.add_effects[ai] < f)
            next.facts.push_back(action.add_effects[ai++]);
        if (ai < action.add_effects.size() && action.add_effects[ai] == f)
            ++ai;
        next.facts.push_back(f);
    }
    while (ai < action.add_effects.size())
        next.facts.push_back(action.add_effects[ai++]);
    return next;
}

std::optional<uint32_t> GroundTask::find_action(const std::string& canonical_name) const {
    // Actions are sorted by name, so binary search works.
    const auto it = std::lower_bound(
        actions.begin(), actions.end(), canonical_name,
        [](const GroundAction& a, const std::string& n) { return a.name < n; });
    if (it == actions.end() || it->name != canonical_name)
        return std::nullopt;
    return static_cast<uint32_t>(it - actions.begin());
}

std::optional<std::vector<uint32_t>> GroundTask::actions_along(const Path<State>& path) const {
    std::vector<uint32_t> ids;
    for (size_t i = 0; i + 1 < path.states.size(); ++i) {
        bool found = false;
        for (uint32_t a = 0; a < actions.size() && !found; ++a) {
            if (applicable(actions[a], path.states[i]) &&
                apply(actions[a], path.states[i]) == path.states[i + 1]) {
                ids.push_back(a);
                found = true;
            }
        }
        if (!found)
            return std::nullopt;
    }
    return ids;
}

namespace {

class Grounder {
public:
    Grounder(const Domain& domain, const Problem& problem, size_t max_actions)
        : domain_(domain), problem_(problem), max_actions_(max_actions) {
        for (const TypedName& c : domain.constants)
            objects_.push_back(c);
        for (const TypedName& o : problem.objects)
            objects_.push_back(o);
    }

    GroundTask run() {
        build_fact_universe();
        for (const ActionSchema& schema : domain_.actions)
            instantiate(schema);

        GroundTask task;
        task.fact_names.reserve(fact_ids_.size());
        for (const auto& entry : fact_ids_)
            task.fact_names.push_back(entry.first);  // std::map: lexicographic
        for (auto& entry : ground_actions_)
            task.actions.push_back(std::move(entry.second));

        for (const Literal& lit : problem_.init)
            task.init.facts.push_back(fact_id(lit.predicate, lit.args));
        sort_unique(task.init.facts);
        for (const Literal& lit : problem_.goal)
            task.goal.push_back(fact_id(lit.predicate, lit.args));
        sort_unique(task.goal);
        return task;
    }

private:
    void build_fact_universe() {
        for (const Predicate& pred : domain_.predicates) {
            std::vector<std::string> args(pred.param_types.size());
            enumerate_bindings(pred.param_types, 0, args, [&](void) {
                const std::string name = canonical_atom(pred.name, args);
                fact_ids_.emplace(name, 0);
            });
        }
        // Ids follow the lexicographic order of the canonical names.
        FactId next = 0;
        for (auto& [name, id] : fact_ids_)
            id = next++;
    }

    template <typename Fn>
    void enumerate_bindings(const std::vector<std::string>& param_types, size_t index,
                            std::vector<std::string>& args, const Fn& emit) {
        if (index == param_types.size()) {
            emit();
            return;
        }
        for (const TypedName& obj : objects_) {
            if (!domain_.is_subtype(obj.type, param_types[index]))
                continue;
            args[index] = obj.name;
            enumerate_bindings(param_types, index + 1, args, emit);
        }
    }

    void instantiate(const ActionSchema& schema) {
        std::vector<std::string> param_types;
        for (const TypedName& p : schema.params)
            param_types.push_back(p.type);
        std::vector<std::string> binding(param_types.size());
        enumerate_bindings(param_types, 0, binding, [&]() {
            std::unordered_map<std::string, std::string> env;
            for (size_t i = 0; i < binding.size(); ++i)
                env[schema.params[i].name] = binding[i];

            GroundAction action;
            action.name = canonical_atom(schema.name, binding);
            for (const Literal& lit : schema.preconditions)
                action.preconditions.push_back(resolve(lit, env));
            for (const Literal& lit : schema.add_effects)
                action.add_effects.push_back(resolve(lit, env));
            for (const Literal& lit : schema.del_effects)
                action.del_effects.push_back(resolve(lit, env));
            sort_unique(action.preconditions);
            sort_unique(action.add_effects);
            sort_unique(action.del_effects);

            // A ground instance must not add and delete the same fact;
            // such instances are dropped (e.g. move with ?from = ?to).
            for (FactId f : action.add_effects)
                if (std::binary_search(action.del_effects.begin(), action.del_effects.end(),
                                       f))
                    return;

            if (ground_actions_.size() >= max_actions_)
                throw ParseError("grounding exceeds the cap of " +
                                     std::to_string(max_actions_) + " actions",
                                 SourcePos{});
            ground_actions_.emplace(action.name, std::move(action));
        });
    }

    FactId resolve(const Literal& lit, const std::unordered_map<std::string, std::string>& env) {
        std::vector<std::string> args;
        for (const std::string& a : lit.args) {
            const auto it = env.find(a);
            args.push_back(it == env.end() ? a : it->second);  // constants pass through
        }
        return fact_id(lit.predicate, args);
    }

    FactId fact_id(const std::string& predicate, const std::vector<std::string>& args) const {
        const auto it = fact_ids_.find(canonical_atom(predicate, args));
        if (it == fact_ids_.end())
            throw ParseError("internal: fact outside the universe", SourcePos{});
        return it->second;
    }

    const Domain& domain_;
    const Problem& problem_;
    const size_t max_actions_;
    std::vector<TypedName> objects_;
    std::map<std::string, FactId> fact_ids_;          // name -> id, lexicographic
    std::map<std::string, GroundAction> ground_actions_;  // keyed by name
};

}  // namespace

GroundTask ground(const Domain& domain, const Problem& problem, size_t max_actions) {
    return Grounder(domain, problem, max_actions).run();
}

}  // namespace searchlab::strips
