#include "searchlab/strips.h"

#include <cctype>
#include <sstream>

namespace searchlab::strips {

std::string PlanStep::canonical() const {
    std::string out = "(" + name;
    for (const std::string& a : args)
        out += " " + a;
    out += ")";
    return out;
}

std::vector<PlanStep> parse_plan(const std::string& text) {
    std::vector<PlanStep> steps;
    std::istringstream lines(text);
    std::string line;
    int line_number = 0;
    while (std::getline(lines, line)) {
        ++line_number;
        if (const size_t comment = line.find(';'); comment != std::string::npos)
            line.resize(comment);

        // Tokenize one "(name arg1 arg2)" line by hand; positions matter
        // for diagnostics and the grammar is a single flat list.
        std::vector<std::pair<std::string, int>> tokens;  // (token, 1-based column)
        int open_col = 0, close_col = 0;
        for (size_t i = 0; i < line.size();) {
            const char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == '(') {
                if (open_col)
                    throw ParseError("nested '(' in plan step",
                                     {line_number, static_cast<int>(i) + 1});
                open_col = static_cast<int>(i) + 1;
                ++i;
            } else if (c == ')') {
                if (!open_col || close_col)
                    throw ParseError("unexpected ')'", {line_number, static_cast<int>(i) + 1});
                close_col = static_cast<int>(i) + 1;
                ++i;
            } else {
                const size_t start = i;
                while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                       line[i] != '(' && line[i] != ')')
                    ++i;
                std::string token = line.substr(start, i - start);
                for (char& ch : token)
                    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
                if (close_col)
                    throw ParseError("trailing content after ')'",
                                     {line_number, static_cast<int>(start) + 1});
                tokens.emplace_back(std::move(token), static_cast<int>(start) + 1);
            }
        }
        if (!open_col && tokens.empty())
            continue;  // blank or comment-only line
        if (!open_col)
            throw ParseError("plan step must be parenthesized: (name args...)",
                             {line_number, tokens.front().second});
        if (!close_col)
            throw ParseError("missing ')'", {line_number, open_col});
        if (tokens.empty())
            throw ParseError("empty plan step", {line_number, open_col});

        PlanStep step;
        step.pos = {line_number, open_col};
        step.name = tokens.front().first;
        for (size_t t = 1; t < tokens.size(); ++t)
            step.args.push_back(tokens[t].first);
        steps.push_back(std::move(step));
    }
    return steps;
}

std::string format_plan(const GroundTask& task, const std::vector<uint32_t>& action_ids) {
    std::string out;
    for (uint32_t id : action_ids) {
        out += task.actions.at(id).name;
        out += "\n";
    }
    return out;
}

ValidationResult validate_plan(const GroundTask& task,
                               const std::vector<uint32_t>& action_ids) {
    ValidationResult result;
    FactSet state = task.init;
    for (size_t i = 0; i < action_ids.size(); ++i) {
        const GroundAction& action = task.actions.at(action_ids[i]);
        if (!task.applicable(action, state)) {
            result.failing_step = i + 1;
            result.reason =
                "action " + action.name + " not applicable at step " + std::to_string(i + 1);
            return result;
        }
        state = task.apply(action, state);
    }
    if (!task.goal_test(state)) {
        result.reason = "goal not satisfied after step " + std::to_string(action_ids.size());
        return result;
    }
    result.valid = true;
    return result;
}

ValidationResult validate_plan(const GroundTask& task, const std::vector<PlanStep>& steps) {
    std::vector<uint32_t> ids;
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto id = task.find_action(steps[i].canonical());
        if (!id) {
            ValidationResult result;
            result.failing_step = i + 1;
            result.reason = "unknown ground action " + steps[i].canonical() + " at step " +
                            std::to_string(i + 1);
            return result;
        }
        ids.push_back(*id);
    }
    return validate_plan(task, ids);
}

}  // namespace searchlab::strips
