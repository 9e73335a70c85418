#include "searchlab/strips.h"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace searchlab::strips {

namespace {

// ------------------------------------------------------- s-expressions

struct Sexp {
    SourcePos pos;
    bool is_atom = false;
    std::string atom;         // lower-cased
    std::vector<Sexp> items;  // when !is_atom
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    // Token kinds: '(' / ')' / atom (kind 'a') / end (kind 0).
    struct Token {
        char kind = 0;
        std::string atom;
        SourcePos pos;
    };

    Token next() {
        skip_space();
        Token t;
        t.pos = pos();
        if (i_ >= text_.size())
            return t;
        const char c = text_[i_];
        if (c == '(' || c == ')') {
            advance();
            t.kind = c;
            return t;
        }
        t.kind = 'a';
        while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) &&
               text_[i_] != '(' && text_[i_] != ')' && text_[i_] != ';') {
            t.atom += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[i_])));
            advance();
        }
        return t;
    }

private:
    SourcePos pos() const { return {line_, col_}; }

    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (i_ < text_.size()) {
            const char c = text_[i_];
            if (c == ';') {
                while (i_ < text_.size() && text_[i_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

Sexp parse_sexp(Lexer& lexer, const Lexer::Token& first) {
    if (first.kind == 0)
        throw ParseError("unexpected end of input", first.pos);
    if (first.kind == ')')
        throw ParseError("unexpected ')'", first.pos);
    Sexp node;
    node.pos = first.pos;
    if (first.kind == 'a') {
        node.is_atom = true;
        node.atom = first.atom;
        return node;
    }
    for (;;) {
        const Lexer::Token t = lexer.next();
        if (t.kind == 0)
            throw ParseError("missing ')' for list opened here", first.pos);
        if (t.kind == ')')
            return node;
        node.items.push_back(parse_sexp(lexer, t));
    }
}

Sexp parse_single_sexp(const std::string& text, const char* what) {
    Lexer lexer(text);
    const Lexer::Token first = lexer.next();
    if (first.kind == 0)
        throw ParseError(std::string("empty input, expected a ") + what, first.pos);
    Sexp root = parse_sexp(lexer, first);
    const Lexer::Token rest = lexer.next();
    if (rest.kind != 0)
        throw ParseError(std::string("trailing content after the ") + what, rest.pos);
    return root;
}

// ------------------------------------------------------ shared helpers

const Sexp& expect_list(const Sexp& s, const char* what) {
    if (s.is_atom)
        throw ParseError(std::string("expected ") + what + ", got atom '" + s.atom + "'",
                         s.pos);
    return s;
}

const std::string& expect_atom(const Sexp& s, const char* what) {
    if (!s.is_atom)
        throw ParseError(std::string("expected ") + what, s.pos);
    return s.atom;
}

bool head_is(const Sexp& s, const char* keyword) {
    return !s.is_atom && !s.items.empty() && s.items[0].is_atom && s.items[0].atom == keyword;
}

// Parses "name... - type name... - type ..." into typed names; untyped
// trailing names get type "object".
std::vector<TypedName> parse_typed_list(const std::vector<Sexp>& items, size_t begin,
                                        const char* what) {
    std::vector<TypedName> out;
    std::vector<size_t> pending;  // indices into `out` awaiting a type
    for (size_t i = begin; i < items.size(); ++i) {
        const std::string& atom = expect_atom(items[i], what);
        if (atom == "-") {
            if (pending.empty())
                throw ParseError("'-' without names before it", items[i].pos);
            if (++i >= items.size())
                throw ParseError("'-' without a type after it", items[i - 1].pos);
            const std::string& type = expect_atom(items[i], "type name");
            for (size_t j : pending)
                out[j].type = type;
            pending.clear();
        } else {
            pending.push_back(out.size());
            out.push_back({atom, "object"});
        }
    }
    return out;
}

class LiteralParser {
public:
    LiteralParser(const Domain& domain,
                  const std::unordered_map<std::string, std::string>& term_types)
        : domain_(domain), term_types_(term_types) {}

    // Parses "(pred t1 t2)", checking the predicate, arity, and that every
    // term (variable or object) is declared with a compatible type.
    Literal parse(const Sexp& s, const char* context) const {
        expect_list(s, "an atomic formula");
        if (s.items.empty() || !s.items[0].is_atom)
            throw ParseError(std::string("expected a predicate name in ") + context, s.pos);
        const std::string& name = s.items[0].atom;
        const Predicate* pred = domain_.find_predicate(name);
        if (!pred)
            throw ParseError("unknown predicate '" + name + "'", s.items[0].pos);
        if (s.items.size() - 1 != pred->param_types.size())
            throw ParseError("predicate '" + name + "' expects " +
                                 std::to_string(pred->param_types.size()) +
                                 " arguments, got " + std::to_string(s.items.size() - 1),
                             s.pos);
        Literal lit;
        lit.predicate = name;
        for (size_t i = 1; i < s.items.size(); ++i) {
            const std::string& term = expect_atom(s.items[i], "a term");
            const auto it = term_types_.find(term);
            if (it == term_types_.end())
                throw ParseError(std::string(term[0] == '?' ? "unknown variable '"
                                                            : "unknown object '") +
                                     term + "'",
                                 s.items[i].pos);
            if (!domain_.is_subtype(it->second, pred->param_types[i - 1]))
                throw ParseError("term '" + term + "' has type '" + it->second +
                                     "', predicate '" + name + "' needs '" +
                                     pred->param_types[i - 1] + "'",
                                 s.items[i].pos);
            lit.args.push_back(term);
        }
        return lit;
    }

    // Parses a conjunction: a single atom, or (and atom...). Negations are
    // allowed only when `negated_out` is supplied (effect lists).
    void parse_conjunction(const Sexp& s, const char* context, std::vector<Literal>& positive,
                           std::vector<Literal>* negated_out = nullptr) const {
        expect_list(s, "a formula");
        if (head_is(s, "and")) {
            for (size_t i = 1; i < s.items.size(); ++i)
                parse_element(s.items[i], context, positive, negated_out);
            return;
        }
        if (!s.items.empty())
            parse_element(s, context, positive, negated_out);
    }

private:
    void parse_element(const Sexp& s, const char* context, std::vector<Literal>& positive,
                       std::vector<Literal>* negated_out) const {
        expect_list(s, "a literal");
        if (head_is(s, "not")) {
            if (!negated_out)
                throw ParseError(std::string("negative literals are not supported in ") +
                                     context,
                                 s.pos);
            if (s.items.size() != 2)
                throw ParseError("'not' takes exactly one literal", s.pos);
            negated_out->push_back(parse(s.items[1], context));
            return;
        }
        if (!s.items.empty() && s.items[0].is_atom &&
            (s.items[0].atom == "or" || s.items[0].atom == "imply" ||
             s.items[0].atom == "exists" || s.items[0].atom == "forall" ||
             s.items[0].atom == "when"))
            throw ParseError("unsupported construct '" + s.items[0].atom + "'",
                             s.items[0].pos);
        positive.push_back(parse(s, context));
    }

    const Domain& domain_;
    const std::unordered_map<std::string, std::string>& term_types_;
};

void check_requirements(const Sexp& section) {
    static const std::unordered_set<std::string> supported = {":strips", ":typing",
                                                              ":constants"};
    for (size_t i = 1; i < section.items.size(); ++i) {
        const std::string& req = expect_atom(section.items[i], "a requirement keyword");
        if (!supported.count(req))
            throw ParseError("unsupported requirement " + req, section.items[i].pos);
    }
}

void check_declared_type(const Domain& domain, const TypedName& entry, SourcePos pos) {
    if (entry.type == "object")
        return;
    for (const TypedName& t : domain.types)
        if (t.name == entry.type)
            return;
    throw ParseError("unknown type '" + entry.type + "'", pos);
}

ActionSchema parse_action(const Domain& domain, const Sexp& section) {
    ActionSchema schema;
    if (section.items.size() < 2 || !section.items[1].is_atom)
        throw ParseError("expected an action name", section.pos);
    schema.name = section.items[1].atom;

    const Sexp* parameters = nullptr;
    const Sexp* precondition = nullptr;
    const Sexp* effect = nullptr;
    for (size_t i = 2; i < section.items.size(); i += 2) {
        const std::string& key = expect_atom(section.items[i], "an action keyword");
        if (i + 1 >= section.items.size())
            throw ParseError("missing value after " + key, section.items[i].pos);
        const Sexp& value = section.items[i + 1];
        if (key == ":parameters")
            parameters = &value;
        else if (key == ":precondition")
            precondition = &value;
        else if (key == ":effect")
            effect = &value;
        else
            throw ParseError("unsupported action keyword " + key, section.items[i].pos);
    }
    if (!parameters)
        throw ParseError("action '" + schema.name + "' has no :parameters",
                         section.pos);
    if (!effect)
        throw ParseError("action '" + schema.name + "' has no :effect", section.pos);

    schema.params = parse_typed_list(expect_list(*parameters, "a parameter list").items, 0,
                                     "a parameter");
    std::unordered_map<std::string, std::string> term_types;
    for (const TypedName& c : domain.constants)
        term_types[c.name] = c.type;
    for (const TypedName& p : schema.params) {
        if (p.name[0] != '?')
            throw ParseError("parameter '" + p.name + "' must start with '?'",
                             parameters->pos);
        check_declared_type(domain, p, parameters->pos);
        if (!term_types.emplace(p.name, p.type).second)
            throw ParseError("duplicate parameter '" + p.name + "'", parameters->pos);
    }

    const LiteralParser literals(domain, term_types);
    if (precondition)
        literals.parse_conjunction(*precondition, "preconditions", schema.preconditions);
    literals.parse_conjunction(*effect, "effects", schema.add_effects, &schema.del_effects);
    return schema;
}

}  // namespace

bool Domain::is_subtype(const std::string& type, const std::string& ancestor) const {
    if (ancestor == "object" || type == ancestor)
        return true;
    std::string current = type;
    // Walk the single-inheritance chain; depth-bounded in case of cycles.
    for (size_t hops = 0; hops <= types.size(); ++hops) {
        const TypedName* entry = nullptr;
        for (const TypedName& t : types)
            if (t.name == current)
                entry = &t;
        if (!entry || entry->type == "object")
            return false;
        if (entry->type == ancestor)
            return true;
        current = entry->type;
    }
    return false;
}

const Predicate* Domain::find_predicate(const std::string& name) const {
    for (const Predicate& p : predicates)
        if (p.name == name)
            return &p;
    return nullptr;
}

Domain parse_domain(const std::string& text) {
    const Sexp root = parse_single_sexp(text, "domain definition");
    expect_list(root, "a domain definition");
    if (!head_is(root, "define") || root.items.size() < 2 ||
        !head_is(root.items[1], "domain") || root.items[1].items.size() != 2)
        throw ParseError("expected (define (domain NAME) ...)", root.pos);

    Domain domain;
    domain.name = expect_atom(root.items[1].items[1], "a domain name");

    for (size_t i = 2; i < root.items.size(); ++i) {
        const Sexp& section = expect_list(root.items[i], "a domain section");
        if (section.items.empty() || !section.items[0].is_atom)
            throw ParseError("expected a section keyword", section.pos);
        const std::string& key = section.items[0].atom;
        if (key == ":requirements") {
            check_requirements(section);
            for (size_t j = 1; j < section.items.size(); ++j)
                domain.requirements.push_back(section.items[j].atom);
        } else if (key == ":types") {
            domain.types = parse_typed_list(section.items, 1, "a type name");
            // Parents may forward-reference names later in the same list,
            // so validate only once the whole section is parsed.
            for (const TypedName& t : domain.types)
                check_declared_type(domain, t, section.pos);
        } else if (key == ":constants") {
            domain.constants = parse_typed_list(section.items, 1, "a constant name");
            for (const TypedName& c : domain.constants)
                check_declared_type(domain, c, section.pos);
        } else if (key == ":predicates") {
            for (size_t j = 1; j < section.items.size(); ++j) {
                const Sexp& p = expect_list(section.items[j], "a predicate declaration");
                if (p.items.empty() || !p.items[0].is_atom)
                    throw ParseError("expected a predicate name", p.pos);
                Predicate pred;
                pred.name = p.items[0].atom;
                for (const TypedName& param : parse_typed_list(p.items, 1, "a parameter")) {
                    check_declared_type(domain, param, p.pos);
                    pred.param_types.push_back(param.type);
                }
                if (domain.find_predicate(pred.name))
                    throw ParseError("duplicate predicate '" + pred.name + "'", p.pos);
                domain.predicates.push_back(std::move(pred));
            }
        } else if (key == ":action") {
            domain.actions.push_back(parse_action(domain, section));
        } else {
            throw ParseError("unsupported domain section " + key, section.pos);
        }
    }
    return domain;
}

Problem parse_problem(const std::string& text, const Domain& domain) {
    const Sexp root = parse_single_sexp(text, "problem definition");
    expect_list(root, "a problem definition");
    if (!head_is(root, "define") || root.items.size() < 2 ||
        !head_is(root.items[1], "problem") || root.items[1].items.size() != 2)
        throw ParseError("expected (define (problem NAME) ...)", root.pos);

    Problem problem;
    problem.name = expect_atom(root.items[1].items[1], "a problem name");

    std::unordered_map<std::string, std::string> term_types;
    for (const TypedName& c : domain.constants)
        term_types[c.name] = c.type;

    const Sexp* init_section = nullptr;
    const Sexp* goal_section = nullptr;
    for (size_t i = 2; i < root.items.size(); ++i) {
        const Sexp& section = expect_list(root.items[i], "a problem section");
        if (section.items.empty() || !section.items[0].is_atom)
            throw ParseError("expected a section keyword", section.pos);
        const std::string& key = section.items[0].atom;
        if (key == ":domain") {
            if (section.items.size() != 2)
                throw ParseError(":domain takes one name", section.pos);
            problem.domain_name = expect_atom(section.items[1], "a domain name");
            if (problem.domain_name != domain.name)
                throw ParseError("problem is for domain '" + problem.domain_name +
                                     "', not '" + domain.name + "'",
                                 section.items[1].pos);
        } else if (key == ":objects") {
            problem.objects = parse_typed_list(section.items, 1, "an object name");
            for (const TypedName& o : problem.objects) {
                check_declared_type(domain, o, section.pos);
                if (!term_types.emplace(o.name, o.type).second)
                    throw ParseError("duplicate object '" + o.name + "'", section.pos);
            }
        } else if (key == ":init") {
            init_section = &section;
        } else if (key == ":goal") {
            goal_section = &section;
        } else {
            throw ParseError("unsupported problem section " + key, section.pos);
        }
    }

    // Init and goal are validated after :objects regardless of section order.
    const LiteralParser literals(domain, term_types);
    if (init_section)
        for (size_t j = 1; j < init_section->items.size(); ++j)
            problem.init.push_back(literals.parse(init_section->items[j], "init"));
    if (!goal_section)
        throw ParseError("problem has no :goal", root.pos);
    if (goal_section->items.size() != 2)
        throw ParseError(":goal takes one formula", goal_section->pos);
    literals.parse_conjunction(goal_section->items[1], "goals", problem.goal);
    return problem;
}

std::pair<Domain, Problem> parse(const std::string& domain_text,
                                 const std::string& problem_text) {
    Domain domain = parse_domain(domain_text);
    Problem problem = parse_problem(problem_text, domain);
    return {std::move(domain), std::move(problem)};
}

}  // namespace searchlab::strips
