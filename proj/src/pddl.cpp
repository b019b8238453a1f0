#include "llcx/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace llcx {

namespace {

std::string lowered(std::string_view s) {
    std::string out{s};
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

// Keywords are matched case-insensitively; symbols keep their case.
bool is_keyword(std::string_view token, std::string_view keyword) {
    return lowered(token) == keyword;
}

struct Sexp {
    bool is_list = false;
    std::string atom;
    std::vector<Sexp> items;
    int line = 0;
    int column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    struct Token {
        enum class Kind { lparen, rparen, symbol, end };
        Kind kind;
        std::string text;
        int line;
        int column;
    };

    Token next() {
        skip_space_and_comments();
        int line = line_, column = column_;
        if (pos_ >= text_.size()) return {Token::Kind::end, "", line, column};
        char c = text_[pos_];
        if (c == '(') {
            advance();
            return {Token::Kind::lparen, "(", line, column};
        }
        if (c == ')') {
            advance();
            return {Token::Kind::rparen, ")", line, column};
        }
        std::string symbol;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
            symbol += text_[pos_];
            advance();
        }
        return {Token::Kind::symbol, symbol, line, column};
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

Sexp parse_sexp(Lexer& lexer, const Lexer::Token& first) {
    if (first.kind == Lexer::Token::Kind::symbol) {
        return Sexp{false, first.text, {}, first.line, first.column};
    }
    if (first.kind != Lexer::Token::Kind::lparen) {
        throw ParseError(first.line, first.column, "expected '(' or symbol");
    }
    Sexp list{true, "", {}, first.line, first.column};
    for (;;) {
        Lexer::Token tok = lexer.next();
        if (tok.kind == Lexer::Token::Kind::rparen) return list;
        if (tok.kind == Lexer::Token::Kind::end) {
            throw ParseError(tok.line, tok.column, "unexpected end of input, missing ')'");
        }
        list.items.push_back(parse_sexp(lexer, tok));
    }
}

Sexp parse_top_level(const std::string& text) {
    Lexer lexer(text);
    Lexer::Token tok = lexer.next();
    if (tok.kind == Lexer::Token::Kind::end) throw ParseError(tok.line, tok.column, "empty input");
    Sexp root = parse_sexp(lexer, tok);
    Lexer::Token rest = lexer.next();
    if (rest.kind != Lexer::Token::Kind::end) {
        throw ParseError(rest.line, rest.column, "trailing content after top-level form");
    }
    return root;
}

[[noreturn]] void fail(const Sexp& at, const std::string& message) {
    throw ParseError(at.line, at.column, message);
}

const std::string& expect_symbol(const Sexp& s, const char* what) {
    if (s.is_list) fail(s, std::string("expected ") + what);
    return s.atom;
}

// "a b - t c - u" groups; returns (symbol, type) pairs in order.
std::vector<std::pair<std::string, TypeName>> parse_typed_list(const Sexp& list,
                                                               std::size_t from) {
    std::vector<std::pair<std::string, TypeName>> out;
    std::vector<std::string> pending;
    for (std::size_t i = from; i < list.items.size(); ++i) {
        const std::string& sym = expect_symbol(list.items[i], "symbol in typed list");
        if (sym == "-") {
            if (pending.empty()) fail(list.items[i], "dangling '-' in typed list");
            if (i + 1 >= list.items.size()) fail(list.items[i], "missing type after '-'");
            const std::string& type = expect_symbol(list.items[i + 1], "type name");
            for (std::string& name : pending) out.emplace_back(std::move(name), type);
            pending.clear();
            ++i;
        } else {
            pending.push_back(sym);
        }
    }
    if (!pending.empty()) fail(list, "typed list ends without '- <type>'");
    return out;
}

const Sexp* find_section(const Sexp& define, const char* keyword) {
    for (const Sexp& item : define.items) {
        if (item.is_list && !item.items.empty() && !item.items[0].is_list &&
            is_keyword(item.items[0].atom, keyword)) {
            return &item;
        }
    }
    return nullptr;
}

void check_define_header(const Sexp& root, const char* kind, std::string& name_out) {
    if (!root.is_list || root.items.empty() || root.items[0].is_list ||
        !is_keyword(root.items[0].atom, "define")) {
        fail(root, "expected (define ...)");
    }
    if (root.items.size() < 2 || !root.items[1].is_list || root.items[1].items.size() != 2 ||
        !is_keyword(root.items[1].items[0].atom, kind)) {
        fail(root, std::string("expected (") + kind + " <name>)");
    }
    name_out = expect_symbol(root.items[1].items[1], "name");
}

}  // namespace

const PredicateSignature* DomainModel::predicate(std::string_view name) const {
    for (const PredicateSignature& p : predicates) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const ActionSchema* DomainModel::schema(std::string_view name) const {
    for (const ActionSchema& a : action_schemas) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

bool DomainModel::has_type(const TypeName& t) const {
    return std::find(types.begin(), types.end(), t) != types.end();
}

std::size_t DomainModel::max_arity() const {
    std::size_t m = 0;
    for (const PredicateSignature& p : predicates) m = std::max(m, p.arity());
    return m;
}

DomainModel bind_objects(const DomainModel& dom, const ProblemInstance& problem) {
    DomainModel bound = dom;
    bound.constants_by_type = problem.objects;
    return bound;
}

DomainModel parse_domain(const std::string& text) {
    Sexp root = parse_top_level(text);
    DomainModel dom;
    check_define_header(root, "domain", dom.name);

    if (const Sexp* types = find_section(root, ":types")) {
        for (std::size_t i = 1; i < types->items.size(); ++i) {
            const std::string& t = expect_symbol(types->items[i], "type name");
            if (t == "-") fail(types->items[i], "type hierarchies are not supported");
            if (dom.has_type(t)) fail(types->items[i], "duplicate type '" + t + "'");
            dom.types.push_back(t);
        }
    }

    if (const Sexp* preds = find_section(root, ":predicates")) {
        for (std::size_t i = 1; i < preds->items.size(); ++i) {
            const Sexp& decl = preds->items[i];
            if (!decl.is_list || decl.items.empty()) fail(decl, "expected (name ?v - type ...)");
            PredicateSignature sig;
            sig.name = expect_symbol(decl.items[0], "predicate name");
            if (dom.predicate(sig.name)) fail(decl, "duplicate predicate '" + sig.name + "'");
            for (auto& [var, type] : parse_typed_list(decl, 1)) {
                if (!dom.has_type(type)) fail(decl, "unknown type '" + type + "'");
                if (var.empty() || var[0] != '?') fail(decl, "predicate parameters must be ?variables");
                sig.parameter_types.push_back(type);
            }
            if (sig.parameter_types.empty()) {
                fail(decl, "predicate '" + sig.name + "' must take at least one parameter");
            }
            dom.predicates.push_back(std::move(sig));
        }
    }

    for (const Sexp& item : root.items) {
        if (!item.is_list || item.items.empty() || item.items[0].is_list ||
            !is_keyword(item.items[0].atom, ":action")) {
            continue;
        }
        if (item.items.size() != 4 || !is_keyword(expect_symbol(item.items[2], ":parameters"),
                                                  ":parameters")) {
            fail(item, "expected (:action <name> :parameters (...)); preconditions and "
                       "effects are learned, not declared");
        }
        ActionSchema schema;
        schema.name = expect_symbol(item.items[1], "action name");
        if (dom.schema(schema.name)) fail(item, "duplicate action '" + schema.name + "'");
        if (!item.items[3].is_list) fail(item.items[3], "expected parameter list");
        for (auto& [var, type] : parse_typed_list(item.items[3], 0)) {
            if (!dom.has_type(type)) fail(item.items[3], "unknown type '" + type + "'");
            if (var.empty() || var[0] != '?') fail(item.items[3], "parameters must be ?variables");
            schema.parameter_types.push_back(type);
        }
        dom.action_schemas.push_back(std::move(schema));
    }
    return dom;
}

ProblemInstance parse_problem(const std::string& text, const DomainModel& dom) {
    Sexp root = parse_top_level(text);
    ProblemInstance problem;
    check_define_header(root, "problem", problem.name);

    if (const Sexp* domain = find_section(root, ":domain")) {
        if (domain->items.size() != 2) fail(*domain, "expected (:domain <name>)");
        problem.domain_name = expect_symbol(domain->items[1], "domain name");
        if (problem.domain_name != dom.name) {
            fail(*domain, "problem is for domain '" + problem.domain_name +
                          "', not '" + dom.name + "'");
        }
    }

    std::map<std::string, Constant> by_name;
    if (const Sexp* objects = find_section(root, ":objects")) {
        for (auto& [name, type] : parse_typed_list(*objects, 1)) {
            if (!dom.has_type(type)) fail(*objects, "unknown type '" + type + "'");
            if (by_name.count(name)) fail(*objects, "duplicate object '" + name + "'");
            Constant c{name, type};
            by_name.emplace(name, c);
            problem.objects[type].push_back(std::move(c));
        }
    }

    std::vector<GroundAtom> atoms;
    if (const Sexp* init = find_section(root, ":init")) {
        for (std::size_t i = 1; i < init->items.size(); ++i) {
            const Sexp& fact = init->items[i];
            if (!fact.is_list || fact.items.empty()) fail(fact, "expected (predicate args...)");
            GroundAtom atom;
            atom.predicate = expect_symbol(fact.items[0], "predicate name");
            const PredicateSignature* sig = dom.predicate(atom.predicate);
            if (sig == nullptr) fail(fact, "unknown predicate in '(" + atom.predicate + " ...)'");
            if (fact.items.size() - 1 != sig->arity()) {
                fail(fact, "'" + atom.predicate + "' takes " + std::to_string(sig->arity()) +
                           " arguments, got " + std::to_string(fact.items.size() - 1));
            }
            for (std::size_t k = 1; k < fact.items.size(); ++k) {
                const std::string& arg = expect_symbol(fact.items[k], "constant");
                auto it = by_name.find(arg);
                if (it == by_name.end()) {
                    fail(fact, "unknown object '" + arg + "' in " + atom.predicate + " atom");
                }
                if (it->second.type != sig->parameter_types[k - 1]) {
                    fail(fact, "object '" + arg + "' has type " + it->second.type +
                               ", expected " + sig->parameter_types[k - 1] + " in " +
                               atom.predicate + " atom");
                }
                atom.args.push_back(it->second);
            }
            atoms.push_back(std::move(atom));
        }
    }
    problem.init = State{std::move(atoms)};
    return problem;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

DomainModel parse_domain_file(const std::string& path) {
    return parse_domain(read_text_file(path));
}

ProblemInstance parse_problem_file(const std::string& path, const DomainModel& dom) {
    return parse_problem(read_text_file(path), dom);
}

std::string serialize_problem(const ProblemInstance& problem) {
    std::ostringstream out;
    out << "(define (problem " << problem.name << ")\n";
    out << "  (:domain " << problem.domain_name << ")\n";
    out << "  (:objects";
    for (const auto& [type, constants] : problem.objects) {
        out << "\n   ";
        for (const Constant& c : constants) out << " " << c.name;
        out << " - " << type;
    }
    out << ")\n  (:init";
    for (const GroundAtom& atom : problem.init.atoms()) {
        out << "\n    (" << atom.predicate;
        for (const Constant& c : atom.args) out << " " << c.name;
        out << ")";
    }
    out << "))\n";
    return out.str();
}

namespace {

nlohmann::json atom_to_json(const GroundAtom& atom) {
    nlohmann::json j = nlohmann::json::array();
    j.push_back(atom.predicate);
    for (const Constant& c : atom.args) j.push_back(c.name);
    return j;
}

GroundAtom atom_from_json(const nlohmann::json& j, const DomainModel& dom) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("malformed atom record");
    GroundAtom atom;
    atom.predicate = j[0].get<std::string>();
    const PredicateSignature* sig = dom.predicate(atom.predicate);
    if (sig == nullptr || j.size() - 1 != sig->arity()) {
        throw std::runtime_error("atom record does not match domain: " + atom.predicate);
    }
    for (std::size_t i = 1; i < j.size(); ++i) {
        atom.args.push_back(Constant{j[i].get<std::string>(), sig->parameter_types[i - 1]});
    }
    return atom;
}

nlohmann::json atoms_to_json(const State& s) {
    nlohmann::json j = nlohmann::json::array();
    for (const GroundAtom& atom : s.atoms()) j.push_back(atom_to_json(atom));
    return j;
}

}  // namespace

std::size_t write_interaction_log(const InteractionHistory& history, std::ostream& sink) {
    std::size_t count = 0;
    for (const Interaction& interaction : history) {
        StateDelta delta = state_diff(interaction.prior, interaction.post);
        nlohmann::json record{
            {"step", count},
            {"action", interaction.action.schema},
            {"args", nlohmann::json::array()},
            {"label", to_string(interaction.label)},
            {"adds", atoms_to_json(delta.adds)},
            {"dels", atoms_to_json(delta.dels)},
        };
        for (const Constant& c : interaction.action.args) record["args"].push_back(c.name);
        if (count == 0) record["state"] = atoms_to_json(interaction.prior);
        sink << record.dump() << '\n';
        if (!sink) throw std::runtime_error("interaction log write failed");
        ++count;
    }
    return count;
}

InteractionHistory read_interaction_log(std::istream& source, const DomainModel& dom) {
    InteractionHistory history;
    std::string line;
    State prior;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        nlohmann::json record = nlohmann::json::parse(line);
        if (history.empty()) {
            std::vector<GroundAtom> atoms;
            for (const auto& j : record.at("state")) atoms.push_back(atom_from_json(j, dom));
            prior = State{std::move(atoms)};
        }
        GroundAction action;
        action.schema = record.at("action").get<std::string>();
        const ActionSchema* schema = dom.schema(action.schema);
        if (schema == nullptr) throw std::runtime_error("unknown action in log: " + action.schema);
        const auto& args = record.at("args");
        if (args.size() != schema->parameter_types.size()) {
            throw std::runtime_error("bad argument count in log for " + action.schema);
        }
        for (std::size_t i = 0; i < args.size(); ++i) {
            action.args.push_back(Constant{args[i].get<std::string>(),
                                           schema->parameter_types[i]});
        }
        State adds, dels;
        for (const auto& j : record.at("adds")) adds.insert(atom_from_json(j, dom));
        for (const auto& j : record.at("dels")) dels.insert(atom_from_json(j, dom));
        State post = apply_delta(prior, adds, dels);
        Interaction interaction = label(std::move(prior), std::move(action), post);
        if (std::string{to_string(interaction.label)} != record.at("label").get<std::string>()) {
            throw std::runtime_error("label mismatch in interaction log");
        }
        history.push_back(std::move(interaction));
        prior = std::move(post);
    }
    return history;
}

std::string to_string(const GroundAction& action) {
    std::string out = action.schema + "(";
    for (std::size_t i = 0; i < action.args.size(); ++i) {
        if (i) out += ", ";
        out += action.args[i].name;
    }
    return out + ")";
}

}  // namespace llcx
