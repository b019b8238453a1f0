#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "llcx/action.hpp"
#include "llcx/relational.hpp"

// Reader/writer for the PDDL subset used by the grid scenarios: a domain
// file declaring types, predicates and bare action headers (agents start
// with no preconditions or effects), and problem files with typed objects
// and a ground :init. Also the line-delimited interaction log.

namespace llcx {

struct ParseError : std::runtime_error {
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line(line),
          column(column) {}

    int line;
    int column;
};

struct ActionSchema {
    std::string name;
    std::vector<TypeName> parameter_types;

    auto operator<=>(const ActionSchema&) const = default;
};

struct DomainModel {
    std::string name;
    std::vector<TypeName> types;
    std::vector<PredicateSignature> predicates;
    std::vector<ActionSchema> action_schemas;
    Universe constants_by_type;  // filled in once a problem's objects are bound

    const PredicateSignature* predicate(std::string_view name) const;
    const ActionSchema* schema(std::string_view name) const;
    bool has_type(const TypeName& t) const;
    std::size_t max_arity() const;
};

struct ProblemInstance {
    std::string name;
    std::string domain_name;
    Universe objects;
    State init;
};

// The domain with the problem's objects installed as the constant universe.
DomainModel bind_objects(const DomainModel& dom, const ProblemInstance& problem);

DomainModel parse_domain(const std::string& text);
ProblemInstance parse_problem(const std::string& text, const DomainModel& dom);

DomainModel parse_domain_file(const std::string& path);
ProblemInstance parse_problem_file(const std::string& path, const DomainModel& dom);

std::string serialize_problem(const ProblemInstance& problem);

// One record per line: step, action, args, label, adds, dels; the first
// record also carries the full prior state so the log replays losslessly.
std::size_t write_interaction_log(const InteractionHistory& history, std::ostream& sink);
InteractionHistory read_interaction_log(std::istream& source, const DomainModel& dom);

std::string read_text_file(const std::string& path);

}  // namespace llcx
