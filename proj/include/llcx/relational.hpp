#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Typed terms, ground atoms, states with set semantics, lifted literals and
// conjunctive clauses, substitutions, and clause satisfaction under
// negation-as-failure over a finite typed constant universe.

namespace llcx {

using TypeName = std::string;

struct Constant {
    std::string name;
    TypeName type;
    auto operator<=>(const Constant&) const = default;
};

struct Variable {
    std::string name;
    TypeName type;
    auto operator<=>(const Variable&) const = default;
};

// A term is either a variable or a constant. Constant and variable names
// live in disjoint namespaces (enforced where symbols are declared).
using Term = std::variant<Variable, Constant>;

inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }
inline const Variable& as_variable(const Term& t) { return std::get<Variable>(t); }
inline const Constant& as_constant(const Term& t) { return std::get<Constant>(t); }

struct PredicateSignature {
    std::string name;
    std::vector<TypeName> parameter_types;

    std::size_t arity() const { return parameter_types.size(); }
    auto operator<=>(const PredicateSignature&) const = default;
};

struct GroundAtom {
    std::string predicate;
    std::vector<Constant> args;

    auto operator<=>(const GroundAtom&) const = default;
};

std::string to_string(const GroundAtom& atom);

inline void hash_combine(std::size_t& seed, std::size_t value) {
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_value(const GroundAtom& atom);

// A finite set of ground atoms; equality is set equality. Atoms are kept
// sorted so predicate ranges can be scanned without an extra index.
class State {
public:
    State() = default;
    explicit State(std::vector<GroundAtom> atoms);

    bool contains(const GroundAtom& atom) const;
    void insert(const GroundAtom& atom);
    void erase(const GroundAtom& atom);

    std::span<const GroundAtom> atoms() const { return atoms_; }
    std::span<const GroundAtom> matching(std::string_view predicate) const;

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    bool operator==(const State&) const = default;
    auto operator<=>(const State&) const = default;
    std::size_t hash() const;

private:
    std::vector<GroundAtom> atoms_;  // sorted, unique
};

struct StateHash {
    std::size_t operator()(const State& s) const { return s.hash(); }
};

struct Literal {
    std::string predicate;
    std::vector<Term> args;
    bool negated = false;

    auto operator<=>(const Literal&) const = default;
};

// Conjunction of literals; variables are implicitly existentially quantified.
struct Clause {
    std::vector<Literal> literals;

    std::size_t size() const { return literals.size(); }
    bool empty() const { return literals.empty(); }
    auto operator<=>(const Clause&) const = default;
};

std::string to_string(const Literal& lit);
std::string to_string(const Clause& clause);

// Variables of the clause in first-occurrence order (left to right).
std::vector<Variable> variables_of(const Clause& clause);

// A partial, type-consistent map Variable -> Constant. Entries are kept
// sorted by variable so equal bindings compare equal regardless of the
// order in which they were built.
class Binding {
public:
    const Constant* lookup(const Variable& v) const;
    // False when v is already bound to a different constant or the types
    // disagree; binding an identical pair is an accepted no-op.
    [[nodiscard]] bool bind(const Variable& v, const Constant& c);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::span<const std::pair<Variable, Constant>> entries() const { return entries_; }

    auto operator<=>(const Binding&) const = default;

private:
    std::vector<std::pair<Variable, Constant>> entries_;
};

// Constants per type, in declaration order. The quantification domain for
// variables that occur only under negation.
using Universe = std::map<TypeName, std::vector<Constant>>;

const std::vector<Constant>* constants_of(const Universe& u, const TypeName& type);

// Extends b so that lit (which must be positive) applied under the result
// equals atom. Absent on predicate mismatch or binding conflict.
std::optional<Binding> unify_literal(const Literal& lit, const GroundAtom& atom,
                                     const Binding& b);

// Enumerates every total binding of the clause's variables under which all
// positive literals are in the state and no negated literal's grounding is
// (closed world). The visitor returns false to stop early; satisfy returns
// true when the enumeration ran to completion.
bool satisfy(const Clause& clause, const State& state, const Universe& universe,
             const std::function<bool(const Binding&)>& visit);

std::vector<Binding> satisfy_all(const Clause& clause, const State& state,
                                 const Universe& universe);
bool satisfiable(const Clause& clause, const State& state, const Universe& universe);

struct StateDelta {
    State adds;
    State dels;

    bool empty() const { return adds.empty() && dels.empty(); }
    bool operator==(const StateDelta&) const = default;
};

// adds = after \ before, dels = before \ after.
StateDelta state_diff(const State& before, const State& after);

State apply_delta(const State& s, const State& adds, const State& dels);

// Replaces variables bound in b by their constants; unbound variables stay.
Clause substitute(const Clause& clause, const Binding& b);
Literal substitute(const Literal& lit, const Binding& b);

// Canonical form: the literal ordering and first-occurrence variable
// renaming (V0, V1, ...) minimizing the serialized clause, so that
// alpha-equivalent clauses map to the identical representation.
Clause canonicalize(const Clause& clause);
std::string canonical_key(const Clause& clause);

}  // namespace llcx
