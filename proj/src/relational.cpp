#include "llcx/relational.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace llcx {

std::string to_string(const GroundAtom& atom) {
    std::string out = atom.predicate + "(";
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out += ", ";
        out += atom.args[i].name;
    }
    out += ")";
    return out;
}

std::size_t hash_value(const GroundAtom& atom) {
    std::size_t seed = std::hash<std::string>{}(atom.predicate);
    for (const Constant& c : atom.args) {
        hash_combine(seed, std::hash<std::string>{}(c.name));
    }
    return seed;
}

State::State(std::vector<GroundAtom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool State::contains(const GroundAtom& atom) const {
    return std::binary_search(atoms_.begin(), atoms_.end(), atom);
}

void State::insert(const GroundAtom& atom) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it == atoms_.end() || *it != atom) atoms_.insert(it, atom);
}

void State::erase(const GroundAtom& atom) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
    if (it != atoms_.end() && *it == atom) atoms_.erase(it);
}

std::span<const GroundAtom> State::matching(std::string_view predicate) const {
    auto lo = std::lower_bound(atoms_.begin(), atoms_.end(), predicate,
                               [](const GroundAtom& a, std::string_view p) {
                                   return std::string_view{a.predicate} < p;
                               });
    auto hi = std::upper_bound(lo, atoms_.end(), predicate,
                               [](std::string_view p, const GroundAtom& a) {
                                   return p < std::string_view{a.predicate};
                               });
    return {lo, hi};
}

std::size_t State::hash() const {
    std::size_t seed = atoms_.size();
    for (const GroundAtom& a : atoms_) hash_combine(seed, hash_value(a));
    return seed;
}

std::string to_string(const Literal& lit) {
    std::string out;
    if (lit.negated) out += "not ";
    out += lit.predicate + "(";
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
        if (i) out += ", ";
        out += is_variable(lit.args[i]) ? as_variable(lit.args[i]).name
                                        : as_constant(lit.args[i]).name;
    }
    out += ")";
    return out;
}

std::string to_string(const Clause& clause) {
    std::string out = "{";
    for (std::size_t i = 0; i < clause.literals.size(); ++i) {
        if (i) out += ", ";
        out += to_string(clause.literals[i]);
    }
    out += "}";
    return out;
}

std::vector<Variable> variables_of(const Clause& clause) {
    std::vector<Variable> vars;
    for (const Literal& lit : clause.literals) {
        for (const Term& t : lit.args) {
            if (!is_variable(t)) continue;
            const Variable& v = as_variable(t);
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
    }
    return vars;
}

const Constant* Binding::lookup(const Variable& v) const {
    for (const auto& [var, c] : entries_) {
        if (var == v) return &c;
    }
    return nullptr;
}

bool Binding::bind(const Variable& v, const Constant& c) {
    if (v.type != c.type) return false;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const auto& entry, const Variable& var) {
                                   return entry.first < var;
                               });
    if (it != entries_.end() && it->first == v) return it->second == c;
    entries_.insert(it, {v, c});
    return true;
}

const std::vector<Constant>* constants_of(const Universe& u, const TypeName& type) {
    auto it = u.find(type);
    return it == u.end() ? nullptr : &it->second;
}

std::optional<Binding> unify_literal(const Literal& lit, const GroundAtom& atom,
                                     const Binding& b) {
    assert(!lit.negated);
    if (lit.predicate != atom.predicate || lit.args.size() != atom.args.size()) {
        return std::nullopt;
    }
    Binding result = b;
    for (std::size_t i = 0; i < lit.args.size(); ++i) {
        if (is_variable(lit.args[i])) {
            if (!result.bind(as_variable(lit.args[i]), atom.args[i])) return std::nullopt;
        } else if (as_constant(lit.args[i]) != atom.args[i]) {
            return std::nullopt;
        }
    }
    return result;
}

namespace {

// Ground atom for lit under b; only valid when every variable is bound.
GroundAtom ground(const Literal& lit, const Binding& b) {
    GroundAtom atom{lit.predicate, {}};
    atom.args.reserve(lit.args.size());
    for (const Term& t : lit.args) {
        if (is_variable(t)) {
            const Constant* c = b.lookup(as_variable(t));
            assert(c != nullptr);
            atom.args.push_back(*c);
        } else {
            atom.args.push_back(as_constant(t));
        }
    }
    return atom;
}

struct SatisfyContext {
    const State& state;
    const Universe& universe;
    const std::function<bool(const Binding&)>& visit;
};

// Depth-first over literals, positives before negated ones. Returns false
// once the visitor asked to stop.
bool satisfy_rec(const SatisfyContext& ctx, const std::vector<const Literal*>& literals,
                 std::size_t index, Binding& binding) {
    if (index == literals.size()) return ctx.visit(binding);

    const Literal& lit = *literals[index];
    if (!lit.negated) {
        for (const GroundAtom& atom : ctx.state.matching(lit.predicate)) {
            auto extended = unify_literal(lit, atom, binding);
            if (!extended) continue;
            Binding saved = std::move(binding);
            binding = std::move(*extended);
            bool keep_going = satisfy_rec(ctx, literals, index + 1, binding);
            binding = std::move(saved);
            if (!keep_going) return false;
        }
        return true;
    }

    // Negated literal: enumerate the typed universe for unbound variables,
    // keep groundings absent from the state (closed world).
    std::vector<const Variable*> unbound;
    for (const Term& t : lit.args) {
        if (!is_variable(t)) continue;
        const Variable& v = as_variable(t);
        if (binding.lookup(v) == nullptr) {
            bool seen = false;
            for (const Variable* u : unbound) seen = seen || *u == v;
            if (!seen) unbound.push_back(&v);
        }
    }

    std::function<bool(std::size_t)> enumerate = [&](std::size_t k) -> bool {
        if (k == unbound.size()) {
            if (ctx.state.contains(ground(lit, binding))) return true;  // violated, skip
            return satisfy_rec(ctx, literals, index + 1, binding);
        }
        const std::vector<Constant>* pool = constants_of(ctx.universe, unbound[k]->type);
        if (pool == nullptr || pool->empty()) return true;  // no candidate groundings
        for (const Constant& c : *pool) {
            Binding saved = binding;
            bool ok = binding.bind(*unbound[k], c);
            assert(ok);
            (void)ok;
            bool keep_going = enumerate(k + 1);
            binding = std::move(saved);
            if (!keep_going) return false;
        }
        return true;
    };
    return enumerate(0);
}

}  // namespace

bool satisfy(const Clause& clause, const State& state, const Universe& universe,
             const std::function<bool(const Binding&)>& visit) {
    std::vector<const Literal*> ordered;
    ordered.reserve(clause.literals.size());
    for (const Literal& lit : clause.literals) {
        if (!lit.negated) ordered.push_back(&lit);
    }
    for (const Literal& lit : clause.literals) {
        if (lit.negated) ordered.push_back(&lit);
    }
    SatisfyContext ctx{state, universe, visit};
    Binding binding;
    return satisfy_rec(ctx, ordered, 0, binding);
}

std::vector<Binding> satisfy_all(const Clause& clause, const State& state,
                                 const Universe& universe) {
    std::vector<Binding> out;
    satisfy(clause, state, universe, [&](const Binding& b) {
        out.push_back(b);
        return true;
    });
    return out;
}

bool satisfiable(const Clause& clause, const State& state, const Universe& universe) {
    bool found = false;
    satisfy(clause, state, universe, [&](const Binding&) {
        found = true;
        return false;
    });
    return found;
}

StateDelta state_diff(const State& before, const State& after) {
    std::vector<GroundAtom> adds;
    std::vector<GroundAtom> dels;
    std::set_difference(after.atoms().begin(), after.atoms().end(),
                        before.atoms().begin(), before.atoms().end(),
                        std::back_inserter(adds));
    std::set_difference(before.atoms().begin(), before.atoms().end(),
                        after.atoms().begin(), after.atoms().end(),
                        std::back_inserter(dels));
    return {State{std::move(adds)}, State{std::move(dels)}};
}

State apply_delta(const State& s, const State& adds, const State& dels) {
    State out = s;
    for (const GroundAtom& a : dels.atoms()) out.erase(a);
    for (const GroundAtom& a : adds.atoms()) out.insert(a);
    return out;
}

Literal substitute(const Literal& lit, const Binding& b) {
    Literal out = lit;
    for (Term& t : out.args) {
        if (!is_variable(t)) continue;
        if (const Constant* c = b.lookup(as_variable(t))) t = *c;
    }
    return out;
}

Clause substitute(const Clause& clause, const Binding& b) {
    Clause out;
    out.literals.reserve(clause.literals.size());
    for (const Literal& lit : clause.literals) out.literals.push_back(substitute(lit, b));
    return out;
}

namespace {

Clause rename_first_occurrence(const std::vector<const Literal*>& literals) {
    Clause out;
    out.literals.reserve(literals.size());
    std::vector<std::pair<Variable, std::string>> names;
    for (const Literal* lit : literals) {
        Literal renamed = *lit;
        for (Term& t : renamed.args) {
            if (!is_variable(t)) continue;
            const Variable& v = as_variable(t);
            std::string fresh;
            for (const auto& [var, name] : names) {
                if (var == v) fresh = name;
            }
            if (fresh.empty()) {
                fresh = "V" + std::to_string(names.size());
                names.emplace_back(v, fresh);
            }
            t = Variable{fresh, v.type};
        }
        out.literals.push_back(std::move(renamed));
    }
    return out;
}

// Literal order inside a canonical clause: predicate name, positive before
// negated, then the renamed argument pattern.
bool clause_less(const Clause& a, const Clause& b) {
    auto key = [](const Literal& lit) {
        std::vector<std::string> args;
        for (const Term& t : lit.args) {
            args.push_back(is_variable(t) ? as_variable(t).name : as_constant(t).name);
        }
        return std::tuple<const std::string&, bool, std::vector<std::string>>(
            lit.predicate, lit.negated, std::move(args));
    };
    return std::lexicographical_compare(
        a.literals.begin(), a.literals.end(), b.literals.begin(), b.literals.end(),
        [&](const Literal& x, const Literal& y) { return key(x) < key(y); });
}

}  // namespace

Clause canonicalize(const Clause& clause) {
    std::vector<Literal> unique = clause.literals;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    if (unique.empty()) return {};
    assert(unique.size() <= 8 && "canonicalize enumerates literal permutations");

    std::vector<std::size_t> order(unique.size());
    std::iota(order.begin(), order.end(), 0);
    std::optional<Clause> best;
    do {
        std::vector<const Literal*> perm;
        perm.reserve(order.size());
        for (std::size_t i : order) perm.push_back(&unique[i]);
        Clause candidate = rename_first_occurrence(perm);
        if (!best || clause_less(candidate, *best)) best = std::move(candidate);
    } while (std::next_permutation(order.begin(), order.end()));
    return *best;
}

std::string canonical_key(const Clause& clause) { return to_string(canonicalize(clause)); }

}  // namespace llcx
