#include "llcx/llc.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <set>
#include <stdexcept>

namespace llcx {

namespace {

bool has_complementary_pair(const Clause& clause) {
    for (std::size_t i = 0; i < clause.literals.size(); ++i) {
        for (std::size_t j = i + 1; j < clause.literals.size(); ++j) {
            const Literal& a = clause.literals[i];
            const Literal& b = clause.literals[j];
            if (a.predicate == b.predicate && a.args == b.args && a.negated != b.negated) {
                return true;
            }
        }
    }
    return false;
}

bool share_variable(const Literal& a, const Literal& b) {
    for (const Term& t : a.args) {
        if (!is_variable(t)) continue;
        for (const Term& u : b.args) {
            if (is_variable(u) && as_variable(u) == as_variable(t)) return true;
        }
    }
    return false;
}

// Literals as nodes, shared variables as edges; the clause counts as
// linked when that graph is connected.
bool is_connected(const Clause& clause) {
    const std::size_t n = clause.literals.size();
    if (n <= 1) return true;
    std::vector<bool> reached(n, false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    std::size_t seen = 1;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j) {
            if (reached[j] || !share_variable(clause.literals[i], clause.literals[j])) continue;
            reached[j] = true;
            ++seen;
            stack.push_back(j);
        }
    }
    return seen == n;
}

// Argument assignments for one new literal: variables already in the
// clause plus up to two fresh ones, all type consistent.
void enumerate_literals(const PredicateSignature& sig, const std::vector<Variable>& existing,
                        std::size_t max_variables, std::vector<Literal>& out) {
    std::vector<Variable> fresh;
    std::size_t headroom =
        existing.size() < max_variables ? max_variables - existing.size() : 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(headroom, sig.arity()); ++i) {
        fresh.push_back(Variable{"F" + std::to_string(i), ""});
    }

    std::vector<Term> slots(sig.arity());
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t slot,
                                                             std::size_t fresh_used) {
        if (slot == sig.arity()) {
            for (bool negated : {false, true}) {
                Literal lit{sig.name, slots, negated};
                out.push_back(std::move(lit));
            }
            return;
        }
        const TypeName& type = sig.parameter_types[slot];
        for (const Variable& v : existing) {
            if (v.type != type) continue;
            slots[slot] = v;
            fill(slot + 1, fresh_used);
        }
        // Reusing a fresh variable introduced by an earlier slot covers
        // repeated-argument patterns like north(F0, F0).
        for (std::size_t i = 0; i < fresh_used; ++i) {
            if (fresh[i].type != type) continue;
            slots[slot] = fresh[i];
            fill(slot + 1, fresh_used);
        }
        if (fresh_used < fresh.size()) {
            fresh[fresh_used].type = type;
            slots[slot] = fresh[fresh_used];
            fill(slot + 1, fresh_used + 1);
        }
    };
    fill(0, 0);
}

}  // namespace

std::vector<LLC> generate_llcs(const DomainModel& dom, int max_size) {
    if (max_size < 1) throw std::invalid_argument("LLC size must be at least 1");
    const std::size_t max_variables = static_cast<std::size_t>(max_size) * dom.max_arity();

    // Grow clauses one literal at a time. The frontier keeps every
    // non-contradictory canonical clause of the current size (connectivity
    // is only required of emitted results; a later literal may still link
    // two components).
    std::vector<Clause> frontier{Clause{}};
    std::vector<LLC> results;
    for (int size = 1; size <= max_size; ++size) {
        std::set<std::string> seen;
        std::vector<Clause> next;
        for (const Clause& base : frontier) {
            std::vector<Variable> existing = variables_of(base);
            std::vector<Literal> candidates;
            for (const PredicateSignature& sig : dom.predicates) {
                enumerate_literals(sig, existing, max_variables, candidates);
            }
            for (Literal& lit : candidates) {
                Clause grown = base;
                grown.literals.push_back(std::move(lit));
                Clause canon = canonicalize(grown);
                if (canon.literals.size() != static_cast<std::size_t>(size)) continue;
                if (has_complementary_pair(canon)) continue;
                std::string key = to_string(canon);
                if (!seen.insert(key).second) continue;
                if (is_connected(canon)) {
                    results.push_back(LLC{canon, size, std::move(key)});
                }
                next.push_back(std::move(canon));
            }
        }
        frontier = std::move(next);
    }
    std::sort(results.begin(), results.end(), [](const LLC& a, const LLC& b) {
        return std::tie(a.size, a.key) < std::tie(b.size, b.key);
    });
    return results;
}

std::uint64_t llc_upper_bound(const DomainModel& dom, int size) {
    std::uint64_t m_factorial = 1;
    for (std::size_t i = 2; i <= dom.max_arity(); ++i) m_factorial *= i;
    std::uint64_t pool = m_factorial * 2 * dom.predicates.size();
    if (size < 0 || static_cast<std::uint64_t>(size) > pool) return 0;
    std::uint64_t result = 1;
    for (int i = 1; i <= size; ++i) {
        result = result * (pool - static_cast<std::uint64_t>(i) + 1) /
                 static_cast<std::uint64_t>(i);
    }
    return result;
}

bool is_active(const LLC& llc, const State& state, const Universe& universe) {
    return satisfiable(llc.clause, state, universe);
}

std::vector<int> active_llcs(const std::vector<LLC>& llcs, const State& state,
                             const Universe& universe) {
    std::vector<int> active;
    for (std::size_t i = 0; i < llcs.size(); ++i) {
        if (is_active(llcs[i], state, universe)) active.push_back(static_cast<int>(i));
    }
    return active;
}

std::uint64_t examples_count(const LLC& llc, const std::string& schema,
                             const InteractionHistory& history, const Universe& universe) {
    std::uint64_t count = 0;
    for (const Interaction& interaction : history) {
        if (interaction.action.schema != schema) continue;
        if (satisfiable(llc.clause, interaction.prior, universe)) ++count;
    }
    return count;
}

LlcActionTable::LlcActionTable(std::vector<LLC> llcs, std::vector<ActionSchema> schemas)
    : llcs_(std::move(llcs)),
      schemas_(std::move(schemas)),
      counts_(llcs_.size(), std::vector<std::uint64_t>(schemas_.size(), 0)),
      totals_(llcs_.size(), 0) {
    for (std::size_t i = 0; i < schemas_.size(); ++i) {
        schema_index_[schemas_[i].name] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < llcs_.size(); ++i) {
        std::set<std::string> mentioned;
        for (const Literal& lit : llcs_[i].clause.literals) mentioned.insert(lit.predicate);
        for (const std::string& p : mentioned) by_predicate_[p].push_back(static_cast<int>(i));
    }
}

void LlcActionTable::record_action(const std::vector<int>& active, const std::string& schema) {
    auto it = schema_index_.find(schema);
    if (it == schema_index_.end()) {
        throw std::invalid_argument("record_action: unknown schema '" + schema + "'");
    }
    for (int llc_index : active) {
        ++counts_.at(llc_index)[it->second];
        ++totals_.at(llc_index);
    }
}

std::uint64_t LlcActionTable::count(int llc_index, int schema_index) const {
    return counts_.at(llc_index).at(schema_index);
}

std::uint64_t LlcActionTable::count(int llc_index, const std::string& schema) const {
    auto it = schema_index_.find(schema);
    if (it == schema_index_.end()) {
        throw std::invalid_argument("count: unknown schema '" + schema + "'");
    }
    return counts_.at(llc_index)[it->second];
}

int LlcActionTable::schema_index(const std::string& schema) const {
    auto it = schema_index_.find(schema);
    return it == schema_index_.end() ? -1 : it->second;
}

const std::vector<int>& LlcActionTable::llcs_mentioning(const std::string& predicate) const {
    static const std::vector<int> none;
    auto it = by_predicate_.find(predicate);
    return it == by_predicate_.end() ? none : it->second;
}

void dump_llcs(const std::vector<LLC>& llcs, std::ostream& out) {
    for (const LLC& llc : llcs) out << llc.key << '\n';
}

}  // namespace llcx
