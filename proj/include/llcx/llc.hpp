#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "llcx/action.hpp"
#include "llcx/pddl.hpp"
#include "llcx/relational.hpp"

// Lifted Linked Clauses: canonical connected conjunctions of lifted
// literals used as exploration contexts, plus the per-(clause, schema)
// execution count table that drives action selection and goal choice.

namespace llcx {

struct LLC {
    Clause clause;    // canonical form
    int size = 0;     // literal count
    std::string key;  // canonical serialization, unique per alpha-class

    bool operator==(const LLC& other) const { return key == other.key; }
};

// All canonical LLCs of size 1..max_size over the domain's predicates:
// every argument is a variable, every literal of a multi-literal clause
// shares a variable with the rest of the clause (connected), and no
// clause contains a complementary literal pair. Deterministic and
// order-stable (sorted by size, then canonical key).
std::vector<LLC> generate_llcs(const DomainModel& dom, int max_size);

// binom(M! * 2 * |P|, size): the coarse upper bound on the number of
// LLCs of exactly the given size.
std::uint64_t llc_upper_bound(const DomainModel& dom, int size);

// Active iff the clause unifies with the state at least once.
bool is_active(const LLC& llc, const State& state, const Universe& universe);

// Indices (into the given LLC list) of the clauses active in state.
std::vector<int> active_llcs(const std::vector<LLC>& llcs, const State& state,
                             const Universe& universe);

// Number of interactions whose prior state satisfies the clause and whose
// action uses the given schema.
std::uint64_t examples_count(const LLC& llc, const std::string& schema,
                             const InteractionHistory& history, const Universe& universe);

// Counts of action executions per active LLC. Counts only grow within a run.
class LlcActionTable {
public:
    LlcActionTable(std::vector<LLC> llcs, std::vector<ActionSchema> schemas);

    // Increments (c, schema) for every c in active; active must be the
    // active-LLC index set of the state the action is about to run in.
    void record_action(const std::vector<int>& active, const std::string& schema);

    std::uint64_t count(int llc_index, int schema_index) const;
    std::uint64_t count(int llc_index, const std::string& schema) const;
    std::uint64_t total(int llc_index) const { return totals_[llc_index]; }

    int schema_index(const std::string& schema) const;  // -1 when unknown
    const std::vector<LLC>& llcs() const { return llcs_; }
    const std::vector<ActionSchema>& schemas() const { return schemas_; }

    // Indices of LLCs whose clause mentions the predicate.
    const std::vector<int>& llcs_mentioning(const std::string& predicate) const;

private:
    std::vector<LLC> llcs_;
    std::vector<ActionSchema> schemas_;
    std::vector<std::vector<std::uint64_t>> counts_;  // [llc][schema]
    std::vector<std::uint64_t> totals_;
    std::map<std::string, int> schema_index_;
    std::map<std::string, std::vector<int>> by_predicate_;
};

// One canonical clause per line, for inspection.
void dump_llcs(const std::vector<LLC>& llcs, std::ostream& out);

}  // namespace llcx
