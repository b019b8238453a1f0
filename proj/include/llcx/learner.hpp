#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "llcx/action.hpp"
#include "llcx/pddl.hpp"
#include "llcx/relational.hpp"

// Greedy relational learner: per-schema precondition clauses induced from
// positively/negatively labeled interactions by information-gain search
// over mode-declared body literals, with lifted effects derived from state
// differences of the positive examples.

namespace llcx {

// Inductive bias: which predicates may appear in rule bodies. Derived
// mechanically from the domain model; both signs are allowed and slots may
// take in-scope variables or fresh existentials.
struct ModeDeclaration {
    PredicateSignature predicate;
};

std::vector<ModeDeclaration> modes_from_domain(const DomainModel& dom);

struct LearnerConfig {
    // 0 keeps every negative example; a positive cap downsamples negatives
    // (evenly strided) before the gain search.
    std::size_t negative_cap = 0;
    int max_fresh_per_literal = 2;
    int max_body_literals = 12;
};

struct LearnedActionModel {
    enum class Status { unknown, learned };

    std::string schema;
    std::vector<Variable> parameters;    // head variables, in schema order
    std::optional<Clause> precondition;  // over parameters + existentials
    std::vector<Literal> add_effects;
    std::vector<Literal> del_effects;
    int residual_errors = 0;  // negative examples still covered after learning
    bool effect_conflict = false;
    Status status = Status::unknown;
};

// Head variables for a schema (X, Y, X2, ... keyed by parameter type).
std::vector<Variable> head_variables(const ActionSchema& schema);

struct PreconditionResult {
    std::optional<Clause> clause;
    int residual_errors = 0;
};

// Greedy covering: starting from an empty body, repeatedly add the
// candidate literal with the best information gain until no negative
// example is covered or nothing improves. Candidates never drop a positive
// example, so a zero-residual clause is consistent with all training
// positives. Absent when there are no positives.
PreconditionResult learn_preconditions(const ActionSchema& schema,
                                       std::span<const Interaction* const> positives,
                                       std::span<const Interaction* const> negatives,
                                       const std::vector<ModeDeclaration>& modes,
                                       const Universe& universe,
                                       const LearnerConfig& config = {});

struct Effects {
    std::vector<Literal> adds;
    std::vector<Literal> dels;
    bool conflict = false;
};

// Lifts each positive's state difference through its head + precondition
// binding and keeps the majority lifted diff; conflict marks disagreement.
Effects derive_effects(const ActionSchema& schema,
                       std::span<const Interaction* const> positives,
                       const std::optional<Clause>& precondition,
                       const Universe& universe);

// True when the model is learned and its precondition is satisfiable with
// the head variables bound to args.
bool learned_executable(const LearnedActionModel& model, const State& state,
                        std::span<const Constant> args, const Universe& universe);

// The learned transition function: applies the model's effects under the
// first satisfying precondition binding. Absent when not executable.
std::optional<State> apply_learned(const LearnedActionModel& model, const State& state,
                                   std::span<const Constant> args, const Universe& universe);

// Incremental learner over a growing interaction history.
class TransitionModelLearner {
public:
    explicit TransitionModelLearner(const DomainModel& dom, LearnerConfig config = {});

    // Relearns exactly the schemas with interactions appended since the
    // previous call; history must extend the previously seen history.
    const std::map<std::string, LearnedActionModel>& learn_all(const InteractionHistory& history);

    const std::map<std::string, LearnedActionModel>& models() const { return models_; }

private:
    DomainModel dom_;
    LearnerConfig config_;
    std::vector<ModeDeclaration> modes_;
    std::map<std::string, LearnedActionModel> models_;
    std::map<std::string, std::pair<std::vector<Interaction>, std::vector<Interaction>>>
        examples_;  // schema -> (positives, negatives)
    std::size_t cursor_ = 0;
};

// Rule text in `head :- body.` syntax plus effect annotation lines.
void dump_models(const std::map<std::string, LearnedActionModel>& models, std::ostream& out);
std::map<std::string, LearnedActionModel> parse_models(std::istream& in, const DomainModel& dom);

}  // namespace llcx
