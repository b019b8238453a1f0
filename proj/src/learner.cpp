#include "llcx/learner.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace llcx {

std::vector<ModeDeclaration> modes_from_domain(const DomainModel& dom) {
    std::vector<ModeDeclaration> modes;
    modes.reserve(dom.predicates.size());
    for (const PredicateSignature& p : dom.predicates) modes.push_back(ModeDeclaration{p});
    return modes;
}

namespace {

// X for the first xcoord variable, X2 for the second, and so on.
Variable typed_variable(const TypeName& type, int ordinal) {
    char base = type.empty() ? 'V' : static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
    std::string name(1, base);
    if (ordinal > 0) name += std::to_string(ordinal + 1);
    return Variable{name, type};
}

GroundAtom ground_atom(const Literal& lit) {
    GroundAtom atom{lit.predicate, {}};
    for (const Term& t : lit.args) {
        assert(!is_variable(t) && "effect literal must be fully bound");
        atom.args.push_back(as_constant(t));
    }
    return atom;
}

}  // namespace

std::vector<Variable> head_variables(const ActionSchema& schema) {
    std::vector<Variable> vars;
    std::map<TypeName, int> used;
    for (const TypeName& t : schema.parameter_types) vars.push_back(typed_variable(t, used[t]++));
    return vars;
}

namespace {

struct Tuple {
    int example;  // index into the combined positives-then-negatives layout
    Binding binding;
};

// Extensions of one tuple by a candidate literal. Negated candidates are
// fully bound per tuple, so the check is plain closed-world membership.
int count_extensions(const Literal& lit, const State& prior, const Binding& binding,
                     std::vector<Binding>* out) {
    if (lit.negated) {
        Literal grounded = substitute(lit, binding);
        if (prior.contains(ground_atom(grounded))) return 0;
        if (out) out->push_back(binding);
        return 1;
    }
    int count = 0;
    for (const GroundAtom& atom : prior.matching(lit.predicate)) {
        auto extended = unify_literal(lit, atom, binding);
        if (!extended) continue;
        ++count;
        if (out) out->push_back(std::move(*extended));
    }
    return count;
}

struct GainSearch {
    std::vector<const Interaction*> examples;  // positives first
    int positive_count = 0;
    std::vector<Tuple> pos_tuples;
    std::vector<Tuple> neg_tuples;

    const State& prior_of(int example) const { return examples[example]->prior; }

    struct Eval {
        // Coverage is counted over distinct examples, not ground extension
        // tuples: tuple counts reward literals that merely multiply
        // bindings (a wall anywhere in the destination row scores above
        // the adjacency literal it mimics) and those shortcuts do not
        // survive off the training map.
        int pos_examples = 0;
        int neg_examples = 0;
        bool keeps_all_positives = true;
        bool determinate = true;  // exactly one extension per tuple
    };

    Eval evaluate(const Literal& lit) const {
        Eval eval;
        std::vector<char> pos_covered(positive_count, 0);
        std::set<int> neg_covered;
        for (const Tuple& t : pos_tuples) {
            int n = count_extensions(lit, prior_of(t.example), t.binding, nullptr);
            if (n > 0) pos_covered[t.example] = 1;
            if (n != 1) eval.determinate = false;
        }
        for (const Tuple& t : neg_tuples) {
            int n = count_extensions(lit, prior_of(t.example), t.binding, nullptr);
            if (n > 0) neg_covered.insert(t.example);
            if (n > 1) eval.determinate = false;
        }
        eval.pos_examples =
            static_cast<int>(std::count(pos_covered.begin(), pos_covered.end(), 1));
        eval.neg_examples = static_cast<int>(neg_covered.size());
        eval.keeps_all_positives = eval.pos_examples == positive_count;
        return eval;
    }

    int covered_positive_examples() const {
        std::set<int> covered;
        for (const Tuple& t : pos_tuples) covered.insert(t.example);
        return static_cast<int>(covered.size());
    }

    void commit(const Literal& lit) {
        auto extend = [&](std::vector<Tuple>& tuples) {
            std::vector<Tuple> next;
            for (const Tuple& t : tuples) {
                std::vector<Binding> extensions;
                count_extensions(lit, prior_of(t.example), t.binding, &extensions);
                for (Binding& b : extensions) next.push_back(Tuple{t.example, std::move(b)});
            }
            tuples = std::move(next);
        };
        extend(pos_tuples);
        extend(neg_tuples);
    }

    int covered_negative_examples() const {
        std::set<int> covered;
        for (const Tuple& t : neg_tuples) covered.insert(t.example);
        return static_cast<int>(covered.size());
    }
};

std::string literal_sort_key(const Literal& lit) {
    std::string key = lit.predicate;
    key += lit.negated ? "~" : " ";
    for (const Term& t : lit.args) {
        key += is_variable(t) ? as_variable(t).name : as_constant(t).name;
        key += ",";
    }
    return key;
}

// Candidate body literals over the in-scope variables. Positive literals
// may introduce fresh existentials but must touch at least one in-scope
// variable; negated literals range over in-scope variables only.
std::vector<Literal> candidate_literals(const std::vector<ModeDeclaration>& modes,
                                        const std::vector<Variable>& scope,
                                        const std::vector<Literal>& body,
                                        int max_fresh) {
    std::map<TypeName, int> ordinals;
    for (const Variable& v : scope) {
        // Recover the per-type counter from existing names so fresh names
        // never collide with variables already in scope.
        int taken = 1;
        if (v.name.size() > 1) taken = std::max(taken, std::atoi(v.name.c_str() + 1));
        int& o = ordinals[v.type];
        o = std::max(o, taken);
    }

    std::vector<Literal> out;
    for (const ModeDeclaration& mode : modes) {
        const PredicateSignature& sig = mode.predicate;
        for (bool negated : {false, true}) {
            std::vector<Term> slots(sig.arity());
            std::vector<Variable> fresh;
            std::function<void(std::size_t, int, bool)> fill = [&](std::size_t slot,
                                                                   int fresh_used,
                                                                   bool any_scope) {
                if (slot == sig.arity()) {
                    if (!any_scope) return;
                    Literal lit{sig.name, slots, negated};
                    for (const Literal& existing : body) {
                        if (existing == lit) return;  // already in the body
                        if (existing.predicate == lit.predicate && existing.args == lit.args &&
                            existing.negated != lit.negated) {
                            return;  // would contradict the body
                        }
                    }
                    out.push_back(std::move(lit));
                    return;
                }
                const TypeName& type = sig.parameter_types[slot];
                for (const Variable& v : scope) {
                    if (v.type != type) continue;
                    slots[slot] = v;
                    fill(slot + 1, fresh_used, true);
                }
                if (!negated) {
                    for (int i = 0; i < fresh_used; ++i) {
                        if (fresh[i].type != type) continue;
                        slots[slot] = fresh[i];
                        fill(slot + 1, fresh_used, any_scope);
                    }
                    if (fresh_used < max_fresh) {
                        Variable v = typed_variable(type, ordinals[type] + fresh_used);
                        if (static_cast<std::size_t>(fresh_used) == fresh.size()) {
                            fresh.push_back(v);
                        } else {
                            fresh[fresh_used] = v;
                        }
                        slots[slot] = v;
                        fill(slot + 1, fresh_used + 1, any_scope);
                    }
                }
            };
            fill(0, 0, false);
        }
    }
    return out;
}

int fresh_variable_count(const Literal& lit, const std::vector<Variable>& scope) {
    int fresh = 0;
    std::vector<Variable> seen;
    for (const Term& t : lit.args) {
        if (!is_variable(t)) continue;
        const Variable& v = as_variable(t);
        if (std::find(scope.begin(), scope.end(), v) != scope.end()) continue;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
        seen.push_back(v);
        ++fresh;
    }
    return fresh;
}

}  // namespace

PreconditionResult learn_preconditions(const ActionSchema& schema,
                                       std::span<const Interaction* const> positives,
                                       std::span<const Interaction* const> negatives,
                                       const std::vector<ModeDeclaration>& modes,
                                       const Universe& universe,
                                       const LearnerConfig& config) {
    (void)universe;  // negated body literals are ground per tuple
    if (positives.empty()) return {std::nullopt, 0};

    std::vector<const Interaction*> kept_negatives(negatives.begin(), negatives.end());
    if (config.negative_cap > 0 && kept_negatives.size() > config.negative_cap) {
        std::vector<const Interaction*> sampled;
        double stride = static_cast<double>(kept_negatives.size()) /
                        static_cast<double>(config.negative_cap);
        for (std::size_t i = 0; i < config.negative_cap; ++i) {
            sampled.push_back(kept_negatives[static_cast<std::size_t>(i * stride)]);
        }
        kept_negatives = std::move(sampled);
    }

    std::vector<Variable> head = head_variables(schema);
    GainSearch search;
    search.positive_count = static_cast<int>(positives.size());
    for (const Interaction* i : positives) search.examples.push_back(i);
    for (const Interaction* i : kept_negatives) search.examples.push_back(i);

    auto seed_tuple = [&](int example) {
        Binding b;
        const Interaction* i = search.examples[example];
        for (std::size_t k = 0; k < head.size(); ++k) {
            bool ok = b.bind(head[k], i->action.args[k]);
            assert(ok);
            (void)ok;
        }
        return Tuple{example, std::move(b)};
    };
    for (int e = 0; e < static_cast<int>(search.examples.size()); ++e) {
        (e < search.positive_count ? search.pos_tuples : search.neg_tuples)
            .push_back(seed_tuple(e));
    }

    std::vector<Literal> body;
    std::vector<Variable> scope = head;
    const double eps = 1e-9;

    while (!search.neg_tuples.empty() &&
           static_cast<int>(body.size()) < config.max_body_literals) {
        double info_before =
            std::log2(static_cast<double>(search.pos_tuples.size() + search.neg_tuples.size()) /
                      static_cast<double>(search.pos_tuples.size()));

        const Literal* best = nullptr;
        double best_gain = 0.0;
        int best_fresh = 0;
        std::string best_key;
        const Literal* best_determinate = nullptr;
        int best_det_fresh = 0;
        std::string best_det_key;

        std::vector<Literal> candidates =
            candidate_literals(modes, scope, body, config.max_fresh_per_literal);
        for (const Literal& lit : candidates) {
            GainSearch::Eval eval = search.evaluate(lit);
            // A literal that drops a positive example can never be part of
            // the clause: a zero-residual result must stay consistent with
            // every training positive.
            if (!eval.keeps_all_positives || eval.pos_after == 0) continue;
            int fresh = fresh_variable_count(lit, scope);
            double info_after = std::log2(
                static_cast<double>(eval.pos_after + eval.neg_after) /
                static_cast<double>(eval.pos_after));
            double gain = static_cast<double>(eval.pos_covered) * (info_before - info_after);
            std::string key = literal_sort_key(lit);
            if (gain > eps) {
                bool better = best == nullptr || gain > best_gain + eps ||
                              (gain > best_gain - eps &&
                               std::tie(fresh, key) < std::tie(best_fresh, best_key));
                if (better) {
                    best = &lit;
                    best_gain = gain;
                    best_fresh = fresh;
                    best_key = key;
                }
            } else if (fresh > 0 && eval.determinate) {
                // Gain-free fallback: a variable-introducing literal with a
                // single extension per tuple keeps the search moving when
                // the discriminating literal needs its variables.
                bool better = best_determinate == nullptr ||
                              std::tie(fresh, key) < std::tie(best_det_fresh, best_det_key);
                if (better) {
                    best_determinate = &lit;
                    best_det_fresh = fresh;
                    best_det_key = key;
                }
            }
        }

        const Literal* chosen = best != nullptr ? best : best_determinate;
        if (chosen == nullptr) break;
        search.commit(*chosen);
        body.push_back(*chosen);
        for (const Term& t : chosen->args) {
            if (!is_variable(t)) continue;
            const Variable& v = as_variable(t);
            if (std::find(scope.begin(), scope.end(), v) == scope.end()) scope.push_back(v);
        }
    }

    return {Clause{std::move(body)}, search.covered_negative_examples()};
}

namespace {

// First satisfying binding of the precondition with head variables bound;
// merged over head + clause variables.
std::optional<Binding> precondition_binding(const std::optional<Clause>& precondition,
                                            const std::vector<Variable>& parameters,
                                            std::span<const Constant> args, const State& state,
                                            const Universe& universe) {
    Binding bound;
    if (args.size() != parameters.size()) return std::nullopt;
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (!bound.bind(parameters[i], args[i])) return std::nullopt;
    }
    if (!precondition) return std::nullopt;
    Clause grounded = substitute(*precondition, bound);
    std::optional<Binding> found;
    satisfy(grounded, state, universe, [&](const Binding& b) {
        found = b;
        return false;
    });
    if (!found) return std::nullopt;
    for (const auto& [v, c] : found->entries()) {
        if (!bound.bind(v, c)) return std::nullopt;
    }
    return bound;
}

}  // namespace

Effects derive_effects(const ActionSchema& schema,
                       std::span<const Interaction* const> positives,
                       const std::optional<Clause>& precondition, const Universe& universe) {
    assert(!positives.empty());
    std::vector<Variable> parameters = head_variables(schema);

    // Lifting order: head variables first, then precondition existentials
    // by first occurrence.
    std::vector<Variable> lift_order = parameters;
    if (precondition) {
        for (const Variable& v : variables_of(*precondition)) {
            if (std::find(lift_order.begin(), lift_order.end(), v) == lift_order.end()) {
                lift_order.push_back(v);
            }
        }
    }

    struct LiftedDiff {
        std::vector<Literal> adds, dels;
        std::string key;
        int count = 0;
    };
    std::map<std::string, LiftedDiff> groups;

    for (const Interaction* example : positives) {
        std::optional<Binding> binding = precondition_binding(
            precondition, parameters, example->action.args, example->prior, universe);
        if (!binding) {
            // Residual-error clauses may not cover every positive; lift
            // through the head variables alone.
            binding.emplace();
            for (std::size_t i = 0; i < parameters.size(); ++i) {
                (void)binding->bind(parameters[i], example->action.args[i]);
            }
        }

        auto lift = [&](const GroundAtom& atom) {
            Literal lit{atom.predicate, {}, false};
            for (const Constant& c : atom.args) {
                const Variable* var = nullptr;
                for (const Variable& v : lift_order) {
                    const Constant* bound = binding->lookup(v);
                    if (bound != nullptr && *bound == c) {
                        var = &v;
                        break;
                    }
                }
                lit.args.push_back(var != nullptr ? Term{*var} : Term{c});
            }
            return lit;
        };

        StateDelta diff = state_diff(example->prior, example->post);
        LiftedDiff lifted;
        for (const GroundAtom& a : diff.adds.atoms()) lifted.adds.push_back(lift(a));
        for (const GroundAtom& a : diff.dels.atoms()) lifted.dels.push_back(lift(a));
        std::sort(lifted.adds.begin(), lifted.adds.end());
        std::sort(lifted.dels.begin(), lifted.dels.end());
        for (const Literal& l : lifted.adds) lifted.key += "+" + to_string(l);
        for (const Literal& l : lifted.dels) lifted.key += "-" + to_string(l);
        auto [it, inserted] = groups.emplace(lifted.key, std::move(lifted));
        ++it->second.count;
    }

    const LiftedDiff* majority = nullptr;
    for (const auto& [key, group] : groups) {
        if (majority == nullptr || group.count > majority->count) majority = &group;
    }
    Effects effects;
    effects.adds = majority->adds;
    effects.dels = majority->dels;
    effects.conflict = groups.size() > 1;
    return effects;
}

bool learned_executable(const LearnedActionModel& model, const State& state,
                        std::span<const Constant> args, const Universe& universe) {
    if (model.status != LearnedActionModel::Status::learned || !model.precondition) return false;
    Binding bound;
    if (args.size() != model.parameters.size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!bound.bind(model.parameters[i], args[i])) return false;
    }
    return satisfiable(substitute(*model.precondition, bound), state, universe);
}

std::optional<State> apply_learned(const LearnedActionModel& model, const State& state,
                                   std::span<const Constant> args, const Universe& universe) {
    if (model.status != LearnedActionModel::Status::learned) return std::nullopt;
    std::optional<Binding> binding =
        precondition_binding(model.precondition, model.parameters, args, state, universe);
    if (!binding) return std::nullopt;
    State out = state;
    for (const Literal& lit : model.del_effects) out.erase(ground_atom(substitute(lit, *binding)));
    for (const Literal& lit : model.add_effects) out.insert(ground_atom(substitute(lit, *binding)));
    return out;
}

TransitionModelLearner::TransitionModelLearner(const DomainModel& dom, LearnerConfig config)
    : dom_(dom), config_(config), modes_(modes_from_domain(dom)) {
    for (const ActionSchema& schema : dom_.action_schemas) {
        LearnedActionModel model;
        model.schema = schema.name;
        model.parameters = head_variables(schema);
        models_.emplace(schema.name, std::move(model));
    }
}

const std::map<std::string, LearnedActionModel>& TransitionModelLearner::learn_all(
    const InteractionHistory& history) {
    if (history.size() < cursor_) {
        throw std::invalid_argument("learn_all: history shrank between calls");
    }
    std::set<std::string> dirty;
    for (; cursor_ < history.size(); ++cursor_) {
        const Interaction& interaction = history[cursor_];
        auto& [pos, neg] = examples_[interaction.action.schema];
        (interaction.label == Label::positive ? pos : neg).push_back(interaction);
        dirty.insert(interaction.action.schema);
    }

    for (const std::string& name : dirty) {
        const ActionSchema* schema = dom_.schema(name);
        if (schema == nullptr) throw std::invalid_argument("history mentions unknown schema " + name);
        auto& [pos, neg] = examples_[name];
        std::vector<const Interaction*> positives, negatives;
        for (const Interaction& i : pos) positives.push_back(&i);
        for (const Interaction& i : neg) negatives.push_back(&i);

        LearnedActionModel model;
        model.schema = name;
        model.parameters = head_variables(*schema);
        PreconditionResult result = learn_preconditions(
            *schema, positives, negatives, modes_, dom_.constants_by_type, config_);
        if (result.clause) {
            model.precondition = std::move(result.clause);
            model.residual_errors = result.residual_errors;
            model.status = LearnedActionModel::Status::learned;
            Effects effects =
                derive_effects(*schema, positives, model.precondition, dom_.constants_by_type);
            model.add_effects = std::move(effects.adds);
            model.del_effects = std::move(effects.dels);
            model.effect_conflict = effects.conflict;
        }
        models_[name] = std::move(model);
    }
    return models_;
}

namespace {

std::string literal_text(const Literal& lit) { return to_string(lit); }

std::string literal_list_text(const std::vector<Literal>& lits) {
    std::string out = "[";
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i) out += ", ";
        out += literal_text(lits[i]);
    }
    return out + "]";
}

// Splits "a(X, Y), not b(X)" at depth-zero commas.
std::vector<std::string> split_literals(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) parts.push_back(current);
    for (std::string& p : parts) {
        while (!p.empty() && std::isspace(static_cast<unsigned char>(p.front()))) p.erase(0, 1);
        while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back()))) p.pop_back();
    }
    std::erase_if(parts, [](const std::string& p) { return p.empty(); });
    return parts;
}

Literal parse_literal(const std::string& text, const DomainModel& dom) {
    std::string body = text;
    Literal lit;
    if (body.starts_with("not ")) {
        lit.negated = true;
        body = body.substr(4);
    }
    auto open = body.find('(');
    auto close = body.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw std::runtime_error("malformed literal: " + text);
    }
    lit.predicate = body.substr(0, open);
    const PredicateSignature* sig = dom.predicate(lit.predicate);
    if (sig == nullptr) throw std::runtime_error("unknown predicate in rule: " + lit.predicate);
    std::vector<std::string> args = split_literals(body.substr(open + 1, close - open - 1));
    if (args.size() != sig->arity()) throw std::runtime_error("bad arity in literal: " + text);
    for (std::size_t i = 0; i < args.size(); ++i) {
        const TypeName& type = sig->parameter_types[i];
        if (std::isupper(static_cast<unsigned char>(args[i][0]))) {
            lit.args.push_back(Variable{args[i], type});
        } else {
            lit.args.push_back(Constant{args[i], type});
        }
    }
    return lit;
}

}  // namespace

void dump_models(const std::map<std::string, LearnedActionModel>& models, std::ostream& out) {
    for (const auto& [name, model] : models) {
        if (model.status != LearnedActionModel::Status::learned) {
            out << "% unknown " << name << "\n";
            continue;
        }
        out << name << "(";
        for (std::size_t i = 0; i < model.parameters.size(); ++i) {
            if (i) out << ", ";
            out << model.parameters[i].name;
        }
        out << ")";
        if (model.precondition && !model.precondition->empty()) {
            out << " :- ";
            const auto& lits = model.precondition->literals;
            for (std::size_t i = 0; i < lits.size(); ++i) {
                if (i) out << ", ";
                out << literal_text(lits[i]);
            }
        }
        out << ".\n";
        out << "% effects " << name << ": adds " << literal_list_text(model.add_effects)
            << " dels " << literal_list_text(model.del_effects);
        if (model.residual_errors > 0) out << " residual " << model.residual_errors;
        if (model.effect_conflict) out << " conflict";
        out << "\n";
    }
}

std::map<std::string, LearnedActionModel> parse_models(std::istream& in,
                                                       const DomainModel& dom) {
    std::map<std::string, LearnedActionModel> models;
    for (const ActionSchema& schema : dom.action_schemas) {
        LearnedActionModel model;
        model.schema = schema.name;
        model.parameters = head_variables(schema);
        models.emplace(schema.name, std::move(model));
    }

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.starts_with("% effects ")) {
            std::string rest = line.substr(10);
            auto colon = rest.find(':');
            if (colon == std::string::npos) throw std::runtime_error("malformed effects line");
            std::string name = rest.substr(0, colon);
            auto it = models.find(name);
            if (it == models.end()) throw std::runtime_error("effects for unknown action " + name);
            auto adds_at = rest.find("adds [");
            auto dels_at = rest.find("] dels [");
            auto end_at = rest.rfind(']');
            if (adds_at == std::string::npos || dels_at == std::string::npos) {
                throw std::runtime_error("malformed effects line: " + line);
            }
            std::string adds = rest.substr(adds_at + 6, dels_at - adds_at - 6);
            std::string dels = rest.substr(dels_at + 8, end_at - dels_at - 8);
            for (const std::string& text : split_literals(adds)) {
                it->second.add_effects.push_back(parse_literal(text, dom));
            }
            for (const std::string& text : split_literals(dels)) {
                it->second.del_effects.push_back(parse_literal(text, dom));
            }
            if (rest.find(" conflict") != std::string::npos) it->second.effect_conflict = true;
            continue;
        }
        if (line.starts_with("%")) continue;

        std::string rule = line;
        if (rule.ends_with(".")) rule.pop_back();
        std::string head_text = rule;
        std::string body_text;
        if (auto sep = rule.find(" :- "); sep != std::string::npos) {
            head_text = rule.substr(0, sep);
            body_text = rule.substr(sep + 4);
        }
        auto open = head_text.find('(');
        if (open == std::string::npos) throw std::runtime_error("malformed rule head: " + line);
        std::string name = head_text.substr(0, open);
        auto it = models.find(name);
        if (it == models.end()) throw std::runtime_error("rule for unknown action " + name);

        Clause body;
        for (const std::string& text : split_literals(body_text)) {
            body.literals.push_back(parse_literal(text, dom));
        }
        it->second.precondition = std::move(body);
        it->second.status = LearnedActionModel::Status::learned;
    }
    return models;
}

}  // namespace llcx
