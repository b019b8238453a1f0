#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "llcx/learner.hpp"
#include "llcx/pddl.hpp"

// Learning-accuracy metric: per-schema precision/recall/F1 of the learned
// preconditions against the hand-authored perfect model over the authored
// test states, grounding each schema at the direction-adjacent tile.

namespace llcx {

struct TestState {
    enum class Tag { closed_door, open_door };

    std::string name;
    Tag tag;
    ProblemInstance problem;
};

// Loads every .pddl file in the directory (sorted by filename); the tag
// comes from the closed_/open_ filename prefix.
std::vector<TestState> load_test_states(const std::string& dir, const DomainModel& dom);

struct AccuracyRow {
    int precision = 0;  // integers in [0, 100], rounded half-up
    int recall = 0;
    int f1 = 0;

    bool operator==(const AccuracyRow&) const = default;
};

struct AccuracyReport {
    // One row per schema, in domain declaration order.
    std::vector<std::pair<std::string, AccuracyRow>> rows;

    const AccuracyRow* row(const std::string& schema) const;
    int learned_nonzero() const;  // schemas with F1 > 0
};

AccuracyReport evaluate_accuracy(const std::map<std::string, LearnedActionModel>& learned,
                                 const std::map<std::string, LearnedActionModel>& perfect,
                                 const std::vector<TestState>& tests, const DomainModel& dom);

void write_accuracy_csv(const AccuracyReport& report, std::ostream& out);
void write_accuracy_table(const AccuracyReport& report, std::ostream& out);

}  // namespace llcx
