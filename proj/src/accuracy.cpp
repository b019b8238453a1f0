#include "llcx/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include "llcx/environment.hpp"

namespace llcx {

std::vector<TestState> load_test_states(const std::string& dir, const DomainModel& dom) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".pddl") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .pddl test states in " + dir);

    std::vector<TestState> tests;
    for (const std::string& path : files) {
        TestState test;
        test.name = fs::path(path).stem().string();
        if (test.name.starts_with("closed_")) {
            test.tag = TestState::Tag::closed_door;
        } else if (test.name.starts_with("open_")) {
            test.tag = TestState::Tag::open_door;
        } else {
            throw std::runtime_error("test state file must start with closed_ or open_: " + path);
        }
        test.problem = parse_problem_file(path, dom);
        tests.push_back(std::move(test));
    }
    return tests;
}

namespace {

int percent(double numerator, double denominator) {
    if (denominator == 0) return 0;
    return static_cast<int>(std::floor(100.0 * numerator / denominator + 0.5));
}

}  // namespace

const AccuracyRow* AccuracyReport::row(const std::string& schema) const {
    for (const auto& [name, row] : rows) {
        if (name == schema) return &row;
    }
    return nullptr;
}

int AccuracyReport::learned_nonzero() const {
    int count = 0;
    for (const auto& [name, row] : rows) count += row.f1 > 0 ? 1 : 0;
    return count;
}

AccuracyReport evaluate_accuracy(const std::map<std::string, LearnedActionModel>& learned,
                                 const std::map<std::string, LearnedActionModel>& perfect,
                                 const std::vector<TestState>& tests, const DomainModel& dom) {
    struct Grounding {
        const State* state;
        Universe universe;
        std::map<Direction, std::optional<Tile>> destination;
    };
    std::vector<Grounding> groundings;
    std::vector<GridWorld> worlds;
    worlds.reserve(tests.size());
    for (const TestState& test : tests) {
        worlds.emplace_back(dom, test.problem);
        Grounding g;
        g.state = &worlds.back().observe();
        g.universe = test.problem.objects;
        for (Direction d : all_directions()) {
            g.destination[d] = worlds.back().neighbor(worlds.back().agent_position(), d);
        }
        groundings.push_back(std::move(g));
    }

    AccuracyReport report;
    for (const ActionSchema& schema : dom.action_schemas) {
        Direction direction = schema_meaning(schema.name)->direction;
        int tp = 0, fp = 0, fn = 0;
        for (const Grounding& g : groundings) {
            const std::optional<Tile>& dest = g.destination.at(direction);
            bool learned_yes = false;
            bool perfect_yes = false;
            if (dest) {
                std::vector<Constant> args{dest->first, dest->second};
                auto lit = learned.find(schema.name);
                if (lit != learned.end()) {
                    learned_yes = learned_executable(lit->second, *g.state, args, g.universe);
                }
                perfect_yes = learned_executable(perfect.at(schema.name), *g.state, args,
                                                 g.universe);
            }
            tp += learned_yes && perfect_yes;
            fp += learned_yes && !perfect_yes;
            fn += !learned_yes && perfect_yes;
        }
        AccuracyRow row;
        double p = tp + fp > 0 ? 100.0 * tp / (tp + fp) : 0.0;
        double r = tp + fn > 0 ? 100.0 * tp / (tp + fn) : 0.0;
        row.precision = percent(tp, tp + fp);
        row.recall = percent(tp, tp + fn);
        row.f1 = p + r > 0 ? static_cast<int>(std::floor(2.0 * p * r / (p + r) + 0.5)) : 0;
        report.rows.emplace_back(schema.name, row);
    }
    return report;
}

void write_accuracy_csv(const AccuracyReport& report, std::ostream& out) {
    out << "action,precision,recall,f1\n";
    for (const auto& [name, row] : report.rows) {
        out << name << ',' << row.precision << ',' << row.recall << ',' << row.f1 << '\n';
    }
}

void write_accuracy_table(const AccuracyReport& report, std::ostream& out) {
    std::size_t width = 0;
    for (const auto& [name, row] : report.rows) width = std::max(width, name.size());
    out << std::string(width, ' ') << "    P    R   F1\n";
    for (const auto& [name, row] : report.rows) {
        out << name << std::string(width - name.size(), ' ');
        auto cell = [&](int v) {
            std::string s = std::to_string(v);
            out << std::string(5 - s.size(), ' ') << s;
        };
        cell(row.precision);
        cell(row.recall);
        cell(row.f1);
        out << '\n';
    }
}

}  // namespace llcx
