#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "llcx/environment.hpp"
#include "llcx/llc.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace llcx;
using namespace llcx::testing;

TEST_CASE("a single unary predicate yields two size-1 clauses") {
    DomainModel dom = parse_domain("(define (domain d) (:types t) (:predicates (p ?a - t)))");
    auto llcs = generate_llcs(dom, 1);
    REQUIRE(llcs.size() == 2);
    CHECK(llcs[0].key == "{not p(V0)}");
    CHECK(llcs[1].key == "{p(V0)}");
}

TEST_CASE("scenario 1 LLCs stay under the combinatorial bound") {
    const DomainModel& dom = dcss_domain();
    CHECK(llc_upper_bound(dom, 1) == 24);
    CHECK(llc_upper_bound(dom, 2) == 276);
    auto llcs = generate_llcs(dom, 2);
    CHECK(llcs.size() <= 276);
}

TEST_CASE("generation matches the brute-force pair enumeration") {
    const DomainModel& dom = dcss_domain();
    auto llcs = generate_llcs(dom, 2);
    std::set<std::string> keys;
    for (const LLC& llc : llcs) keys.insert(llc.key);
    CHECK(keys.size() == llcs.size());
    CHECK(keys == brute_force_llc_keys(dom));
}

TEST_CASE("generation is deterministic and order-stable") {
    const DomainModel& dom = dcss_domain();
    auto a = generate_llcs(dom, 2);
    auto b = generate_llcs(dom, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].key == b[i].key);
}

TEST_CASE("every multi-literal clause is variable-linked") {
    for (const LLC& llc : generate_llcs(dcss_domain(), 2)) {
        if (llc.size < 2) continue;
        const Literal& a = llc.clause.literals[0];
        const Literal& b = llc.clause.literals[1];
        bool linked = false;
        for (const Term& t : a.args) {
            for (const Term& u : b.args) {
                linked = linked || (is_variable(t) && is_variable(u) &&
                                    as_variable(t) == as_variable(u));
            }
        }
        CHECK(linked);
        // Linkedness means no clause decomposes into two disjoint smaller ones.
        std::vector<Variable> vars = variables_of(llc.clause);
        CHECK(vars.size() < static_cast<std::size_t>(2 * llc.size));
    }
}

TEST_CASE("activity against scenario 1") {
    const DomainModel& dom = scenario1_domain();
    const State& init = scenario1().init;
    const Universe& u = dom.constants_by_type;

    LLC agent{canonicalize(Clause{{lit("agentat", {xv("X"), yv("Y")})}}), 1, ""};
    LLC open_door{canonicalize(Clause{{lit("odoor", {xv("X"), yv("Y")})}}), 1, ""};
    CHECK(is_active(agent, init, u));
    CHECK_FALSE(is_active(open_door, init, u));  // the only door starts closed

    CHECK_FALSE(is_active(agent, State{}, u));
    LLC no_wall{canonicalize(Clause{{lit("wall", {xv("X"), yv("Y")}, true)}}), 1, ""};
    CHECK(is_active(no_wall, State{}, u));  // purely negated clauses hold vacuously
}

namespace {

InteractionHistory random_history(int steps, unsigned seed) {
    const DomainModel& dom = scenario1_domain();
    GridWorld world(dcss_domain(), scenario1());
    std::mt19937 rng(seed);
    const auto& xs = dom.constants_by_type.at("xcoord");
    const auto& ys = dom.constants_by_type.at("ycoord");
    InteractionHistory history;
    for (int i = 0; i < steps; ++i) {
        State prior = world.observe();
        GroundAction a{dom.action_schemas[rng() % 24].name,
                       {xs[rng() % xs.size()], ys[rng() % ys.size()]}};
        world.step(a);
        history.push_back(label(std::move(prior), a, world.observe()));
    }
    return history;
}

}  // namespace

TEST_CASE("examples_count scans the interaction history") {
    const DomainModel& dom = scenario1_domain();
    const Universe& u = dom.constants_by_type;
    LLC agent{canonicalize(Clause{{lit("agentat", {xv("X"), yv("Y")})}}), 1, ""};

    CHECK(examples_count(agent, "move_w", {}, u) == 0);

    GridWorld world(dcss_domain(), scenario1());
    State prior = world.observe();
    GroundAction move{"move_w", {xc("x2"), yc("y1")}};
    world.step(move);
    InteractionHistory one{label(prior, move, world.observe())};
    CHECK(examples_count(agent, "move_w", one, u) == 1);
    CHECK(examples_count(agent, "move_e", one, u) == 0);
}

TEST_CASE("incremental table equals rescan on random histories") {
    const DomainModel& dom = scenario1_domain();
    const Universe& u = dom.constants_by_type;
    auto llcs = generate_llcs(dom, 2);

    InteractionHistory history = random_history(50, 21);
    LlcActionTable table(llcs, dom.action_schemas);
    for (const Interaction& step : history) {
        table.record_action(active_llcs(llcs, step.prior, u), step.action.schema);
    }
    for (std::size_t c = 0; c < llcs.size(); ++c) {
        for (const ActionSchema& schema : dom.action_schemas) {
            CHECK(table.count(static_cast<int>(c), schema.name) ==
                  examples_count(llcs[c], schema.name, history, u));
        }
    }
}

TEST_CASE("record_action touches exactly the active rows") {
    const DomainModel& dom = scenario1_domain();
    auto llcs = generate_llcs(dom, 1);
    LlcActionTable table(llcs, dom.action_schemas);

    table.record_action({}, "move_n");
    for (std::size_t c = 0; c < llcs.size(); ++c) CHECK(table.total(static_cast<int>(c)) == 0);

    table.record_action({0}, "move_n");
    CHECK(table.count(0, "move_n") == 1);
    CHECK(table.total(0) == 1);

    for (int k = 0; k < 4; ++k) table.record_action({0}, "move_n");
    CHECK(table.count(0, "move_n") == 5);

    CHECK_THROWS_AS(table.record_action({0}, "fly"), std::invalid_argument);
}

TEST_CASE("llcs_mentioning indexes clauses by predicate") {
    const DomainModel& dom = dcss_domain();
    auto llcs = generate_llcs(dom, 2);
    LlcActionTable table(llcs, dom.action_schemas);
    const auto& with_door = table.llcs_mentioning("odoor");
    CHECK(!with_door.empty());
    for (int idx : with_door) {
        bool mentions = false;
        for (const Literal& l : llcs[idx].clause.literals) {
            mentions = mentions || l.predicate == "odoor";
        }
        CHECK(mentions);
    }
    CHECK(table.llcs_mentioning("lava").empty());
}

TEST_CASE("llc dump writes one canonical clause per line") {
    DomainModel dom = parse_domain("(define (domain d) (:types t) (:predicates (p ?a - t)))");
    std::ostringstream out;
    dump_llcs(generate_llcs(dom, 1), out);
    CHECK(out.str() == "{not p(V0)}\n{p(V0)}\n");
}
