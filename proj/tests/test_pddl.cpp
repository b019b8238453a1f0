#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "llcx/environment.hpp"
#include "llcx/pddl.hpp"
#include "test_support.hpp"

using namespace llcx;
using namespace llcx::testing;

TEST_CASE("dcss domain declares the 24 action schemas") {
    const DomainModel& dom = dcss_domain();
    CHECK(dom.name == "dcss");
    CHECK(dom.types.size() == 2);
    CHECK(dom.predicates.size() == 6);
    REQUIRE(dom.action_schemas.size() == 24);
    int moves = 0, opens = 0, closes = 0;
    for (const ActionSchema& schema : dom.action_schemas) {
        auto meaning = schema_meaning(schema.name);
        REQUIRE(meaning.has_value());
        if (meaning->kind == ActionKind::move) ++moves;
        if (meaning->kind == ActionKind::open_door) ++opens;
        if (meaning->kind == ActionKind::close_door) ++closes;
        CHECK(schema.parameter_types ==
              std::vector<TypeName>{"xcoord", "ycoord"});
    }
    CHECK(moves == 8);
    CHECK(opens == 8);
    CHECK(closes == 8);
    CHECK(dom.max_arity() == 2);
}

TEST_CASE("scenario 1 parses to the published initial state") {
    const ProblemInstance& problem = scenario1();
    CHECK(problem.objects.at("xcoord").size() == 9);
    CHECK(problem.objects.at("ycoord").size() == 5);

    const State& init = problem.init;
    CHECK(init.contains(atom2("agentat", xc("x1"), yc("y1"))));
    CHECK(init.contains(atom2("cdoor", xc("x8"), yc("y4"))));
    CHECK(init.matching("wall").size() == 12);
    CHECK(init.matching("north").size() == 4);
    CHECK(init.matching("west").size() == 8);
    CHECK(init.size() == 1 + 1 + 12 + 4 + 8);
    // 9x5 tiles minus 12 walls leaves the 33 occupiable tiles (door included).
    CHECK(9 * 5 - 12 == 33);
}

TEST_CASE("scenario 2 parses") {
    ProblemInstance p = parse_problem_file(data_path("scenario2.pddl"), dcss_domain());
    CHECK(p.objects.at("xcoord").size() == 5);
    CHECK(p.init.matching("wall").size() == 10);
    CHECK(p.init.contains(atom2("cdoor", xc("x4"), yc("y2"))));
}

TEST_CASE("empty init produces an empty state") {
    ProblemInstance p = parse_problem(
        "(define (problem p) (:domain dcss) (:objects x1 - xcoord y1 - ycoord) (:init))",
        dcss_domain());
    CHECK(p.init.empty());
}

TEST_CASE("arity mismatch is rejected with the offending atom") {
    CHECK_THROWS_WITH_AS(
        parse_problem("(define (problem p) (:domain dcss) (:objects x1 - xcoord) "
                      "(:init (wall x1)))",
                      dcss_domain()),
        doctest::Contains("'wall' takes 2 arguments"), ParseError);
}

TEST_CASE("unknown predicates and objects are rejected") {
    CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain dcss) (:objects x1 - xcoord "
                                  "y1 - ycoord) (:init (lava x1 y1)))",
                                  dcss_domain()),
                    ParseError);
    CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain dcss) (:objects x1 - xcoord "
                                  "y1 - ycoord) (:init (wall x9 y1)))",
                                  dcss_domain()),
                    ParseError);
    CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain dcss) (:objects x1 - xcoord "
                                  "y1 - ycoord) (:init (wall y1 y1)))",
                                  dcss_domain()),
                    ParseError);
}

TEST_CASE("duplicate predicate declaration is an error") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:types t) (:predicates (p ?a - t) "
                                 "(p ?a - t)))"),
                    ParseError);
}

TEST_CASE("domain without predicates is valid") {
    DomainModel dom = parse_domain("(define (domain d) (:types t))");
    CHECK(dom.predicates.empty());
    CHECK(dom.action_schemas.empty());
}

TEST_CASE("action declarations may not carry preconditions") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:types t) (:predicates (p ?a - t)) "
                                 "(:action go :parameters (?a - t) :precondition (p ?a)))"),
                    ParseError);
}

TEST_CASE("keywords are case-insensitive, symbols keep case") {
    DomainModel dom = parse_domain("(DEFINE (Domain d) (:TYPES Coord) (:Predicates "
                                   "(At ?a - Coord)))");
    CHECK(dom.name == "d");
    CHECK(dom.types == std::vector<TypeName>{"Coord"});
    CHECK(dom.predicates[0].name == "At");
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_domain("(define (domain d)\n  (:types t\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("problem serialization round-trips") {
    const DomainModel& dom = dcss_domain();
    ProblemInstance p = scenario1();
    ProblemInstance back = parse_problem(serialize_problem(p), dom);
    CHECK(back.name == p.name);
    CHECK(back.objects == p.objects);
    CHECK(back.init == p.init);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        ProblemInstance random;
        random.name = "gen";
        random.domain_name = dom.name;
        for (int i = 1; i <= 4; ++i) random.objects["xcoord"].push_back(xc("x" + std::to_string(i)));
        for (int i = 1; i <= 4; ++i) random.objects["ycoord"].push_back(yc("y" + std::to_string(i)));
        std::vector<GroundAtom> atoms;
        for (int i = 0; i < static_cast<int>(rng() % 8); ++i) {
            atoms.push_back(atom2("wall", random.objects["xcoord"][rng() % 4],
                                  random.objects["ycoord"][rng() % 4]));
        }
        random.init = State{std::move(atoms)};
        ProblemInstance reparsed = parse_problem(serialize_problem(random), dom);
        CHECK(reparsed.objects == random.objects);
        CHECK(reparsed.init == random.init);
    }
}

TEST_CASE("interaction log round-trips a recorded history") {
    const DomainModel& dom = scenario1_domain();

    SUBCASE("empty history writes zero records") {
        std::ostringstream out;
        CHECK(write_interaction_log({}, out) == 0);
        std::istringstream in(out.str());
        CHECK(read_interaction_log(in, dom).empty());
    }

    SUBCASE("single successful move") {
        GridWorld world(dcss_domain(), scenario1());
        State prior = world.observe();
        GroundAction move{"move_w", {xc("x2"), yc("y1")}};
        world.step(move);
        InteractionHistory history{label(prior, move, world.observe())};
        std::ostringstream out;
        CHECK(write_interaction_log(history, out) == 1);
        CHECK(history[0].label == Label::positive);

        std::istringstream in(out.str());
        InteractionHistory back = read_interaction_log(in, dom);
        REQUIRE(back.size() == 1);
        CHECK(back[0] == history[0]);
        StateDelta d = state_diff(back[0].prior, back[0].post);
        CHECK(d.adds.size() == 1);
        CHECK(d.dels.size() == 1);
    }

    SUBCASE("100 random steps round-trip losslessly") {
        GridWorld world(dcss_domain(), scenario1());
        std::mt19937 rng(99);
        const auto& xs = dom.constants_by_type.at("xcoord");
        const auto& ys = dom.constants_by_type.at("ycoord");
        InteractionHistory history;
        for (int i = 0; i < 100; ++i) {
            State prior = world.observe();
            GroundAction a{dom.action_schemas[rng() % 24].name,
                           {xs[rng() % xs.size()], ys[rng() % ys.size()]}};
            world.step(a);
            history.push_back(label(std::move(prior), a, world.observe()));
        }
        std::ostringstream out;
        CHECK(write_interaction_log(history, out) == 100);
        std::istringstream in(out.str());
        InteractionHistory back = read_interaction_log(in, dom);
        REQUIRE(back == history);
        // Replaying the deltas reproduces the state chain exactly.
        State replay = back[0].prior;
        for (const Interaction& step : back) {
            CHECK(replay == step.prior);
            StateDelta d = state_diff(step.prior, step.post);
            replay = apply_delta(replay, d.adds, d.dels);
            CHECK(replay == step.post);
        }
    }
}
