#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "llcx/environment.hpp"
#include "test_support.hpp"

using namespace llcx;
using namespace llcx::testing;

namespace {

GroundAction act(const std::string& schema, const std::string& x, const std::string& y) {
    return GroundAction{schema, {xc(x), yc(y)}};
}

}  // namespace

TEST_CASE("movement into a clear adjacent tile succeeds") {
    GridWorld world(dcss_domain(), scenario1());
    CHECK(world.step(act("move_w", "x2", "y1")));
    CHECK(world.agent_position() == Tile{xc("x2"), yc("y1")});
    CHECK(world.observe().contains(atom2("agentat", xc("x2"), yc("y1"))));
    CHECK_FALSE(world.observe().contains(atom2("agentat", xc("x1"), yc("y1"))));
}

TEST_CASE("movement into a wall is a silent no-op") {
    GridWorld world(dcss_domain(), scenario1());
    State before = world.observe();
    CHECK_FALSE(world.step(act("move_n", "x1", "y2")));  // (wall x1 y2)
    CHECK(world.observe() == before);
}

TEST_CASE("movement to a non-adjacent destination is a no-op") {
    GridWorld world(dcss_domain(), scenario1());
    State before = world.observe();
    CHECK_FALSE(world.step(act("move_w", "x5", "y3")));
    CHECK_FALSE(world.step(act("move_w", "x1", "y1")));  // own tile is not adjacent
    CHECK(world.observe() == before);
}

TEST_CASE("moves off the map edge fail") {
    GridWorld world(dcss_domain(), scenario1());
    // x1 is the east edge and y1 the south edge in scenario 1's chains.
    for (const char* schema : {"move_e", "move_s", "move_se", "move_ne", "move_sw"}) {
        State before = world.observe();
        CHECK_FALSE(world.step(act(schema, "x1", "y1")));
        CHECK(world.observe() == before);
    }
}

namespace {

// x1,y1 -> x5,y1 -> x5,y3 -> x2,y3, then diagonally onto (x1,y4).
const std::vector<GroundAction> kWalkToGap{
    act("move_w", "x2", "y1"), act("move_w", "x3", "y1"), act("move_w", "x4", "y1"),
    act("move_w", "x5", "y1"), act("move_n", "x5", "y2"), act("move_n", "x5", "y3"),
    act("move_e", "x4", "y3"), act("move_e", "x3", "y3"), act("move_e", "x2", "y3"),
    act("move_ne", "x1", "y4"),
};

// Continue along the open y5 row until the agent stands north of the door.
const std::vector<GroundAction> kWalkToDoor{
    act("move_n", "x1", "y5"), act("move_w", "x2", "y5"), act("move_w", "x3", "y5"),
    act("move_w", "x4", "y5"), act("move_w", "x5", "y5"), act("move_w", "x6", "y5"),
    act("move_w", "x7", "y5"), act("move_w", "x8", "y5"),
};

}  // namespace

TEST_CASE("diagonal movement composes the two adjacency chains") {
    GridWorld world(dcss_domain(), scenario1());
    CHECK_FALSE(world.step(act("move_nw", "x2", "y2")));  // (x2,y2) is a wall
    for (const GroundAction& a : kWalkToGap) {
        CAPTURE(to_string(a));
        CHECK(world.step(a));
    }
    // The ne move cut the corner past the wall at (x2,y4).
    CHECK(world.agent_position() == Tile{xc("x1"), yc("y4")});
    CHECK(world.exploration_progress() == 11);
}

TEST_CASE("doors open, close, and gate movement") {
    GridWorld world(dcss_domain(), scenario1());
    for (const GroundAction& a : kWalkToGap) REQUIRE(world.step(a));
    for (const GroundAction& a : kWalkToDoor) {
        CAPTURE(to_string(a));
        CHECK(world.step(a));
    }
    REQUIRE(world.agent_position() == Tile{xc("x8"), yc("y5")});

    CHECK_FALSE(world.step(act("close_door_s", "x8", "y4")));  // door is closed
    CHECK_FALSE(world.step(act("move_s", "x8", "y4")));        // closed door blocks
    CHECK(world.step(act("open_door_s", "x8", "y4")));
    CHECK(world.observe().contains(atom2("odoor", xc("x8"), yc("y4"))));
    CHECK_FALSE(world.observe().contains(atom2("cdoor", xc("x8"), yc("y4"))));
    CHECK_FALSE(world.step(act("open_door_s", "x8", "y4")));   // already open

    CHECK(world.step(act("move_s", "x8", "y4")));              // open doors are enterable
    CHECK(world.agent_position() == Tile{xc("x8"), yc("y4")});
    CHECK_FALSE(world.step(act("close_door_n", "x8", "y4")));  // own tile is not adjacent

    CHECK(world.step(act("move_n", "x8", "y5")));
    CHECK(world.step(act("close_door_s", "x8", "y4")));
    CHECK(world.observe().contains(atom2("cdoor", xc("x8"), yc("y4"))));
}

TEST_CASE("observe is the full state and side-effect free") {
    GridWorld world(dcss_domain(), scenario1());
    CHECK(world.observe() == scenario1().init);
    State a = world.observe();
    State b = world.observe();
    CHECK(a == b);
    world.step(act("move_w", "x2", "y1"));
    StateDelta d = state_diff(scenario1().init, world.observe());
    CHECK(d.adds.size() == 1);
    CHECK(d.dels.size() == 1);
    CHECK(d.adds.matching("agentat").size() == 1);
}

TEST_CASE("exploration progress counts unique tiles") {
    GridWorld world(dcss_domain(), scenario1());
    CHECK(world.exploration_progress() == 1);
    world.step(act("move_w", "x2", "y1"));
    CHECK(world.exploration_progress() == 2);
    world.step(act("move_e", "x1", "y1"));
    world.step(act("move_w", "x2", "y1"));
    CHECK(world.exploration_progress() == 2);  // revisits do not count
}

TEST_CASE("identical action sequences yield identical worlds") {
    std::mt19937 rng_a(3), rng_b(3);
    const DomainModel& dom = scenario1_domain();
    const auto& xs = dom.constants_by_type.at("xcoord");
    const auto& ys = dom.constants_by_type.at("ycoord");
    GridWorld a(dcss_domain(), scenario1());
    GridWorld b(dcss_domain(), scenario1());
    for (int i = 0; i < 500; ++i) {
        GroundAction action{dom.action_schemas[rng_a() % 24].name,
                            {xs[rng_a() % xs.size()], ys[rng_a() % ys.size()]}};
        GroundAction same{dom.action_schemas[rng_b() % 24].name,
                          {xs[rng_b() % xs.size()], ys[rng_b() % ys.size()]}};
        REQUIRE(action == same);
        CHECK(a.step(action) == b.step(same));
        CHECK(a.observe() == b.observe());
    }
}

TEST_CASE("steps only ever touch the agent atom or one door atom") {
    std::mt19937 rng(17);
    const DomainModel& dom = scenario1_domain();
    const auto& xs = dom.constants_by_type.at("xcoord");
    const auto& ys = dom.constants_by_type.at("ycoord");
    GridWorld world(dcss_domain(), scenario1());
    for (int i = 0; i < 2000; ++i) {
        State before = world.observe();
        GroundAction action{dom.action_schemas[rng() % 24].name,
                            {xs[rng() % xs.size()], ys[rng() % ys.size()]}};
        bool changed = world.step(action);
        StateDelta d = state_diff(before, world.observe());
        CHECK(changed == !d.empty());
        CHECK(d.adds.size() == d.dels.size());
        CHECK(d.adds.size() <= 1);
        for (const GroundAtom& atom : d.adds.atoms()) {
            CHECK((atom.predicate == "agentat" || atom.predicate == "cdoor" ||
                   atom.predicate == "odoor"));
        }
        CHECK(world.observe().matching("wall").size() == 12);
        CHECK(world.observe().matching("north").size() == 4);
        CHECK(world.observe().matching("west").size() == 8);
        CHECK(world.exploration_progress() <= 33);
    }
}

TEST_CASE("render draws the legend symbols") {
    GridWorld world(dcss_domain(), scenario1());
    std::ostringstream out;
    world.render(out);
    std::string map = out.str();
    CHECK(map.find("A ") != std::string::npos);
    CHECK(map.find("W ") != std::string::npos);
    CHECK(map.find("CD") != std::string::npos);
    // 5 rows of 9 cells
    CHECK(std::count(map.begin(), map.end(), '\n') == 5);
}

TEST_CASE("malformed problems are rejected") {
    const DomainModel& dom = dcss_domain();
    ProblemInstance p = scenario1();
    p.init.insert(atom2("agentat", xc("x3"), yc("y3")));
    CHECK_THROWS_AS(GridWorld(dom, p), std::invalid_argument);

    ProblemInstance q = scenario1();
    q.init.insert(atom2("odoor", xc("x6"), yc("y1")));  // already a wall there
    CHECK_THROWS_AS(GridWorld(dom, q), std::invalid_argument);
}
