#pragma once

// Scenario-1 fixtures shared by the learner tests and the acceptance
// suite: the reachable configuration sweep and exhaustive interaction
// sets generated through the simulator.

#include <string>
#include <vector>

#include "llcx/environment.hpp"
#include "llcx/pddl.hpp"
#include "test_support.hpp"

namespace llcx::testing {

// Every reachable scenario-1 configuration: the agent on any open tile
// with the door closed (the door tile itself excluded), plus any open
// tile with the door open. 32 + 33 = 65 configurations.
inline const std::vector<ProblemInstance>& reachable_configurations() {
    static const std::vector<ProblemInstance> configs = [] {
        const ProblemInstance& base = scenario1();
        const Constant door_x = xc("x8");
        const Constant door_y = yc("y4");
        std::vector<ProblemInstance> out;
        for (bool door_open : {false, true}) {
            for (const Constant& x : base.objects.at("xcoord")) {
                for (const Constant& y : base.objects.at("ycoord")) {
                    if (base.init.contains(atom2("wall", x, y))) continue;
                    bool is_door_tile = x == door_x && y == door_y;
                    if (is_door_tile && !door_open) continue;
                    ProblemInstance config = base;
                    config.init.erase(atom2("agentat", xc("x1"), yc("y1")));
                    config.init.insert(atom2("agentat", x, y));
                    if (door_open) {
                        config.init.erase(atom2("cdoor", door_x, door_y));
                        config.init.insert(atom2("odoor", door_x, door_y));
                    }
                    out.push_back(std::move(config));
                }
            }
        }
        return out;
    }();
    return configs;
}

// Every grounding of the schema attempted once from every reachable
// configuration.
inline InteractionHistory exhaustive_interactions(const std::string& schema) {
    const DomainModel& dom = scenario1_domain();
    InteractionHistory history;
    for (const ProblemInstance& config : reachable_configurations()) {
        GridWorld base(dcss_domain(), config);
        for (const Constant& x : dom.constants_by_type.at("xcoord")) {
            for (const Constant& y : dom.constants_by_type.at("ycoord")) {
                GridWorld world = base;
                GroundAction action{schema, {x, y}};
                world.step(action);
                history.push_back(label(base.observe(), action, world.observe()));
            }
        }
    }
    return history;
}

}  // namespace llcx::testing
