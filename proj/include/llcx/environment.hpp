#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "llcx/action.hpp"
#include "llcx/pddl.hpp"
#include "llcx/relational.hpp"

// Deterministic, fully observable grid-world simulator: 8-direction
// movement, open/close door, walls, and the unique-tiles exploration count.

namespace llcx {

enum class Direction { n, s, e, w, ne, nw, se, sw };

enum class ActionKind { move, open_door, close_door };

struct SchemaMeaning {
    ActionKind kind;
    Direction direction;
};

// Decodes schema names of the form move_<d>, open_door_<d>, close_door_<d>.
std::optional<SchemaMeaning> schema_meaning(std::string_view schema);

const std::vector<Direction>& all_directions();
std::string_view to_string(Direction d);

using Tile = std::pair<Constant, Constant>;  // (xcoord, ycoord)

class GridWorld {
public:
    GridWorld(const DomainModel& dom, const ProblemInstance& problem);

    const State& observe() const { return state_; }

    // Movement succeeds iff the destination is the adjacent tile in the
    // action's direction and holds neither wall nor closed door; door
    // actions toggle an adjacent cdoor/odoor. A failed action is a no-op,
    // not an error. Returns true when the state changed.
    bool step(const GroundAction& action);

    int exploration_progress() const { return static_cast<int>(visited_.size()); }
    const Tile& agent_position() const { return agent_; }

    std::optional<Tile> neighbor(const Tile& tile, Direction d) const;

    const DomainModel& domain() const { return domain_; }
    const Universe& universe() const { return domain_.constants_by_type; }

    // ASCII map (W wall, A agent, CD/OD doors), rows north to south.
    void render(std::ostream& out) const;

private:
    bool tile_has(const char* predicate, const Tile& tile) const;

    DomainModel domain_;
    State state_;
    Tile agent_;
    std::set<std::pair<std::string, std::string>> visited_;
    // Adjacency from the problem's north/west facts, keyed by constant name.
    std::map<std::string, Constant> north_of_, south_of_, west_of_, east_of_;
};

}  // namespace llcx
