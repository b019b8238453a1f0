#include "llcx/environment.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace llcx {

const std::vector<Direction>& all_directions() {
    static const std::vector<Direction> dirs{Direction::n,  Direction::s,  Direction::e,
                                             Direction::w,  Direction::ne, Direction::nw,
                                             Direction::se, Direction::sw};
    return dirs;
}

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::n: return "n";
        case Direction::s: return "s";
        case Direction::e: return "e";
        case Direction::w: return "w";
        case Direction::ne: return "ne";
        case Direction::nw: return "nw";
        case Direction::se: return "se";
        case Direction::sw: return "sw";
    }
    return "?";
}

std::optional<SchemaMeaning> schema_meaning(std::string_view schema) {
    ActionKind kind;
    std::string_view suffix;
    if (schema.starts_with("move_")) {
        kind = ActionKind::move;
        suffix = schema.substr(5);
    } else if (schema.starts_with("open_door_")) {
        kind = ActionKind::open_door;
        suffix = schema.substr(10);
    } else if (schema.starts_with("close_door_")) {
        kind = ActionKind::close_door;
        suffix = schema.substr(11);
    } else {
        return std::nullopt;
    }
    for (Direction d : all_directions()) {
        if (suffix == to_string(d)) return SchemaMeaning{kind, d};
    }
    return std::nullopt;
}

namespace {

GroundAtom tile_atom(const char* predicate, const Tile& tile) {
    return GroundAtom{predicate, {tile.first, tile.second}};
}

}  // namespace

GridWorld::GridWorld(const DomainModel& dom, const ProblemInstance& problem)
    : domain_(bind_objects(dom, problem)), state_(problem.init) {
    for (const ActionSchema& schema : domain_.action_schemas) {
        if (!schema_meaning(schema.name)) {
            throw std::invalid_argument("grid world cannot interpret action '" + schema.name +
                                        "'");
        }
    }

    for (const GroundAtom& atom : state_.matching("north")) {
        north_of_.emplace(atom.args[1].name, atom.args[0]);
        south_of_.emplace(atom.args[0].name, atom.args[1]);
    }
    for (const GroundAtom& atom : state_.matching("west")) {
        west_of_.emplace(atom.args[1].name, atom.args[0]);
        east_of_.emplace(atom.args[0].name, atom.args[1]);
    }

    auto agents = state_.matching("agentat");
    if (agents.size() != 1) {
        throw std::invalid_argument("problem must place exactly one agent, found " +
                                    std::to_string(agents.size()));
    }
    agent_ = {agents[0].args[0], agents[0].args[1]};
    visited_.insert({agent_.first.name, agent_.second.name});

    const std::vector<Constant>* xs = constants_of(domain_.constants_by_type, "xcoord");
    const std::vector<Constant>* ys = constants_of(domain_.constants_by_type, "ycoord");
    if (xs != nullptr && ys != nullptr) {
        for (const Constant& x : *xs) {
            for (const Constant& y : *ys) {
                Tile tile{x, y};
                int occupied = (tile_has("wall", tile) ? 1 : 0) +
                               (tile_has("cdoor", tile) ? 1 : 0) +
                               (tile_has("odoor", tile) ? 1 : 0);
                if (occupied > 1) {
                    throw std::invalid_argument("tile (" + x.name + ", " + y.name +
                                                ") holds more than one of wall/cdoor/odoor");
                }
            }
        }
    }
    if (tile_has("wall", agent_) || tile_has("cdoor", agent_)) {
        throw std::invalid_argument("agent starts inside a wall or closed door");
    }
}

bool GridWorld::tile_has(const char* predicate, const Tile& tile) const {
    return state_.contains(tile_atom(predicate, tile));
}

std::optional<Tile> GridWorld::neighbor(const Tile& tile, Direction d) const {
    auto chase = [](const std::map<std::string, Constant>& link,
                    const Constant& from) -> std::optional<Constant> {
        auto it = link.find(from.name);
        if (it == link.end()) return std::nullopt;
        return it->second;
    };
    std::optional<Constant> x = tile.first;
    std::optional<Constant> y = tile.second;
    switch (d) {
        case Direction::n: y = chase(north_of_, tile.second); break;
        case Direction::s: y = chase(south_of_, tile.second); break;
        case Direction::e: x = chase(east_of_, tile.first); break;
        case Direction::w: x = chase(west_of_, tile.first); break;
        case Direction::ne: x = chase(east_of_, tile.first); y = chase(north_of_, tile.second); break;
        case Direction::nw: x = chase(west_of_, tile.first); y = chase(north_of_, tile.second); break;
        case Direction::se: x = chase(east_of_, tile.first); y = chase(south_of_, tile.second); break;
        case Direction::sw: x = chase(west_of_, tile.first); y = chase(south_of_, tile.second); break;
    }
    if (!x || !y) return std::nullopt;
    return Tile{*x, *y};
}

bool GridWorld::step(const GroundAction& action) {
    const ActionSchema* schema = domain_.schema(action.schema);
    if (schema == nullptr) throw std::invalid_argument("unknown action '" + action.schema + "'");
    if (action.args.size() != schema->parameter_types.size()) {
        throw std::invalid_argument("bad argument count for '" + action.schema + "'");
    }
    for (std::size_t i = 0; i < action.args.size(); ++i) {
        if (action.args[i].type != schema->parameter_types[i]) {
            throw std::invalid_argument("ill-typed argument for '" + action.schema + "'");
        }
    }
    SchemaMeaning meaning = *schema_meaning(action.schema);
    Tile dest{action.args[0], action.args[1]};

    std::optional<Tile> adjacent = neighbor(agent_, meaning.direction);
    if (!adjacent || *adjacent != dest) return false;  // invalid arguments: no-op

    switch (meaning.kind) {
        case ActionKind::move:
            if (tile_has("wall", dest) || tile_has("cdoor", dest)) return false;
            state_.erase(tile_atom("agentat", agent_));
            state_.insert(tile_atom("agentat", dest));
            agent_ = dest;
            visited_.insert({dest.first.name, dest.second.name});
            return true;
        case ActionKind::open_door:
            if (!tile_has("cdoor", dest)) return false;
            state_.erase(tile_atom("cdoor", dest));
            state_.insert(tile_atom("odoor", dest));
            return true;
        case ActionKind::close_door:
            if (!tile_has("odoor", dest)) return false;
            state_.erase(tile_atom("odoor", dest));
            state_.insert(tile_atom("cdoor", dest));
            return true;
    }
    return false;
}

void GridWorld::render(std::ostream& out) const {
    auto chain_order = [](const std::vector<Constant>& pool,
                          const std::map<std::string, Constant>& toward_start,
                          const std::map<std::string, Constant>& toward_end) {
        std::vector<Constant> order;
        for (const Constant& c : pool) {
            if (!toward_start.count(c.name)) order.push_back(c);  // chain roots
        }
        if (order.size() == 1) {
            for (auto it = toward_end.find(order.back().name); it != toward_end.end();
                 it = toward_end.find(order.back().name)) {
                order.push_back(it->second);
            }
        }
        if (order.size() != pool.size()) order = pool;  // fall back to declaration order
        return order;
    };

    const Universe& u = domain_.constants_by_type;
    std::vector<Constant> xs = constants_of(u, "xcoord") ? *constants_of(u, "xcoord")
                                                         : std::vector<Constant>{};
    std::vector<Constant> ys = constants_of(u, "ycoord") ? *constants_of(u, "ycoord")
                                                         : std::vector<Constant>{};
    // Columns west to east, rows north to south.
    std::vector<Constant> cols = chain_order(xs, west_of_, east_of_);
    std::vector<Constant> rows = chain_order(ys, north_of_, south_of_);

    for (const Constant& y : rows) {
        for (const Constant& x : cols) {
            Tile tile{x, y};
            const char* cell = ". ";
            if (tile_has("wall", tile)) cell = "W ";
            if (tile_has("cdoor", tile)) cell = "CD";
            if (tile_has("odoor", tile)) cell = "OD";
            if (tile == agent_) cell = "A ";
            out << cell << ' ';
        }
        out << '\n';
    }
}

}  // namespace llcx
