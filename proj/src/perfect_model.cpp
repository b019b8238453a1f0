#include "llcx/perfect_model.hpp"

#include <stdexcept>

#include "llcx/environment.hpp"

namespace llcx {

namespace {

// Adjacency literals tying the agent's tile to the destination (X, Y) for
// one direction, reusing head variables where the coordinate is shared.
struct AdjacencyShape {
    Literal agent;
    std::vector<Literal> links;
    Literal moved_from;  // the agentat atom a successful move deletes
};

AdjacencyShape adjacency(Direction d) {
    Variable x{"X", "xcoord"}, y{"Y", "ycoord"};
    Variable x2{"X2", "xcoord"}, y2{"Y2", "ycoord"};
    auto agent = [](Term ax, Term ay) { return Literal{"agentat", {ax, ay}, false}; };
    auto north = [](Term a, Term b) { return Literal{"north", {a, b}, false}; };
    auto west = [](Term a, Term b) { return Literal{"west", {a, b}, false}; };
    switch (d) {
        case Direction::n: return {agent(x, y2), {north(y, y2)}, agent(x, y2)};
        case Direction::s: return {agent(x, y2), {north(y2, y)}, agent(x, y2)};
        case Direction::e: return {agent(x2, y), {west(x2, x)}, agent(x2, y)};
        case Direction::w: return {agent(x2, y), {west(x, x2)}, agent(x2, y)};
        case Direction::ne: return {agent(x2, y2), {west(x2, x), north(y, y2)}, agent(x2, y2)};
        case Direction::nw: return {agent(x2, y2), {west(x, x2), north(y, y2)}, agent(x2, y2)};
        case Direction::se: return {agent(x2, y2), {west(x2, x), north(y2, y)}, agent(x2, y2)};
        case Direction::sw: return {agent(x2, y2), {west(x, x2), north(y2, y)}, agent(x2, y2)};
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::map<std::string, LearnedActionModel> perfect_model(const DomainModel& dom) {
    Variable x{"X", "xcoord"}, y{"Y", "ycoord"};
    std::map<std::string, LearnedActionModel> models;
    for (const ActionSchema& schema : dom.action_schemas) {
        auto meaning = schema_meaning(schema.name);
        if (!meaning) {
            throw std::invalid_argument("perfect model covers only the grid actions, got " +
                                        schema.name);
        }
        AdjacencyShape shape = adjacency(meaning->direction);

        LearnedActionModel model;
        model.schema = schema.name;
        model.parameters = head_variables(schema);
        Clause pre;
        pre.literals.push_back(shape.agent);
        for (const Literal& link : shape.links) pre.literals.push_back(link);
        switch (meaning->kind) {
            case ActionKind::move:
                pre.literals.push_back(Literal{"wall", {x, y}, true});
                pre.literals.push_back(Literal{"cdoor", {x, y}, true});
                model.add_effects = {Literal{"agentat", {x, y}, false}};
                model.del_effects = {shape.moved_from};
                break;
            case ActionKind::open_door:
                pre.literals.push_back(Literal{"cdoor", {x, y}, false});
                model.add_effects = {Literal{"odoor", {x, y}, false}};
                model.del_effects = {Literal{"cdoor", {x, y}, false}};
                break;
            case ActionKind::close_door:
                pre.literals.push_back(Literal{"odoor", {x, y}, false});
                model.add_effects = {Literal{"cdoor", {x, y}, false}};
                model.del_effects = {Literal{"odoor", {x, y}, false}};
                break;
        }
        model.precondition = std::move(pre);
        model.status = LearnedActionModel::Status::learned;
        models.emplace(schema.name, std::move(model));
    }
    return models;
}

}  // namespace llcx
