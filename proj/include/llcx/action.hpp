#pragma once

#include <string>
#include <vector>

#include "llcx/relational.hpp"

namespace llcx {

// An action schema instantiated with destination constants.
struct GroundAction {
    std::string schema;
    std::vector<Constant> args;

    auto operator<=>(const GroundAction&) const = default;
};

std::string to_string(const GroundAction& action);

enum class Label { positive, negative };

inline const char* to_string(Label label) {
    return label == Label::positive ? "positive" : "negative";
}

// One executed action: prior state, the action, the observed post state.
// An action that left the state unchanged is taken to have failed.
struct Interaction {
    State prior;
    GroundAction action;
    State post;
    Label label = Label::negative;

    bool operator==(const Interaction&) const = default;
};

using InteractionHistory = std::vector<Interaction>;

inline Interaction label(State prior, GroundAction action, State post) {
    Label l = prior == post ? Label::negative : Label::positive;
    return Interaction{std::move(prior), std::move(action), std::move(post), l};
}

}  // namespace llcx
