#pragma once

#include <map>
#include <string>

#include "llcx/learner.hpp"
#include "llcx/pddl.hpp"

namespace llcx {

// Hand-authored ground-truth action models, used only for evaluation.
// Movement requires an adjacent destination holding neither wall nor
// closed door; open/close require an adjacent closed/open door. These are
// definitionally in sync with GridWorld::step.
std::map<std::string, LearnedActionModel> perfect_model(const DomainModel& dom);

}  // namespace llcx
