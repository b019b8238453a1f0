#pragma once

#include <random>
#include <string>
#include <vector>

#include "llcx/pddl.hpp"
#include "llcx/relational.hpp"

#ifndef LLCX_DATA_DIR
#define LLCX_DATA_DIR "data"
#endif

namespace llcx::testing {

inline std::string data_path(const std::string& name) {
    return std::string{LLCX_DATA_DIR} + "/" + name;
}

inline const DomainModel& dcss_domain() {
    static const DomainModel dom = parse_domain_file(data_path("domain.pddl"));
    return dom;
}

inline const ProblemInstance& scenario1() {
    static const ProblemInstance problem =
        parse_problem_file(data_path("scenario1.pddl"), dcss_domain());
    return problem;
}

// The dcss domain with scenario 1's objects bound as the universe.
inline const DomainModel& scenario1_domain() {
    static const DomainModel dom = bind_objects(dcss_domain(), scenario1());
    return dom;
}

inline Constant xc(const std::string& name) { return {name, "xcoord"}; }
inline Constant yc(const std::string& name) { return {name, "ycoord"}; }
inline Variable xv(const std::string& name) { return {name, "xcoord"}; }
inline Variable yv(const std::string& name) { return {name, "ycoord"}; }

inline GroundAtom atom2(const std::string& pred, const Constant& a, const Constant& b) {
    return GroundAtom{pred, {a, b}};
}

inline Literal lit(const std::string& pred, std::vector<Term> args, bool negated = false) {
    return Literal{pred, std::move(args), negated};
}

}  // namespace llcx::testing
