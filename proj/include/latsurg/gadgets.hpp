#pragma once

#include <string>
#include <vector>

#include "latsurg/builder.hpp"
#include "latsurg/verifier.hpp"

namespace latsurg {

/// Names accepted by build_gadget: cnot, cz, swap, t, t_dag, hadamard,
/// hadamard_noreturn, xxz.
std::vector<std::string> gadget_names();

/// A small grid with the named gadget laid out on distance-d patches.
/// Throws std::invalid_argument for unknown names.
ScheduleBuilder build_gadget(const std::string &name, int d);

struct GadgetCheck {
    std::string name;
    std::string method;
    TargetGate target = TargetGate::IDENTITY;
    bool pass = false;
    double max_deviation = 0.0;
    std::size_t branches = 0;
    Round duration = 0;
    std::size_t conflicts = 0;
    std::string detail;
};

/// Builds each gadget at distance d and verifies it: Clifford gadgets by
/// tableau replay over every outcome branch, T and T^dag by dense simulation.
std::vector<GadgetCheck> verify_standard_gadgets(int d);

}  // namespace latsurg
