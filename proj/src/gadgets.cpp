#include "latsurg/gadgets.hpp"

#include <stdexcept>

namespace latsurg {

std::vector<std::string> gadget_names() {
    return {"cnot", "cz", "swap", "t", "t_dag", "hadamard", "hadamard_noreturn", "xxz"};
}

ScheduleBuilder build_gadget(const std::string &name, int d) {
    CodeDistance{d};
    if (name == "cnot" || name == "cz") {
        ScheduleBuilder b({3, 3});
        auto c = b.add_patch({0, 0}, d);
        auto t = b.add_patch({2, 0}, d);
        if (name == "cnot") {
            b.cnot(c, {t});
        } else {
            b.cz(c, {t});
        }
        return b;
    }
    if (name == "swap") {
        ScheduleBuilder b({2, 2});
        auto a = b.add_patch({0, 0}, d);
        auto c = b.add_patch({1, 0}, d);
        b.swap(a, c);
        return b;
    }
    if (name == "t" || name == "t_dag") {
        ScheduleBuilder b({2, 1});
        auto t = b.add_patch({0, 0}, d);
        auto m = b.add_magic_patch({1, 0}, d);
        b.t_gadget(t, m, 0, name == "t_dag");
        return b;
    }
    if (name == "hadamard" || name == "hadamard_noreturn") {
        ScheduleBuilder b({2, 2});
        auto a = b.add_patch({0, 0}, d);
        b.hadamard(a, 0, name == "hadamard");
        return b;
    }
    if (name == "xxz") {
        ScheduleBuilder b({3, 2});
        auto a = b.add_patch({0, 0}, d);
        auto c = b.add_patch({1, 0}, d);
        auto e = b.add_patch({2, 0}, d);
        b.multibody_measure({{a, Pauli::X}, {c, Pauli::X}, {e, Pauli::Z}});
        return b;
    }
    throw std::invalid_argument("unknown gadget '" + name + "'");
}

std::vector<GadgetCheck> verify_standard_gadgets(int d) {
    struct Case {
        std::string name;
        TargetGate target;
        bool dense;
    };
    const std::vector<Case> cases = {
        {"cnot", TargetGate::CNOT, false},  {"cz", TargetGate::CZ, false},
        {"swap", TargetGate::SWAP, false},  {"hadamard", TargetGate::H, false},
        {"hadamard_noreturn", TargetGate::H, false}, {"t", TargetGate::T, true},
        {"t_dag", TargetGate::T_DAG, true},
    };
    std::vector<GadgetCheck> out;
    for (const auto &c : cases) {
        auto b = build_gadget(c.name, d);
        auto trace = b.gadget_trace();
        VerificationResult r;
        if (c.dense) {
            r = verify_gadget_unitary(trace, c.target);
        } else if (c.target == TargetGate::SWAP) {
            r = verify_swap(trace);
        } else {
            r = verify_clifford_gadget(trace, c.target);
        }
        GadgetCheck g;
        g.name = c.name;
        g.method = c.dense ? "dense" : "tableau";
        g.target = c.target;
        g.pass = r.pass;
        g.max_deviation = r.max_deviation;
        g.branches = r.branches;
        g.duration = b.schedule().total_rounds();
        g.conflicts = validate(b.schedule()).size();
        g.detail = r.detail;
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace latsurg
