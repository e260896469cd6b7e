#include <gtest/gtest.h>

#include <algorithm>

#include "latsurg/gadgets.hpp"
#include "latsurg/verifier.hpp"

using namespace latsurg;

TEST(Verifier, TargetNamesRoundTrip) {
    for (auto g : {TargetGate::IDENTITY, TargetGate::CNOT, TargetGate::CZ, TargetGate::SWAP, TargetGate::H,
                   TargetGate::S, TargetGate::S_DAG, TargetGate::T, TargetGate::T_DAG, TargetGate::Z}) {
        EXPECT_EQ(target_gate_from_name(target_gate_name(g)), g);
    }
    EXPECT_THROW(target_gate_from_name("toffoli"), std::invalid_argument);
}

TEST(Verifier, StandardGadgetsPassAtSeveralDistances) {
    for (int d : {3, 15, 21}) {
        for (const auto &g : verify_standard_gadgets(d)) {
            EXPECT_TRUE(g.pass) << g.name << " d=" << d << ": " << g.detail;
            EXPECT_EQ(g.conflicts, 0u) << g.name;
            EXPECT_LT(g.max_deviation, 1e-10) << g.name;
            EXPECT_GT(g.branches, 1u) << g.name;
        }
    }
}

TEST(Verifier, CnotBranchesCoverAllOutcomes) {
    auto b = build_gadget("cnot", 15);
    auto r = verify_clifford_gadget(b.gadget_trace(), TargetGate::CNOT);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
    auto dense = verify_gadget_unitary(b.gadget_trace(), TargetGate::CNOT);
    EXPECT_TRUE(dense.pass) << dense.detail;
    EXPECT_NEAR(dense.total_probability, 1.0, 1e-12);
}

TEST(Verifier, WrongTargetsFail) {
    auto cnot = build_gadget("cnot", 15);
    EXPECT_FALSE(verify_clifford_gadget(cnot.gadget_trace(), TargetGate::CZ).pass);
    EXPECT_FALSE(verify_clifford_gadget(cnot.gadget_trace(), TargetGate::IDENTITY).pass);
    auto cz = build_gadget("cz", 15);
    EXPECT_FALSE(verify_clifford_gadget(cz.gadget_trace(), TargetGate::CNOT).pass);
    auto h = build_gadget("hadamard", 15);
    EXPECT_FALSE(verify_clifford_gadget(h.gadget_trace(), TargetGate::S).pass);
}

TEST(Verifier, TGadgetAgainstWrongRotationDeviates) {
    auto t = build_gadget("t", 15);
    auto r = verify_gadget_unitary(t.gadget_trace(), TargetGate::T_DAG);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.max_deviation, 0.1);
    EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
}

TEST(Verifier, CorruptedMagicStateGivesZCorruptedOutput) {
    for (const std::string name : {"t", "t_dag"}) {
        auto b = build_gadget(name, 15);
        TargetGate g = name == "t" ? TargetGate::T : TargetGate::T_DAG;
        DenseOptions bad{true};
        auto plain = verify_gadget_unitary(b.gadget_trace(), g, bad);
        EXPECT_FALSE(plain.pass) << name;
        auto corrupted = verify_gadget_unitary(b.gadget_trace(), {g, TargetGate::Z}, bad);
        EXPECT_TRUE(corrupted.pass) << name << ": " << corrupted.detail;
        EXPECT_LT(corrupted.max_deviation, 1e-10);
    }
}

TEST(Verifier, TGadgetIsNotClifford) {
    auto b = build_gadget("t", 15);
    EXPECT_THROW(replay_clifford(b.gadget_trace(), StabilizerTableau(4), {}), InvalidTrace);
}

TEST(Verifier, SwapTwiceIsIdentity) {
    ScheduleBuilder b({2, 2});
    auto a = b.add_patch({0, 0}, 9);
    auto c = b.add_patch({1, 0}, 9);
    b.swap(a, c);
    EXPECT_TRUE(verify_swap(b.gadget_trace()).pass);
    b.swap(a, c);
    EXPECT_TRUE(verify_clifford_gadget(b.gadget_trace(), TargetGate::IDENTITY).pass);
}

TEST(Verifier, MoveActsAsIdentity) {
    ScheduleBuilder b({3, 1});
    auto a = b.add_patch({0, 0}, 15);
    b.move(a, {2, 0});
    auto r = verify_clifford_gadget(b.gadget_trace(), TargetGate::IDENTITY);
    EXPECT_TRUE(r.pass) << r.detail;
    EXPECT_TRUE(verify_gadget_unitary(b.gadget_trace(), TargetGate::IDENTITY).pass);
}

TEST(Verifier, FrameSufficiencyEveryBranchSameState) {
    auto b = build_gadget("cnot", 5);
    auto trace = b.gadget_trace();
    std::vector<BitId> bits;
    for (const auto &e : trace.events) {
        if (auto m = std::get_if<trace_event::Measure>(&e)) {
            bits.push_back(m->bit);
        } else if (auto y = std::get_if<trace_event::Byproduct>(&e)) {
            bits.push_back(y->bit);
        }
    }
    ASSERT_FALSE(bits.empty());
    ASSERT_LE(bits.size(), 12u);
    const int n = static_cast<int>(trace.slots().size());
    StabilizerTableau input(n);
    input.h(0);
    std::optional<StabilizerTableau> reference;
    for (std::uint32_t mask = 0; mask < (1u << bits.size()); ++mask) {
        std::map<BitId, bool> outcomes;
        for (size_t k = 0; k < bits.size(); ++k) {
            outcomes[bits[k]] = mask >> k & 1;
        }
        auto r = replay_clifford(trace, input, outcomes);
        if (!r.consistent) {
            continue;
        }
        auto order = trace_qubit_order(trace);
        for (int q = 0; q < n; ++q) {
            if (std::find(trace.outputs.begin(), trace.outputs.end(), order[q]) == trace.outputs.end()) {
                r.state.reset(q);
            }
        }
        if (!reference) {
            reference = r.state;
        } else {
            EXPECT_TRUE(reference->same_state(r.state)) << mask;
        }
    }
    ASSERT_TRUE(reference.has_value());
}

TEST(Verifier, NonCausalTraceRejected) {
    GadgetTrace t;
    t.inputs = {0};
    t.outputs = {0};
    t.events.push_back(trace_event::PauliCorrection{{0, Pauli::X}, Parity(3)});
    EXPECT_THROW(verify_clifford_gadget(t, TargetGate::IDENTITY), InvalidTrace);
}

TEST(Verifier, DenseLimitIsEnforced) {
    GadgetTrace t;
    for (int slot = 0; slot < 5; ++slot) {
        t.inputs.push_back(slot);
        t.outputs.push_back(slot);
        t.events.push_back(trace_event::Measure{{{slot, Pauli::Z}, {(slot + 1) % 5, Pauli::Z}}, static_cast<BitId>(slot)});
    }
    EXPECT_THROW(verify_gadget_unitary(t, TargetGate::IDENTITY), std::invalid_argument);
}
