#include <gtest/gtest.h>

#include <random>

#include "latsurg/dense_state.hpp"
#include "latsurg/tableau.hpp"

using namespace latsurg;

namespace {

PauliString pauli(const std::string &s) {
    PauliString p;
    for (size_t q = 0; q < s.size(); ++q) {
        p.set(static_cast<int>(q), pauli_from_char(s[q]));
    }
    return p;
}

PauliString negate(PauliString p) {
    p.phase = static_cast<std::uint8_t>((p.phase + 2) & 3);
    return p;
}

template <class State>
void random_clifford(State &st, int n, std::mt19937_64 &rng, int depth) {
    for (int k = 0; k < depth; ++k) {
        int a = static_cast<int>(rng() % n);
        int b = static_cast<int>(rng() % n);
        switch (rng() % 7) {
            case 0: st.h(a); break;
            case 1: st.s(a); break;
            case 2: st.s_dag(a); break;
            case 3: st.x(a); break;
            case 4: st.z(a); break;
            case 5: if (a != b) st.cnot(a, b); break;
            case 6: if (a != b) st.cz(a, b); break;
        }
    }
}

}  // namespace

TEST(Tableau, BellState) {
    StabilizerTableau t(2);
    t.h(0);
    t.cnot(0, 1);
    EXPECT_TRUE(t.is_stabilized_by(pauli("XX")));
    EXPECT_TRUE(t.is_stabilized_by(pauli("ZZ")));
    EXPECT_TRUE(t.is_stabilized_by(negate(pauli("YY"))));
    EXPECT_FALSE(t.peek(pauli("ZI")).has_value());
    EXPECT_EQ(t.peek(pauli("ZZ")), std::optional<bool>(false));
    auto o = t.measure(pauli("ZI"), true);
    EXPECT_TRUE(o.random);
    EXPECT_TRUE(o.value);
    EXPECT_EQ(t.peek(pauli("IZ")), std::optional<bool>(true));
    auto again = t.measure(pauli("IZ"), false);
    EXPECT_FALSE(again.random);
    EXPECT_TRUE(again.value);
}

TEST(Tableau, PhaseGates) {
    StabilizerTableau t(1);
    t.h(0);
    t.s(0);
    EXPECT_TRUE(t.is_stabilized_by(pauli("Y")));
    t.s_dag(0);
    EXPECT_TRUE(t.is_stabilized_by(pauli("X")));
    t.z(0);
    EXPECT_TRUE(t.is_stabilized_by(negate(pauli("X"))));
}

TEST(Tableau, ResetAndSameState) {
    StabilizerTableau a(2), b(2);
    a.x(1);
    a.reset(1);
    EXPECT_TRUE(a.same_state(b));
    a.reset(0, true);
    EXPECT_TRUE(a.is_stabilized_by(pauli("XI")));
    EXPECT_FALSE(a.same_state(b));
}

TEST(Tableau, RandomCircuitsAgreeWithDenseSimulation) {
    std::mt19937_64 rng(11);
    const int n = 4;
    for (int trial = 0; trial < 60; ++trial) {
        auto seed = rng();
        std::mt19937_64 r1(seed), r2(seed);
        StabilizerTableau t(n);
        DenseState d(n);
        random_clifford(t, n, r1, 40);
        random_clifford(d, n, r2, 40);
        for (const auto &s : t.stabilizers()) {
            ASSERT_NEAR(d.probability(s, false), 1.0, 1e-10);
        }
        // Measuring a random Pauli product gives matching determinism.
        PauliString probe{rng() & 0xf, rng() & 0xf, 0};
        if (probe.is_identity()) {
            continue;
        }
        auto peek = t.peek(probe);
        double p0 = d.probability(probe, false);
        if (peek) {
            EXPECT_NEAR(p0, *peek ? 0.0 : 1.0, 1e-10);
        } else {
            EXPECT_NEAR(p0, 0.5, 1e-10);
        }
    }
}

TEST(Tableau, PostMeasurementStatesAgreeWithDense) {
    std::mt19937_64 rng(99);
    const int n = 3;
    for (int trial = 0; trial < 40; ++trial) {
        auto seed = rng();
        std::mt19937_64 r1(seed), r2(seed);
        StabilizerTableau t(n);
        DenseState d(n);
        random_clifford(t, n, r1, 25);
        random_clifford(d, n, r2, 25);
        PauliString m{rng() & 7, rng() & 7, 0};
        if (m.is_identity()) {
            continue;
        }
        bool forced = rng() & 1;
        auto o = t.measure(m, forced);
        ASSERT_GT(d.project(m, o.value), 1e-9);
        for (const auto &s : t.stabilizers()) {
            ASSERT_NEAR(d.probability(s, false), 1.0, 1e-10);
        }
    }
}

TEST(Tableau, RejectsTooManyQubits) {
    EXPECT_THROW(StabilizerTableau(65), std::invalid_argument);
    StabilizerTableau t(2);
    EXPECT_THROW(t.h(2), std::out_of_range);
}
