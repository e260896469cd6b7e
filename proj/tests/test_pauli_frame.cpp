#include <gtest/gtest.h>

#include <random>

#include "latsurg/frame.hpp"
#include "latsurg/pauli.hpp"
#include "latsurg/trace.hpp"

using namespace latsurg;

TEST(Pauli, CharRoundTrip) {
    for (char c : {'I', 'X', 'Y', 'Z'}) {
        EXPECT_EQ(pauli_char(pauli_from_char(c)), c);
    }
}

TEST(Pauli, SingleQubitProducts) {
    auto X = PauliString::single(0, Pauli::X);
    auto Z = PauliString::single(0, Pauli::Z);
    auto Y = PauliString::single(0, Pauli::Y);
    // XZ = -iY, ZX = iY, XY = iZ.
    auto xz = X * Z;
    EXPECT_EQ(xz.at(0), Pauli::Y);
    EXPECT_EQ(xz.phase, 3);
    auto zx = Z * X;
    EXPECT_EQ(zx.phase, 1);
    auto xy = X * Y;
    EXPECT_EQ(xy.at(0), Pauli::Z);
    EXPECT_EQ(xy.phase, 1);
    EXPECT_TRUE((Y * Y).is_identity());
    EXPECT_EQ((Y * Y).phase, 0);
}

TEST(Pauli, CommutationMatchesSymplecticForm) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; ++k) {
        PauliString a{rng() & 0xff, rng() & 0xff, 0}, b{rng() & 0xff, rng() & 0xff, 0};
        int count = 0;
        for (int q = 0; q < 8; ++q) {
            count += anticommute(a.at(q), b.at(q)) ? 1 : 0;
        }
        EXPECT_EQ(a.commutes_with(b), count % 2 == 0);
        // ab = +-ba according to commutation.
        auto ab = a * b, ba = b * a;
        EXPECT_EQ(ab.xs, ba.xs);
        EXPECT_EQ((ab.phase - ba.phase) & 3, a.commutes_with(b) ? 0 : 2);
    }
}

TEST(Pauli, ConjugateBasis) {
    EXPECT_EQ(conjugate_basis(Pauli::X), Pauli::Z);
    EXPECT_EQ(conjugate_basis(Pauli::Z), Pauli::X);
    EXPECT_EQ(conjugate_basis(Pauli::Y), Pauli::Y);
}

TEST(Parity, XorCancelsAndSorts) {
    Parity a(std::vector<BitId>{5, 1, 3});
    EXPECT_EQ(a.bits(), (std::vector<BitId>{1, 3, 5}));
    a ^= Parity(3);
    EXPECT_EQ(a.bits(), (std::vector<BitId>{1, 5}));
    a ^= Parity(std::vector<BitId>{1, 5});
    EXPECT_TRUE(a.empty());
    Parity b(std::vector<BitId>{2, 7});
    EXPECT_TRUE(b.eval([](BitId id) { return id == 7; }));
    EXPECT_FALSE(b.eval([](BitId) { return true; }));
}

TEST(Frame, FlipsOnlyForAnticommutingMeasurements) {
    PauliFrame f;
    f.apply(0, Pauli::X, Parity(4));
    EXPECT_EQ(f.flips({{0, Pauli::Z}}), Parity(4));
    EXPECT_TRUE(f.flips({{0, Pauli::X}}).empty());
    EXPECT_TRUE(f.flips({{1, Pauli::Z}}).empty());
    f.apply(1, Pauli::Z, Parity(6));
    EXPECT_EQ(f.flips({{0, Pauli::Z}, {1, Pauli::X}}), Parity(std::vector<BitId>{4, 6}));
    // ZZ on slot 0 and Z on slot 1: only slot 0 anticommutes.
    EXPECT_EQ(f.flips({{0, Pauli::Y}, {1, Pauli::Z}}), Parity(4));
}

TEST(Frame, RepeatedApplicationCancels) {
    PauliFrame f;
    f.apply(2, Pauli::Y, Parity(1));
    f.apply(2, Pauli::X, Parity(1));
    auto e = f.entry(2);
    EXPECT_TRUE(e.x.empty());
    EXPECT_EQ(e.z, Parity(1));
    f.apply(2, Pauli::Z, Parity(1));
    EXPECT_TRUE(f.clean());
}

TEST(Frame, HadamardSwapsComponentsAndSMovesXIntoZ) {
    PauliFrame f;
    f.apply(0, Pauli::X, Parity(1));
    f.apply(0, Pauli::Z, Parity(2));
    f.conjugate(LogicalGate::H, 0);
    EXPECT_EQ(f.entry(0).x, Parity(2));
    EXPECT_EQ(f.entry(0).z, Parity(1));

    PauliFrame g;
    g.apply(0, Pauli::X, Parity(3));
    g.conjugate(LogicalGate::S, 0);
    EXPECT_EQ(g.entry(0).x, Parity(3));
    EXPECT_EQ(g.entry(0).z, Parity(3));
}

TEST(Frame, FlushEmitsCorrectionsAndClears) {
    PauliFrame f;
    f.apply(3, Pauli::X, Parity(1));
    f.apply(3, Pauli::Z, Parity(std::vector<BitId>{2, 5}));
    auto corr = f.flush(3);
    ASSERT_EQ(corr.size(), 2u);
    EXPECT_TRUE(f.clean());
    bool saw_x = false, saw_z = false;
    for (const auto &c : corr) {
        EXPECT_EQ(c.pauli.slot, 3);
        if (c.pauli.pauli == Pauli::X) {
            saw_x = true;
            EXPECT_EQ(c.condition, Parity(1));
        } else {
            saw_z = true;
            EXPECT_EQ(c.condition, Parity(std::vector<BitId>{2, 5}));
        }
    }
    EXPECT_TRUE(saw_x && saw_z);
    f.apply(3, Pauli::X, Parity(1));
    f.reset(3);
    EXPECT_TRUE(f.clean());
}

TEST(Trace, CausalityCheck) {
    GadgetTrace t;
    t.inputs = {0};
    t.outputs = {0};
    t.events.push_back(trace_event::Measure{{{0, Pauli::Z}}, 0});
    t.events.push_back(trace_event::PauliCorrection{{0, Pauli::X}, Parity(0)});
    EXPECT_NO_THROW(t.check_causal());
    t.events.push_back(trace_event::PauliCorrection{{0, Pauli::X}, Parity(9)});
    EXPECT_THROW(t.check_causal(), std::invalid_argument);
}
