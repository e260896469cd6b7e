#include <gtest/gtest.h>

#include "latsurg/core_model.hpp"

using namespace latsurg;

TEST(CodeDistance, AcceptsOddValuesFromThree) {
    for (int d = 3; d <= 51; d += 2) {
        EXPECT_EQ(CodeDistance{d}.value(), d);
    }
}

TEST(CodeDistance, RejectsEvenAndSmall) {
    for (int d : {-3, 0, 1, 2, 4, 16}) {
        EXPECT_THROW(CodeDistance{d}, std::invalid_argument) << d;
    }
}

TEST(CodeDistance, HalfDistanceRoundsDown) {
    EXPECT_EQ(CodeDistance{15}.half(), 7);
    EXPECT_EQ(CodeDistance{3}.half(), 1);
}

TEST(Footprint, RotatedPatchCountsAndRoutingConstant) {
    for (int d = 3; d <= 31; d += 2) {
        auto f = patch_footprint(CodeDistance{d});
        auto n = static_cast<std::uint64_t>(d);
        EXPECT_EQ(f.data_qubits, n * n);
        EXPECT_EQ(f.measure_qubits, n * n - 1);
        EXPECT_EQ(f.total_with_routing, 3 * n * n);
        EXPECT_EQ(cell_qubits(d), 2 * n * n);
        EXPECT_GE(cell_qubits(d), f.data_qubits + f.measure_qubits);
    }
}

TEST(Footprint, DoubleDefectIsTwelveAndAHalfDSquaredRoundedUp) {
    EXPECT_EQ(defect_footprint(4), 200u);
    EXPECT_EQ(defect_footprint(15), 2813u);
    EXPECT_THROW(defect_footprint(2), std::invalid_argument);
    for (int d = 3; d < 40; ++d) {
        EXPECT_GE(static_cast<double>(defect_footprint(d)), 12.5 * d * d);
        EXPECT_LT(static_cast<double>(defect_footprint(d)), 12.5 * d * d + 1.0);
    }
}

TEST(PhysicalAssumptions, ValidatesRanges) {
    PhysicalAssumptions a;
    EXPECT_NO_THROW(a.validate());
    for (double p : {0.0, 0.01, 0.5, -1e-3}) {
        auto b = a;
        b.p = p;
        EXPECT_THROW(b.validate(), std::invalid_argument) << p;
    }
    auto c = a;
    c.q_inject = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = a;
    c.round_seconds = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(PhysicalAssumptions, WithErrorRateTiesInjectionError) {
    auto a = PhysicalAssumptions::with_error_rate(2e-4, 2e-6);
    EXPECT_DOUBLE_EQ(a.p, 2e-4);
    EXPECT_DOUBLE_EQ(a.p_inject, 2e-4);
    EXPECT_DOUBLE_EQ(a.round_seconds, 2e-6);
}
