#include <gtest/gtest.h>

#include <cmath>

#include "latsurg/error_model.hpp"
#include "latsurg/estimator.hpp"

using namespace latsurg;

namespace {

AlgorithmProfile headline() { return AlgorithmProfile{1e8, 100, true}; }

}  // namespace

TEST(ChooseDistance, Examples) {
    EXPECT_EQ(choose_distance(1e-3, 1.0, 1e-5).value(), 7);
    EXPECT_EQ(choose_distance(1e-3, 1e6, 1e-5).value(), 19);
    EXPECT_EQ(choose_distance(1e-3, 1.0, 0.5).value(), 3);
    EXPECT_EQ(choose_distance(1e-3, 0.0, 1e-30).value(), 3);
}

TEST(ChooseDistance, ResultIsSmallestSatisfying) {
    for (double p : {1e-4, 7e-4, 3e-3}) {
        for (double exposure : {1.0, 1e3, 1e9, 1e13}) {
            for (double budget : {1e-2, 1e-6}) {
                auto d = choose_distance(p, exposure, budget).value();
                EXPECT_LE(logical_error_per_round(p, CodeDistance{d}) * exposure, budget * (1 + 1e-12));
                if (d > 3) {
                    EXPECT_GT(logical_error_per_round(p, CodeDistance{d - 2}) * exposure, budget);
                }
            }
        }
    }
}

TEST(ChooseDistance, MonotoneInExposureAndBudget) {
    // Unsatisfiable counts as a distance beyond the guardrail.
    auto pick = [](double p, double exposure, double budget) {
        try {
            return choose_distance(p, exposure, budget).value();
        } catch (const Unsatisfiable &) {
            return kMaxDistance + 2;
        }
    };
    bool hit_guardrail = false;
    for (double p : {2e-4, 1e-3, 5e-3}) {
        int prev = 3;
        for (double exposure = 1.0; exposure < 1e18; exposure *= 7.3) {
            int d = pick(p, exposure, 1e-3);
            EXPECT_GE(d, prev);
            prev = d;
        }
        prev = 3;
        for (double budget = 0.5; budget > 1e-25; budget /= 5.1) {
            int d = pick(p, 1e6, budget);
            EXPECT_GE(d, prev);
            prev = d;
        }
        hit_guardrail = hit_guardrail || prev > kMaxDistance;
    }
    EXPECT_TRUE(hit_guardrail);
}

TEST(ChooseDistance, GuardrailAndValidation) {
    EXPECT_THROW(choose_distance(9.9e-3, 1e12, 1e-3), Unsatisfiable);
    EXPECT_THROW(choose_distance(1e-3, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(choose_distance(1e-3, -1.0, 0.1), std::invalid_argument);
}

TEST(Estimate, HeadlineWithinTolerance) {
    auto e = estimate(headline(), PhysicalAssumptions{});
    EXPECT_NEAR(static_cast<double>(e.qubits_total), 3.7e5, 0.25 * 3.7e5);
    EXPECT_NEAR(e.runtime_hours(), 5.4, 0.25 * 5.4);
    EXPECT_EQ(e.d1, 15);
    EXPECT_EQ(e.d2, 23);
    EXPECT_EQ(e.d_data, 27);
}

TEST(Estimate, ComponentsSumAndLedgerFitsBudget) {
    EstimatorConfig cfg;
    for (double p : {1e-4, 5e-4, 1e-3, 2e-3}) {
        for (double t : {0.0, 1e4, 1e8, 1e10}) {
            auto e = estimate(AlgorithmProfile{t, 37, true}, PhysicalAssumptions::with_error_rate(p), cfg);
            EXPECT_EQ(e.qubits_total, e.qubits_data + e.qubits_factory + e.qubits_ancilla);
            EXPECT_GE(e.error_ledger.storage, 0.0);
            EXPECT_GE(e.error_ledger.distillation, 0.0);
            EXPECT_GE(e.error_ledger.injection, 0.0);
            EXPECT_LE(e.error_ledger.total(), cfg.budget * (1 + 1e-9));
            EXPECT_LE(e.error_ledger.storage, cfg.budget * cfg.storage_share * (1 + 1e-9));
            EXPECT_LE(e.error_ledger.distillation, cfg.budget * cfg.distillation_share * (1 + 1e-9));
        }
    }
}

TEST(Estimate, RuntimeFormula) {
    PhysicalAssumptions a = PhysicalAssumptions::with_error_rate(1e-3, 2e-6);
    auto e = estimate(headline(), a);
    EXPECT_NEAR(e.runtime_seconds, 1e8 * e.rounds_per_t * 2e-6, 1e-6);
    EXPECT_NEAR(e.t_rate, 1.0 / (e.rounds_per_t * 2e-6), 1e-6);
}

TEST(Estimate, ExpectedSCorrectionPerT) {
    auto e = estimate(headline(), PhysicalAssumptions{});
    EXPECT_DOUBLE_EQ(e.s_correction_rounds, 7.5);
    EXPECT_DOUBLE_EQ(e.rounds_per_t, e.factory_rounds_per_t + 7.5);
    auto small = estimate(AlgorithmProfile{1e3, 2, true}, PhysicalAssumptions::with_error_rate(1e-4));
    ASSERT_LT(small.d_data, 15);
    EXPECT_DOUBLE_EQ(small.s_correction_rounds, 0.5 * small.d_data);
    EXPECT_LE(logical_error_per_round(1e-4, CodeDistance{small.d_data}) * 2 * 1e3 * small.rounds_per_t,
              0.01 / 3 * (1 + 1e-12));
}

TEST(Estimate, QubitLayout) {
    auto e = estimate(headline(), PhysicalAssumptions{});
    std::uint64_t cell = 2ull * e.d_data * e.d_data;
    EXPECT_EQ(e.qubits_data, 100 * cell);
    EXPECT_EQ(e.qubits_ancilla, 50 * cell);
    EXPECT_EQ(e.qubits_data + e.qubits_ancilla, 3ull * 100 * e.d_data * e.d_data);
    EXPECT_EQ(e.qubits_factory, factory_qubits(FactoryModel{CodeDistance{15}, CodeDistance{e.d2}, {}}));
}

TEST(Estimate, ZeroTCount) {
    auto e = estimate(AlgorithmProfile{0.0, 10, true}, PhysicalAssumptions{});
    EXPECT_EQ(e.runtime_seconds, 0.0);
    EXPECT_GT(e.qubits_factory, 0u);
    EXPECT_EQ(e.d_data, 3);
    EXPECT_EQ(e.error_ledger.total(), 0.0);
}

TEST(Estimate, DoublingTCountDoublesRuntime) {
    PhysicalAssumptions a;
    for (double t : {1e6, 3e7, 1e8, 5e9}) {
        auto e1 = estimate(AlgorithmProfile{t, 100, true}, a);
        auto e2 = estimate(AlgorithmProfile{2 * t, 100, true}, a);
        EXPECT_NEAR(e2.runtime_seconds / e1.runtime_seconds, 2.0, 1e-3);
        if (e1.d_data == e2.d_data && e1.d2 == e2.d2) {
            EXPECT_EQ(e1.qubits_total, e2.qubits_total);
            EXPECT_DOUBLE_EQ(e2.runtime_seconds, 2 * e1.runtime_seconds);
        } else {
            EXPECT_GT(e2.qubits_total, e1.qubits_total);
        }
    }
}

TEST(Estimate, Deterministic) {
    auto a = estimate(headline(), PhysicalAssumptions{});
    auto b = estimate(headline(), PhysicalAssumptions{});
    EXPECT_EQ(a.qubits_total, b.qubits_total);
    EXPECT_EQ(a.runtime_seconds, b.runtime_seconds);
    EXPECT_EQ(a.error_ledger.total(), b.error_ledger.total());
}

TEST(Estimate, LargePatchesFlagClippedS) {
    auto e = estimate(headline(), PhysicalAssumptions{});
    ASSERT_GT(e.d_data, 15);
    EXPECT_NE(std::find(e.flags.begin(), e.flags.end(), "gate_s_clipped_to_d15"), e.flags.end());
    auto small = estimate(AlgorithmProfile{1e3, 2, true}, PhysicalAssumptions::with_error_rate(1e-4));
    EXPECT_TRUE(small.flags.empty());
}

TEST(Estimate, OneLevelCannotReachHeadlineBudget) {
    EstimatorConfig cfg;
    cfg.levels = 1;
    EXPECT_THROW(estimate(headline(), PhysicalAssumptions{}, cfg), Unsatisfiable);
    auto small = estimate(AlgorithmProfile{1e4, 10, true}, PhysicalAssumptions::with_error_rate(1e-4), cfg);
    EXPECT_EQ(small.d2, 0);
    EXPECT_NEAR(small.factory_rounds_per_t, 97.5 / (1 - factory_rates(FactoryModel{}, PhysicalAssumptions::with_error_rate(1e-4), 1).l1_reject), 1e-9);
}

TEST(Estimate, InvalidInputs) {
    PhysicalAssumptions a;
    EXPECT_THROW(estimate(AlgorithmProfile{-1.0, 1, true}, a), std::invalid_argument);
    EXPECT_THROW(estimate(AlgorithmProfile{1.0, 0, true}, a), std::invalid_argument);
    EXPECT_THROW(estimate(AlgorithmProfile{1.0, 1, false}, a), std::invalid_argument);
    EstimatorConfig c;
    c.budget = 0.0;
    EXPECT_THROW(estimate(headline(), a, c), std::invalid_argument);
    c = {};
    c.storage_share = 0.7;
    c.distillation_share = 0.4;
    EXPECT_THROW(estimate(headline(), a, c), std::invalid_argument);
}

TEST(Estimate, HugeTCountIsUnsatisfiable) {
    EXPECT_THROW(estimate(AlgorithmProfile{1e30, 100, true}, PhysicalAssumptions{}), Unsatisfiable);
}

TEST(Baseline, EchoedConstants) {
    EXPECT_EQ(BraidingBaseline::qubits, 1.8e6);
    EXPECT_EQ(BraidingBaseline::hours, 4.5);
}

TEST(Sensitivity, GridShapeAndMonotoneDistances) {
    auto rep = sensitivity_report(headline(), PhysicalAssumptions{});
    auto rates = sensitivity_error_rates();
    EXPECT_EQ(rates.front(), 1e-4);
    EXPECT_EQ(rates.back(), 3e-3);
    EXPECT_EQ(rep.grid.size(), rates.size() * 5);
    for (const auto &lo : rep.grid) {
        if (lo.p != 1e-4) {
            continue;
        }
        for (const auto &hi : rep.grid) {
            if (hi.p == 1e-3 && hi.t_count == lo.t_count) {
                ASSERT_TRUE(lo.satisfiable && hi.satisfiable);
                EXPECT_LT(lo.result.d_data, hi.result.d_data);
                EXPECT_LT(lo.result.d2, hi.result.d2);
                EXPECT_LT(lo.result.qubits_total, hi.result.qubits_total);
            }
        }
    }
}

TEST(Sensitivity, KnobsMoveTheResult) {
    auto rep = sensitivity_report(headline(), PhysicalAssumptions{});
    EXPECT_EQ(rep.base.qubits_total, estimate(headline(), PhysicalAssumptions{}).qubits_total);
    bool qubits_moved = false, hours_moved = false, unsat = false;
    for (const auto &k : rep.knobs) {
        if (!k.satisfiable) {
            unsat = true;
            continue;
        }
        qubits_moved = qubits_moved || std::abs(k.qubits_delta_pct) > 1.0;
        hours_moved = hours_moved || std::abs(k.hours_delta_pct) > 1.0;
        double expect_q = 100.0 * (static_cast<double>(k.qubits_total) - rep.base.qubits_total) / rep.base.qubits_total;
        EXPECT_NEAR(k.qubits_delta_pct, expect_q, 1e-9);
    }
    EXPECT_TRUE(qubits_moved);
    EXPECT_TRUE(hours_moved);
    EXPECT_TRUE(unsat);
}

TEST(Sensitivity, NearThresholdIsUnsatisfiable) {
    AlgorithmProfile prof = headline();
    EXPECT_THROW(estimate(prof, PhysicalAssumptions::with_error_rate(9.5e-3)), Unsatisfiable);
}
