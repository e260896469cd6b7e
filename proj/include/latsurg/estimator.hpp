#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "latsurg/core_model.hpp"
#include "latsurg/factory.hpp"

namespace latsurg {

/// No odd distance up to the guardrail meets the requested error budget.
class Unsatisfiable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxDistance = 101;

struct AlgorithmProfile {
    double t_count = 0.0;
    std::int64_t logical_qubits = 1;
    /// Cliffords hide behind T-state preparation. Only true is supported.
    bool clifford_parallelizable = true;

    void validate() const;
};

struct EstimatorConfig {
    /// Total failure probability allowed for the whole algorithm.
    double budget = 0.01;
    double storage_share = 1.0 / 3.0;
    double distillation_share = 1.0 / 3.0;
    int levels = 2;
    FactoryConfig factory;

    /// Whatever the other two shares leave over.
    double injection_share() const { return 1.0 - storage_share - distillation_share; }
    void validate() const;
};

struct ErrorLedger {
    double storage = 0.0;
    double distillation = 0.0;
    double injection = 0.0;
    double total() const { return storage + distillation + injection; }
};

struct ResourceEstimate {
    int d_data = 0;
    int d1 = 0;
    int d2 = 0;
    std::uint64_t qubits_data = 0;
    std::uint64_t qubits_factory = 0;
    std::uint64_t qubits_ancilla = 0;
    std::uint64_t qubits_total = 0;
    /// Factory period plus the expected conditional S correction.
    double rounds_per_t = 0.0;
    double factory_rounds_per_t = 0.0;
    /// Half of min(d_data, 15): the S fires on half of the outcomes.
    double s_correction_rounds = 0.0;
    double runtime_seconds = 0.0;
    /// T states per second.
    double t_rate = 0.0;
    double t_latency_rounds = 0.0;
    ErrorLedger error_ledger;
    /// Notes such as "clipped_to_d15" for S gates on patches above d = 15.
    std::vector<std::string> flags;

    double runtime_hours() const { return runtime_seconds / 3600.0; }
};

/// Reference figures for the same algorithm under braiding, quoted as
/// published for comparison. Never recomputed.
struct BraidingBaseline {
    static constexpr double qubits = 1.8e6;
    static constexpr double hours = 4.5;
};

/// Smallest odd d >= 3 with p_L(p, d) * exposure <= budget.
CodeDistance choose_distance(double p, double exposure, double budget);

ResourceEstimate estimate(const AlgorithmProfile &profile, const PhysicalAssumptions &assumptions,
                          const EstimatorConfig &config = {});

struct SensitivityRow {
    double p = 0.0;
    double t_count = 0.0;
    bool satisfiable = false;
    ResourceEstimate result;
};

struct KnobRow {
    std::string knob;
    std::string setting;
    bool satisfiable = false;
    std::uint64_t qubits_total = 0;
    double runtime_hours = 0.0;
    double qubits_delta_pct = 0.0;
    double hours_delta_pct = 0.0;
};

struct SensitivityReport {
    ResourceEstimate base;
    std::vector<SensitivityRow> grid;
    std::vector<KnobRow> knobs;
};

/// Error rates swept by the sensitivity report.
std::vector<double> sensitivity_error_rates();

/// Re-runs the estimate over a (p, t_count) grid and varies each
/// configuration knob on its own against the base point.
SensitivityReport sensitivity_report(const AlgorithmProfile &profile, const PhysicalAssumptions &assumptions,
                                     const EstimatorConfig &config = {});

}  // namespace latsurg
