#pragma once

#include <cstdint>
#include <vector>

#include "latsurg/core_model.hpp"
#include "latsurg/error_model.hpp"
#include "latsurg/schedule.hpp"

namespace latsurg {

struct InjectionCluster {
    int attempts = 20;
    int parallel_sites = 4;
    int rounds = 15;
};

/// Tunable geometry and timing of the two-level 15-to-1 factory.
struct FactoryConfig {
    int d1 = 15;
    /// Effective layer height in units of the level's distance.
    double layer_factor = 6.5;
    /// Level-1 distillations running side by side in one layer.
    int l1_pack = 8;
    int l1_attempts_per_l2 = 16;
    InjectionCluster injection;
    /// Level-2 layer shortening from snug packing, in units of d2.
    double junction_overlap = 1.0;
    RejectMode reject_mode = RejectMode::first_order;

    void validate() const;
};

struct FactoryModel {
    CodeDistance d1{15};
    CodeDistance d2{15};
    FactoryConfig config;

    double layer_height(int level) const;
    /// Level-1 rounds spent producing one batch of l1_attempts_per_l2 states.
    double l1_batch_rounds() const;
};

/// Per-level error and timing figures for a factory under given assumptions.
struct FactoryRates {
    DistillationLevelError level1;
    DistillationLevelError level2;
    /// Level-1 rejection including heralded injection-cluster failures.
    double l1_reject = 0.0;
    /// Chance that a level-1 batch yields at least 15 good states.
    double l1_batch_ok = 0.0;
    double rounds_per_t = 0.0;
};

/// Per-input error added inside a level: p_L at that level's distance times
/// one layer height of exposure.
double factory_circuit_error(const FactoryModel &model, const PhysicalAssumptions &a, int level);

FactoryRates factory_rates(const FactoryModel &model, const PhysicalAssumptions &a, int levels = 2);

/// Rounds from the start of injection to a distilled output, expected over
/// repeat-until-success.
double t_state_latency(const FactoryModel &model, const PhysicalAssumptions &a, int levels = 2);

struct RegionFootprint {
    int cols = 0;
    int rows = 0;
    int d = 0;
    std::int64_t cells() const { return static_cast<std::int64_t>(cols) * rows; }
    std::uint64_t qubits() const { return static_cast<std::uint64_t>(cells()) * cell_qubits(d); }
};

/// Built schedules of both factory levels. Transport between the regions is
/// not laid out on a grid; level-2 inputs land on their cells once the
/// corresponding level-1 output has left its rack.
struct FactorySchedule {
    Schedule level1;
    Schedule level2;
    /// Round at which each level-2 output has left the factory.
    std::vector<Round> outputs;
    RegionFootprint level1_box;
    RegionFootprint level2_box;

    /// Average spacing of outputs over the built batches.
    double period() const;
    std::uint64_t qubits() const { return level1_box.qubits() + level2_box.qubits(); }
};

FactorySchedule build_factory_schedule(const FactoryModel &model, int batches = 3);

/// Bounding box of the cells a schedule touches.
RegionFootprint bounding_box(const Schedule &s, int d);

/// Qubits of the factory footprint, from a one-batch build (cached).
std::uint64_t factory_qubits(const FactoryModel &model);

/// Supports of the generators measured in one 15-to-1 round: four checks
/// over qubits 1..15 and one tying the output (qubit 16) to qubits 1..7.
std::vector<std::vector<int>> distillation_generators();

}  // namespace latsurg
