#pragma once

#include <functional>
#include <vector>

#include "latsurg/core_model.hpp"

namespace latsurg {

/// Logical error per patch per error-detection round,
/// p_L = 0.1 (100 p)^((d+1)/2). Throws when 100p >= 1.
double logical_error_per_round(double p, CodeDistance d);

/// Output error of one 15-to-1 distillation round, 35 p_in^3.
double distill_output_error(double p_in);

enum class RejectMode { first_order, exact_iid };

/// Probability that a distillation run is discarded.
double distill_reject_prob(double p_in, RejectMode mode);

struct DistillationLevelError {
    double p_in;
    double p_out;
    double p_reject;
};

/// Extra per-input Z error picked up inside the lattice-surgery circuit of a
/// level (1-based), added to the previous level's output error.
using CircuitContribution = std::function<double(int level)>;

/// Chains the cubic law across one or two levels. The level-k input error is
/// the level-(k-1) output (p_base for k = 1) plus circuit_contribution(k).
std::vector<DistillationLevelError> cascade(int levels, double p_base, const CircuitContribution &circuit_contribution = {});

/// Default circuit contribution: p_L(p, d_level) times the rounds a state is
/// exposed within one layer of that level.
double layer_exposure_error(double p, CodeDistance d, double exposure_rounds);

/// (1 - q)^attempts: chance that every attempt in an injection cluster fails.
double injection_cluster_failure(int attempts, double q_inject);

}  // namespace latsurg
