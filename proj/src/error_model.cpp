#include "latsurg/error_model.hpp"

#include <cmath>
#include <stdexcept>

namespace latsurg {

double logical_error_per_round(double p, CodeDistance d) {
    if (!(p >= 0.0) || 100.0 * p >= 1.0) {
        throw std::invalid_argument("logical error formula requires 0 <= 100p < 1");
    }
    int exponent = (d.value() + 1) / 2;
    // Integer power by repeated multiplication keeps p_L(p, d+2) = p_L(p, d) * 100p exact.
    double base = 100.0 * p;
    double r = 0.1;
    for (int k = 0; k < exponent; ++k) {
        r *= base;
    }
    return r;
}

double distill_output_error(double p_in) {
    if (!(p_in >= 0.0 && p_in <= 0.1)) {
        throw std::invalid_argument("distillation input error must lie in [0, 0.1]");
    }
    return 35.0 * p_in * p_in * p_in;
}

double distill_reject_prob(double p_in, RejectMode mode) {
    if (!(p_in >= 0.0 && p_in <= 0.1)) {
        throw std::invalid_argument("distillation input error must lie in [0, 0.1]");
    }
    switch (mode) {
        case RejectMode::first_order:
            return 15.0 * p_in;
        case RejectMode::exact_iid:
            return -std::expm1(15.0 * std::log1p(-p_in));
    }
    return 0.0;
}

std::vector<DistillationLevelError> cascade(int levels, double p_base, const CircuitContribution &circuit_contribution) {
    if (levels < 1 || levels > 2) {
        throw std::invalid_argument("cascade supports 1 or 2 distillation levels");
    }
    std::vector<DistillationLevelError> out;
    double carried = p_base;
    for (int level = 1; level <= levels; ++level) {
        double p_in = carried + (circuit_contribution ? circuit_contribution(level) : 0.0);
        DistillationLevelError e{p_in, distill_output_error(p_in), distill_reject_prob(p_in, RejectMode::first_order)};
        out.push_back(e);
        carried = e.p_out;
    }
    return out;
}

double layer_exposure_error(double p, CodeDistance d, double exposure_rounds) {
    return logical_error_per_round(p, d) * exposure_rounds;
}

double injection_cluster_failure(int attempts, double q_inject) {
    if (attempts < 1) {
        throw std::invalid_argument("injection cluster needs at least one attempt");
    }
    if (!(q_inject >= 0.0 && q_inject <= 1.0)) {
        throw std::invalid_argument("injection success probability must lie in [0, 1]");
    }
    return std::pow(1.0 - q_inject, attempts);
}

}  // namespace latsurg
