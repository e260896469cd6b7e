#include "latsurg/core_model.hpp"

#include <cmath>

namespace latsurg {

CodeDistance::CodeDistance(int d) : d_(d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("code distance must be an odd integer >= 3, got " + std::to_string(d));
    }
}

PhysicalAssumptions PhysicalAssumptions::with_error_rate(double p, double round_seconds) {
    PhysicalAssumptions a;
    a.p = p;
    a.p_inject = p;
    a.round_seconds = round_seconds;
    return a;
}

void PhysicalAssumptions::validate() const {
    if (!(p > 0.0 && p < 0.01)) {
        throw std::invalid_argument("p must lie in (0, 0.01) so that 100p < 1, got " + std::to_string(p));
    }
    if (!(round_seconds > 0.0) || !std::isfinite(round_seconds)) {
        throw std::invalid_argument("round time must be positive");
    }
    if (!(p_inject >= 0.0 && p_inject <= 0.1)) {
        throw std::invalid_argument("p_inject must lie in [0, 0.1]");
    }
    if (!(q_inject > 0.0 && q_inject <= 1.0)) {
        throw std::invalid_argument("q_inject must lie in (0, 1]");
    }
}

PatchFootprint patch_footprint(CodeDistance d) {
    auto n = static_cast<std::uint64_t>(d.value());
    return {n * n, n * n - 1, 3 * n * n};
}

std::uint64_t defect_footprint(int d) {
    if (d < 3) {
        throw std::invalid_argument("defect footprint needs d >= 3");
    }
    auto n = static_cast<std::uint64_t>(d);
    // 12.5 d^2 = 25 d^2 / 2, rounded up.
    return (25 * n * n + 1) / 2;
}

std::uint64_t cell_qubits(int d) {
    auto n = static_cast<std::uint64_t>(d);
    return 2 * n * n;
}

}  // namespace latsurg
