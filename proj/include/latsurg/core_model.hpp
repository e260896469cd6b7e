#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latsurg {

/// Code distance of a rotated surface-code patch. Always odd and >= 3.
class CodeDistance {
  public:
    explicit CodeDistance(int d);

    int value() const noexcept { return d_; }
    /// Distance surviving an in-place half-distance rotation.
    int half() const noexcept { return d_ / 2; }

    friend bool operator==(CodeDistance a, CodeDistance b) = default;
    friend auto operator<=>(CodeDistance a, CodeDistance b) = default;

  private:
    int d_;
};

/// Hardware-level inputs shared by every estimate.
struct PhysicalAssumptions {
    /// Physical gate error probability. Must lie in (0, 0.01).
    double p = 1e-3;
    /// Duration of one error-detection round, seconds.
    double round_seconds = 1e-6;
    /// Error of an accepted injected state.
    double p_inject = 1e-3;
    /// Heralded success probability of one injection attempt.
    double q_inject = 0.5;

    /// Defaults with p_inject tied to p.
    static PhysicalAssumptions with_error_rate(double p, double round_seconds = 1e-6);

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct PatchFootprint {
    std::uint64_t data_qubits;
    std::uint64_t measure_qubits;
    /// Leading-order per-logical-qubit cost including routing space.
    std::uint64_t total_with_routing;
};

PatchFootprint patch_footprint(CodeDistance d);

/// Physical qubits per double-defect logical qubit, ceil(12.5 d^2).
/// Accepts any d >= 3 (even values allowed) for baseline tables.
std::uint64_t defect_footprint(int d);

/// Physical qubits occupied by one grid cell holding a distance-d patch:
/// d^2 data plus d^2 - 1 measure qubits, rounded to 2 d^2 so cells tile.
std::uint64_t cell_qubits(int d);

}  // namespace latsurg
