#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace latsurg {

/// Bitmask over the code qubits; qubit i (1-based) is bit i-1.
using QubitMask = std::uint32_t;

/// The 15-qubit detection code used by 15-to-1 distillation. Qubit i belongs
/// to X-stabilizer j exactly when bit j of i is set, so the stabilizer
/// membership pattern of each qubit is its own binary index.
struct RMCode {
    int num_qubits = 15;
    std::vector<QubitMask> stabilizer_supports;
    QubitMask logical_support = 0;

    static RMCode standard();
    /// Standard code with stabilizer `index` (0..3) deleted.
    static RMCode without_stabilizer(int index);
};

struct ErrorPattern {
    QubitMask mask = 0;

    static ErrorPattern from_qubits(std::initializer_list<int> qubits);
    int weight() const;
};

struct PatternClassification {
    /// Bit j is the parity of the pattern's overlap with stabilizer j.
    std::uint32_t syndrome = 0;
    bool logical_flip = false;
    bool detected = false;
};

PatternClassification classify(ErrorPattern pattern, const RMCode &code);

struct WeightRow {
    int weight = 0;
    std::uint64_t patterns = 0;
    std::uint64_t undetected = 0;
    std::uint64_t undetected_flip = 0;
};

/// Exhaustive scan over all 2^n patterns, one row per weight 0..n.
std::vector<WeightRow> enumerate_undetected(const RMCode &code);

struct LeadingTerm {
    int weight = 0;
    std::uint64_t coefficient = 0;
};

/// Lowest weight at which some undetected pattern flips the logical, and the
/// number of such patterns. Weight 0 with coefficient 0 if none exists.
LeadingTerm leading_error_term(const RMCode &code);
std::uint64_t leading_error_coefficient(const RMCode &code);

struct DistillationStats {
    std::uint64_t trials = 0;
    std::uint64_t rejected = 0;
    std::uint64_t accepted_ok = 0;
    std::uint64_t accepted_bad = 0;
    std::uint64_t seed = 0;

    double reject_rate() const;
    /// accepted_bad / (accepted_ok + accepted_bad).
    double accepted_error_rate() const;
    bool operator==(const DistillationStats &) const = default;
};

/// Trials are cut into fixed-size chunks; chunk k draws from its own stream
/// seeded from (seed, k), so the counts do not depend on `workers`.
DistillationStats sample_distillation(double p_in, std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Exact accepted-output error rate under i.i.d. Z errors of probability p:
/// sum_w flip(w) p^w (1-p)^(n-w) / P(accept).
double exact_accepted_error_rate(const RMCode &code, double p);
/// Exact probability of rejection under i.i.d. Z errors.
double exact_reject_rate(const RMCode &code, double p);

}  // namespace latsurg
