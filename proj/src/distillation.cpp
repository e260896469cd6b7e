#include "latsurg/distillation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace latsurg {

RMCode RMCode::standard() {
    RMCode code;
    code.num_qubits = 15;
    for (int j = 0; j < 4; ++j) {
        QubitMask support = 0;
        for (int i = 1; i <= 15; ++i) {
            if ((i >> j) & 1) {
                support |= QubitMask{1} << (i - 1);
            }
        }
        code.stabilizer_supports.push_back(support);
    }
    code.logical_support = (QubitMask{1} << 15) - 1;
    return code;
}

RMCode RMCode::without_stabilizer(int index) {
    RMCode code = standard();
    if (index < 0 || index >= static_cast<int>(code.stabilizer_supports.size())) {
        throw std::out_of_range("stabilizer index out of range");
    }
    code.stabilizer_supports.erase(code.stabilizer_supports.begin() + index);
    return code;
}

ErrorPattern ErrorPattern::from_qubits(std::initializer_list<int> qubits) {
    ErrorPattern e;
    for (int q : qubits) {
        if (q < 1 || q > 15) {
            throw std::out_of_range("qubit index must lie in 1..15");
        }
        e.mask ^= QubitMask{1} << (q - 1);
    }
    return e;
}

int ErrorPattern::weight() const {
    return std::popcount(mask);
}

PatternClassification classify(ErrorPattern pattern, const RMCode &code) {
    PatternClassification c;
    for (size_t j = 0; j < code.stabilizer_supports.size(); ++j) {
        if (std::popcount(pattern.mask & code.stabilizer_supports[j]) & 1) {
            c.syndrome |= std::uint32_t{1} << j;
        }
    }
    c.detected = c.syndrome != 0;
    c.logical_flip = (std::popcount(pattern.mask & code.logical_support) & 1) != 0;
    return c;
}

std::vector<WeightRow> enumerate_undetected(const RMCode &code) {
    if (code.num_qubits < 1 || code.num_qubits > 24) {
        throw std::invalid_argument("enumeration supports 1..24 qubits");
    }
    std::vector<WeightRow> rows(code.num_qubits + 1);
    for (int w = 0; w <= code.num_qubits; ++w) {
        rows[w].weight = w;
    }
    QubitMask end = QubitMask{1} << code.num_qubits;
    for (QubitMask m = 0; m < end; ++m) {
        ErrorPattern e{m};
        auto c = classify(e, code);
        auto &row = rows[e.weight()];
        row.patterns++;
        if (!c.detected) {
            row.undetected++;
            if (c.logical_flip) {
                row.undetected_flip++;
            }
        }
    }
    return rows;
}

LeadingTerm leading_error_term(const RMCode &code) {
    for (const auto &row : enumerate_undetected(code)) {
        if (row.weight > 0 && row.undetected_flip > 0) {
            return {row.weight, row.undetected_flip};
        }
    }
    return {};
}

std::uint64_t leading_error_coefficient(const RMCode &code) {
    return leading_error_term(code).coefficient;
}

double DistillationStats::reject_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(trials);
}

double DistillationStats::accepted_error_rate() const {
    auto accepted = accepted_ok + accepted_bad;
    return accepted == 0 ? 0.0 : static_cast<double>(accepted_bad) / static_cast<double>(accepted);
}

namespace {

constexpr std::uint64_t kChunkTrials = std::uint64_t{1} << 18;

enum : std::uint8_t { kOk = 0, kBad = 1, kRejected = 2 };

std::vector<std::uint8_t> outcome_table(const RMCode &code) {
    std::vector<std::uint8_t> table(std::size_t{1} << code.num_qubits);
    for (QubitMask m = 0; m < table.size(); ++m) {
        auto c = classify(ErrorPattern{m}, code);
        table[m] = c.detected ? kRejected : (c.logical_flip ? kBad : kOk);
    }
    return table;
}

struct Counts {
    std::uint64_t rejected = 0;
    std::uint64_t bad = 0;
};

// Errors are placed on the flattened (trial, qubit) bit stream by geometric
// gap sampling, so work scales with the number of errors rather than bits.
Counts run_chunk(const std::vector<std::uint8_t> &table, int n, double p, std::uint64_t seed, std::uint64_t chunk,
                 std::uint64_t trials) {
    Counts counts;
    if (p <= 0.0 || trials == 0) {
        return counts;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto tally = [&](QubitMask mask) {
        auto o = table[mask];
        if (o == kRejected) {
            counts.rejected++;
        } else if (o == kBad) {
            counts.bad++;
        }
    };

    const std::uint64_t total_bits = trials * static_cast<std::uint64_t>(n);
    const double log_q = std::log1p(-std::min(p, 1.0 - 1e-300));
    std::uint64_t pos = 0;
    std::uint64_t current_trial = 0;
    QubitMask current_mask = 0;
    bool first = true;
    while (true) {
        if (p < 1.0) {
            double u = 1.0 - unit(rng);  // (0, 1]
            double gap = std::floor(std::log(u) / log_q);
            if (gap >= static_cast<double>(total_bits - pos)) {
                break;
            }
            pos += static_cast<std::uint64_t>(gap);
        }
        if (pos >= total_bits) {
            break;
        }
        std::uint64_t trial = pos / n;
        int qubit = static_cast<int>(pos % n);
        if (first || trial != current_trial) {
            if (!first) {
                tally(current_mask);
            }
            current_trial = trial;
            current_mask = 0;
            first = false;
        }
        current_mask |= QubitMask{1} << qubit;
        ++pos;
    }
    if (!first) {
        tally(current_mask);
    }
    return counts;
}

}  // namespace

DistillationStats sample_distillation(double p_in, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (trials < 1) {
        throw std::invalid_argument("sample_distillation needs at least one trial");
    }
    if (!(p_in >= 0.0 && p_in <= 1.0)) {
        throw std::invalid_argument("p_in must lie in [0, 1]");
    }
    const RMCode code = RMCode::standard();
    const auto table = outcome_table(code);
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    std::vector<Counts> per_chunk(chunks);
    auto work = [&](unsigned w) {
        for (std::uint64_t k = w; k < chunks; k += workers) {
            std::uint64_t begin = k * kChunkTrials;
            std::uint64_t size = std::min(kChunkTrials, trials - begin);
            per_chunk[k] = run_chunk(table, code.num_qubits, p_in, seed, k, size);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }

    DistillationStats stats;
    stats.trials = trials;
    stats.seed = seed;
    for (const auto &c : per_chunk) {
        stats.rejected += c.rejected;
        stats.accepted_bad += c.bad;
    }
    stats.accepted_ok = trials - stats.rejected - stats.accepted_bad;
    return stats;
}

namespace {

struct ExactRates {
    double accept_ok = 0;
    double accept_bad = 0;
};

ExactRates exact_rates(const RMCode &code, double p) {
    ExactRates r;
    for (const auto &row : enumerate_undetected(code)) {
        double weight_prob = std::pow(p, row.weight) * std::pow(1.0 - p, code.num_qubits - row.weight);
        r.accept_bad += static_cast<double>(row.undetected_flip) * weight_prob;
        r.accept_ok += static_cast<double>(row.undetected - row.undetected_flip) * weight_prob;
    }
    return r;
}

}  // namespace

double exact_accepted_error_rate(const RMCode &code, double p) {
    auto r = exact_rates(code, p);
    return r.accept_bad / (r.accept_ok + r.accept_bad);
}

double exact_reject_rate(const RMCode &code, double p) {
    auto r = exact_rates(code, p);
    return 1.0 - r.accept_ok - r.accept_bad;
}

}  // namespace latsurg
