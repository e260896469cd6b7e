#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latsurg/pauli.hpp"

namespace latsurg {

/// Index of a classical bit: a measurement outcome, a byproduct sign, or a
/// parity derived from other bits.
using BitId = std::uint32_t;

/// XOR of a set of classical bits. Kept sorted and duplicate-free.
class Parity {
  public:
    Parity() = default;
    explicit Parity(BitId bit) : bits_{bit} {}
    explicit Parity(std::vector<BitId> bits);

    Parity &operator^=(const Parity &other);
    friend Parity operator^(Parity a, const Parity &b) { return a ^= b; }

    bool empty() const { return bits_.empty(); }
    const std::vector<BitId> &bits() const { return bits_; }

    /// Evaluates the parity against a bit assignment.
    template <typename Lookup>
    bool eval(const Lookup &value_of) const {
        bool v = false;
        for (auto b : bits_) {
            v ^= static_cast<bool>(value_of(b));
        }
        return v;
    }

    bool operator==(const Parity &) const = default;

  private:
    std::vector<BitId> bits_;
};

/// A Pauli acting on one logical slot. Slots are the grid cells that hold a
/// logical qubit, numbered row * cols + col.
struct SlotPauli {
    int slot;
    Pauli pauli;
    bool operator==(const SlotPauli &) const = default;
};

enum class LogicalGate { H, S, S_DAG };

std::string gate_name(LogicalGate g);

namespace trace_event {

/// Fresh logical qubit prepared in the +1 eigenstate of `basis` (X or Z).
struct Init {
    int slot;
    Pauli basis;
};

/// Ideal measurement of a Pauli product; `bit` records (-1)^bit.
struct Measure {
    std::vector<SlotPauli> product;
    BitId bit;
};

/// Random sign picked up when a merged patch is split or a logical operator is
/// moved. With probability 1/2 the listed Pauli has been applied to the state.
struct Byproduct {
    std::vector<SlotPauli> pauli;
    BitId bit;
};

/// Clifford gate, optionally applied only when `condition` evaluates to
/// `trigger_value`.
struct Gate {
    LogicalGate gate;
    int slot;
    std::optional<Parity> condition;
    bool trigger_value = true;
};

/// Pauli correction applied when `condition` evaluates to 1.
struct PauliCorrection {
    SlotPauli pauli;
    Parity condition;
};

}  // namespace trace_event

using TraceEvent = std::variant<trace_event::Init, trace_event::Measure, trace_event::Byproduct, trace_event::Gate,
                                trace_event::PauliCorrection>;

/// Logical-level record of what a gadget does, for verification.
struct GadgetTrace {
    std::vector<TraceEvent> events;
    /// Slots carrying the logical inputs, in order.
    std::vector<int> inputs;
    /// Slots carrying the logical outputs, matched to `inputs` by position.
    std::vector<int> outputs;
    /// Slots that hold a |T> resource state when the trace starts.
    std::vector<int> magic_slots;

    /// All slots touched by the trace, in first-appearance order.
    std::vector<int> slots() const;
    /// Throws std::invalid_argument if an event conditions on a bit that no
    /// earlier event produced.
    void check_causal() const;
};

}  // namespace latsurg
