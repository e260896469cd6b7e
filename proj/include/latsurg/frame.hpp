#pragma once

#include <map>
#include <vector>

#include "latsurg/trace.hpp"

namespace latsurg {

/// Symbolic Pauli frame. For every slot it records the Pauli X^x Z^z that is
/// still owed to the logical qubit, where x and z are parities of classical
/// bits. Measurements read through the frame by XOR-ing in the parts that
/// anticommute with the measured operator.
class PauliFrame {
  public:
    struct Entry {
        Parity x;
        Parity z;
        bool empty() const { return x.empty() && z.empty(); }
    };

    /// Forget the slot (fresh preparation or destructive measurement).
    void reset(int slot);
    /// Owe `p` on `slot` whenever `when` evaluates to 1.
    void apply(int slot, Pauli p, const Parity &when);
    /// Parity to XOR into the raw outcome of measuring `product`.
    Parity flips(const std::vector<SlotPauli> &product) const;
    /// Push the frame through an unconditional Clifford on `slot`.
    void conjugate(LogicalGate gate, int slot);
    /// Turn the slot's owed Paulis into explicit corrections and clear it.
    std::vector<trace_event::PauliCorrection> flush(int slot);

    Entry entry(int slot) const;
    bool clean() const;

  private:
    std::map<int, Entry> entries_;
};

}  // namespace latsurg
