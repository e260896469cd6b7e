#pragma once

#include <optional>
#include <vector>

#include "latsurg/pauli.hpp"
#include "latsurg/trace.hpp"

namespace latsurg {

/// Aaronson-Gottesman stabilizer tableau on up to 64 qubits. Rows 0..n-1 are
/// destabilizers, rows n..2n-1 stabilizers; signs live in the PauliString
/// phase (0 or 2).
class StabilizerTableau {
  public:
    /// The all-|0> state.
    explicit StabilizerTableau(int n);

    int num_qubits() const { return n_; }

    void h(int q);
    void s(int q);
    void s_dag(int q);
    void x(int q);
    void y(int q);
    void z(int q);
    void cnot(int control, int target);
    void cz(int a, int b);
    void apply(LogicalGate g, int q);
    void apply_pauli(const PauliString &p);

    /// Outcome of measuring `p` if it is determined, nullopt if uniformly random.
    std::optional<bool> peek(const PauliString &p) const;

    struct Outcome {
        bool value;
        bool random;
    };
    /// Measures the Hermitian Pauli product `p`. A random outcome takes the
    /// value `forced`; a determined one ignores it.
    Outcome measure(const PauliString &p, bool forced = false);

    /// Puts a qubit that is not entangled with the rest into |0> (or |+>).
    void reset(int q, bool x_basis = false);

    bool is_stabilized_by(const PauliString &p) const;
    /// Stabilizer generators (rows n..2n-1).
    std::vector<PauliString> stabilizers() const;
    bool same_state(const StabilizerTableau &other) const;

  private:
    void check_qubit(int q) const;

    int n_;
    std::vector<PauliString> rows_;
};

}  // namespace latsurg
