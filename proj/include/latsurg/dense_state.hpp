#pragma once

#include <complex>
#include <vector>

#include "latsurg/pauli.hpp"
#include "latsurg/trace.hpp"

namespace latsurg {

/// State vector on a handful of qubits; qubit q is bit q of the basis index.
class DenseState {
  public:
    using Amp = std::complex<double>;
    static constexpr int kMaxQubits = 12;

    /// The all-|0> state.
    explicit DenseState(int n);

    int num_qubits() const { return n_; }
    const std::vector<Amp> &amplitudes() const { return amp_; }

    void h(int q);
    void s(int q);
    void s_dag(int q);
    void t(int q);
    void t_dag(int q);
    void x(int q);
    void z(int q);
    void cnot(int control, int target);
    void cz(int a, int b);
    void apply(LogicalGate g, int q);
    void apply_pauli(const PauliString &p);

    /// Probability that measuring `p` gives (-1)^outcome.
    double probability(const PauliString &p, bool outcome) const;
    /// Projects onto the (-1)^outcome eigenspace of `p` and renormalizes.
    /// Returns the probability of that outcome before projection.
    double project(const PauliString &p, bool outcome);
    /// Puts a qubit that is not entangled with the rest into |0> (or |+>).
    void reset(int q, bool x_basis = false);

    double norm() const;

  private:
    void check_qubit(int q) const;
    void phase_on_one(int q, Amp phase);
    std::vector<Amp> pauli_times(const PauliString &p) const;

    int n_;
    std::vector<Amp> amp_;
};

}  // namespace latsurg
