#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "latsurg/tableau.hpp"
#include "latsurg/trace.hpp"

namespace latsurg {

class InvalidTrace : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Ideal logical action a gadget is checked against. Two-qubit targets act
/// with input 0 as control and every other input as target; single-qubit
/// targets act on input 0. SWAP and IDENTITY leave each patch's state alone
/// (SWAP additionally requires the two patches to trade places).
enum class TargetGate { IDENTITY, CNOT, CZ, SWAP, H, S, S_DAG, T, T_DAG, Z };

std::string target_gate_name(TargetGate g);
TargetGate target_gate_from_name(const std::string &name);

struct VerificationResult {
    bool pass = false;
    /// Max over branches of 1 - |<expected|actual>|.
    double max_deviation = 0.0;
    std::size_t branches = 0;
    double total_probability = 0.0;
    std::string detail;
};

/// Qubit index assigned to each slot of the trace: slot k of `order` is qubit k.
std::vector<int> trace_qubit_order(const GadgetTrace &trace);

struct ReplayResult {
    StabilizerTableau state;
    /// False when a forced outcome contradicts a determined measurement.
    bool consistent = true;
};

/// Replays the trace on `input` (qubits numbered by trace_qubit_order, any
/// extra qubits untouched). Random outcomes and byproduct signs take their
/// values from `outcomes` (missing bits read as 0). Throws InvalidTrace if a
/// condition reads a bit that no earlier event produced, or if the trace
/// needs a |T> resource.
ReplayResult replay_clifford(const GadgetTrace &trace, StabilizerTableau input,
                             const std::map<BitId, bool> &outcomes);

struct DenseOptions {
    /// Prepare magic slots as Z|T> instead of |T>.
    bool magic_error = false;
};

/// Dense-state check over every outcome branch, on the Choi state of the
/// gadget (each input maximally entangled with a reference qubit). The
/// gates in `targets` are applied in order. At most 8 qubits in total.
VerificationResult verify_gadget_unitary(const GadgetTrace &trace, const std::vector<TargetGate> &targets,
                                         const DenseOptions &options = {});
VerificationResult verify_gadget_unitary(const GadgetTrace &trace, TargetGate target,
                                         const DenseOptions &options = {});

/// Tableau check of a Clifford gadget over all 2^k outcome branches.
VerificationResult verify_clifford_gadget(const GadgetTrace &trace, TargetGate target);

/// Both patches end on each other's cell and each carries its own state.
VerificationResult verify_swap(const GadgetTrace &trace);

}  // namespace latsurg
