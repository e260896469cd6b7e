#pragma once

#include <cstdint>
#include <string>

namespace latsurg {

/// Single-qubit Pauli, encoded as (x bit) | (z bit) << 1.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

inline bool anticommute(Pauli a, Pauli b) {
    auto ax = static_cast<unsigned>(a) & 1, az = static_cast<unsigned>(a) >> 1;
    auto bx = static_cast<unsigned>(b) & 1, bz = static_cast<unsigned>(b) >> 1;
    return ((ax & bz) ^ (az & bx)) != 0;
}

/// The other basis of a patch boundary pair: X <-> Z.
inline Pauli conjugate_basis(Pauli p) {
    return p == Pauli::X ? Pauli::Z : (p == Pauli::Z ? Pauli::X : p);
}

/// Pauli string on up to 64 qubits with an overall phase i^phase.
/// Y on a qubit is stored as x = z = 1 and means the Hermitian Y.
struct PauliString {
    std::uint64_t xs = 0;
    std::uint64_t zs = 0;
    std::uint8_t phase = 0;  // power of i, mod 4

    static PauliString single(int qubit, Pauli p, bool negative = false);

    Pauli at(int qubit) const;
    void set(int qubit, Pauli p);
    bool negative() const { return phase == 2; }
    bool hermitian() const { return (phase & 1) == 0; }
    bool is_identity() const { return xs == 0 && zs == 0; }

    bool commutes_with(const PauliString &other) const;

    /// this <- this * rhs, phase tracked exactly.
    PauliString &operator*=(const PauliString &rhs);
    friend PauliString operator*(PauliString a, const PauliString &b) { return a *= b; }

    bool operator==(const PauliString &) const = default;
    std::string str(int num_qubits) const;
};

}  // namespace latsurg
