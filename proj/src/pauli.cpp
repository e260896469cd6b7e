#include "latsurg/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace latsurg {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Z:
            return 'Z';
        case Pauli::Y:
            return 'Y';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Z':
            return Pauli::Z;
        case 'Y':
            return Pauli::Y;
    }
    throw std::invalid_argument(std::string("not a Pauli: ") + c);
}

PauliString PauliString::single(int qubit, Pauli p, bool negative) {
    PauliString s;
    s.set(qubit, p);
    s.phase = negative ? 2 : 0;
    return s;
}

Pauli PauliString::at(int qubit) const {
    unsigned x = (xs >> qubit) & 1;
    unsigned z = (zs >> qubit) & 1;
    return static_cast<Pauli>(x | (z << 1));
}

void PauliString::set(int qubit, Pauli p) {
    if (qubit < 0 || qubit >= 64) {
        throw std::out_of_range("PauliString supports qubits 0..63");
    }
    std::uint64_t bit = std::uint64_t{1} << qubit;
    auto v = static_cast<unsigned>(p);
    xs = (v & 1) ? (xs | bit) : (xs & ~bit);
    zs = (v & 2) ? (zs | bit) : (zs & ~bit);
}

bool PauliString::commutes_with(const PauliString &other) const {
    return (std::popcount((xs & other.zs) ^ (zs & other.xs)) & 1) == 0;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    // Per-qubit product phase, as powers of i (Aaronson-Gottesman g function).
    int sum = phase + rhs.phase;
    std::uint64_t active = (xs | zs) & (rhs.xs | rhs.zs);
    while (active) {
        int q = std::countr_zero(active);
        active &= active - 1;
        int x1 = (xs >> q) & 1, z1 = (zs >> q) & 1;
        int x2 = (rhs.xs >> q) & 1, z2 = (rhs.zs >> q) & 1;
        int g = 0;
        if (x1 && z1) {
            g = z2 - x2;
        } else if (x1) {
            g = z2 * (2 * x2 - 1);
        } else if (z1) {
            g = x2 * (1 - 2 * z2);
        }
        sum += g;
    }
    phase = static_cast<std::uint8_t>(((sum % 4) + 4) % 4);
    xs ^= rhs.xs;
    zs ^= rhs.zs;
    return *this;
}

std::string PauliString::str(int num_qubits) const {
    std::string s;
    static const char *prefix[] = {"+", "+i", "-", "-i"};
    s += prefix[phase & 3];
    for (int q = 0; q < num_qubits; ++q) {
        s += pauli_char(at(q));
    }
    return s;
}

}  // namespace latsurg
