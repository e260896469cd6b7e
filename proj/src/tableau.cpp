#include "latsurg/tableau.hpp"

#include <stdexcept>

namespace latsurg {

namespace {

void add_phase(PauliString &p, int k) {
    p.phase = static_cast<std::uint8_t>((p.phase + k) & 3);
}

bool bit(std::uint64_t v, int q) {
    return ((v >> q) & 1) != 0;
}

void flip(std::uint64_t &v, int q) {
    v ^= std::uint64_t{1} << q;
}

}  // namespace

StabilizerTableau::StabilizerTableau(int n) : n_(n) {
    if (n < 1 || n > 64) {
        throw std::invalid_argument("tableau supports 1..64 qubits");
    }
    rows_.resize(2 * static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        rows_[q] = PauliString::single(q, Pauli::X);
        rows_[n + q] = PauliString::single(q, Pauli::Z);
    }
}

void StabilizerTableau::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
}

void StabilizerTableau::h(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        bool x = bit(r.xs, q), z = bit(r.zs, q);
        if (x && z) {
            add_phase(r, 2);
        }
        if (x != z) {
            flip(r.xs, q);
            flip(r.zs, q);
        }
    }
}

void StabilizerTableau::s(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        bool x = bit(r.xs, q), z = bit(r.zs, q);
        if (x && z) {
            add_phase(r, 2);
        }
        if (x) {
            flip(r.zs, q);
        }
    }
}

void StabilizerTableau::s_dag(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        bool x = bit(r.xs, q), z = bit(r.zs, q);
        if (x && !z) {
            add_phase(r, 2);
        }
        if (x) {
            flip(r.zs, q);
        }
    }
}

void StabilizerTableau::x(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        if (bit(r.zs, q)) {
            add_phase(r, 2);
        }
    }
}

void StabilizerTableau::z(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        if (bit(r.xs, q)) {
            add_phase(r, 2);
        }
    }
}

void StabilizerTableau::y(int q) {
    check_qubit(q);
    for (auto &r : rows_) {
        if (bit(r.xs, q) != bit(r.zs, q)) {
            add_phase(r, 2);
        }
    }
}

void StabilizerTableau::cnot(int c, int t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) {
        throw std::invalid_argument("cnot needs distinct qubits");
    }
    for (auto &r : rows_) {
        bool xc = bit(r.xs, c), zc = bit(r.zs, c), xt = bit(r.xs, t), zt = bit(r.zs, t);
        if (xc && zt && (xt == zc)) {
            add_phase(r, 2);
        }
        if (xc) {
            flip(r.xs, t);
        }
        if (zt) {
            flip(r.zs, c);
        }
    }
}

void StabilizerTableau::cz(int a, int b) {
    h(b);
    cnot(a, b);
    h(b);
}

void StabilizerTableau::apply(LogicalGate g, int q) {
    switch (g) {
        case LogicalGate::H:
            h(q);
            break;
        case LogicalGate::S:
            s(q);
            break;
        case LogicalGate::S_DAG:
            s_dag(q);
            break;
    }
}

void StabilizerTableau::apply_pauli(const PauliString &p) {
    for (auto &r : rows_) {
        if (!r.commutes_with(p)) {
            add_phase(r, 2);
        }
    }
}

std::optional<bool> StabilizerTableau::peek(const PauliString &p) const {
    for (int i = n_; i < 2 * n_; ++i) {
        if (!rows_[i].commutes_with(p)) {
            return std::nullopt;
        }
    }
    PauliString acc;
    for (int i = 0; i < n_; ++i) {
        if (!rows_[i].commutes_with(p)) {
            acc *= rows_[n_ + i];
        }
    }
    return acc.phase != p.phase;
}

StabilizerTableau::Outcome StabilizerTableau::measure(const PauliString &p, bool forced) {
    if (!p.hermitian() || p.is_identity()) {
        throw std::invalid_argument("measured operator must be a non-trivial Hermitian Pauli product");
    }
    int pivot = -1;
    for (int i = n_; i < 2 * n_; ++i) {
        if (!rows_[i].commutes_with(p)) {
            pivot = i;
            break;
        }
    }
    if (pivot < 0) {
        return {*peek(p), false};
    }
    for (int i = 0; i < 2 * n_; ++i) {
        if (i != pivot && !rows_[i].commutes_with(p)) {
            rows_[i] *= rows_[pivot];
        }
    }
    rows_[pivot - n_] = rows_[pivot];
    rows_[pivot] = p;
    if (forced) {
        add_phase(rows_[pivot], 2);
    }
    return {forced, true};
}

void StabilizerTableau::reset(int q, bool x_basis) {
    check_qubit(q);
    auto zq = PauliString::single(q, Pauli::Z);
    if (measure(zq, false).value) {
        x(q);
    }
    if (x_basis) {
        h(q);
    }
}

bool StabilizerTableau::is_stabilized_by(const PauliString &p) const {
    auto v = peek(p);
    return v.has_value() && !*v;
}

std::vector<PauliString> StabilizerTableau::stabilizers() const {
    return {rows_.begin() + n_, rows_.end()};
}

bool StabilizerTableau::same_state(const StabilizerTableau &other) const {
    if (other.n_ != n_) {
        return false;
    }
    for (const auto &g : other.stabilizers()) {
        if (!is_stabilized_by(g)) {
            return false;
        }
    }
    return true;
}

}  // namespace latsurg
