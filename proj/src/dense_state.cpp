#include "latsurg/dense_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latsurg {

DenseState::DenseState(int n) : n_(n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("dense state supports 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    amp_.assign(size_t{1} << n, Amp{0.0, 0.0});
    amp_[0] = 1.0;
}

void DenseState::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("qubit index out of range");
    }
}

void DenseState::h(int q) {
    check_qubit(q);
    const double r = std::numbers::sqrt2 / 2;
    size_t m = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); ++i) {
        if (i & m) {
            continue;
        }
        Amp a = amp_[i], b = amp_[i | m];
        amp_[i] = r * (a + b);
        amp_[i | m] = r * (a - b);
    }
}

void DenseState::phase_on_one(int q, Amp phase) {
    check_qubit(q);
    size_t m = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); ++i) {
        if (i & m) {
            amp_[i] *= phase;
        }
    }
}

void DenseState::s(int q) {
    phase_on_one(q, {0.0, 1.0});
}

void DenseState::s_dag(int q) {
    phase_on_one(q, {0.0, -1.0});
}

void DenseState::t(int q) {
    phase_on_one(q, std::polar(1.0, std::numbers::pi / 4));
}

void DenseState::t_dag(int q) {
    phase_on_one(q, std::polar(1.0, -std::numbers::pi / 4));
}

void DenseState::z(int q) {
    phase_on_one(q, -1.0);
}

void DenseState::x(int q) {
    check_qubit(q);
    size_t m = size_t{1} << q;
    for (size_t i = 0; i < amp_.size(); ++i) {
        if (!(i & m)) {
            std::swap(amp_[i], amp_[i | m]);
        }
    }
}

void DenseState::cnot(int c, int t) {
    check_qubit(c);
    check_qubit(t);
    if (c == t) {
        throw std::invalid_argument("cnot needs distinct qubits");
    }
    size_t mc = size_t{1} << c, mt = size_t{1} << t;
    for (size_t i = 0; i < amp_.size(); ++i) {
        if ((i & mc) && !(i & mt)) {
            std::swap(amp_[i], amp_[i | mt]);
        }
    }
}

void DenseState::cz(int a, int b) {
    check_qubit(a);
    check_qubit(b);
    size_t m = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amp_.size(); ++i) {
        if ((i & m) == m) {
            amp_[i] = -amp_[i];
        }
    }
}

void DenseState::apply(LogicalGate g, int q) {
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

std::vector<DenseState::Amp> DenseState::pauli_times(const PauliString &p) const {
    if (n_ < 64 && ((p.xs | p.zs) >> n_) != 0) {
        throw std::out_of_range("Pauli acts outside the register");
    }
    static const Amp ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    int ys = std::popcount(p.xs & p.zs);
    Amp base = ipow[(p.phase + ys) & 3];
    std::vector<Amp> out(amp_.size());
    for (size_t i = 0; i < amp_.size(); ++i) {
        bool neg = std::popcount(i & p.zs) & 1;
        out[i ^ p.xs] = (neg ? -base : base) * amp_[i];
    }
    return out;
}

void DenseState::apply_pauli(const PauliString &p) {
    amp_ = pauli_times(p);
}

double DenseState::probability(const PauliString &p, bool outcome) const {
    auto pv = pauli_times(p);
    double sign = outcome ? -1.0 : 1.0;
    double expect = 0.0;
    for (size_t i = 0; i < amp_.size(); ++i) {
        expect += (std::conj(amp_[i]) * pv[i]).real();
    }
    return std::clamp(0.5 * (1.0 + sign * expect), 0.0, 1.0);
}

double DenseState::project(const PauliString &p, bool outcome) {
    auto pv = pauli_times(p);
    double sign = outcome ? -1.0 : 1.0;
    for (size_t i = 0; i < amp_.size(); ++i) {
        amp_[i] = 0.5 * (amp_[i] + sign * pv[i]);
    }
    double prob = norm();
    prob *= prob;
    if (prob > 0.0) {
        double inv = 1.0 / std::sqrt(prob);
        for (auto &a : amp_) {
            a *= inv;
        }
    }
    return prob;
}

void DenseState::reset(int q, bool x_basis) {
    check_qubit(q);
    auto zq = PauliString::single(q, Pauli::Z);
    if (probability(zq, false) > 1e-12) {
        project(zq, false);
    } else {
        project(zq, true);
        x(q);
    }
    if (x_basis) {
        h(q);
    }
}

double DenseState::norm() const {
    double s = 0.0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

}  // namespace latsurg
