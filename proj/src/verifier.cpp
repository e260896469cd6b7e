#include "latsurg/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "latsurg/dense_state.hpp"

namespace latsurg {

std::string target_gate_name(TargetGate g) {
    switch (g) {
        case TargetGate::IDENTITY:
            return "IDENTITY";
        case TargetGate::CNOT:
            return "CNOT";
        case TargetGate::CZ:
            return "CZ";
        case TargetGate::SWAP:
            return "SWAP";
        case TargetGate::H:
            return "H";
        case TargetGate::S:
            return "S";
        case TargetGate::S_DAG:
            return "S_DAG";
        case TargetGate::T:
            return "T";
        case TargetGate::T_DAG:
            return "T_DAG";
        case TargetGate::Z:
            return "Z";
    }
    return "?";
}

TargetGate target_gate_from_name(const std::string &name) {
    for (auto g : {TargetGate::IDENTITY, TargetGate::CNOT, TargetGate::CZ, TargetGate::SWAP, TargetGate::H,
                   TargetGate::S, TargetGate::S_DAG, TargetGate::T, TargetGate::T_DAG, TargetGate::Z}) {
        if (target_gate_name(g) == name) {
            return g;
        }
    }
    throw std::invalid_argument("unknown target gate '" + name + "'");
}

std::vector<int> trace_qubit_order(const GadgetTrace &trace) {
    return trace.slots();
}

namespace {

constexpr double kTolerance = 1e-10;

struct Layout {
    std::map<int, int> qubit_of_slot;
    int num_slots = 0;
    int num_qubits = 0;

    explicit Layout(const GadgetTrace &trace, bool with_refs) {
        auto order = trace_qubit_order(trace);
        for (size_t i = 0; i < order.size(); ++i) {
            qubit_of_slot[order[i]] = static_cast<int>(i);
        }
        num_slots = static_cast<int>(order.size());
        num_qubits = num_slots + (with_refs ? static_cast<int>(trace.inputs.size()) : 0);
    }

    int q(int slot) const { return qubit_of_slot.at(slot); }
    int ref(size_t input) const { return num_slots + static_cast<int>(input); }

    PauliString pauli(const std::vector<SlotPauli> &terms) const {
        PauliString p;
        for (const auto &t : terms) {
            if (p.at(q(t.slot)) != Pauli::I) {
                throw InvalidTrace("Pauli product lists a slot twice");
            }
            p.set(q(t.slot), t.pauli);
        }
        return p;
    }
};

void check_trace(const GadgetTrace &trace) {
    try {
        trace.check_causal();
    } catch (const std::invalid_argument &e) {
        throw InvalidTrace(e.what());
    }
    if (trace.outputs.size() != trace.inputs.size()) {
        throw InvalidTrace("trace outputs do not match its inputs");
    }
}

BitId max_bit(const GadgetTrace &trace) {
    BitId m = 0;
    for (const auto &e : trace.events) {
        if (auto *ms = std::get_if<trace_event::Measure>(&e)) {
            m = std::max(m, ms->bit);
        } else if (auto *b = std::get_if<trace_event::Byproduct>(&e)) {
            m = std::max(m, b->bit);
        }
    }
    return m;
}

template <class Sim>
void apply_target(Sim &s, TargetGate g, const std::vector<int> &qs) {
    auto need = [&](size_t n) {
        if (qs.size() < n) {
            throw std::invalid_argument(target_gate_name(g) + " needs " + std::to_string(n) + " logical inputs");
        }
    };
    switch (g) {
        case TargetGate::IDENTITY:
        case TargetGate::SWAP:
            return;
        case TargetGate::CNOT:
            need(2);
            for (size_t i = 1; i < qs.size(); ++i) {
                s.cnot(qs[0], qs[i]);
            }
            return;
        case TargetGate::CZ:
            need(2);
            for (size_t i = 1; i < qs.size(); ++i) {
                s.cz(qs[0], qs[i]);
            }
            return;
        case TargetGate::H:
            need(1);
            s.h(qs[0]);
            return;
        case TargetGate::S:
            need(1);
            s.s(qs[0]);
            return;
        case TargetGate::S_DAG:
            need(1);
            s.s_dag(qs[0]);
            return;
        case TargetGate::Z:
            need(1);
            s.z(qs[0]);
            return;
        case TargetGate::T:
        case TargetGate::T_DAG:
            need(1);
            if constexpr (std::is_same_v<Sim, DenseState>) {
                if (g == TargetGate::T) {
                    s.t(qs[0]);
                } else {
                    s.t_dag(qs[0]);
                }
            } else {
                throw std::invalid_argument("T is not a Clifford gate");
            }
            return;
    }
}

/// Walks every outcome branch of the trace depth first.
template <class Sim, class Leaf>
class BranchWalker {
  public:
    BranchWalker(const GadgetTrace &trace, const Layout &layout, Leaf &leaf)
        : trace_(trace), layout_(layout), leaf_(leaf), bits_(trace.events.empty() ? 1 : max_bit(trace) + 1, 0) {}

    void run(Sim state) { step(0, std::move(state), 1.0); }

  private:
    bool value(const Parity &p) const {
        return p.eval([&](BitId b) { return bits_.at(b) != 0; });
    }

    void step(size_t idx, Sim state, double prob) {
        for (; idx < trace_.events.size(); ++idx) {
            const auto &e = trace_.events[idx];
            if (auto *init = std::get_if<trace_event::Init>(&e)) {
                state.reset(layout_.q(init->slot), init->basis == Pauli::X);
            } else if (auto *m = std::get_if<trace_event::Measure>(&e)) {
                auto p = layout_.pauli(m->product);
                if constexpr (std::is_same_v<Sim, DenseState>) {
                    double p0 = state.probability(p, false);
                    for (int o = 0; o < 2; ++o) {
                        double po = o ? 1.0 - p0 : p0;
                        if (po < 1e-14) {
                            continue;
                        }
                        Sim next = state;
                        next.project(p, o != 0);
                        bits_[m->bit] = static_cast<std::int8_t>(o);
                        step(idx + 1, std::move(next), prob * po);
                    }
                    return;
                } else {
                    auto determined = state.peek(p);
                    if (determined) {
                        bits_[m->bit] = *determined;
                        continue;
                    }
                    for (int o = 0; o < 2; ++o) {
                        Sim next = state;
                        next.measure(p, o != 0);
                        bits_[m->bit] = static_cast<std::int8_t>(o);
                        step(idx + 1, std::move(next), prob * 0.5);
                    }
                    return;
                }
            } else if (auto *b = std::get_if<trace_event::Byproduct>(&e)) {
                for (int o = 0; o < 2; ++o) {
                    Sim next = state;
                    if (o) {
                        next.apply_pauli(layout_.pauli(b->pauli));
                    }
                    bits_[b->bit] = static_cast<std::int8_t>(o);
                    step(idx + 1, std::move(next), prob * 0.5);
                }
                return;
            } else if (auto *g = std::get_if<trace_event::Gate>(&e)) {
                if (!g->condition || value(*g->condition) == g->trigger_value) {
                    state.apply(g->gate, layout_.q(g->slot));
                }
            } else if (auto *c = std::get_if<trace_event::PauliCorrection>(&e)) {
                if (value(c->condition)) {
                    state.apply_pauli(layout_.pauli({c->pauli}));
                }
            }
        }
        leaf_(state, prob);
    }

    const GadgetTrace &trace_;
    const Layout &layout_;
    Leaf &leaf_;
    std::vector<std::int8_t> bits_;
};

template <class Sim>
Sim choi_input(const GadgetTrace &trace, const Layout &layout, bool magic_error) {
    Sim s(layout.num_qubits);
    if (!trace.magic_slots.empty()) {
        if constexpr (std::is_same_v<Sim, DenseState>) {
            for (int slot : trace.magic_slots) {
                int q = layout.q(slot);
                s.h(q);
                s.t(q);
                if (magic_error) {
                    s.z(q);
                }
            }
        } else {
            throw InvalidTrace("trace consumes a |T> resource; use dense verification");
        }
    }
    for (size_t i = 0; i < trace.inputs.size(); ++i) {
        s.h(layout.q(trace.inputs[i]));
        s.cnot(layout.q(trace.inputs[i]), layout.ref(i));
    }
    return s;
}

template <class Sim>
Sim choi_expected(const GadgetTrace &trace, const Layout &layout, const std::vector<TargetGate> &targets) {
    Sim s(layout.num_qubits);
    std::vector<int> outs;
    for (size_t i = 0; i < trace.outputs.size(); ++i) {
        int q = layout.q(trace.outputs[i]);
        s.h(q);
        s.cnot(q, layout.ref(i));
        outs.push_back(q);
    }
    for (auto g : targets) {
        apply_target(s, g, outs);
    }
    return s;
}

std::uint64_t kept_mask(const GadgetTrace &trace, const Layout &layout) {
    std::uint64_t m = 0;
    for (size_t i = 0; i < trace.outputs.size(); ++i) {
        m |= std::uint64_t{1} << layout.q(trace.outputs[i]);
        m |= std::uint64_t{1} << layout.ref(i);
    }
    return m;
}

bool swap_positions_ok(const GadgetTrace &trace) {
    return trace.inputs.size() == 2 && trace.outputs.size() == 2 && trace.outputs[0] == trace.inputs[1] &&
           trace.outputs[1] == trace.inputs[0];
}

void finalize(VerificationResult &r) {
    if (std::abs(r.total_probability - 1.0) > 1e-12) {
        r.pass = false;
        r.detail = "branch probabilities sum to " + std::to_string(r.total_probability);
    } else if (r.max_deviation >= kTolerance) {
        r.pass = false;
        r.detail = "max deviation " + std::to_string(r.max_deviation);
    } else {
        r.pass = true;
    }
}

}  // namespace

ReplayResult replay_clifford(const GadgetTrace &trace, StabilizerTableau input,
                             const std::map<BitId, bool> &outcomes) {
    try {
        trace.check_causal();
    } catch (const std::invalid_argument &e) {
        throw InvalidTrace(e.what());
    }
    if (!trace.magic_slots.empty()) {
        throw InvalidTrace("trace consumes a |T> resource and is not Clifford");
    }
    Layout layout(trace, false);
    if (layout.num_slots > input.num_qubits()) {
        throw std::invalid_argument("input tableau has fewer qubits than the trace has slots");
    }
    ReplayResult out{std::move(input), true};
    auto &s = out.state;
    std::map<BitId, bool> bits;
    auto forced = [&](BitId b) {
        auto it = outcomes.find(b);
        return it != outcomes.end() && it->second;
    };
    auto value = [&](const Parity &p) { return p.eval([&](BitId b) { return bits.at(b); }); };
    for (const auto &e : trace.events) {
        if (auto *init = std::get_if<trace_event::Init>(&e)) {
            s.reset(layout.q(init->slot), init->basis == Pauli::X);
        } else if (auto *m = std::get_if<trace_event::Measure>(&e)) {
            auto r = s.measure(layout.pauli(m->product), forced(m->bit));
            if (!r.random && outcomes.count(m->bit) && outcomes.at(m->bit) != r.value) {
                out.consistent = false;
            }
            bits[m->bit] = r.value;
        } else if (auto *b = std::get_if<trace_event::Byproduct>(&e)) {
            bits[b->bit] = forced(b->bit);
            if (bits[b->bit]) {
                s.apply_pauli(layout.pauli(b->pauli));
            }
        } else if (auto *g = std::get_if<trace_event::Gate>(&e)) {
            if (!g->condition || value(*g->condition) == g->trigger_value) {
                s.apply(g->gate, layout.q(g->slot));
            }
        } else if (auto *c = std::get_if<trace_event::PauliCorrection>(&e)) {
            if (value(c->condition)) {
                s.apply_pauli(layout.pauli({c->pauli}));
            }
        }
    }
    return out;
}

VerificationResult verify_gadget_unitary(const GadgetTrace &trace, const std::vector<TargetGate> &targets,
                                         const DenseOptions &options) {
    check_trace(trace);
    Layout layout(trace, true);
    if (layout.num_qubits > 8) {
        throw std::invalid_argument("dense verification is limited to 8 qubits including references");
    }
    VerificationResult r;
    if (std::find(targets.begin(), targets.end(), TargetGate::SWAP) != targets.end() && !swap_positions_ok(trace)) {
        r.detail = "patches did not trade places";
        r.max_deviation = 1.0;
        return r;
    }
    auto expected = choi_expected<DenseState>(trace, layout, targets);
    std::uint64_t keep = kept_mask(trace, layout);
    const auto &e = expected.amplitudes();

    auto leaf = [&](const DenseState &actual, double prob) {
        std::map<std::uint64_t, DenseState::Amp> overlap;
        const auto &a = actual.amplitudes();
        for (std::uint64_t i = 0; i < a.size(); ++i) {
            overlap[i & ~keep] += std::conj(e[i & keep]) * a[i];
        }
        double f = 0.0;
        for (const auto &[junk, ov] : overlap) {
            f += std::norm(ov);
        }
        r.max_deviation = std::max(r.max_deviation, 1.0 - std::sqrt(std::min(f, 1.0)));
        r.total_probability += prob;
        ++r.branches;
    };
    BranchWalker<DenseState, decltype(leaf)> walker(trace, layout, leaf);
    walker.run(choi_input<DenseState>(trace, layout, options.magic_error));
    finalize(r);
    return r;
}

VerificationResult verify_gadget_unitary(const GadgetTrace &trace, TargetGate target, const DenseOptions &options) {
    return verify_gadget_unitary(trace, std::vector<TargetGate>{target}, options);
}

VerificationResult verify_clifford_gadget(const GadgetTrace &trace, TargetGate target) {
    check_trace(trace);
    VerificationResult r;
    if (target == TargetGate::SWAP && !swap_positions_ok(trace)) {
        r.detail = "patches did not trade places";
        r.max_deviation = 1.0;
        return r;
    }
    Layout layout(trace, true);
    auto expected = choi_expected<StabilizerTableau>(trace, layout, {target});
    std::uint64_t keep = kept_mask(trace, layout);
    std::vector<PauliString> generators;
    for (const auto &g : expected.stabilizers()) {
        if (((g.xs | g.zs) & ~keep) == 0) {
            generators.push_back(g);
        }
    }
    auto leaf = [&](const StabilizerTableau &actual, double prob) {
        bool ok = std::all_of(generators.begin(), generators.end(),
                              [&](const PauliString &g) { return actual.is_stabilized_by(g); });
        if (!ok) {
            r.max_deviation = 1.0;
        }
        r.total_probability += prob;
        ++r.branches;
    };
    BranchWalker<StabilizerTableau, decltype(leaf)> walker(trace, layout, leaf);
    walker.run(choi_input<StabilizerTableau>(trace, layout, false));
    finalize(r);
    return r;
}

VerificationResult verify_swap(const GadgetTrace &trace) {
    return verify_clifford_gadget(trace, TargetGate::SWAP);
}

}  // namespace latsurg
