#include "latsurg/trace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace latsurg {

Parity::Parity(std::vector<BitId> bits) {
    std::sort(bits.begin(), bits.end());
    // Pairs cancel under XOR.
    for (size_t i = 0; i < bits.size();) {
        size_t j = i;
        while (j < bits.size() && bits[j] == bits[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            bits_.push_back(bits[i]);
        }
        i = j;
    }
}

Parity &Parity::operator^=(const Parity &other) {
    std::vector<BitId> out;
    std::set_symmetric_difference(bits_.begin(), bits_.end(), other.bits_.begin(), other.bits_.end(),
                                  std::back_inserter(out));
    bits_ = std::move(out);
    return *this;
}

std::string gate_name(LogicalGate g) {
    switch (g) {
        case LogicalGate::H:
            return "H";
        case LogicalGate::S:
            return "S";
        case LogicalGate::S_DAG:
            return "S_DAG";
    }
    return "?";
}

std::vector<int> GadgetTrace::slots() const {
    std::vector<int> order;
    auto note = [&](int s) {
        if (std::find(order.begin(), order.end(), s) == order.end()) {
            order.push_back(s);
        }
    };
    for (int s : inputs) {
        note(s);
    }
    for (int s : magic_slots) {
        note(s);
    }
    for (const auto &e : events) {
        std::visit(
            [&](const auto &ev) {
                using T = std::decay_t<decltype(ev)>;
                if constexpr (std::is_same_v<T, trace_event::Init> || std::is_same_v<T, trace_event::Gate>) {
                    note(ev.slot);
                } else if constexpr (std::is_same_v<T, trace_event::Measure>) {
                    for (const auto &t : ev.product) {
                        note(t.slot);
                    }
                } else if constexpr (std::is_same_v<T, trace_event::Byproduct>) {
                    for (const auto &t : ev.pauli) {
                        note(t.slot);
                    }
                } else {
                    note(ev.pauli.slot);
                }
            },
            e);
    }
    for (int s : outputs) {
        note(s);
    }
    return order;
}

void GadgetTrace::check_causal() const {
    std::set<BitId> known;
    auto require = [&](const Parity &p) {
        for (auto b : p.bits()) {
            if (!known.count(b)) {
                throw std::invalid_argument("trace condition references bit " + std::to_string(b) +
                                            " before it is produced");
            }
        }
    };
    for (const auto &e : events) {
        if (auto *m = std::get_if<trace_event::Measure>(&e)) {
            known.insert(m->bit);
        } else if (auto *b = std::get_if<trace_event::Byproduct>(&e)) {
            known.insert(b->bit);
        } else if (auto *g = std::get_if<trace_event::Gate>(&e)) {
            if (g->condition) {
                require(*g->condition);
            }
        } else if (auto *c = std::get_if<trace_event::PauliCorrection>(&e)) {
            require(c->condition);
        }
    }
}

}  // namespace latsurg
