#include "latsurg/frame.hpp"

namespace latsurg {

void PauliFrame::reset(int slot) {
    entries_.erase(slot);
}

void PauliFrame::apply(int slot, Pauli p, const Parity &when) {
    if (when.empty() || p == Pauli::I) {
        return;
    }
    auto &e = entries_[slot];
    auto v = static_cast<unsigned>(p);
    if (v & 1) {
        e.x ^= when;
    }
    if (v & 2) {
        e.z ^= when;
    }
    if (e.empty()) {
        entries_.erase(slot);
    }
}

Parity PauliFrame::flips(const std::vector<SlotPauli> &product) const {
    Parity out;
    for (const auto &term : product) {
        auto it = entries_.find(term.slot);
        if (it == entries_.end()) {
            continue;
        }
        if (anticommute(term.pauli, Pauli::X)) {
            out ^= it->second.x;
        }
        if (anticommute(term.pauli, Pauli::Z)) {
            out ^= it->second.z;
        }
    }
    return out;
}

void PauliFrame::conjugate(LogicalGate gate, int slot) {
    auto it = entries_.find(slot);
    if (it == entries_.end()) {
        return;
    }
    auto &e = it->second;
    switch (gate) {
        case LogicalGate::H:
            std::swap(e.x, e.z);
            break;
        case LogicalGate::S:
        case LogicalGate::S_DAG:
            // S X S^dag = Y up to sign; signs are irrelevant for a Pauli frame.
            e.z ^= e.x;
            break;
    }
}

std::vector<trace_event::PauliCorrection> PauliFrame::flush(int slot) {
    std::vector<trace_event::PauliCorrection> out;
    auto it = entries_.find(slot);
    if (it == entries_.end()) {
        return out;
    }
    if (!it->second.x.empty()) {
        out.push_back({{slot, Pauli::X}, it->second.x});
    }
    if (!it->second.z.empty()) {
        out.push_back({{slot, Pauli::Z}, it->second.z});
    }
    entries_.erase(it);
    return out;
}

PauliFrame::Entry PauliFrame::entry(int slot) const {
    auto it = entries_.find(slot);
    return it == entries_.end() ? Entry{} : it->second;
}

bool PauliFrame::clean() const {
    return entries_.empty();
}

}  // namespace latsurg
