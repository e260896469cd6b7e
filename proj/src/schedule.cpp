#include "latsurg/schedule.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace latsurg {

std::string role_name(PatchRole r) {
    switch (r) {
        case PatchRole::data:
            return "data";
        case PatchRole::ancilla:
            return "ancilla";
        case PatchRole::factory:
            return "factory";
        case PatchRole::workspace:
            return "workspace";
    }
    return "?";
}

std::vector<Cell> Patch::cells() const {
    if (!region.empty()) {
        return region;
    }
    std::vector<Cell> out;
    for (int r = 0; r < extent.h; ++r) {
        for (int c = 0; c < extent.w; ++c) {
            out.push_back({origin.col + c, origin.row + r});
        }
    }
    return out;
}

Pauli Patch::exposed_basis(Cell neighbour) const {
    bool vertical = neighbour.row < origin.row || neighbour.row >= origin.row + extent.h;
    Pauli facing = vertical ? Pauli::X : Pauli::Z;
    return rotated ? conjugate_basis(facing) : facing;
}

std::string op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::InitZ:
            return "InitZ";
        case OpKind::InitX:
            return "InitX";
        case OpKind::MeasureZ:
            return "MeasureZ";
        case OpKind::MeasureX:
            return "MeasureX";
        case OpKind::MergeMeasure:
            return "MergeMeasure";
        case OpKind::Split:
            return "Split";
        case OpKind::MultiBodyMeasure:
            return "MultiBodyMeasure";
        case OpKind::Rotate90:
            return "Rotate90";
        case OpKind::Expand:
            return "Expand";
        case OpKind::Contract:
            return "Contract";
        case OpKind::Move:
            return "Move";
        case OpKind::InjectT:
            return "InjectT";
        case OpKind::GateS:
            return "GateS";
        case OpKind::Hadamard:
            return "Hadamard";
        case OpKind::CNOT:
            return "CNOT";
        case OpKind::CZ:
            return "CZ";
        case OpKind::Swap:
            return "Swap";
        case OpKind::FrameUpdate:
            return "FrameUpdate";
    }
    return "?";
}

Round gate_s_duration(int d) {
    return std::min(d, 15);
}

Round nominal_duration(OpKind kind, int d) {
    switch (kind) {
        case OpKind::InitZ:
        case OpKind::InitX:
        case OpKind::MergeMeasure:
        case OpKind::MultiBodyMeasure:
        case OpKind::Expand:
        case OpKind::Contract:
        case OpKind::Move:
            return d;
        case OpKind::MeasureZ:
        case OpKind::MeasureX:
        case OpKind::Hadamard:
            return 1;
        case OpKind::Rotate90:
            return 3 * (d / 2);
        case OpKind::InjectT:
            return 3;
        case OpKind::GateS:
            return gate_s_duration(d);
        case OpKind::CNOT:
        case OpKind::CZ:
            return 2 * d;
        case OpKind::Swap:
            return 3 * d;
        case OpKind::Split:
        case OpKind::FrameUpdate:
            return 0;
    }
    return 0;
}

std::string bit_kind_name(BitKind k) {
    switch (k) {
        case BitKind::measurement:
            return "measurement";
        case BitKind::byproduct:
            return "byproduct";
        case BitKind::parity:
            return "parity";
    }
    return "?";
}

Round Schedule::total_rounds() const {
    Round t = 0;
    for (const auto &op : ops) {
        t = std::max(t, op.end_round());
    }
    return t;
}

Round Schedule::bit_available(BitId id) const {
    if (id >= bits.size()) {
        throw std::out_of_range("unknown classical bit " + std::to_string(id));
    }
    const auto &b = bits[id];
    if (b.kind == BitKind::parity) {
        Round t = 0;
        for (auto in : b.inputs) {
            t = std::max(t, bit_available(in));
        }
        return t;
    }
    return ops.at(b.op).end_round();
}

std::string conflict_type_name(Conflict::Type t) {
    switch (t) {
        case Conflict::Type::overlap:
            return "overlap";
        case Conflict::Type::occupied:
            return "occupied";
        case Conflict::Type::residency:
            return "residency";
        case Conflict::Type::out_of_bounds:
            return "out_of_bounds";
        case Conflict::Type::causality:
            return "causality";
    }
    return "?";
}

namespace {

bool intervals_overlap(Round a0, Round a1, Round b0, Round b1) {
    return a0 < a1 && b0 < b1 && a0 < b1 && b0 < a1;
}

}  // namespace

std::vector<Conflict> validate(const Schedule &s) {
    std::vector<Conflict> out;

    struct Use {
        Round begin;
        Round end;
        int index;
    };
    std::map<Cell, std::vector<Use>> op_uses;
    std::map<Cell, std::vector<Use>> residency_uses;

    for (size_t i = 0; i < s.ops.size(); ++i) {
        const auto &op = s.ops[i];
        for (const auto &c : op.cells) {
            if (!s.grid.contains(c)) {
                out.push_back({Conflict::Type::out_of_bounds, static_cast<int>(i), -1, c, "op cell outside grid"});
                continue;
            }
            if (op.duration_rounds > 0) {
                op_uses[c].push_back({op.start_round, op.end_round(), static_cast<int>(i)});
            }
        }
        if (op.condition_id) {
            Round ready = s.bit_available(*op.condition_id);
            if (ready > op.start_round) {
                out.push_back({Conflict::Type::causality, static_cast<int>(i), -1, std::nullopt,
                               "condition bit " + std::to_string(*op.condition_id) + " known at round " +
                                   std::to_string(ready) + " but op starts at " + std::to_string(op.start_round)});
            }
        }
    }
    for (size_t i = 0; i < s.residencies.size(); ++i) {
        const auto &r = s.residencies[i];
        for (const auto &c : r.cells) {
            if (!s.grid.contains(c)) {
                out.push_back({Conflict::Type::out_of_bounds, -1, -1, c, "patch cell outside grid"});
                continue;
            }
            residency_uses[c].push_back({r.begin, r.end, static_cast<int>(i)});
        }
    }

    for (auto &[cell, uses] : op_uses) {
        std::sort(uses.begin(), uses.end(), [](const Use &a, const Use &b) {
            return std::tie(a.begin, a.end, a.index) < std::tie(b.begin, b.end, b.index);
        });
        for (size_t a = 0; a < uses.size(); ++a) {
            for (size_t b = a + 1; b < uses.size() && uses[b].begin < uses[a].end; ++b) {
                out.push_back({Conflict::Type::overlap, uses[a].index, uses[b].index, cell,
                               "two ops share a cell in overlapping rounds"});
            }
        }
        auto rit = residency_uses.find(cell);
        if (rit == residency_uses.end()) {
            continue;
        }
        for (const auto &u : uses) {
            const auto &op = s.ops[u.index];
            for (const auto &ru : rit->second) {
                const auto &res = s.residencies[ru.index];
                bool own = std::find(op.operands.begin(), op.operands.end(), res.patch) != op.operands.end();
                if (!own && intervals_overlap(u.begin, u.end, ru.begin, ru.end)) {
                    out.push_back({Conflict::Type::occupied, u.index, -1, cell,
                                   "op runs over patch " + std::to_string(res.patch) + " that is not an operand"});
                }
            }
        }
    }
    for (auto &[cell, uses] : residency_uses) {
        for (size_t a = 0; a < uses.size(); ++a) {
            for (size_t b = a + 1; b < uses.size(); ++b) {
                if (intervals_overlap(uses[a].begin, uses[a].end, uses[b].begin, uses[b].end)) {
                    out.push_back({Conflict::Type::residency, -1, -1, cell, "two patches on one cell at once"});
                }
            }
        }
    }
    return out;
}

std::int64_t spacetime_volume(const Schedule &s) {
    std::int64_t v = 0;
    for (const auto &op : s.ops) {
        v += static_cast<std::int64_t>(op.cells.size()) * op.duration_rounds;
    }
    return v;
}

}  // namespace latsurg
