#include "latsurg/schedule_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace latsurg {

namespace {

ordered_json cells_json(const std::vector<Cell> &cells) {
    auto arr = ordered_json::array();
    for (auto c : cells) {
        arr.push_back(ordered_json::array({c.col, c.row}));
    }
    return arr;
}

}  // namespace

char op_kind_letter(OpKind k) {
    switch (k) {
    case OpKind::InitZ:
    case OpKind::InitX:
        return 'I';
    case OpKind::MeasureZ:
    case OpKind::MeasureX:
        return 'M';
    case OpKind::MergeMeasure:
        return 'G';
    case OpKind::Split:
        return 'P';
    case OpKind::MultiBodyMeasure:
        return 'B';
    case OpKind::Rotate90:
        return 'R';
    case OpKind::Expand:
        return 'E';
    case OpKind::Contract:
        return 'C';
    case OpKind::Move:
        return 'V';
    case OpKind::InjectT:
        return 'T';
    case OpKind::GateS:
        return 'S';
    case OpKind::Hadamard:
        return 'H';
    case OpKind::CNOT:
        return 'N';
    case OpKind::CZ:
        return 'Z';
    case OpKind::Swap:
        return 'W';
    case OpKind::FrameUpdate:
        return 'F';
    }
    return '?';
}

ordered_json op_to_json(const SurgeryOp &op) {
    ordered_json j;
    j["kind"] = op_kind_name(op.kind);
    j["operands"] = op.operands;
    j["start_round"] = op.start_round;
    j["duration_rounds"] = op.duration_rounds;
    j["cells"] = cells_json(op.cells);
    j["byproduct_ids"] = op.byproduct_ids;
    j["condition_id"] = op.condition_id ? ordered_json(*op.condition_id) : ordered_json(nullptr);
    std::string bases;
    for (auto b : op.bases) {
        bases.push_back(pauli_char(b));
    }
    j["bases"] = bases;
    j["condition_value"] = op.condition_value;
    j["note"] = op.note;
    return j;
}

ordered_json schedule_to_json(const Schedule &s) {
    ordered_json j;
    j["grid"] = {{"cols", s.grid.cols}, {"rows", s.grid.rows}};
    j["total_rounds"] = s.total_rounds();
    j["spacetime_volume"] = spacetime_volume(s);

    auto patches = ordered_json::array();
    for (const auto &p : s.patches) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["d"] = p.d;
        pj["role"] = role_name(p.role);
        pj["magic"] = p.magic;
        pj["cells"] = cells_json(p.cells());
        patches.push_back(std::move(pj));
    }
    j["patches"] = std::move(patches);

    auto ops = ordered_json::array();
    for (const auto &op : s.ops) {
        ops.push_back(op_to_json(op));
    }
    j["ops"] = std::move(ops);

    auto bits = ordered_json::array();
    for (const auto &b : s.bits) {
        ordered_json bj;
        bj["id"] = b.id;
        bj["kind"] = bit_kind_name(b.kind);
        bj["op"] = b.op;
        bj["inputs"] = b.inputs;
        bits.push_back(std::move(bj));
    }
    j["bits"] = std::move(bits);

    auto conflicts = ordered_json::array();
    for (const auto &c : validate(s)) {
        ordered_json cj;
        cj["type"] = conflict_type_name(c.type);
        cj["op_a"] = c.op_a;
        cj["op_b"] = c.op_b;
        cj["message"] = c.message;
        conflicts.push_back(std::move(cj));
    }
    j["conflicts"] = std::move(conflicts);
    return j;
}

std::string render_gantt(const Schedule &s, Round bucket) {
    const Round total = s.total_rounds();
    if (bucket <= 0) {
        bucket = std::max<Round>(1, (total + 99) / 100);
    }
    const Round columns = total == 0 ? 0 : (total + bucket - 1) / bucket;
    std::ostringstream out;
    out << "rounds 0.." << total << ", " << bucket << " round(s) per column\n";
    for (int row = 0; row < s.grid.rows; ++row) {
        std::string line(static_cast<size_t>(columns), '.');
        for (Round c = 0; c < columns; ++c) {
            const Round lo = c * bucket, hi = lo + bucket;
            std::map<char, Round> weight;
            for (const auto &op : s.ops) {
                if (op.duration_rounds == 0 || op.end_round() <= lo || op.start_round >= hi) {
                    continue;
                }
                auto on_row = std::count_if(op.cells.begin(), op.cells.end(), [&](Cell x) { return x.row == row; });
                if (on_row == 0) {
                    continue;
                }
                Round overlap = std::min(hi, op.end_round()) - std::max(lo, op.start_round);
                weight[op_kind_letter(op.kind)] += overlap * on_row;
            }
            if (!weight.empty()) {
                auto best = std::max_element(weight.begin(), weight.end(),
                                             [](const auto &a, const auto &b) { return a.second < b.second; });
                line[static_cast<size_t>(c)] = best->first;
            }
        }
        out << "row " << row << (row < 10 ? "  |" : " |") << line << "|\n";
    }
    out << "legend: I init, M measure, G merge, B multi-body, R rotate, E expand, C contract, V move, "
           "T inject, S phase, H hadamard, . idle\n";
    return out.str();
}

}  // namespace latsurg
