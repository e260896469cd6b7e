#include "latsurg/builder.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace latsurg {

namespace {

bool overlaps(Round a0, Round a1, Round b0, Round b1) {
    return a0 < a1 && b0 < b1 && a0 < b1 && b0 < a1;
}

std::array<Cell, 4> neighbours(Cell c) {
    // Sorted by (col, row).
    return {Cell{c.col - 1, c.row}, Cell{c.col, c.row - 1}, Cell{c.col, c.row + 1}, Cell{c.col + 1, c.row}};
}

bool touches(Cell c, const std::vector<Cell> &group) {
    return std::any_of(group.begin(), group.end(), [&](Cell g) { return adjacent(c, g); });
}

bool touches(const std::vector<Cell> &a, const std::vector<Cell> &b) {
    return std::any_of(a.begin(), a.end(), [&](Cell c) { return touches(c, b); });
}

bool contains(const std::vector<PatchId> &v, PatchId id) {
    return std::find(v.begin(), v.end(), id) != v.end();
}

void append(std::vector<Cell> &dst, const std::vector<Cell> &src) {
    for (auto c : src) {
        if (std::find(dst.begin(), dst.end(), c) == dst.end()) {
            dst.push_back(c);
        }
    }
}

bool connected(const std::vector<Cell> &region) {
    if (region.empty()) {
        return false;
    }
    std::vector<Cell> seen{region.front()};
    for (size_t i = 0; i < seen.size(); ++i) {
        for (auto n : neighbours(seen[i])) {
            if (std::find(region.begin(), region.end(), n) != region.end() &&
                std::find(seen.begin(), seen.end(), n) == seen.end()) {
                seen.push_back(n);
            }
        }
    }
    return seen.size() == region.size();
}

}  // namespace

ScheduleBuilder::ScheduleBuilder(GridSize grid) {
    if (grid.cols <= 0 || grid.rows <= 0) {
        throw std::invalid_argument("grid must have at least one cell");
    }
    schedule_.grid = grid;
    cell_ops_.resize(static_cast<size_t>(grid.cols) * grid.rows);
    cell_residencies_.resize(cell_ops_.size());
}

Patch &ScheduleBuilder::patch_mut(PatchId id) {
    return schedule_.patches.at(id);
}

int ScheduleBuilder::slot_of(PatchId id) const {
    return schedule_.grid.index(patch(id).origin);
}

Round ScheduleBuilder::ready(PatchId id) const {
    return ready_.at(id);
}

void ScheduleBuilder::require_live(PatchId id) const {
    if (id < 0 || id >= static_cast<PatchId>(schedule_.patches.size())) {
        throw std::invalid_argument("unknown patch " + std::to_string(id));
    }
    if (!patch(id).live) {
        throw std::invalid_argument("patch " + std::to_string(id) + " has already been measured out");
    }
}

PatchId ScheduleBuilder::new_patch(std::vector<Cell> cells, int d, PatchRole role) {
    CodeDistance{d};
    for (auto c : cells) {
        if (!schedule_.grid.contains(c)) {
            throw std::invalid_argument("patch cell outside the grid");
        }
    }
    Patch p;
    p.id = static_cast<PatchId>(schedule_.patches.size());
    p.d = d;
    p.role = role;
    std::sort(cells.begin(), cells.end());
    p.origin = cells.front();
    if (cells.size() > 1) {
        p.region = std::move(cells);
    }
    schedule_.patches.push_back(p);
    ready_.push_back(0);
    open_residency_.push_back(-1);
    return p.id;
}

PatchId ScheduleBuilder::add_patch(Cell origin, int d, PatchRole role, Round available_from) {
    if (!can_settle({origin}, available_from, {})) {
        throw std::invalid_argument("cell is already occupied");
    }
    PatchId id = new_patch({origin}, d, role);
    ready_[id] = available_from;
    open_residency(id, available_from);
    input_patches_.push_back(id);
    trace_.inputs.push_back(slot_of(id));
    return id;
}

PatchId ScheduleBuilder::add_magic_patch(Cell origin, int d, Round available_from) {
    if (!can_settle({origin}, available_from, {})) {
        throw std::invalid_argument("cell is already occupied");
    }
    PatchId id = new_patch({origin}, d, PatchRole::factory);
    patch_mut(id).magic = true;
    ready_[id] = available_from;
    open_residency(id, available_from);
    trace_.magic_slots.push_back(slot_of(id));
    return id;
}

GadgetTrace ScheduleBuilder::gadget_trace() const {
    GadgetTrace t = trace_;
    t.outputs.clear();
    for (auto id : input_patches_) {
        t.outputs.push_back(slot_of(id));
    }
    return t;
}

bool ScheduleBuilder::cell_free(Cell c, Round begin, Round end, const std::vector<PatchId> &allowed) const {
    if (!schedule_.grid.contains(c)) {
        return false;
    }
    auto idx = static_cast<size_t>(schedule_.grid.index(c));
    for (int o : cell_ops_[idx]) {
        const auto &op = schedule_.ops[o];
        if (overlaps(begin, end, op.start_round, op.end_round())) {
            return false;
        }
    }
    for (int r : cell_residencies_[idx]) {
        const auto &res = schedule_.residencies[r];
        if (!contains(allowed, res.patch) && overlaps(begin, end, res.begin, res.end)) {
            return false;
        }
    }
    return true;
}

bool ScheduleBuilder::cells_free(const std::vector<Cell> &cells, Round begin, Round end,
                                 const std::vector<PatchId> &allowed) const {
    return std::all_of(cells.begin(), cells.end(), [&](Cell c) { return cell_free(c, begin, end, allowed); });
}

bool ScheduleBuilder::can_settle(const std::vector<Cell> &cells, Round begin,
                                 const std::vector<PatchId> &allowed) const {
    return cells_free(cells, begin, kOpenEnd, allowed);
}

std::optional<std::vector<Cell>> ScheduleBuilder::route(const std::vector<std::vector<Cell>> &terminals, Round begin,
                                                        Round end, const std::vector<Cell> *within) const {
    std::vector<Cell> blocked;
    for (const auto &t : terminals) {
        append(blocked, t);
    }
    auto usable = [&](Cell c) {
        return schedule_.grid.contains(c) && std::find(blocked.begin(), blocked.end(), c) == blocked.end() &&
               (!within || std::find(within->begin(), within->end(), c) != within->end()) &&
               cell_free(c, begin, end, {});
    };

    std::vector<Cell> tree;
    for (size_t j = 1; j < terminals.size(); ++j) {
        if (!tree.empty() && touches(tree, terminals[j])) {
            continue;
        }
        std::vector<Cell> frontier;
        if (tree.empty()) {
            for (auto c : terminals[0]) {
                for (auto n : neighbours(c)) {
                    if (usable(n)) {
                        append(frontier, {n});
                    }
                }
            }
        } else {
            frontier = tree;
        }
        std::sort(frontier.begin(), frontier.end());
        std::map<Cell, Cell> parent;
        std::vector<Cell> seen = frontier;
        seen.insert(seen.end(), tree.begin(), tree.end());
        std::optional<Cell> goal;
        while (!frontier.empty() && !goal) {
            for (auto c : frontier) {
                if (touches(c, terminals[j])) {
                    goal = c;
                    break;
                }
            }
            if (goal) {
                break;
            }
            std::vector<Cell> next;
            for (auto c : frontier) {
                for (auto n : neighbours(c)) {
                    if (usable(n) && std::find(seen.begin(), seen.end(), n) == seen.end()) {
                        seen.push_back(n);
                        parent[n] = c;
                        next.push_back(n);
                    }
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
        if (!goal) {
            return std::nullopt;
        }
        for (Cell c = *goal;;) {
            append(tree, {c});
            auto it = parent.find(c);
            if (it == parent.end()) {
                break;
            }
            c = it->second;
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

std::optional<Cell> ScheduleBuilder::spare_cell(const Patch &p, Round begin, Round end) const {
    Cell o = p.origin;
    std::array<Cell, 4> order{Cell{o.col, o.row + 1}, Cell{o.col - 1, o.row}, Cell{o.col + 1, o.row},
                              Cell{o.col, o.row - 1}};
    for (auto c : order) {
        if (cell_free(c, begin, end, {})) {
            return c;
        }
    }
    return std::nullopt;
}

template <typename Feasible>
Round ScheduleBuilder::find_start(Round not_before, Feasible &&feasible) const {
    Round t = not_before;
    for (;;) {
        if (feasible(t)) {
            return t;
        }
        auto it = events_.upper_bound(t);
        if (it == events_.end()) {
            throw NoRoute("no conflict-free placement exists on a " + std::to_string(schedule_.grid.cols) + "x" +
                          std::to_string(schedule_.grid.rows) + " grid");
        }
        t = *it;
    }
}

int ScheduleBuilder::emit(SurgeryOp op) {
    int idx = static_cast<int>(schedule_.ops.size());
    if (op.duration_rounds > 0) {
        for (auto c : op.cells) {
            cell_ops_[static_cast<size_t>(schedule_.grid.index(c))].push_back(idx);
        }
    }
    events_.insert(op.end_round());
    for (auto p : op.operands) {
        ready_[p] = std::max(ready_[p], op.end_round());
    }
    schedule_.ops.push_back(std::move(op));
    return idx;
}

BitId ScheduleBuilder::new_bit(BitKind kind, int op) {
    auto id = static_cast<BitId>(schedule_.bits.size());
    schedule_.bits.push_back({id, kind, op, {}});
    if (op >= 0) {
        schedule_.ops[op].byproduct_ids.push_back(id);
    }
    return id;
}

BitId ScheduleBuilder::derive_parity(const Parity &parity) {
    if (parity.empty()) {
        throw std::invalid_argument("cannot condition on an empty parity");
    }
    if (parity.bits().size() == 1) {
        return parity.bits().front();
    }
    auto it = parity_bits_.find(parity.bits());
    if (it != parity_bits_.end()) {
        return it->second;
    }
    BitId id = new_bit(BitKind::parity, -1);
    schedule_.bits[id].inputs = parity.bits();
    parity_bits_.emplace(parity.bits(), id);
    return id;
}

void ScheduleBuilder::open_residency(PatchId patch, Round begin) {
    int idx = static_cast<int>(schedule_.residencies.size());
    schedule_.residencies.push_back({patch, this->patch(patch).cells(), begin, kOpenEnd});
    for (auto c : schedule_.residencies.back().cells) {
        cell_residencies_[static_cast<size_t>(schedule_.grid.index(c))].push_back(idx);
    }
    open_residency_[patch] = idx;
}

void ScheduleBuilder::close_residency(PatchId patch, Round end) {
    int idx = open_residency_[patch];
    if (idx < 0) {
        return;
    }
    schedule_.residencies[idx].end = end;
    events_.insert(end);
    open_residency_[patch] = -1;
}

void ScheduleBuilder::record(TraceEvent e) {
    if (trace_enabled_) {
        trace_.events.push_back(std::move(e));
    }
}

void ScheduleBuilder::flush_frame(PatchId patch, Round at) {
    for (auto &corr : frame_.flush(slot_of(patch))) {
        SurgeryOp op;
        op.kind = OpKind::FrameUpdate;
        op.operands = {patch};
        op.bases = {corr.pauli.pauli};
        op.condition_id = derive_parity(corr.condition);
        op.start_round = std::max(at, schedule_.bit_available(*op.condition_id));
        op.note = "frame";
        emit(std::move(op));
        record(corr);
    }
}

Parity ScheduleBuilder::merge(const std::vector<OperandBasis> &operands, const std::vector<Cell> &extra_cells,
                              Round start, Round duration, std::vector<BitId> &bits) {
    SurgeryOp op;
    op.kind = operands.size() == 2 ? OpKind::MergeMeasure : OpKind::MultiBodyMeasure;
    std::vector<SlotPauli> product;
    for (const auto &o : operands) {
        op.operands.push_back(o.patch);
        op.bases.push_back(o.basis);
        append(op.cells, patch(o.patch).cells());
        product.push_back({slot_of(o.patch), o.basis});
    }
    append(op.cells, extra_cells);
    op.start_round = start;
    op.duration_rounds = duration;
    int idx = emit(std::move(op));

    BitId m = new_bit(BitKind::measurement, idx);
    bits.push_back(m);
    record(trace_event::Measure{product, m});
    Parity outcome = Parity(m) ^ frame_.flips(product);
    for (size_t i = 0; i + 1 < operands.size(); ++i) {
        BitId e = new_bit(BitKind::byproduct, idx);
        bits.push_back(e);
        record(trace_event::Byproduct{{product[i]}, e});
        frame_.apply(product[i].slot, product[i].pauli, Parity(e));
    }
    return outcome;
}

Parity ScheduleBuilder::destructive_measure(PatchId id, Pauli basis, Round start, Round duration,
                                            const std::string &note, std::vector<BitId> &bits) {
    SurgeryOp op;
    op.kind = basis == Pauli::X ? OpKind::MeasureX : OpKind::MeasureZ;
    op.operands = {id};
    op.bases = {basis};
    op.cells = patch(id).cells();
    op.start_round = start;
    op.duration_rounds = duration;
    op.note = note;
    int idx = emit(std::move(op));

    int slot = slot_of(id);
    std::vector<SlotPauli> product{{slot, basis}};
    BitId m = new_bit(BitKind::measurement, idx);
    bits.push_back(m);
    record(trace_event::Measure{product, m});
    Parity outcome = Parity(m) ^ frame_.flips(product);
    frame_.reset(slot);
    close_residency(id, start + duration);
    patch_mut(id).live = false;
    return outcome;
}

void ScheduleBuilder::relocate(PatchId id, Cell dest, int op, std::vector<BitId> &bits) {
    int from = slot_of(id);
    int to = schedule_.grid.index(dest);
    record(trace_event::Init{to, Pauli::Z});
    frame_.reset(to);

    std::vector<SlotPauli> xx{{from, Pauli::X}, {to, Pauli::X}};
    BitId m1 = new_bit(BitKind::measurement, op);
    record(trace_event::Measure{xx, m1});
    Parity c1 = Parity(m1) ^ frame_.flips(xx);

    BitId e = new_bit(BitKind::byproduct, op);
    record(trace_event::Byproduct{{{from, Pauli::X}}, e});
    frame_.apply(from, Pauli::X, Parity(e));

    std::vector<SlotPauli> z{{from, Pauli::Z}};
    BitId m2 = new_bit(BitKind::measurement, op);
    record(trace_event::Measure{z, m2});
    Parity c2 = Parity(m2) ^ frame_.flips(z);

    frame_.reset(from);
    frame_.apply(to, Pauli::Z, c1);
    frame_.apply(to, Pauli::X, c2);
    bits.insert(bits.end(), {m1, e, m2});
    patch_mut(id).origin = dest;
}

Fragment ScheduleBuilder::finish(Round start, size_t first_op, std::vector<BitId> bits) {
    Fragment f;
    f.start = start;
    f.end = start;
    f.end_if_untriggered = start;
    f.first_op = first_op;
    f.op_count = schedule_.ops.size() - first_op;
    for (size_t i = first_op; i < schedule_.ops.size(); ++i) {
        const auto &op = schedule_.ops[i];
        f.end = std::max(f.end, op.end_round());
        bool conditional_clifford = op.condition_id && op.kind != OpKind::FrameUpdate;
        if (!conditional_clifford) {
            f.end_if_untriggered = std::max(f.end_if_untriggered, op.end_round());
        }
    }
    f.bits = std::move(bits);
    return f;
}

Fragment ScheduleBuilder::init(Cell cell, int d, PatchRole role, Pauli basis, Round not_before, bool transversal) {
    if (basis != Pauli::X && basis != Pauli::Z) {
        throw std::invalid_argument("init basis must be X or Z");
    }
    CodeDistance{d};
    Round dur = transversal ? 0 : d;
    Round t = find_start(not_before, [&](Round t) {
        return cell_free(cell, t, t + dur, {}) && can_settle({cell}, t, {});
    });
    size_t first = schedule_.ops.size();
    PatchId id = new_patch({cell}, d, role);
    ready_[id] = t;
    open_residency(id, t);

    SurgeryOp op;
    op.kind = basis == Pauli::X ? OpKind::InitX : OpKind::InitZ;
    op.operands = {id};
    op.bases = {basis};
    op.cells = {cell};
    op.start_round = t;
    op.duration_rounds = dur;
    if (transversal) {
        op.note = "absorbed";
    }
    emit(std::move(op));
    record(trace_event::Init{slot_of(id), basis});
    frame_.reset(slot_of(id));
    auto f = finish(t, first, {});
    f.patch = id;
    return f;
}

Fragment ScheduleBuilder::measure(PatchId id, Pauli basis, Round not_before) {
    require_live(id);
    if (basis != Pauli::X && basis != Pauli::Z) {
        throw std::invalid_argument("measurement basis must be X or Z");
    }
    auto cells = patch(id).cells();
    Round t = find_start(std::max(not_before, ready_[id]),
                         [&](Round t) { return cells_free(cells, t, t + 1, {id}); });
    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    Parity out = destructive_measure(id, basis, t, 1, "", bits);
    auto f = finish(t, first, std::move(bits));
    f.outcomes.push_back(out);
    return f;
}

Fragment ScheduleBuilder::move(PatchId id, Cell dest, Round not_before) {
    require_live(id);
    const Patch &p = patch(id);
    if (p.cells().size() != 1) {
        throw std::invalid_argument("only single-cell patches can be moved");
    }
    if (dest == p.origin) {
        throw std::invalid_argument("move destination equals the current cell");
    }
    if (!schedule_.grid.contains(dest)) {
        throw std::invalid_argument("move destination outside the grid");
    }
    Cell src = p.origin;
    Round d = p.d;
    std::vector<Cell> path;
    Round t = find_start(std::max(not_before, ready_[id]), [&](Round t) {
        if (!cell_free(src, t, t + d, {id}) || !cell_free(dest, t, t + d, {}) || !can_settle({dest}, t + d, {})) {
            return false;
        }
        if (adjacent(src, dest)) {
            path.clear();
            return true;
        }
        auto r = route({{src}, {dest}}, t, t + d);
        if (!r) {
            return false;
        }
        path = *r;
        return true;
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    close_residency(id, t);
    SurgeryOp op;
    op.kind = OpKind::Move;
    op.operands = {id};
    op.cells = {src};
    append(op.cells, path);
    append(op.cells, {dest});
    op.start_round = t;
    op.duration_rounds = d;
    int idx = emit(std::move(op));
    relocate(id, dest, idx, bits);
    open_residency(id, t + d);
    flush_frame(id, t + d);
    return finish(t, first, std::move(bits));
}

Fragment ScheduleBuilder::rotate(PatchId id, Round not_before) {
    require_live(id);
    auto cells = patch(id).cells();
    Round r = nominal_duration(OpKind::Rotate90, patch(id).d);
    Round t = find_start(std::max(not_before, ready_[id]),
                         [&](Round t) { return cells_free(cells, t, t + r, {id}); });
    size_t first = schedule_.ops.size();
    SurgeryOp op;
    op.kind = OpKind::Rotate90;
    op.operands = {id};
    op.cells = cells;
    op.start_round = t;
    op.duration_rounds = r;
    emit(std::move(op));
    patch_mut(id).rotated = !patch(id).rotated;
    return finish(t, first, {});
}

Fragment ScheduleBuilder::inject_t(Cell cell, int d_inject, Round not_before) {
    CodeDistance{d_inject};
    Round dur = nominal_duration(OpKind::InjectT, d_inject);
    Round t = find_start(not_before, [&](Round t) { return can_settle({cell}, t, {}); });
    size_t first = schedule_.ops.size();
    PatchId id = new_patch({cell}, d_inject, PatchRole::factory);
    patch_mut(id).magic = true;
    open_residency(id, t);
    SurgeryOp op;
    op.kind = OpKind::InjectT;
    op.operands = {id};
    op.cells = {cell};
    op.start_round = t;
    op.duration_rounds = dur;
    emit(std::move(op));
    if (trace_enabled_) {
        trace_.magic_slots.push_back(slot_of(id));
    }
    auto f = finish(t, first, {});
    f.patch = id;
    return f;
}

Fragment ScheduleBuilder::expand(PatchId id, int d_to, Round not_before) {
    require_live(id);
    CodeDistance{d_to};
    if (d_to < patch(id).d) {
        throw std::invalid_argument("expand target distance is smaller than the current one");
    }
    auto cells = patch(id).cells();
    Round t = find_start(std::max(not_before, ready_[id]),
                         [&](Round t) { return cells_free(cells, t, t + d_to, {id}); });
    size_t first = schedule_.ops.size();
    SurgeryOp op;
    op.kind = OpKind::Expand;
    op.operands = {id};
    op.cells = cells;
    op.start_round = t;
    op.duration_rounds = d_to;
    emit(std::move(op));
    patch_mut(id).d = d_to;
    return finish(t, first, {});
}

Fragment ScheduleBuilder::import_magic(Cell cell, int d, Round duration, Round not_before) {
    CodeDistance{d};
    if (duration < 0) {
        throw std::invalid_argument("import duration must be non-negative");
    }
    Round t = find_start(not_before, [&](Round t) { return can_settle({cell}, t, {}); });
    size_t first = schedule_.ops.size();
    PatchId id = new_patch({cell}, d, PatchRole::factory);
    patch_mut(id).magic = true;
    ready_[id] = t;
    open_residency(id, t);
    SurgeryOp op;
    op.kind = OpKind::Move;
    op.operands = {id};
    op.cells = {cell};
    op.start_round = t;
    op.duration_rounds = duration;
    op.note = "import";
    emit(std::move(op));
    if (trace_enabled_) {
        trace_.magic_slots.push_back(slot_of(id));
    }
    auto f = finish(t, first, {});
    f.patch = id;
    return f;
}

Round ScheduleBuilder::retire(PatchId id) {
    require_live(id);
    Round at = ready_[id];
    close_residency(id, at);
    frame_.reset(slot_of(id));
    patch_mut(id).live = false;
    return at;
}

Fragment ScheduleBuilder::cnot(PatchId control, const std::vector<PatchId> &targets, Round not_before,
                               std::optional<std::vector<Cell>> ancilla_region) {
    return two_qubit_macro(control, targets, Pauli::X, not_before, std::move(ancilla_region));
}

Fragment ScheduleBuilder::cz(PatchId control, const std::vector<PatchId> &targets, Round not_before,
                             std::optional<std::vector<Cell>> ancilla_region) {
    return two_qubit_macro(control, targets, Pauli::Z, not_before, std::move(ancilla_region));
}

Fragment ScheduleBuilder::two_qubit_macro(PatchId control, const std::vector<PatchId> &targets, Pauli target_basis,
                                          Round not_before, std::optional<std::vector<Cell>> ancilla_region) {
    if (targets.empty()) {
        throw std::invalid_argument("at least one target is required");
    }
    require_live(control);
    std::vector<PatchId> seen{control};
    for (auto t : targets) {
        require_live(t);
        if (contains(seen, t)) {
            throw std::invalid_argument(t == control ? "control and target must differ"
                                                     : "target listed twice");
        }
        seen.push_back(t);
    }
    Round d = patch(control).d;
    Round nb = not_before;
    for (auto p : seen) {
        nb = std::max(nb, ready_[p]);
    }

    std::vector<std::vector<Cell>> terminals;
    for (auto p : seen) {
        terminals.push_back(patch(p).cells());
    }
    if (ancilla_region) {
        auto &reg = *ancilla_region;
        if (!connected(reg)) {
            throw std::invalid_argument("ancilla region must be a connected set of cells");
        }
        for (const auto &term : terminals) {
            if (!touches(reg, term)) {
                throw std::invalid_argument("ancilla region must border the control and every target");
            }
            for (auto c : term) {
                if (std::find(reg.begin(), reg.end(), c) != reg.end()) {
                    throw std::invalid_argument("ancilla region overlaps an operand");
                }
            }
        }
    }

    std::vector<Cell> region;
    Round t = find_start(nb, [&](Round t) {
        if (!cells_free(terminals[0], t, t + d, {control})) {
            return false;
        }
        for (size_t i = 1; i < seen.size(); ++i) {
            if (!cells_free(terminals[i], t + d, t + 2 * d, {seen[i]})) {
                return false;
            }
        }
        if (ancilla_region) {
            region = *ancilla_region;
            return cells_free(region, t, t + 2 * d, {});
        }
        auto r = route(terminals, t, t + 2 * d);
        if (!r || r->empty()) {
            return false;
        }
        region = *r;
        return true;
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    PatchId anc = new_patch(region, static_cast<int>(d), PatchRole::ancilla);
    ready_[anc] = t;
    open_residency(anc, t);

    SurgeryOp init;
    init.kind = OpKind::InitX;
    init.operands = {anc};
    init.bases = {Pauli::X};
    init.cells = patch(anc).cells();
    init.start_round = t;
    init.note = "absorbed";
    emit(std::move(init));
    record(trace_event::Init{slot_of(anc), Pauli::X});
    frame_.reset(slot_of(anc));

    Parity c1 = merge({{control, Pauli::Z}, {anc, Pauli::Z}}, {}, t, d, bits);
    std::vector<OperandBasis> second{{anc, Pauli::X}};
    for (auto tg : targets) {
        second.push_back({tg, target_basis});
    }
    Parity c2 = merge(second, {}, t + d, d, bits);
    Parity c3 = destructive_measure(anc, Pauli::Z, t + 2 * d, 0, "absorbed", bits);

    for (auto tg : targets) {
        frame_.apply(slot_of(tg), target_basis, c1 ^ c3);
    }
    frame_.apply(slot_of(control), Pauli::Z, c2);
    for (auto p : seen) {
        flush_frame(p, t + 2 * d);
    }
    auto f = finish(t, first, std::move(bits));
    f.outcomes = {c1, c2, c3};
    return f;
}

Fragment ScheduleBuilder::t_gadget(PatchId target, PatchId magic, Round not_before, bool dagger) {
    require_live(target);
    require_live(magic);
    if (target == magic) {
        throw std::invalid_argument("target and magic patch must differ");
    }
    if (!patch(magic).magic) {
        throw NoMagicState("patch " + std::to_string(magic) + " does not hold a |T> state");
    }
    Round d = patch(target).d;
    Round gs = gate_s_duration(static_cast<int>(d));
    auto tcells = patch(target).cells();
    auto mcells = patch(magic).cells();
    std::vector<Cell> path;
    Round t = find_start(std::max({not_before, ready_[target], ready_[magic]}), [&](Round t) {
        if (!cells_free(tcells, t, t + d + 1 + gs, {target}) || !cells_free(mcells, t, t + d + 1, {magic})) {
            return false;
        }
        if (touches(tcells, mcells)) {
            path.clear();
            return true;
        }
        auto r = route({tcells, mcells}, t, t + d);
        if (!r) {
            return false;
        }
        path = *r;
        return true;
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    Parity c1 = merge({{target, Pauli::Z}, {magic, Pauli::Z}}, path, t, d, bits);
    Parity c2 = destructive_measure(magic, Pauli::X, t + d, 1, "", bits);
    frame_.apply(slot_of(target), Pauli::Z, c2);
    flush_frame(target, t + d + 1);

    SurgeryOp s;
    s.kind = OpKind::GateS;
    s.operands = {target};
    s.cells = tcells;
    s.start_round = t + d + 1;
    s.duration_rounds = gs;
    s.condition_id = derive_parity(c1);
    s.condition_value = !dagger;
    if (d > 15) {
        s.note = "clipped_to_d15";
    }
    emit(std::move(s));
    record(trace_event::Gate{dagger ? LogicalGate::S_DAG : LogicalGate::S, slot_of(target), c1, !dagger});

    auto f = finish(t, first, std::move(bits));
    f.outcomes = {c1, c2};
    return f;
}

Fragment ScheduleBuilder::gate_s(PatchId id, bool dagger, Round not_before, std::optional<Parity> condition,
                                 bool trigger_value) {
    require_live(id);
    Round d = patch(id).d;
    Round gs = gate_s_duration(static_cast<int>(d));
    auto cells = patch(id).cells();
    Round nb = std::max(not_before, ready_[id]);
    std::optional<BitId> cond_bit;
    if (condition) {
        cond_bit = derive_parity(*condition);
        nb = std::max(nb, schedule_.bit_available(*cond_bit));
    }
    Round t = find_start(nb, [&](Round t) { return cells_free(cells, t, t + gs, {id}); });
    size_t first = schedule_.ops.size();
    auto g = dagger ? LogicalGate::S_DAG : LogicalGate::S;
    if (condition) {
        flush_frame(id, t);
    } else {
        frame_.conjugate(g, slot_of(id));
    }
    SurgeryOp s;
    s.kind = OpKind::GateS;
    s.operands = {id};
    s.cells = cells;
    s.start_round = t;
    s.duration_rounds = gs;
    s.condition_id = cond_bit;
    s.condition_value = trigger_value;
    if (d > 15) {
        s.note = "clipped_to_d15";
    }
    emit(std::move(s));
    record(trace_event::Gate{g, slot_of(id), condition, trigger_value});
    return finish(t, first, {});
}

Fragment ScheduleBuilder::hadamard(PatchId target, Round not_before, bool return_home, std::optional<Cell> spare) {
    require_live(target);
    const Patch &p = patch(target);
    if (p.cells().size() != 1) {
        throw std::invalid_argument("hadamard needs a single-cell patch");
    }
    if (spare && (!adjacent(*spare, p.origin) || !schedule_.grid.contains(*spare))) {
        throw std::invalid_argument("spare cell must be an in-grid neighbour of the target");
    }
    Round d = p.d;
    Cell home = p.origin;
    Round body = return_home ? 4 * d : 2 * d;
    Cell chosen{};
    Round t = find_start(std::max(not_before, ready_[target]), [&](Round t) {
        if (!cell_free(home, t, t + 1 + body, {target})) {
            return false;
        }
        std::optional<Cell> s = spare;
        if (s) {
            if (!cell_free(*s, t + 1, t + 1 + body, {})) {
                return false;
            }
        } else {
            s = spare_cell(p, t + 1, t + 1 + body);
            if (!s) {
                return false;
            }
        }
        if (!return_home && !can_settle({*s}, t + 1 + 2 * d, {})) {
            return false;
        }
        chosen = *s;
        return true;
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    SurgeryOp h;
    h.kind = OpKind::Hadamard;
    h.operands = {target};
    h.cells = {home};
    h.start_round = t;
    h.duration_rounds = 1;
    emit(std::move(h));
    record(trace_event::Gate{LogicalGate::H, slot_of(target), std::nullopt, true});
    frame_.conjugate(LogicalGate::H, slot_of(target));

    SurgeryOp ex;
    ex.kind = OpKind::Expand;
    ex.operands = {target};
    ex.cells = {home, chosen};
    ex.start_round = t + 1;
    ex.duration_rounds = d;
    emit(ex);
    SurgeryOp co = ex;
    co.kind = OpKind::Contract;
    co.start_round = t + 1 + d;
    int co_idx = emit(std::move(co));
    relocate(target, chosen, co_idx, bits);

    if (return_home) {
        SurgeryOp back;
        back.kind = OpKind::Move;
        back.operands = {target};
        back.cells = {chosen, home};
        back.start_round = t + 1 + 2 * d;
        back.duration_rounds = 2 * d;
        back.note = "two-stage return";
        int back_idx = emit(std::move(back));
        relocate(target, home, back_idx, bits);
    } else {
        close_residency(target, t + 1);
        open_residency(target, t + 1 + 2 * d);
    }
    flush_frame(target, t + 1 + body);
    return finish(t, first, std::move(bits));
}

Fragment ScheduleBuilder::multibody_measure(const std::vector<std::pair<PatchId, Pauli>> &operands,
                                            Round not_before, std::optional<std::vector<Cell>> channel) {
    if (operands.empty()) {
        throw std::invalid_argument("multi-body measurement needs at least one operand");
    }
    std::vector<PatchId> ids;
    for (const auto &[id, basis] : operands) {
        require_live(id);
        if (basis != Pauli::X && basis != Pauli::Z) {
            throw std::invalid_argument("multi-body measurement bases must be X or Z");
        }
        if (contains(ids, id)) {
            throw std::invalid_argument("patch listed twice in a multi-body measurement");
        }
        ids.push_back(id);
    }
    if (operands.size() == 1) {
        return measure(operands[0].first, operands[0].second, not_before);
    }

    int d = 0;
    Round nb = not_before;
    std::vector<std::vector<Cell>> terminals;
    for (auto id : ids) {
        d = std::max(d, patch(id).d);
        nb = std::max(nb, ready_[id]);
        terminals.push_back(patch(id).cells());
    }
    Round r = nominal_duration(OpKind::Rotate90, d);
    bool direct = operands.size() == 2 && touches(terminals[0], terminals[1]);

    std::vector<Cell> path;
    std::vector<bool> rotate_mask(ids.size());
    auto plan_rotations = [&](const std::vector<Cell> &channel) {
        bool any = false;
        for (size_t i = 0; i < ids.size(); ++i) {
            Cell attach{};
            if (direct) {
                for (auto c : terminals[1 - i]) {
                    if (touches(c, terminals[i])) {
                        attach = c;
                        break;
                    }
                }
            } else {
                for (auto c : channel) {
                    if (touches(c, terminals[i])) {
                        attach = c;
                        break;
                    }
                }
            }
            rotate_mask[i] = patch(ids[i]).exposed_basis(attach) != operands[i].second;
            any = any || rotate_mask[i];
        }
        return any;
    };
    auto operands_free = [&](Round t, Round merge_start) {
        for (size_t i = 0; i < ids.size(); ++i) {
            if (!cells_free(terminals[i], t, merge_start + d, {ids[i]})) {
                return false;
            }
        }
        return true;
    };

    Round merge_start = 0;
    Round t = find_start(nb, [&](Round t) {
        if (direct) {
            path.clear();
            merge_start = plan_rotations(path) ? t + r : t;
            return operands_free(t, merge_start);
        }
        const std::vector<Cell> *within = channel ? &*channel : nullptr;
        auto first_try = route(terminals, t, t + d, within);
        if (first_try && !plan_rotations(*first_try)) {
            path = *first_try;
            merge_start = t;
            return operands_free(t, t);
        }
        auto delayed = route(terminals, t + r, t + r + d, within);
        if (!delayed) {
            return false;
        }
        path = *delayed;
        if (!plan_rotations(path)) {
            return false;
        }
        merge_start = t + r;
        return operands_free(t, merge_start);
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (!rotate_mask[i]) {
            continue;
        }
        SurgeryOp rot;
        rot.kind = OpKind::Rotate90;
        rot.operands = {ids[i]};
        rot.cells = terminals[i];
        rot.start_round = t;
        rot.duration_rounds = r;
        emit(std::move(rot));
        patch_mut(ids[i]).rotated = !patch(ids[i]).rotated;
    }
    std::vector<OperandBasis> ops;
    for (const auto &[id, basis] : operands) {
        ops.push_back({id, basis});
    }
    Parity out = merge(ops, path, merge_start, d, bits);
    for (auto id : ids) {
        flush_frame(id, merge_start + d);
    }
    auto f = finish(t, first, std::move(bits));
    f.outcomes = {out};
    return f;
}

Fragment ScheduleBuilder::swap(PatchId a, PatchId b, Round not_before) {
    require_live(a);
    require_live(b);
    if (a == b) {
        throw std::invalid_argument("swap needs two different patches");
    }
    Cell ca = patch(a).origin;
    Cell cb = patch(b).origin;
    if (patch(a).cells().size() != 1 || patch(b).cells().size() != 1 || !adjacent(ca, cb)) {
        throw std::invalid_argument("swap needs two adjacent single-cell patches");
    }
    Round d = std::max(patch(a).d, patch(b).d);
    Cell step{cb.col - ca.col, cb.row - ca.row};
    std::vector<Cell> candidates;
    for (auto c : neighbours(ca)) {
        if (c != cb) {
            candidates.push_back(c);
        }
    }
    Cell c{}, c2{};
    Round t = find_start(std::max({not_before, ready_[a], ready_[b]}), [&](Round t) {
        if (!cell_free(ca, t, t + 2 * d, {a, b}) || !cell_free(cb, t, t + 3 * d, {a, b}) ||
            !can_settle({ca}, t + 2 * d, {a, b}) || !can_settle({cb}, t + 3 * d, {a, b})) {
            return false;
        }
        for (auto cand : candidates) {
            Cell corner{cand.col + step.col, cand.row + step.row};
            if (cell_free(cand, t, t + 3 * d, {}) && cell_free(corner, t + 2 * d, t + 3 * d, {})) {
                c = cand;
                c2 = corner;
                return true;
            }
        }
        return false;
    });

    size_t first = schedule_.ops.size();
    std::vector<BitId> bits;
    auto leg = [&](PatchId id, std::vector<Cell> cells, Cell dest, Round start) {
        close_residency(id, start);
        SurgeryOp op;
        op.kind = OpKind::Move;
        op.operands = {id};
        op.cells = std::move(cells);
        op.start_round = start;
        op.duration_rounds = d;
        int idx = emit(std::move(op));
        relocate(id, dest, idx, bits);
        open_residency(id, start + d);
    };
    leg(a, {ca, c}, c, t);
    leg(b, {cb, ca}, ca, t + d);
    leg(a, {c, c2, cb}, cb, t + 2 * d);
    flush_frame(a, t + 3 * d);
    flush_frame(b, t + 3 * d);
    return finish(t, first, std::move(bits));
}

}  // namespace latsurg
