#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "latsurg/frame.hpp"
#include "latsurg/schedule.hpp"
#include "latsurg/trace.hpp"

namespace latsurg {

/// No conflict-free ancilla region, route, or spare cell exists.
class NoRoute : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The resource patch handed to a T gadget does not hold a |T> state.
class NoMagicState : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The ops one builder call appended to the schedule.
struct Fragment {
    Round start = 0;
    /// End with every conditional op materialized.
    Round end = 0;
    /// End if no classically controlled Clifford fires.
    Round end_if_untriggered = 0;
    size_t first_op = 0;
    size_t op_count = 0;
    std::vector<BitId> bits;
    /// Frame-corrected outcomes of the measurements the fragment performed.
    std::vector<Parity> outcomes;
    /// Patch created by the call, if any.
    PatchId patch = -1;

    Round duration() const { return end - start; }
};

/// Single-writer schedule container. Every call places its ops at the
/// earliest round >= `not_before` (and after the operands' previous ops)
/// where all cells involved are free, routes through free cells by shortest
/// path with ties broken by lowest (col, row), tracks classical byproducts in
/// a Pauli frame, and records the logical effect as a GadgetTrace.
class ScheduleBuilder {
  public:
    explicit ScheduleBuilder(GridSize grid);

    /// Registers an already-initialized logical input qubit.
    PatchId add_patch(Cell origin, int d, PatchRole role = PatchRole::data, Round available_from = 0);
    /// Registers a patch holding a distilled |T> state.
    PatchId add_magic_patch(Cell origin, int d, Round available_from = 0);

    Fragment init(Cell cell, int d, PatchRole role, Pauli basis, Round not_before = 0, bool transversal = false);
    /// Destructive transversal measurement; retires the patch.
    Fragment measure(PatchId patch, Pauli basis, Round not_before = 0);
    /// Relocates a patch to `dest` in d rounds.
    Fragment move(PatchId patch, Cell dest, Round not_before = 0);
    /// In-place half-distance rotation, swapping the exposed boundaries.
    Fragment rotate(PatchId patch, Round not_before = 0);
    /// One successful injection attempt into a small patch.
    Fragment inject_t(Cell cell, int d_inject = 7, Round not_before = 0);
    Fragment expand(PatchId patch, int d_to, Round not_before = 0);
    /// A |T> state delivered onto `cell` from outside the grid. Only the
    /// landing cell is occupied, for `duration` rounds.
    Fragment import_magic(Cell cell, int d, Round duration, Round not_before = 0);
    /// Hands a patch off the grid once its last op has finished.
    Round retire(PatchId patch);

    Fragment cnot(PatchId control, const std::vector<PatchId> &targets, Round not_before = 0,
                  std::optional<std::vector<Cell>> ancilla_region = std::nullopt);
    Fragment cz(PatchId control, const std::vector<PatchId> &targets, Round not_before = 0,
                std::optional<std::vector<Cell>> ancilla_region = std::nullopt);
    /// T (or T^dag) by ZZ-merging `magic` into `target`, measuring the magic
    /// patch in X, and a classically controlled S (S^dag) on the target.
    Fragment t_gadget(PatchId target, PatchId magic, Round not_before = 0, bool dagger = false);
    Fragment hadamard(PatchId target, Round not_before = 0, bool return_home = true,
                      std::optional<Cell> spare = std::nullopt);
    /// Joint Pauli measurement; routing cells are drawn from `channel` when given.
    Fragment multibody_measure(const std::vector<std::pair<PatchId, Pauli>> &operands, Round not_before = 0,
                               std::optional<std::vector<Cell>> channel = std::nullopt);
    Fragment swap(PatchId a, PatchId b, Round not_before = 0);
    /// S or S^dag, optionally only when `condition` equals `trigger_value`.
    Fragment gate_s(PatchId patch, bool dagger, Round not_before = 0, std::optional<Parity> condition = std::nullopt,
                    bool trigger_value = true);

    /// Classical bit equal to the XOR of `parity` (the bit itself if single).
    BitId derive_parity(const Parity &parity);
    /// Emits pending frame corrections of `patch` as zero-duration updates.
    void flush_frame(PatchId patch, Round at);

    void set_trace_enabled(bool enabled) { trace_enabled_ = enabled; }

    const Schedule &schedule() const { return schedule_; }
    const PauliFrame &frame() const { return frame_; }
    const Patch &patch(PatchId id) const { return schedule_.patches.at(id); }
    int slot_of(PatchId id) const;
    /// Trace with outputs set to the current slots of the registered inputs.
    GadgetTrace gadget_trace() const;
    /// Round after which the patch has no further scheduled ops.
    Round ready(PatchId id) const;

  private:
    struct OperandBasis {
        PatchId patch;
        Pauli basis;
    };

    Patch &patch_mut(PatchId id);
    PatchId new_patch(std::vector<Cell> cells, int d, PatchRole role);
    void require_live(PatchId id) const;

    bool cell_free(Cell c, Round begin, Round end, const std::vector<PatchId> &allowed) const;
    bool cells_free(const std::vector<Cell> &cells, Round begin, Round end, const std::vector<PatchId> &allowed) const;
    /// Cells can take a new open-ended residency starting at `begin`.
    bool can_settle(const std::vector<Cell> &cells, Round begin, const std::vector<PatchId> &allowed) const;
    /// Free cells connecting every terminal group, or nullopt.
    std::optional<std::vector<Cell>> route(const std::vector<std::vector<Cell>> &terminals, Round begin,
                                           Round end, const std::vector<Cell> *within = nullptr) const;
    std::optional<Cell> spare_cell(const Patch &p, Round begin, Round end) const;

    template <typename Feasible>
    Round find_start(Round not_before, Feasible &&feasible) const;

    int emit(SurgeryOp op);
    BitId new_bit(BitKind kind, int op);
    void open_residency(PatchId patch, Round begin);
    void close_residency(PatchId patch, Round end);
    void record(TraceEvent e);

    /// Emits a merge over `operands`; returns the frame-corrected outcome.
    Parity merge(const std::vector<OperandBasis> &operands, const std::vector<Cell> &extra_cells, Round start,
                 Round duration, std::vector<BitId> &bits);
    Parity destructive_measure(PatchId patch, Pauli basis, Round start, Round duration, const std::string &note,
                               std::vector<BitId> &bits);
    /// Logical teleport of `patch` onto `dest`, as done by a patch move.
    void relocate(PatchId patch, Cell dest, int op, std::vector<BitId> &bits);
    Fragment two_qubit_macro(PatchId control, const std::vector<PatchId> &targets, Pauli target_basis,
                             Round not_before, std::optional<std::vector<Cell>> ancilla_region);
    Fragment finish(Round start, size_t first_op, std::vector<BitId> bits);

    Schedule schedule_;
    PauliFrame frame_;
    GadgetTrace trace_;
    bool trace_enabled_ = true;
    std::vector<PatchId> input_patches_;
    std::vector<Round> ready_;
    std::vector<int> open_residency_;
    std::vector<std::vector<int>> cell_ops_;
    std::vector<std::vector<int>> cell_residencies_;
    std::set<Round> events_;
    std::map<std::vector<BitId>, BitId> parity_bits_;
};

}  // namespace latsurg
