#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "latsurg/core_model.hpp"
#include "latsurg/pauli.hpp"
#include "latsurg/trace.hpp"

namespace latsurg {

using Round = std::int64_t;
using PatchId = int;

inline constexpr Round kOpenEnd = std::numeric_limits<Round>::max();

struct Cell {
    int col = 0;
    int row = 0;
    friend auto operator<=>(const Cell &, const Cell &) = default;
};

inline bool adjacent(Cell a, Cell b) {
    int dc = a.col - b.col, dr = a.row - b.row;
    return (dc == 0 && (dr == 1 || dr == -1)) || (dr == 0 && (dc == 1 || dc == -1));
}

struct GridSize {
    int cols = 0;
    int rows = 0;
    bool contains(Cell c) const { return c.col >= 0 && c.row >= 0 && c.col < cols && c.row < rows; }
    int index(Cell c) const { return c.row * cols + c.col; }
    Cell cell(int index) const { return {index % cols, index / cols}; }
};

enum class PatchRole { data, ancilla, factory, workspace };
std::string role_name(PatchRole r);

struct Extent {
    int w = 1;
    int h = 1;
};

/// A logical qubit held in a rotated surface-code patch on the grid.
struct Patch {
    PatchId id = -1;
    int d = 3;
    Cell origin;
    Extent extent;
    PatchRole role = PatchRole::data;
    /// Unrotated patches expose their logical X boundary to the cells above
    /// and below and their Z boundary to the left and right.
    bool rotated = false;
    /// Holds a |T> resource (injected or distilled).
    bool magic = false;
    bool live = true;
    /// Irregular footprint (routed ancillas); overrides origin/extent.
    std::vector<Cell> region;

    std::vector<Cell> cells() const;
    Pauli exposed_basis(Cell neighbour) const;
};

enum class OpKind {
    InitZ,
    InitX,
    MeasureZ,
    MeasureX,
    MergeMeasure,
    Split,
    MultiBodyMeasure,
    Rotate90,
    Expand,
    Contract,
    Move,
    InjectT,
    GateS,
    Hadamard,
    CNOT,
    CZ,
    Swap,
    FrameUpdate,
};

std::string op_kind_name(OpKind k);

/// Nominal duration in rounds for one instance of `kind` on a distance-d patch.
/// Macro kinds (CNOT, CZ, Swap) give the whole macro. Expand takes d = d_to.
Round nominal_duration(OpKind kind, int d);

/// Rounds charged for an S or S^dag on a distance-d patch. The construction
/// is only available at d = 15, so larger patches are clipped to it.
Round gate_s_duration(int d);

struct SurgeryOp {
    OpKind kind = OpKind::FrameUpdate;
    std::vector<PatchId> operands;
    /// Per-operand basis for merges and measurements.
    std::vector<Pauli> bases;
    Round start_round = 0;
    Round duration_rounds = 0;
    std::vector<Cell> cells;
    /// Classical bits this op produces (outcome first, then byproducts).
    std::vector<BitId> byproduct_ids;
    std::optional<BitId> condition_id;
    bool condition_value = true;
    /// Free-form flag such as "clipped_to_d15" or "absorbed".
    std::string note;

    Round end_round() const { return start_round + duration_rounds; }
};

enum class BitKind { measurement, byproduct, parity };
std::string bit_kind_name(BitKind k);

struct ClassicalBit {
    BitId id = 0;
    BitKind kind = BitKind::measurement;
    /// Producing op, or -1 for parity bits.
    int op = -1;
    std::vector<BitId> inputs;
};

/// Interval during which a patch sits on a set of cells.
struct Residency {
    PatchId patch = -1;
    std::vector<Cell> cells;
    Round begin = 0;
    Round end = kOpenEnd;
};

struct Schedule {
    GridSize grid;
    std::vector<Patch> patches;
    std::vector<SurgeryOp> ops;
    std::vector<ClassicalBit> bits;
    std::vector<Residency> residencies;

    Round total_rounds() const;
    /// Round at which a bit's value is known.
    Round bit_available(BitId id) const;
};

struct Conflict {
    enum class Type { overlap, occupied, residency, out_of_bounds, causality };
    Type type;
    int op_a = -1;
    int op_b = -1;
    std::optional<Cell> cell;
    std::string message;
};

std::string conflict_type_name(Conflict::Type t);

/// Empty iff no cell is used twice at once and every conditional op reads a
/// bit that is already known when it starts.
std::vector<Conflict> validate(const Schedule &schedule);

/// Sum over ops of |cells| x duration, in cell-rounds.
std::int64_t spacetime_volume(const Schedule &schedule);

}  // namespace latsurg
