#pragma once

#include <string>

#include "json.hpp"

#include "latsurg/schedule.hpp"

namespace latsurg {

using ordered_json = nlohmann::ordered_json;

/// One record per op with fields in this fixed order:
/// kind, operands, start_round, duration_rounds, cells, byproduct_ids,
/// condition_id, then bases, condition_value, note.
ordered_json op_to_json(const SurgeryOp &op);

/// Whole schedule: grid, patches, ops (as above), classical bits, and the
/// validation summary. Field order is stable, so equal schedules dump to
/// identical bytes.
ordered_json schedule_to_json(const Schedule &schedule);

/// Gantt-style text: one line per grid row, one column per time bucket of
/// `bucket_rounds` rounds (0 picks a bucket so the chart fits 100 columns).
/// Each column shows the letter of the op kind busiest on that row.
std::string render_gantt(const Schedule &schedule, Round bucket_rounds = 0);

/// Single-letter tag used by render_gantt.
char op_kind_letter(OpKind k);

}  // namespace latsurg
