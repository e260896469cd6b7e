#include "latsurg/factory.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "latsurg/builder.hpp"

namespace latsurg {

void FactoryConfig::validate() const {
    CodeDistance{d1};
    if (!(layer_factor > 0.0)) {
        throw std::invalid_argument("layer_factor must be positive");
    }
    if (l1_pack < 2 || l1_pack % 2 != 0) {
        throw std::invalid_argument("l1_pack must be a positive even number (two mirrored racks)");
    }
    if (l1_attempts_per_l2 < 16) {
        throw std::invalid_argument("l1_attempts_per_l2 must be at least 16");
    }
    if (injection.attempts < 1 || injection.parallel_sites < 1 || injection.rounds < 1) {
        throw std::invalid_argument("injection cluster parameters must be positive");
    }
    if (!(junction_overlap >= 0.0 && junction_overlap < layer_factor)) {
        throw std::invalid_argument("junction_overlap must lie in [0, layer_factor)");
    }
}

double FactoryModel::layer_height(int level) const {
    return config.layer_factor * (level == 1 ? d1.value() : d2.value());
}

double FactoryModel::l1_batch_rounds() const {
    int layers = (config.l1_attempts_per_l2 + config.l1_pack - 1) / config.l1_pack;
    return layers * layer_height(1);
}

double factory_circuit_error(const FactoryModel &model, const PhysicalAssumptions &a, int level) {
    return layer_exposure_error(a.p, level == 1 ? model.d1 : model.d2, model.layer_height(level));
}

namespace {

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
    }
    return c;
}

}  // namespace

FactoryRates factory_rates(const FactoryModel &model, const PhysicalAssumptions &a, int levels) {
    model.config.validate();
    a.validate();
    auto errors = cascade(levels, a.p_inject, [&](int level) { return factory_circuit_error(model, a, level); });
    const auto &cfg = model.config;

    FactoryRates r;
    r.level1 = errors[0];
    r.level1.p_reject = distill_reject_prob(r.level1.p_in, cfg.reject_mode);
    double cluster = injection_cluster_failure(cfg.injection.attempts, a.q_inject);
    r.l1_reject = std::min(1.0, r.level1.p_reject + 15.0 * cluster);

    int n = cfg.l1_attempts_per_l2;
    double ok = 0.0;
    for (int k = 15; k <= n; ++k) {
        ok += binomial(n, k) * std::pow(1.0 - r.l1_reject, k) * std::pow(r.l1_reject, n - k);
    }
    r.l1_batch_ok = ok;

    if (levels == 1) {
        r.rounds_per_t = model.layer_height(1) / (1.0 - r.l1_reject);
        return r;
    }
    r.level2 = errors[1];
    r.level2.p_reject = distill_reject_prob(r.level2.p_in, cfg.reject_mode);
    double l1_limited = model.l1_batch_rounds() / r.l1_batch_ok;
    double l2_limited = model.layer_height(2) - cfg.junction_overlap * model.d2.value();
    r.rounds_per_t = std::max(l1_limited, l2_limited) / (1.0 - r.level2.p_reject);
    return r;
}

double t_state_latency(const FactoryModel &model, const PhysicalAssumptions &a, int levels) {
    auto r = factory_rates(model, a, levels);
    double inject = static_cast<double>(nominal_duration(OpKind::InjectT, model.d1.value()));
    double expand = model.d1.value();
    double first = inject + expand;
    if (levels == 1) {
        return first + model.layer_height(1) / (1.0 - r.l1_reject);
    }
    double transfer = model.d1.value();
    return first + model.l1_batch_rounds() / r.l1_batch_ok + transfer +
           model.layer_height(2) / (1.0 - r.level2.p_reject);
}

std::vector<std::vector<int>> distillation_generators() {
    std::vector<std::vector<int>> gens;
    for (int bit = 0; bit < 4; ++bit) {
        std::vector<int> g;
        for (int q = 1; q <= 15; ++q) {
            if (q >> bit & 1) {
                g.push_back(q);
            }
        }
        gens.push_back(g);
    }
    gens.push_back({1, 2, 3, 4, 5, 6, 7, 16});
    return gens;
}

double FactorySchedule::period() const {
    if (outputs.size() < 2) {
        return 0.0;
    }
    return static_cast<double>(outputs.back() - outputs.front()) / static_cast<double>(outputs.size() - 1);
}

RegionFootprint bounding_box(const Schedule &s, int d) {
    int c0 = INT_MAX, r0 = INT_MAX, c1 = INT_MIN, r1 = INT_MIN;
    auto note = [&](Cell c) {
        c0 = std::min(c0, c.col);
        r0 = std::min(r0, c.row);
        c1 = std::max(c1, c.col);
        r1 = std::max(r1, c.row);
    };
    for (const auto &op : s.ops) {
        for (auto c : op.cells) {
            note(c);
        }
    }
    for (const auto &r : s.residencies) {
        for (auto c : r.cells) {
            note(c);
        }
    }
    if (c0 > c1) {
        return {0, 0, d};
    }
    return {c1 - c0 + 1, r1 - r0 + 1, d};
}

namespace {

/// One 15-to-1 distillation block: a code row holding qubits 1..15 and the
/// output (qubit 16), a service row beneath it for the multi-body channel
/// and injection sites, and a bus cell next to the output.
struct Block {
    int row = 0;
    bool mirrored = false;
    int base_col = 0;

    Cell qubit(int i) const {
        int offset = i - 1;
        return {mirrored ? base_col + 16 - offset : base_col + offset, row};
    }
    Cell below(int i) const {
        auto c = qubit(i);
        return {c.col, c.row + 1};
    }
    Cell above(int i) const {
        auto c = qubit(i);
        return {c.col, c.row - 1};
    }
    Cell bus() const { return {mirrored ? base_col : base_col + 16, row}; }
};

struct RoundResult {
    /// Last check measurement; the block can take new inputs from here on.
    Round checked = 0;
    Round exported = 0;
};

/// Runs one distillation round in `block`. Magic states come from
/// `magic_for(i, not_before)`, which returns a patch already on the cell
/// adjacent to qubit i.
template <class MagicSource>
RoundResult distill(ScheduleBuilder &b, const Block &block, int d, Round start, MagicSource &&magic_for) {
    std::vector<PatchId> q(17);
    for (int i = 1; i <= 16; ++i) {
        q[i] = b.init(block.qubit(i), d, PatchRole::factory, Pauli::X, start, true).patch;
    }
    std::vector<Cell> channel;
    for (int i = 1; i <= 16; ++i) {
        channel.push_back(block.below(i));
    }
    for (const auto &gen : distillation_generators()) {
        std::vector<std::pair<PatchId, Pauli>> ops;
        for (int i : gen) {
            ops.push_back({q[i], Pauli::X});
        }
        b.multibody_measure(ops, start, channel);
    }
    std::vector<Parity> x_outcomes(16);
    RoundResult out;
    for (int i = 1; i <= 15; ++i) {
        auto rot = b.rotate(q[i], start);
        PatchId m = magic_for(i, rot.start);
        b.t_gadget(q[i], m, start, true);
        auto mx = b.measure(q[i], Pauli::X, start);
        x_outcomes[i] = mx.outcomes.front();
        out.checked = std::max(out.checked, mx.end);
    }
    for (const auto &gen : distillation_generators()) {
        if (std::find(gen.begin(), gen.end(), 16) != gen.end()) {
            continue;
        }
        Parity check;
        for (int i : gen) {
            check ^= x_outcomes[i];
        }
        if (!check.empty()) {
            b.derive_parity(check);
        }
    }
    // The output leaves only once every check outcome is known.
    b.move(q[16], block.bus(), out.checked);
    out.exported = b.retire(q[16]);
    return out;
}

}  // namespace

FactorySchedule build_factory_schedule(const FactoryModel &model, int batches) {
    model.config.validate();
    if (batches < 1) {
        throw std::invalid_argument("need at least one factory batch");
    }
    const auto &cfg = model.config;
    const int d1 = model.d1.value();
    const int d2 = model.d2.value();
    const int per_rack = cfg.l1_pack / 2;
    const int layers = (cfg.l1_attempts_per_l2 + cfg.l1_pack - 1) / cfg.l1_pack;

    // Level 1: two mirrored racks of `per_rack` blocks, bus columns facing.
    ScheduleBuilder l1({34, 2 * per_rack});
    l1.set_trace_enabled(false);
    std::vector<Block> blocks;
    for (int rack = 0; rack < 2; ++rack) {
        for (int u = 0; u < per_rack; ++u) {
            blocks.push_back({2 * u, rack == 1, rack == 1 ? 17 : 0});
        }
    }
    std::vector<Round> block_free(blocks.size(), 0);
    std::vector<std::vector<Round>> l1_outputs(batches);
    for (int batch = 0; batch < batches; ++batch) {
        for (int layer = 0; layer < layers; ++layer) {
            for (size_t k = 0; k < blocks.size(); ++k) {
                const auto &blk = blocks[k];
                auto inject = [&](int i, Round not_before) {
                    auto f = l1.inject_t(blk.below(i), 7, not_before);
                    l1.expand(f.patch, d1, f.end);
                    return f.patch;
                };
                auto r = distill(l1, blk, d1, block_free[k], inject);
                block_free[k] = r.checked;
                l1_outputs[batch].push_back(r.exported);
            }
        }
        std::sort(l1_outputs[batch].begin(), l1_outputs[batch].end());
    }

    // Level 2: one block with a landing row for level-1 outputs above it and
    // the multi-body channel below.
    ScheduleBuilder l2({17, 3});
    l2.set_trace_enabled(false);
    Block top{1, false, 0};
    FactorySchedule out;
    Round free = 0;
    for (int batch = 0; batch < batches; ++batch) {
        const auto &arrivals = l1_outputs[batch];
        auto deliver = [&](int i, Round not_before) {
            Round arrival = std::max(not_before, arrivals[static_cast<size_t>(i - 1)]);
            return l2.import_magic(top.above(i), d1, d1, arrival).patch;
        };
        auto r = distill(l2, top, d2, free, deliver);
        free = r.checked;
        out.outputs.push_back(r.exported);
    }

    out.level1 = l1.schedule();
    out.level2 = l2.schedule();
    out.level1_box = bounding_box(out.level1, d1);
    out.level2_box = bounding_box(out.level2, d2);
    return out;
}

std::uint64_t factory_qubits(const FactoryModel &model) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::uint64_t> cache;
    auto key = std::make_tuple(model.d1.value(), model.d2.value(), model.config.l1_pack,
                               model.config.l1_attempts_per_l2);
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    auto q = build_factory_schedule(model, 1).qubits();
    cache.emplace(key, q);
    return q;
}

}  // namespace latsurg
