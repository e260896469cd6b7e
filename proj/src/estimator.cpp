#include "latsurg/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latsurg/error_model.hpp"

namespace latsurg {

void AlgorithmProfile::validate() const {
    if (!(t_count >= 0.0) || !std::isfinite(t_count)) {
        throw std::invalid_argument("t_count must be a finite non-negative number");
    }
    if (logical_qubits < 1) {
        throw std::invalid_argument("logical_qubits must be at least 1");
    }
    if (!clifford_parallelizable) {
        throw std::invalid_argument("clifford_parallelizable must be true; serial Clifford cost is not modeled");
    }
}

void EstimatorConfig::validate() const {
    if (!(budget > 0.0 && budget < 1.0)) {
        throw std::invalid_argument("budget must lie in (0, 1)");
    }
    if (!(storage_share > 0.0) || !(distillation_share > 0.0) || !(injection_share() > 0.0)) {
        throw std::invalid_argument("budget shares must be positive and sum to less than 1");
    }
    if (levels != 1 && levels != 2) {
        throw std::invalid_argument("levels must be 1 or 2");
    }
    factory.validate();
}

CodeDistance choose_distance(double p, double exposure, double budget) {
    if (!(budget > 0.0)) {
        throw std::invalid_argument("budget must be positive");
    }
    if (!(exposure >= 0.0)) {
        throw std::invalid_argument("exposure must be non-negative");
    }
    const double limit = budget * (1.0 + 1e-12);
    for (int d = 3; d <= kMaxDistance; d += 2) {
        CodeDistance cd{d};
        if (logical_error_per_round(p, cd) * exposure <= limit) {
            return cd;
        }
    }
    std::ostringstream msg;
    msg << "no odd distance <= " << kMaxDistance << " reaches budget " << budget << " at p=" << p
        << " for exposure " << exposure;
    throw Unsatisfiable(msg.str());
}

namespace {

constexpr int kMaxSDistance = 15;

struct FactoryPick {
    FactoryModel model;
    FactoryRates rates;
    double distillation = 0.0;
    double injection = 0.0;
};

double final_output_error(const FactoryRates &r, int levels) {
    return levels == 1 ? r.level1.p_out : r.level2.p_out;
}

/// Smallest d2 for which both the distilled-output error and the exposure of
/// finished states at the output fit their shares.
FactoryPick pick_factory(const AlgorithmProfile &profile, const PhysicalAssumptions &a, const EstimatorConfig &cfg) {
    const double distill_limit = cfg.budget * cfg.distillation_share * (1.0 + 1e-12);
    const double inject_limit = cfg.budget * cfg.injection_share() * (1.0 + 1e-12);
    const CodeDistance d1{cfg.factory.d1};
    for (int d = 3; d <= kMaxDistance; d += 2) {
        FactoryPick pick{FactoryModel{d1, CodeDistance{d}, cfg.factory}, {}, 0.0, 0.0};
        try {
            pick.rates = factory_rates(pick.model, a, cfg.levels);
        } catch (const std::invalid_argument &) {
            // Circuit error at this d2 leaves the cubic law's domain.
            continue;
        }
        pick.distillation = profile.t_count * final_output_error(pick.rates, cfg.levels);
        const CodeDistance out_d = cfg.levels == 1 ? d1 : pick.model.d2;
        pick.injection =
            profile.t_count * layer_exposure_error(a.p, out_d, pick.model.layer_height(cfg.levels));
        if (pick.distillation <= distill_limit && pick.injection <= inject_limit) {
            return pick;
        }
        if (cfg.levels == 1 && pick.injection <= inject_limit) {
            break;
        }
    }
    std::ostringstream msg;
    msg << "factory cannot meet the distillation/injection budget (" << cfg.budget << ") with " << cfg.levels
        << " level(s) at p=" << a.p << " for t_count " << profile.t_count;
    throw Unsatisfiable(msg.str());
}

std::uint64_t level1_region_qubits(const FactoryModel &model) {
    auto built = build_factory_schedule(model, 1);
    return built.level1_box.qubits();
}

}  // namespace

ResourceEstimate estimate(const AlgorithmProfile &profile, const PhysicalAssumptions &assumptions,
                          const EstimatorConfig &config) {
    profile.validate();
    assumptions.validate();
    config.validate();

    auto pick = pick_factory(profile, assumptions, config);
    ResourceEstimate e;
    e.d1 = pick.model.d1.value();
    e.d2 = config.levels == 2 ? pick.model.d2.value() : 0;
    e.factory_rounds_per_t = pick.rates.rounds_per_t;
    e.t_latency_rounds = t_state_latency(pick.model, assumptions, config.levels);

    const double L = static_cast<double>(profile.logical_qubits);
    const double storage_budget = config.budget * config.storage_share;
    int s_distance = kMaxSDistance;
    CodeDistance d_data{3};
    double total_rounds = 0.0;
    double exposure = 0.0;
    for (;;) {
        e.s_correction_rounds = 0.5 * s_distance;
        e.rounds_per_t = e.factory_rounds_per_t + e.s_correction_rounds;
        total_rounds = profile.t_count * e.rounds_per_t;
        exposure = L * total_rounds;
        d_data = choose_distance(assumptions.p, exposure, storage_budget);
        const int next = std::min(d_data.value(), kMaxSDistance);
        if (next >= s_distance) {
            break;
        }
        s_distance = next;
    }
    e.d_data = d_data.value();

    const auto cell = cell_qubits(e.d_data);
    const auto L64 = static_cast<std::uint64_t>(profile.logical_qubits);
    e.qubits_data = L64 * cell;
    e.qubits_ancilla = (L64 + 1) / 2 * cell;
    e.qubits_factory = config.levels == 2 ? factory_qubits(pick.model) : level1_region_qubits(pick.model);
    e.qubits_total = e.qubits_data + e.qubits_ancilla + e.qubits_factory;

    e.runtime_seconds = total_rounds * assumptions.round_seconds;
    e.t_rate = 1.0 / (e.rounds_per_t * assumptions.round_seconds);

    e.error_ledger.storage = logical_error_per_round(assumptions.p, d_data) * exposure;
    e.error_ledger.distillation = pick.distillation;
    e.error_ledger.injection = pick.injection;

    if (e.d_data > kMaxSDistance) {
        e.flags.push_back("gate_s_clipped_to_d15");
    }
    return e;
}

std::vector<double> sensitivity_error_rates() { return {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 3e-3}; }

namespace {

struct Knob {
    std::string name;
    std::string setting;
    PhysicalAssumptions assumptions;
    EstimatorConfig config;
};

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

std::vector<Knob> knob_variants(const PhysicalAssumptions &a, const EstimatorConfig &c) {
    std::vector<Knob> out;
    auto add = [&](std::string name, std::string setting, auto mutate) {
        Knob k{std::move(name), std::move(setting), a, c};
        mutate(k.assumptions, k.config);
        out.push_back(std::move(k));
    };
    for (double f : {0.1, 10.0}) {
        add("budget", fmt(c.budget * f), [f](PhysicalAssumptions &, EstimatorConfig &x) { x.budget *= f; });
    }
    for (double v : {5.5, 7.5}) {
        add("layer_factor", fmt(v), [v](PhysicalAssumptions &, EstimatorConfig &x) { x.factory.layer_factor = v; });
    }
    for (int v : {4, 16}) {
        add("l1_pack", std::to_string(v), [v](PhysicalAssumptions &, EstimatorConfig &x) { x.factory.l1_pack = v; });
    }
    for (int v : {18, 24}) {
        add("l1_attempts_per_l2", std::to_string(v),
            [v](PhysicalAssumptions &, EstimatorConfig &x) { x.factory.l1_attempts_per_l2 = v; });
    }
    for (double v : {0.0, 2.0}) {
        add("junction_overlap", fmt(v),
            [v](PhysicalAssumptions &, EstimatorConfig &x) { x.factory.junction_overlap = v; });
    }
    add("storage_share", "0.8 (0.1 each other)", [](PhysicalAssumptions &, EstimatorConfig &x) {
        x.storage_share = 0.8;
        x.distillation_share = 0.1;
    });
    add("reject_mode", "exact_iid",
        [](PhysicalAssumptions &, EstimatorConfig &x) { x.factory.reject_mode = RejectMode::exact_iid; });
    add("levels", "1", [](PhysicalAssumptions &, EstimatorConfig &x) { x.levels = 1; });
    for (double v : {0.25, 0.75}) {
        add("q_inject", fmt(v), [v](PhysicalAssumptions &y, EstimatorConfig &) { y.q_inject = v; });
    }
    for (double f : {0.5, 2.0}) {
        add("p_inject", fmt(a.p_inject * f), [f](PhysicalAssumptions &y, EstimatorConfig &) { y.p_inject *= f; });
    }
    return out;
}

}  // namespace

SensitivityReport sensitivity_report(const AlgorithmProfile &profile, const PhysicalAssumptions &assumptions,
                                     const EstimatorConfig &config) {
    SensitivityReport rep;
    rep.base = estimate(profile, assumptions, config);

    std::vector<double> counts;
    if (profile.t_count > 0.0) {
        for (int k = -2; k <= 2; ++k) {
            counts.push_back(profile.t_count * std::pow(10.0, k));
        }
    } else {
        counts.push_back(0.0);
    }
    for (double p : sensitivity_error_rates()) {
        auto a = assumptions;
        a.p = p;
        a.p_inject = p;
        for (double t : counts) {
            SensitivityRow row;
            row.p = p;
            row.t_count = t;
            auto prof = profile;
            prof.t_count = t;
            try {
                row.result = estimate(prof, a, config);
                row.satisfiable = true;
            } catch (const Unsatisfiable &) {
                row.satisfiable = false;
            }
            rep.grid.push_back(row);
        }
    }

    const double q0 = static_cast<double>(rep.base.qubits_total);
    const double h0 = rep.base.runtime_hours();
    for (const auto &k : knob_variants(assumptions, config)) {
        KnobRow row;
        row.knob = k.name;
        row.setting = k.setting;
        try {
            auto r = estimate(profile, k.assumptions, k.config);
            row.satisfiable = true;
            row.qubits_total = r.qubits_total;
            row.runtime_hours = r.runtime_hours();
            row.qubits_delta_pct = 100.0 * (static_cast<double>(r.qubits_total) - q0) / q0;
            row.hours_delta_pct = h0 > 0.0 ? 100.0 * (row.runtime_hours - h0) / h0 : 0.0;
        } catch (const Unsatisfiable &) {
            row.satisfiable = false;
        }
        rep.knobs.push_back(row);
    }
    return rep;
}

}  // namespace latsurg
