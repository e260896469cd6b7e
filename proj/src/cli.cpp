#include "latsurg/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "latsurg/distillation.hpp"
#include "latsurg/estimator.hpp"
#include "latsurg/factory.hpp"
#include "latsurg/gadgets.hpp"
#include "latsurg/schedule_io.hpp"

namespace latsurg::cli {

namespace {

/// A flag failed a range or consistency check.
class FlagError : public std::runtime_error {
  public:
    FlagError(const std::string &flag, const std::string &what) : std::runtime_error(flag + ": " + what) {}
};

struct Options {
    double t_count = 1e8;
    double logical_qubits = 100;
    double p = 1e-3;
    double round_us = 1.0;
    double budget = 0.01;
    int levels = 2;
    std::string format = "human";
    std::string out_path;

    double p_in = 1e-2;
    double trials = 0;
    std::uint64_t seed = 1;
    bool enumerate = false;

    int d = 15;
    std::string gadget = "all";
};

std::string num(double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

std::string pct(double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << std::showpos << v;
    return s.str();
}

void require_integral(const std::string &flag, double v, double lo) {
    if (!std::isfinite(v) || v < lo || std::floor(v) != v) {
        throw FlagError(flag, "must be an integer >= " + num(lo) + ", got " + num(v));
    }
}

void check_estimate_flags(const Options &o) {
    if (!(o.p > 0.0 && o.p < 0.01)) {
        throw FlagError("--p", "physical error rate must lie in (0, 0.01) for the per-round logical error model, got " +
                                   num(o.p));
    }
    if (!(o.t_count >= 0.0) || !std::isfinite(o.t_count)) {
        throw FlagError("--t-count", "must be a finite number >= 0, got " + num(o.t_count));
    }
    require_integral("--logical-qubits", o.logical_qubits, 1);
    if (!(o.round_us > 0.0) || !std::isfinite(o.round_us)) {
        throw FlagError("--round-us", "round duration must be positive, got " + num(o.round_us));
    }
    if (!(o.budget > 0.0 && o.budget < 1.0)) {
        throw FlagError("--budget", "failure budget must lie in (0, 1), got " + num(o.budget));
    }
    if (o.levels != 1 && o.levels != 2) {
        throw FlagError("--levels", "must be 1 or 2, got " + std::to_string(o.levels));
    }
}

AlgorithmProfile profile_of(const Options &o) {
    AlgorithmProfile prof;
    prof.t_count = o.t_count;
    prof.logical_qubits = static_cast<std::int64_t>(o.logical_qubits);
    return prof;
}

PhysicalAssumptions assumptions_of(const Options &o) {
    return PhysicalAssumptions::with_error_rate(o.p, o.round_us * 1e-6);
}

EstimatorConfig config_of(const Options &o) {
    EstimatorConfig c;
    c.budget = o.budget;
    c.levels = o.levels;
    return c;
}

ordered_json estimate_json(const ResourceEstimate &e) {
    ordered_json j;
    j["d_data"] = e.d_data;
    j["d1"] = e.d1;
    j["d2"] = e.d2;
    j["qubits_data"] = e.qubits_data;
    j["qubits_factory"] = e.qubits_factory;
    j["qubits_ancilla"] = e.qubits_ancilla;
    j["qubits_total"] = e.qubits_total;
    j["rounds_per_t"] = e.rounds_per_t;
    j["factory_rounds_per_t"] = e.factory_rounds_per_t;
    j["s_correction_rounds"] = e.s_correction_rounds;
    j["t_latency_rounds"] = e.t_latency_rounds;
    j["runtime_seconds"] = e.runtime_seconds;
    j["runtime_hours"] = e.runtime_hours();
    j["t_rate"] = e.t_rate;
    j["error_ledger"] = {{"storage", e.error_ledger.storage},
                         {"distillation", e.error_ledger.distillation},
                         {"injection", e.error_ledger.injection},
                         {"total", e.error_ledger.total()}};
    j["flags"] = e.flags;
    return j;
}

ordered_json inputs_json(const Options &o) {
    ordered_json j;
    j["t_count"] = o.t_count;
    j["logical_qubits"] = static_cast<std::int64_t>(o.logical_qubits);
    j["p"] = o.p;
    j["round_us"] = o.round_us;
    j["budget"] = o.budget;
    j["levels"] = o.levels;
    return j;
}

ordered_json config_json(const EstimatorConfig &c, const PhysicalAssumptions &a) {
    ordered_json j;
    j["storage_share"] = c.storage_share;
    j["distillation_share"] = c.distillation_share;
    j["injection_share"] = c.injection_share();
    j["d1"] = c.factory.d1;
    j["layer_factor"] = c.factory.layer_factor;
    j["l1_pack"] = c.factory.l1_pack;
    j["l1_attempts_per_l2"] = c.factory.l1_attempts_per_l2;
    j["junction_overlap"] = c.factory.junction_overlap;
    j["injection_attempts"] = c.factory.injection.attempts;
    j["p_inject"] = a.p_inject;
    j["q_inject"] = a.q_inject;
    j["reject_mode"] = c.factory.reject_mode == RejectMode::first_order ? "first_order" : "exact_iid";
    return j;
}

ordered_json baseline_json() {
    ordered_json j;
    j["qubits"] = BraidingBaseline::qubits;
    j["hours"] = BraidingBaseline::hours;
    j["note"] = "published braiding figures for the same algorithm, echoed unchanged";
    return j;
}

ordered_json header(const std::string &command) {
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

struct Report {
    ordered_json records;
    std::string human;
};

Report cmd_estimate(const Options &o) {
    check_estimate_flags(o);
    auto a = assumptions_of(o);
    auto c = config_of(o);
    auto e = estimate(profile_of(o), a, c);

    Report r;
    r.records = header("estimate");
    r.records["inputs"] = inputs_json(o);
    r.records["config"] = config_json(c, a);
    r.records["result"] = estimate_json(e);
    r.records["baseline"] = baseline_json();

    std::ostringstream h;
    h << "distances        d_data=" << e.d_data << " d1=" << e.d1 << " d2=" << e.d2 << "\n"
      << "qubits_data      " << e.qubits_data << "\n"
      << "qubits_ancilla   " << e.qubits_ancilla << "\n"
      << "qubits_factory   " << e.qubits_factory << "\n"
      << "qubits_total     " << e.qubits_total << "\n"
      << "rounds_per_t     " << num(e.rounds_per_t) << " (factory " << num(e.factory_rounds_per_t)
      << " + expected S " << num(e.s_correction_rounds) << ")\n"
      << "runtime          " << num(e.runtime_seconds) << " s (" << num(e.runtime_hours()) << " h)\n"
      << "t_rate           " << num(e.t_rate) << " /s\n"
      << "error_ledger     storage=" << num(e.error_ledger.storage)
      << " distillation=" << num(e.error_ledger.distillation) << " injection=" << num(e.error_ledger.injection)
      << " total=" << num(e.error_ledger.total()) << " (budget " << num(o.budget) << ")\n"
      << "braiding         " << num(BraidingBaseline::qubits) << " qubits, " << num(BraidingBaseline::hours)
      << " h (published, echoed)\n";
    for (const auto &f : e.flags) {
        h << "flag             " << f << "\n";
    }
    r.human = h.str();
    return r;
}

Report cmd_sensitivity(const Options &o) {
    check_estimate_flags(o);
    auto a = assumptions_of(o);
    auto c = config_of(o);
    auto rep = sensitivity_report(profile_of(o), a, c);

    Report r;
    r.records = header("sensitivity");
    r.records["inputs"] = inputs_json(o);
    r.records["config"] = config_json(c, a);
    r.records["base"] = estimate_json(rep.base);
    auto grid = ordered_json::array();
    std::ostringstream h;
    h << "grid (p, t_count):\n"
      << std::left << std::setw(10) << "p" << std::setw(10) << "t_count" << std::setw(8) << "d_data" << std::setw(5)
      << "d1" << std::setw(5) << "d2" << std::setw(12) << "qubits" << "hours\n";
    for (const auto &row : rep.grid) {
        ordered_json g;
        g["p"] = row.p;
        g["t_count"] = row.t_count;
        g["satisfiable"] = row.satisfiable;
        h << std::setw(10) << num(row.p) << std::setw(10) << num(row.t_count);
        if (row.satisfiable) {
            g["d_data"] = row.result.d_data;
            g["d1"] = row.result.d1;
            g["d2"] = row.result.d2;
            g["qubits_total"] = row.result.qubits_total;
            g["runtime_hours"] = row.result.runtime_hours();
            h << std::setw(8) << row.result.d_data << std::setw(5) << row.result.d1 << std::setw(5) << row.result.d2
              << std::setw(12) << row.result.qubits_total << num(row.result.runtime_hours()) << "\n";
        } else {
            h << "unsatisfiable\n";
        }
        grid.push_back(std::move(g));
    }
    r.records["grid"] = std::move(grid);

    auto knobs = ordered_json::array();
    h << "\nknobs (one at a time against the base point, " << rep.base.qubits_total << " qubits, "
      << num(rep.base.runtime_hours()) << " h):\n"
      << std::setw(20) << "knob" << std::setw(24) << "setting" << std::setw(12) << "qubits" << std::setw(10)
      << "dq%" << std::setw(10) << "hours" << "dh%\n";
    for (const auto &k : rep.knobs) {
        ordered_json kj;
        kj["knob"] = k.knob;
        kj["setting"] = k.setting;
        kj["satisfiable"] = k.satisfiable;
        h << std::setw(20) << k.knob << std::setw(24) << k.setting;
        if (k.satisfiable) {
            kj["qubits_total"] = k.qubits_total;
            kj["runtime_hours"] = k.runtime_hours;
            kj["qubits_delta_pct"] = k.qubits_delta_pct;
            kj["hours_delta_pct"] = k.hours_delta_pct;
            h << std::setw(12) << k.qubits_total << std::setw(10) << pct(k.qubits_delta_pct) << std::setw(10)
              << num(k.runtime_hours) << pct(k.hours_delta_pct) << "\n";
        } else {
            h << "unsatisfiable\n";
        }
        knobs.push_back(std::move(kj));
    }
    r.records["knobs"] = std::move(knobs);
    r.human = h.str();
    return r;
}

Report cmd_distill(const Options &o) {
    if (!(o.p_in >= 0.0 && o.p_in <= 0.5)) {
        throw FlagError("--p", "input error rate must lie in [0, 0.5], got " + num(o.p_in));
    }
    require_integral("--trials", o.trials, 0);
    const auto code = RMCode::standard();
    const bool show_table = o.enumerate || o.trials == 0;

    Report r;
    r.records = header("distill-analyze");
    std::ostringstream h;
    if (show_table) {
        auto rows = enumerate_undetected(code);
        auto table = ordered_json::array();
        h << "weight  patterns  undetected  undetected_flip\n";
        for (const auto &w : rows) {
            table.push_back({{"weight", w.weight},
                             {"patterns", w.patterns},
                             {"undetected", w.undetected},
                             {"undetected_flip", w.undetected_flip}});
            h << std::setw(6) << w.weight << std::setw(10) << w.patterns << std::setw(12) << w.undetected
              << std::setw(17) << w.undetected_flip << "\n";
        }
        auto lead = leading_error_term(code);
        r.records["weights"] = std::move(table);
        r.records["leading_term"] = {{"weight", lead.weight}, {"coefficient", lead.coefficient}};
        h << "leading term: " << lead.coefficient << " p^" << lead.weight << "\n";
    }
    if (o.trials > 0) {
        auto s = sample_distillation(o.p_in, static_cast<std::uint64_t>(o.trials), o.seed);
        ordered_json mc;
        mc["p_in"] = o.p_in;
        mc["trials"] = s.trials;
        mc["seed"] = s.seed;
        mc["rejected"] = s.rejected;
        mc["accepted_ok"] = s.accepted_ok;
        mc["accepted_bad"] = s.accepted_bad;
        mc["reject_rate"] = s.reject_rate();
        mc["accepted_error_rate"] = s.accepted_error_rate();
        mc["exact_reject_rate"] = exact_reject_rate(code, o.p_in);
        mc["exact_accepted_error_rate"] = exact_accepted_error_rate(code, o.p_in);
        mc["cubic_law"] = distill_output_error(o.p_in);
        r.records["monte_carlo"] = std::move(mc);
        h << "monte carlo: p_in=" << num(o.p_in) << " trials=" << s.trials << " seed=" << s.seed << "\n"
          << "  rejected=" << s.rejected << " accepted_ok=" << s.accepted_ok << " accepted_bad=" << s.accepted_bad
          << "\n"
          << "  reject_rate=" << num(s.reject_rate()) << " (exact " << num(exact_reject_rate(code, o.p_in)) << ")\n"
          << "  accepted_error_rate=" << num(s.accepted_error_rate()) << " (exact "
          << num(exact_accepted_error_rate(code, o.p_in)) << ", 35p^3 " << num(distill_output_error(o.p_in))
          << ")\n";
    }
    r.human = h.str();
    return r;
}

void check_distance(int d) {
    if (d < 3 || d % 2 == 0 || d > kMaxDistance) {
        throw FlagError("--d", "code distance must be odd in [3, " + std::to_string(kMaxDistance) + "], got " +
                                   std::to_string(d));
    }
}

Report cmd_verify(const Options &o) {
    check_distance(o.d);
    auto checks = verify_standard_gadgets(o.d);
    if (o.gadget != "all") {
        std::erase_if(checks, [&](const GadgetCheck &g) { return g.name != o.gadget; });
        if (checks.empty()) {
            throw FlagError("--gadget", "no verifiable gadget named '" + o.gadget + "'");
        }
    }
    Report r;
    r.records = header("verify");
    r.records["d"] = o.d;
    auto arr = ordered_json::array();
    std::ostringstream h;
    bool all = true;
    for (const auto &g : checks) {
        all = all && g.pass && g.conflicts == 0;
        arr.push_back({{"gadget", g.name},
                       {"target", target_gate_name(g.target)},
                       {"method", g.method},
                       {"pass", g.pass},
                       {"max_deviation", g.max_deviation},
                       {"branches", g.branches},
                       {"duration_rounds", g.duration},
                       {"conflicts", g.conflicts}});
        h << std::left << std::setw(20) << g.name << (g.pass ? "PASS" : "FAIL") << "  " << g.method
          << "  branches=" << g.branches << "  deviation=" << num(g.max_deviation) << "  rounds=" << g.duration
          << "  conflicts=" << g.conflicts << "\n";
    }
    r.records["gadgets"] = std::move(arr);
    r.records["all_pass"] = all;
    r.human = h.str();
    return r;
}

Report cmd_schedule(const Options &o) {
    check_distance(o.d);
    Schedule s;
    if (o.gadget == "factory") {
        FactoryModel m{CodeDistance{15}, CodeDistance{o.d}, {}};
        auto fs = build_factory_schedule(m, 1);
        Report r;
        r.records = header("schedule");
        r.records["gadget"] = "factory";
        r.records["d"] = o.d;
        r.records["level1"] = schedule_to_json(fs.level1);
        r.records["level2"] = schedule_to_json(fs.level2);
        r.human = "level 1\n" + render_gantt(fs.level1) + "\nlevel 2\n" + render_gantt(fs.level2);
        return r;
    }
    const auto names = gadget_names();
    if (std::find(names.begin(), names.end(), o.gadget) == names.end()) {
        throw FlagError("--gadget", "unknown gadget '" + o.gadget + "'");
    }
    auto b = build_gadget(o.gadget, o.d);
    Report r;
    r.records = header("schedule");
    r.records["gadget"] = o.gadget;
    r.records["d"] = o.d;
    r.records["schedule"] = schedule_to_json(b.schedule());
    r.human = render_gantt(b.schedule(), 1);
    return r;
}

void emit(const Report &r, const Options &o, std::ostream &out) {
    std::string text = o.format == "records" ? r.records.dump(2) + "\n" : r.human;
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(o.out_path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw FlagError("--out", "cannot open " + tmp.string() + " for writing");
        }
        f << text;
        if (!f.flush()) {
            throw FlagError("--out", "failed writing " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Lattice-surgery resource estimator"};
    app.name("latsurg");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "records"}));
        sub->add_option("--out", o.out_path, "Write the report to PATH");
    };
    auto estimator_flags = [&](CLI::App *sub) {
        sub->add_option("--t-count", o.t_count, "Number of T gates");
        sub->add_option("--logical-qubits", o.logical_qubits, "Logical data qubits");
        sub->add_option("--p", o.p, "Physical error rate per operation");
        sub->add_option("--round-us", o.round_us, "Duration of one error-detection round in microseconds");
        sub->add_option("--budget", o.budget, "Total allowed failure probability");
        sub->add_option("--levels", o.levels, "Distillation levels (1 or 2)");
        common(sub);
    };

    auto *est = app.add_subcommand("estimate", "Qubits and runtime for an algorithm profile");
    estimator_flags(est);
    auto *sens = app.add_subcommand("sensitivity", "Estimate over a parameter grid and per-knob deltas");
    estimator_flags(sens);

    auto *dist = app.add_subcommand("distill-analyze", "15-to-1 detection combinatorics and Monte Carlo");
    dist->add_flag("--enumerate", o.enumerate, "Print the exhaustive weight table");
    dist->add_option("--p", o.p_in, "Z error rate of each input state");
    dist->add_option("--trials", o.trials, "Monte Carlo trials (0 disables sampling)");
    dist->add_option("--seed", o.seed, "Random seed");
    common(dist);

    auto *ver = app.add_subcommand("verify", "Verify the logical action of the standard gadgets");
    ver->add_option("--d", o.d, "Code distance");
    ver->add_option("--gadget", o.gadget, "Single gadget to verify (default all)");
    common(ver);

    auto *sch = app.add_subcommand("schedule", "Export a built gadget or factory schedule");
    sch->add_option("--d", o.d, "Code distance (level-2 distance for the factory)");
    sch->add_option("--gadget", o.gadget, "Gadget name or 'factory'")->required();
    common(sch);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }

    try {
        Report r;
        if (est->parsed()) {
            r = cmd_estimate(o);
        } else if (sens->parsed()) {
            r = cmd_sensitivity(o);
        } else if (dist->parsed()) {
            r = cmd_distill(o);
        } else if (ver->parsed()) {
            r = cmd_verify(o);
        } else {
            r = cmd_schedule(o);
        }
        emit(r, o, out);
    } catch (const FlagError &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const Unsatisfiable &e) {
        err << "unsatisfiable: " << e.what() << "\n";
        return kUnsatisfiable;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kOk;
}

int run(int argc, const char *const *argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace latsurg::cli
