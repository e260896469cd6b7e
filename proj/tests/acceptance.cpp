// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "latsurg/builder.hpp"
#include "latsurg/distillation.hpp"
#include "latsurg/error_model.hpp"
#include "latsurg/estimator.hpp"
#include "latsurg/factory.hpp"
#include "latsurg/gadgets.hpp"
#include "latsurg/verifier.hpp"

using namespace latsurg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Outcome distillation_combinatorics() {
    Outcome o;
    auto t0 = Clock::now();
    auto rows = enumerate_undetected(RMCode::standard());
    double secs = seconds_since(t0);
    o.check(rows[1].undetected == 0, "weight-1 undetected");
    o.check(rows[2].undetected == 0, "weight-2 undetected");
    o.check(rows[3].undetected_flip == 35, "weight-3 flips");
    o.check(secs < 1.0, "runtime < 1 s");
    o.detail << "w1=" << rows[1].undetected << " w2=" << rows[2].undetected << " w3_flip=" << rows[3].undetected_flip
             << " in " << secs << " s";
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    const double p = 1e-2;
    const std::uint64_t trials = 10'000'000;
    const std::uint64_t seed = 20190101;
    auto t0 = Clock::now();
    auto s = sample_distillation(p, trials, seed);
    double secs = seconds_since(t0);
    auto again = sample_distillation(p, trials, seed, 1);
    double err = s.accepted_error_rate();
    double rej = s.reject_rate();
    double rej_expected = 1.0 - std::pow(0.99, 15);
    o.check(std::abs(err - 3.5e-5) <= 0.15 * 3.5e-5, "accepted error within 15% of 35p^3");
    o.check(std::abs(rej - rej_expected) <= 0.01 * rej_expected, "rejection within 1%");
    o.check(s == again, "deterministic under fixed seed");
    o.check(secs < 60.0, "runtime < 60 s");
    o.detail << "accepted_error=" << err << " reject=" << rej << " (target " << rej_expected << ") bad="
             << s.accepted_bad << " seed=" << seed << " in " << secs << " s";
    return o;
}

Outcome formula_suite() {
    Outcome o;
    double worst = 0.0;
    for (int d = 3; d <= 31; d += 2) {
        double expected = 0.1 * std::pow(10.0, -(d + 1) / 2.0);
        worst = std::max(worst, std::abs(logical_error_per_round(1e-3, CodeDistance{d}) / expected - 1.0));
    }
    o.check(worst < 1e-12, "p_L decade values");
    double po = distill_output_error(1e-3);
    o.check(std::abs(po - 3.5e-8) < 1e-20, "p_o(1e-3) = 3.5e-8");
    double cluster = injection_cluster_failure(20, 0.5);
    o.check(cluster == std::ldexp(1.0, -20), "cluster failure = 2^-20");
    o.check(cluster > 1e-7 && cluster < 1e-5, "cluster failure of order 1e-6");
    o.detail << "p_L max rel err=" << worst << " p_o=" << po << " cluster=" << cluster;
    return o;
}

Outcome durations() {
    Outcome o;
    int checked = 0;
    for (int d = 3; d <= 31; d += 2) {
        {
            ScheduleBuilder b({3, 3});
            auto c = b.add_patch({0, 0}, d);
            auto t = b.add_patch({2, 0}, d);
            auto f = b.cnot(c, {t});
            o.check(f.duration() == 2 * d, "CNOT 2d at d=" + std::to_string(d));
            o.check(validate(b.schedule()).empty(), "CNOT conflicts at d=" + std::to_string(d));
        }
        {
            ScheduleBuilder b({2, 2});
            auto a = b.add_patch({0, 0}, d);
            auto c = b.add_patch({1, 0}, d);
            auto f = b.swap(a, c);
            o.check(f.duration() == 3 * d, "Swap 3d at d=" + std::to_string(d));
            o.check(validate(b.schedule()).empty(), "Swap conflicts at d=" + std::to_string(d));
        }
        ++checked;
    }
    ScheduleBuilder b({1, 1});
    auto a = b.add_patch({0, 0}, 15);
    auto s = b.gate_s(a, false);
    o.check(s.duration() == 15, "GateS at d=15 is 15 cycles");
    o.check(validate(b.schedule()).empty(), "GateS conflicts");
    o.detail << checked << " distances, CNOT=2d, Swap=3d, S(d=15)=" << s.duration();
    return o;
}

Outcome gadget_verification() {
    Outcome o;
    for (const auto &g : verify_standard_gadgets(15)) {
        bool wanted = g.name == "t" || g.name == "t_dag" || g.name == "cnot" || g.name == "cz" || g.name == "swap";
        if (!wanted) {
            continue;
        }
        if (g.method == "dense") {
            o.check(g.pass && g.max_deviation < 1e-10, g.name + " dense deviation");
        } else {
            o.check(g.pass, g.name + " tableau branches");
        }
        o.detail << g.name << "(" << g.method << ", " << g.branches << " branches, dev " << g.max_deviation << ") ";
    }
    return o;
}

Outcome headline() {
    Outcome o;
    AlgorithmProfile prof{1e8, 100, true};
    auto a = PhysicalAssumptions::with_error_rate(1e-3, 1e-6);
    auto e = estimate(prof, a);
    double q = static_cast<double>(e.qubits_total);
    double h = e.runtime_hours();
    o.check(std::abs(q - 3.7e5) <= 0.25 * 3.7e5, "qubits within 25% of 3.7e5");
    o.check(std::abs(h - 5.4) <= 0.25 * 5.4, "runtime within 25% of 5.4 h");
    o.check(BraidingBaseline::qubits == 1.8e6 && BraidingBaseline::hours == 4.5, "braiding baseline echoed");
    auto rep = sensitivity_report(prof, a);
    int moving = 0;
    for (const auto &k : rep.knobs) {
        if (k.satisfiable && (std::abs(k.qubits_delta_pct) > 1.0 || std::abs(k.hours_delta_pct) > 1.0)) {
            ++moving;
        }
    }
    o.check(moving > 0 && !rep.grid.empty(), "sensitivity report shows moving knobs");
    o.detail << "qubits_total=" << e.qubits_total << " runtime=" << h << " h (d_data=" << e.d_data
             << " d1=" << e.d1 << " d2=" << e.d2 << "), braiding " << BraidingBaseline::qubits << " / "
             << BraidingBaseline::hours << " h, " << moving << " knobs move the result";
    return o;
}

Outcome cross_module() {
    Outcome o;
    AlgorithmProfile prof{1e8, 100, true};
    PhysicalAssumptions a;
    auto e = estimate(prof, a);
    double per_t = e.runtime_seconds / (prof.t_count * a.round_seconds);
    auto fs = build_factory_schedule(FactoryModel{CodeDistance{e.d1}, CodeDistance{e.d2}, {}}, 3);
    double period = fs.period();
    o.check(std::abs(per_t - period) <= 6.5 * 15, "within one layer height");
    o.check(validate(fs.level1).empty() && validate(fs.level2).empty(), "factory schedule conflict-free");
    o.detail << "estimator rounds/T=" << per_t << " schedule rounds/T=" << period << " |diff|="
             << std::abs(per_t - period) << " (limit 97.5)";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"1 distillation combinatorics", distillation_combinatorics},
        {"2 monte carlo consistency", monte_carlo},
        {"3 formula suite", formula_suite},
        {"4 duration properties", durations},
        {"5 gadget verification", gadget_verification},
        {"6 headline reproduction", headline},
        {"7 cross-module consistency", cross_module},
    };
    int failed = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
