// Acceptance suite: one pass/fail line per criterion, executed end to end
// against the library. Exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "kvwave/methods.hpp"
#include "oracles.hpp"

using namespace kvwave;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0.0;
};

std::vector<Criterion> g_results;

void record(const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    g_results.push_back({name, pass, detail, seconds});
    std::printf("[%s] %-34s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
}

double now_seconds() {
    using Clock = std::chrono::steady_clock;
    static const Clock::time_point start = Clock::now();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::vector<double> linspace(double from, double to, std::size_t n) {
    std::vector<double> xs;
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(from + (to - from) * static_cast<double>(i) /
                                static_cast<double>(n - 1));
    }
    return xs;
}

// Figure-style oracle equivalence: max |integral form - Talbot inversion|
// over a 100-point sweep.
void figure_criterion(const std::string& name, Pulse pulse, bool sweep_tau,
                      double fixed, double from, double to) {
    const double t0 = now_seconds();
    QuadSpec quad = default_response_spec();
    IltConfig ilt_cfg;
    ilt_cfg.node_count = 64;

    double max_disc = 0.0;
    double arg_xi = 0.0, arg_tau = 0.0;
    bool all_ok = true;
    for (double v : linspace(from, to, 100)) {
        const double xi = sweep_tau ? fixed : v;
        const double tau = sweep_tau ? v : fixed;
        const DimensionlessCoord c(xi, tau);
        const EvalOutcome integral = pulse == Pulse::Step ? step_response(c, quad)
                                                          : delta_response(c, quad);
        const EvalOutcome oracle =
            invert(pulse == Pulse::Step ? step_image(xi) : delta_image(xi), tau, ilt_cfg);
        all_ok = all_ok && integral.converged && oracle.converged;
        const double diff = std::abs(integral.value - oracle.value);
        if (diff > max_disc) {
            max_disc = diff;
            arg_xi = xi;
            arg_tau = tau;
        }
    }
    const bool pass = all_ok && max_disc <= 1e-6;
    record(name, pass,
           "max|integral-ilt|=" + sci(max_disc) + " at (xi=" + sci(arg_xi) +
               ", tau=" + sci(arg_tau) + ") <= 1e-06" + (all_ok ? "" : " [non-converged]"),
           now_seconds() - t0);
}

void criterion_normalization() {
    const double t0 = now_seconds();
    QuadSpec inner = default_response_spec();
    inner.rel_tol = 1e-9;
    inner.abs_tol = 1e-11;
    QuadSpec outer;
    outer.rel_tol = 1e-8;
    outer.abs_tol = 1e-9;
    outer.max_subdivisions = 400;

    bool pass = true;
    std::string detail;
    for (double xi : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        // e^{-t} f(xi, t) <= 2 e^{1.5 xi} e^{-3 t / 4}: bounding the kernel's
        // 0F1bar growth by exp(2 xi + (t/4)) via 2 sqrt(ab) <= a/c + c b at c = 2.
        auto weighted = [&](double t) {
            return std::exp(-t) * kernel_f(DimensionlessCoord(xi, t), inner).value;
        };
        const EvalOutcome total = integrate_semi_infinite(
            weighted, 0.0, exponential_decay(0.75, std::log(2.0) + 1.5 * xi), outer);
        const double err = std::abs(total.value - 1.0);
        if (!(total.converged && err <= 1e-7)) pass = false;
        detail += (detail.empty() ? "|I-1|: " : ", ") + sci(err);
    }
    record("05 normalization I=1", pass, detail + " <= 1e-07", now_seconds() - t0);
}

void criterion_derivative_grid() {
    const double t0 = now_seconds();
    QuadSpec spec = default_response_spec();
    QuadSpec tight = default_response_spec();
    tight.rel_tol = 1e-13;
    tight.abs_tol = 1e-15;

    double worst = 0.0;
    bool pass = true;
    for (double xi : linspace(0.1, 2.0, 5)) {
        for (double tau : linspace(0.2, 5.0, 5)) {
            const double g = kernel_g(DimensionlessCoord(xi, tau), spec).value;
            const double fd = oracles::richardson_derivative(
                [&](double t) {
                    return kernel_f(DimensionlessCoord(xi, t), tight).value;
                },
                tau, 1e-2);
            const double rel = std::abs(g - fd) / std::abs(g);
            worst = std::max(worst, rel);
            if (!(rel <= 1e-5)) pass = false;
        }
    }
    record("06 kernel derivative (g = df/dtau)", pass,
           "worst rel diff on 5x5 grid = " + sci(worst) + " <= 1e-05",
           now_seconds() - t0);
}

struct AsymCheck {
    const char* label;
    double got;
    double limit;
    bool pass;
};

void criterion_asymptotics() {
    const double t0 = now_seconds();
    QuadSpec spec = default_response_spec();
    QuadSpec rel_only = default_response_spec();
    rel_only.abs_tol = 0.0;

    auto step_at = [&](double xi, double tau) {
        return step_response(DimensionlessCoord(xi, tau), spec).value;
    };
    auto delta_at = [&](double xi, double tau, const QuadSpec& s) {
        return delta_response(DimensionlessCoord(xi, tau), s).value;
    };

    std::vector<AsymCheck> checks;
    auto abs_check = [&](const char* label, double asym, double exact, double limit) {
        const double diff = std::abs(asym - exact);
        checks.push_back({label, diff, limit, diff <= limit});
    };
    auto rel_check = [&](const char* label, double asym, double exact, double limit) {
        const double rel = std::abs(asym - exact) / std::abs(exact);
        checks.push_back({label, rel, limit, rel <= limit});
    };

    // (a) step small-tau erfc form, absolute 1e-3
    abs_check("a:step-small-tau(0.5,0.01)",
              step_asym_small_tau(DimensionlessCoord(0.5, 0.01)), step_at(0.5, 0.01),
              1e-3);
    abs_check("a:step-small-tau(8,0.5)",
              step_asym_small_tau(DimensionlessCoord(8.0, 0.5)),
              step_response(DimensionlessCoord(8.0, 0.5), rel_only).value, 1e-3);
    // (b) step large-tau, absolute 1e-4
    abs_check("b:step-large-tau(0.5,5)",
              step_asym_large_tau(DimensionlessCoord(0.5, 5.0)), step_at(0.5, 5.0), 1e-4);
    // (c) step small-xi, absolute 1e-4
    abs_check("c:step-small-xi(0.05,0.5)",
              step_asym_small_xi(DimensionlessCoord(0.05, 0.5)), step_at(0.05, 0.5),
              1e-4);
    // (d) delta counterparts at their stated points and tolerances
    rel_check("d:delta-small-tau(0.5,0.01)",
              delta_asym_small_tau(DimensionlessCoord(0.5, 0.01)),
              delta_at(0.5, 0.01, spec), 1e-2);
    rel_check("d:delta-small-tau(8,0.5)",
              delta_asym_small_tau(DimensionlessCoord(8.0, 0.5)),
              delta_at(8.0, 0.5, rel_only), 1e-2);
    abs_check("d:delta-large-tau(0.5,5)",
              delta_asym_large_tau(DimensionlessCoord(0.5, 5.0)), delta_at(0.5, 5.0, spec),
              1e-4);
    abs_check("d:delta-large-tau(0.5,10)",
              delta_asym_large_tau(DimensionlessCoord(0.5, 10.0)),
              delta_at(0.5, 10.0, spec), 1e-5);
    abs_check("d:delta-small-xi(0.05,0.5)",
              delta_asym_small_xi(DimensionlessCoord(0.05, 0.5)),
              delta_at(0.05, 0.5, spec), 1e-3);
    abs_check("d:delta-small-xi(0.1,1)",
              delta_asym_small_xi(DimensionlessCoord(0.1, 1.0)), delta_at(0.1, 1.0, spec),
              1e-3);

    bool pass = true;
    for (const AsymCheck& c : checks) {
        std::printf("       %-30s %s (limit %s) %s\n", c.label, sci(c.got).c_str(),
                    sci(c.limit).c_str(), c.pass ? "ok" : "EXCEEDED");
        pass = pass && c.pass;
    }
    record("07 asymptotic windows", pass,
           pass ? "all sub-checks within stated tolerances"
                : "sub-check(s) above stated tolerance (see lines above)",
           now_seconds() - t0);
}

void criterion_literature() {
    const double t0 = now_seconds();
    QuadSpec spec = default_response_spec();
    double worst_h = 0.0, worst_m = 0.0;
    bool pass = true;
    for (double xi : {0.25, 0.5, 1.0}) {
        for (double tau : {0.25, 0.5, 1.0, 2.0}) {
            const DimensionlessCoord c(xi, tau);
            const double h =
                std::abs(hanin_delta(c, spec).value - delta_response(c, spec).value);
            const double m =
                std::abs(morrison_step(c, spec).value - step_response(c, spec).value);
            worst_h = std::max(worst_h, h);
            worst_m = std::max(worst_m, m);
        }
    }
    pass = worst_h <= 1e-5 && worst_m <= 1e-5;

    const EvalOutcome refused = morrison_step(DimensionlessCoord(0.5, 10.0), spec);
    const bool refusal_ok = !refused.converged && std::isnan(refused.value);
    pass = pass && refusal_ok;

    record("08 literature agreement + refusal", pass,
           "max|hanin-delta|=" + sci(worst_h) + ", max|morrison-step|=" + sci(worst_m) +
               " <= 1e-05; morrison(tau=10) " +
               (refusal_ok ? "refused (no_converge)" : "NOT refused"),
           now_seconds() - t0);
}

void criterion_dozio_report() {
    const double t0 = now_seconds();
    SweepSpec sweep;
    sweep.pulse = Pulse::Delta;
    sweep.fixed_axis = SweepSpec::Axis::Xi;
    sweep.fixed_value = 0.5;
    sweep.var_from = 0.05;
    sweep.var_to = 5.0;
    sweep.points = 100;
    sweep.methods = {Method::Integral, Method::Dozio};

    const ComparisonReport report =
        run_compare(sweep, Method::Integral, Method::Dozio, MethodOptions{});
    const std::string path = "dozio_discrepancy_report.json";
    std::ofstream out(path, std::ios::binary);
    out << comparison_to_json(report).dump(2) << '\n';
    out.close();

    // The report documents the defect; no equality is asserted.
    const bool pass = report.grid.size() == 100 && report.any_valid &&
                      std::isfinite(report.max_abs_discrepancy) &&
                      report.all_converged();
    record("09 dozio defect documentation", pass,
           "report archived to " + path +
               "; max_abs_discrepancy=" + sci(report.max_abs_discrepancy) +
               " (recorded, not asserted)",
           now_seconds() - t0);
}

void criterion_ilt_pairs() {
    const double t0 = now_seconds();
    using cplx = std::complex<double>;
    struct Pair {
        const char* name;
        LaplaceImage image;
        std::function<double(double)> original;
    };
    std::vector<Pair> pairs;
    pairs.push_back({"1/s", {[](cplx s) { return 1.0 / s; }, 0.0, false},
                     [](double) { return 1.0; }});
    pairs.push_back({"1/s^2", {[](cplx s) { return 1.0 / (s * s); }, 0.0, false},
                     [](double t) { return t; }});
    pairs.push_back({"1/(s+1)", {[](cplx s) { return 1.0 / (s + 1.0); }, -1.0, false},
                     [](double t) { return std::exp(-t); }});
    pairs.push_back({"1/(s^2+1)", {[](cplx s) { return 1.0 / (s * s + 1.0); }, 0.0, false},
                     [](double t) { return std::sin(t); }});
    pairs.push_back(
        {"exp(-sqrt(s))/s", {[](cplx s) { return std::exp(-std::sqrt(s)) / s; }, 0.0, false},
         [](double t) { return kvwave::erfc(1.0 / (2.0 * std::sqrt(t))); }});

    double worst = 0.0;
    for (const Pair& p : pairs) {
        for (double t : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            worst = std::max(worst, std::abs(invert(p.image, t).value - p.original(t)));
        }
    }
    record("10 ILT known-pair suite", worst <= 1e-8,
           "worst |inverted-exact| = " + sci(worst) + " <= 1e-08", now_seconds() - t0);
}

void criterion_limits() {
    const double t0 = now_seconds();
    QuadSpec spec = default_response_spec();
    bool pass = true;
    double worst_step = 0.0, worst_delta = 0.0;
    for (double tau : {0.1, 1.0, 10.0}) {
        worst_step = std::max(
            worst_step,
            std::abs(step_response(DimensionlessCoord(0.0, tau), spec).value - 1.0));
        worst_delta = std::max(
            worst_delta, std::abs(delta_response(DimensionlessCoord(0.0, tau), spec).value));
    }
    pass = worst_step <= 1e-10 && worst_delta <= 1e-10;

    const double late = step_response(DimensionlessCoord(0.5, 20.0), spec).value;
    pass = pass && std::abs(late - 1.0) <= 1e-6;

    record("11 limits", pass,
           "|step(0,tau)-1|=" + sci(worst_step) + ", |delta(0,tau)|=" + sci(worst_delta) +
               " <= 1e-10; |step(0.5,20)-1|=" + sci(std::abs(late - 1.0)) + " <= 1e-06",
           now_seconds() - t0);
}

}  // namespace

int main() {
    std::printf("kvwave acceptance suite\n");
    std::printf("(timings informational; tolerances are the gate)\n\n");

    figure_criterion("01 step tau-sweep oracle (xi=0.5)", Pulse::Step, true, 0.5, 0.05,
                     5.0);
    figure_criterion("02 step xi-sweep oracle (tau=0.5)", Pulse::Step, false, 0.5, 0.01,
                     4.0);
    figure_criterion("03 delta tau-sweep oracle (xi=0.5)", Pulse::Delta, true, 0.5, 0.05,
                     5.0);
    figure_criterion("04 delta xi-sweep oracle (tau=0.5)", Pulse::Delta, false, 0.5, 0.01,
                     4.0);
    criterion_normalization();
    criterion_derivative_grid();
    criterion_asymptotics();
    criterion_literature();
    criterion_dozio_report();
    criterion_ilt_pairs();
    criterion_limits();

    int failures = 0;
    for (const Criterion& c : g_results) {
        if (!c.pass) ++failures;
    }
    std::printf("\n%zu criteria, %d failed\n", g_results.size(), failures);
    return failures;
}
