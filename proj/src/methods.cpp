#include "kvwave/methods.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace kvwave {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Dozio's slowly decaying oscillatory tail needs a far truncation point and
// many more segments than the smooth kernels; give it report-quality floors
// instead of failing the default budget.
QuadSpec dozio_spec(const QuadSpec& spec) {
    QuadSpec out = spec;
    out.rel_tol = std::max(out.rel_tol, 1e-7);
    out.abs_tol = std::max(out.abs_tol, 1e-8);
    out.max_subdivisions = std::max<std::size_t>(out.max_subdivisions, 4000);
    return out;
}

EvalOutcome from_plain(double value) { return {value, 0.0, 0, true}; }

}  // namespace

std::string_view pulse_name(Pulse pulse) {
    return pulse == Pulse::Step ? "step" : "delta";
}

std::optional<Pulse> parse_pulse(std::string_view name) {
    if (name == "step") return Pulse::Step;
    if (name == "delta") return Pulse::Delta;
    return std::nullopt;
}

std::string_view method_name(Method method) {
    switch (method) {
        case Method::Integral: return "integral";
        case Method::Ilt: return "ilt";
        case Method::AsymSmallTau: return "asym-small-tau";
        case Method::AsymLargeTau: return "asym-large-tau";
        case Method::AsymSmallXi: return "asym-small-xi";
        case Method::Hanin: return "hanin";
        case Method::Morrison: return "morrison";
        case Method::Dozio: return "dozio";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::Integral, Method::Ilt, Method::AsymSmallTau,
                     Method::AsymLargeTau, Method::AsymSmallXi, Method::Hanin,
                     Method::Morrison, Method::Dozio}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

bool method_supports(Method method, Pulse pulse) {
    switch (method) {
        case Method::Hanin:
        case Method::Dozio:
            return pulse == Pulse::Delta;
        case Method::Morrison:
            return pulse == Pulse::Step;
        default:
            return true;
    }
}

EvalOutcome evaluate_method(Pulse pulse, Method method, const DimensionlessCoord& c,
                            const MethodOptions& opts) {
    if (!method_supports(method, pulse)) {
        throw std::invalid_argument(std::string("method '") +
                                    std::string(method_name(method)) +
                                    "' does not apply to pulse '" +
                                    std::string(pulse_name(pulse)) + "'");
    }
    const bool step = (pulse == Pulse::Step);
    switch (method) {
        case Method::Integral:
            return step ? step_response(c, opts.quad) : delta_response(c, opts.quad);
        case Method::Ilt:
            return invert(step ? step_image(c.xi) : delta_image(c.xi), c.tau, opts.ilt);
        case Method::AsymSmallTau:
            return from_plain(step ? step_asym_small_tau(c) : delta_asym_small_tau(c));
        case Method::AsymLargeTau:
            return from_plain(step ? step_asym_large_tau(c) : delta_asym_large_tau(c));
        case Method::AsymSmallXi:
            return from_plain(step ? step_asym_small_xi(c) : delta_asym_small_xi(c));
        case Method::Hanin:
            return hanin_delta(c, opts.quad);
        case Method::Morrison:
            return morrison_step(c, opts.quad, opts.morrison_tau_limit);
        case Method::Dozio:
            return dozio_delta(c, dozio_spec(opts.quad));
    }
    throw std::logic_error("evaluate_method: unreachable");
}

void SweepSpec::validate() const {
    if (!(var_from < var_to)) {
        throw std::invalid_argument("SweepSpec: var_from must be < var_to");
    }
    if (points < 2) throw std::invalid_argument("SweepSpec: points must be >= 2");
    if (spacing == Spacing::Log && !(var_from > 0.0)) {
        throw std::invalid_argument("SweepSpec: log spacing requires var_from > 0");
    }
    if (fixed_axis == Axis::Xi) {
        if (!(fixed_value >= 0.0)) {
            throw std::invalid_argument("SweepSpec: fixed xi must be >= 0");
        }
        if (!(var_from > 0.0)) {
            throw std::invalid_argument("SweepSpec: tau range must be positive");
        }
    } else {
        if (!(fixed_value > 0.0)) {
            throw std::invalid_argument("SweepSpec: fixed tau must be > 0");
        }
        if (!(var_from >= 0.0)) {
            throw std::invalid_argument("SweepSpec: xi range must be >= 0");
        }
    }
    if (methods.empty()) throw std::invalid_argument("SweepSpec: no methods given");
    for (Method m : methods) {
        if (!method_supports(m, pulse)) {
            throw std::invalid_argument(std::string("SweepSpec: method '") +
                                        std::string(method_name(m)) +
                                        "' does not apply to this pulse");
        }
    }
}

std::vector<DimensionlessCoord> SweepSpec::grid() const {
    validate();
    std::vector<DimensionlessCoord> coords;
    coords.reserve(points);
    const double lo = spacing == Spacing::Log ? std::log(var_from) : var_from;
    const double hi = spacing == Spacing::Log ? std::log(var_to) : var_to;
    for (std::size_t i = 0; i < points; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(points - 1);
        double x = lo + (hi - lo) * w;
        if (spacing == Spacing::Log) x = std::exp(x);
        if (fixed_axis == Axis::Xi) {
            coords.emplace_back(fixed_value, x);
        } else {
            coords.emplace_back(x, fixed_value);
        }
    }
    return coords;
}

std::vector<PointRecord> run_sweep(const SweepSpec& spec, const MethodOptions& opts) {
    const std::vector<DimensionlessCoord> coords = spec.grid();
    std::vector<PointRecord> rows;
    rows.reserve(coords.size() * spec.methods.size());
    for (const DimensionlessCoord& c : coords) {
        for (Method m : spec.methods) {
            PointRecord row;
            row.xi = c.xi;
            row.tau = c.tau;
            row.method = m;
            const auto start = Clock::now();
            row.outcome = evaluate_method(spec.pulse, m, c, opts);
            row.wall_ms = ms_since(start);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_sci17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<PointRecord>& rows) {
    os << "xi,tau,method,value,error_estimate,function_evals,status\n";
    for (const PointRecord& row : rows) {
        const bool ok = row.outcome.converged && std::isfinite(row.outcome.value);
        os << format_sci17(row.xi) << ',' << format_sci17(row.tau) << ','
           << method_name(row.method) << ',';
        if (ok) os << format_sci17(row.outcome.value);
        os << ',';
        if (std::isfinite(row.outcome.error_estimate)) {
            os << format_sci17(row.outcome.error_estimate);
        }
        os << ',' << row.outcome.function_evals << ',' << (ok ? "ok" : "no_converge")
           << '\n';
    }
}

bool ComparisonReport::all_converged() const {
    for (const ComparisonPoint& p : grid) {
        if (!p.a.converged || !p.b.converged) return false;
    }
    return !grid.empty();
}

ComparisonReport run_compare(const SweepSpec& spec, Method method_a, Method method_b,
                             const MethodOptions& opts) {
    SweepSpec base = spec;
    base.methods = {method_a, method_b};
    base.validate();

    ComparisonReport report;
    report.pulse = spec.pulse;
    report.method_a = method_a;
    report.method_b = method_b;

    for (const DimensionlessCoord& c : base.grid()) {
        ComparisonPoint point;
        point.xi = c.xi;
        point.tau = c.tau;
        auto start = Clock::now();
        point.a = evaluate_method(spec.pulse, method_a, c, opts);
        report.wall_ms_a += ms_since(start);
        start = Clock::now();
        point.b = evaluate_method(spec.pulse, method_b, c, opts);
        report.wall_ms_b += ms_since(start);

        if (point.a.converged && point.b.converged) {
            const double diff = std::abs(point.a.value - point.b.value);
            if (!report.any_valid || diff > report.max_abs_discrepancy) {
                report.max_abs_discrepancy = diff;
                report.argmax_xi = point.xi;
                report.argmax_tau = point.tau;
            }
            report.any_valid = true;
        }
        report.grid.push_back(point);
    }
    return report;
}

nlohmann::ordered_json comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["pulse"] = pulse_name(report.pulse);
    j["method_a"] = method_name(report.method_a);
    j["method_b"] = method_name(report.method_b);
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const ComparisonPoint& p : report.grid) {
        nlohmann::ordered_json row;
        row["xi"] = p.xi;
        row["tau"] = p.tau;
        row["a"] = p.a.converged ? nlohmann::ordered_json(p.a.value)
                                 : nlohmann::ordered_json(nullptr);
        row["b"] = p.b.converged ? nlohmann::ordered_json(p.b.value)
                                 : nlohmann::ordered_json(nullptr);
        if (p.a.converged && p.b.converged) {
            row["abs_diff"] = std::abs(p.a.value - p.b.value);
        } else {
            row["abs_diff"] = nullptr;
        }
        grid.push_back(row);
    }
    j["grid"] = std::move(grid);
    j["max_abs_discrepancy"] = report.max_abs_discrepancy;
    j["argmax"] = {{"xi", report.argmax_xi}, {"tau", report.argmax_tau}};
    j["wall_time_ms"] = {{"a", report.wall_ms_a}, {"b", report.wall_ms_b}};
    return j;
}

nlohmann::ordered_json run_bench(const SweepSpec& spec, std::size_t repeats,
                                 const MethodOptions& opts) {
    if (repeats < 3) throw std::invalid_argument("run_bench: repeats must be >= 3");
    spec.validate();

    nlohmann::ordered_json j;
    j["pulse"] = pulse_name(spec.pulse);
    j["repeats"] = repeats;
    nlohmann::ordered_json methods = nlohmann::ordered_json::array();
    for (Method m : spec.methods) methods.push_back(std::string(method_name(m)));
    j["methods"] = std::move(methods);

    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const DimensionlessCoord& c : spec.grid()) {
        nlohmann::ordered_json entry;
        entry["xi"] = c.xi;
        entry["tau"] = c.tau;
        nlohmann::ordered_json results;
        for (Method m : spec.methods) {
            std::vector<double> times;
            times.reserve(repeats);
            EvalOutcome outcome;
            for (std::size_t rep = 0; rep < repeats; ++rep) {
                const auto start = Clock::now();
                outcome = evaluate_method(spec.pulse, m, c, opts);
                times.push_back(ms_since(start));
            }
            std::sort(times.begin(), times.end());
            const double median = times[times.size() / 2];
            nlohmann::ordered_json cell;
            cell["median_ms"] = median;
            cell["function_evals"] = outcome.function_evals;
            cell["status"] = outcome.converged ? "ok" : "no_converge";
            results[std::string(method_name(m))] = std::move(cell);
        }
        entry["results"] = std::move(results);
        points.push_back(std::move(entry));
    }
    j["points"] = std::move(points);
    return j;
}

}  // namespace kvwave
