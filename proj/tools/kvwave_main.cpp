// kvwave: transient Kelvin-Voigt pulse responses from the command line.
//
// Subcommands: eval, sweep, compare, bench.
// Exit codes: 0 all converged, 1 usage/argument error, 2 numerical
// non-convergence.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kvwave/methods.hpp"

namespace {

using namespace kvwave;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConverge = 2;

struct CommonArgs {
    std::string pulse = "step";
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t ilt_nodes = 32;
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--pulse", args.pulse, "Pulse kind: step or delta")
        ->check(CLI::IsMember({"step", "delta"}));
    cmd->add_option("--rel-tol", args.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--abs-tol", args.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--ilt-nodes", args.ilt_nodes, "Talbot node count for the ilt method");
    cmd->add_option("--out", args.out, "Output path ('-' for stdout)");
}

MethodOptions make_options(const CommonArgs& args) {
    MethodOptions opts;
    opts.quad.rel_tol = args.rel_tol;
    opts.quad.abs_tol = args.abs_tol;
    opts.ilt.node_count = args.ilt_nodes;
    return opts;
}

Pulse pulse_of(const CommonArgs& args) {
    const auto p = parse_pulse(args.pulse);
    if (!p) throw CLI::ValidationError("--pulse", "unknown pulse kind '" + args.pulse + "'");
    return *p;
}

std::vector<Method> parse_method_list(const std::string& csv, Pulse pulse) {
    std::vector<Method> methods;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        const auto m = parse_method(token);
        if (!m) throw std::invalid_argument("unknown method '" + token + "'");
        if (!method_supports(*m, pulse)) {
            throw std::invalid_argument("method '" + token + "' does not apply to pulse '" +
                                        std::string(pulse_name(pulse)) + "'");
        }
        methods.push_back(*m);
    }
    if (methods.empty()) throw std::invalid_argument("--methods: empty method list");
    return methods;
}

// "--fix xi=0.5" / "--fix tau=0.5"
std::pair<SweepSpec::Axis, double> parse_fix(const std::string& fix) {
    const auto eq = fix.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("--fix expects xi=VALUE or tau=VALUE");
    }
    const std::string axis = fix.substr(0, eq);
    const double value = std::stod(fix.substr(eq + 1));
    if (axis == "xi") return {SweepSpec::Axis::Xi, value};
    if (axis == "tau") return {SweepSpec::Axis::Tau, value};
    throw std::invalid_argument("--fix axis must be xi or tau");
}

std::optional<MaterialParams> parse_material(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::stringstream ss(csv);
    std::string token;
    std::vector<double> vals;
    while (std::getline(ss, token, ',')) vals.push_back(std::stod(token));
    if (vals.size() != 3) {
        throw std::invalid_argument("--material expects rho,Ge,t_eps");
    }
    return MaterialParams(vals[0], vals[1], vals[2]);
}

void write_output(const std::string& out, const std::string& content) {
    if (out == "-" || out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + out + "'");
    file << content;
}

int cmd_eval(const CommonArgs& common, double xi, double tau, const std::string& method_name_arg,
             const std::string& format, const std::string& material_csv, double x, double t,
             bool have_x, bool have_t) {
    const Pulse pulse = pulse_of(common);
    const auto method = parse_method(method_name_arg);
    if (!method) throw std::invalid_argument("unknown method '" + method_name_arg + "'");

    const auto material = parse_material(material_csv);
    DimensionlessCoord coord = [&] {
        if (material) {
            if (!have_x || !have_t) {
                throw std::invalid_argument("--material requires --x and --t");
            }
            return to_dimensionless(x, t, *material);
        }
        return DimensionlessCoord(xi, tau);
    }();

    const MethodOptions opts = make_options(common);
    const auto start = std::chrono::steady_clock::now();
    const EvalOutcome outcome = evaluate_method(pulse, *method, coord, opts);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const bool ok = outcome.converged && std::isfinite(outcome.value);

    std::ostringstream body;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["pulse"] = pulse_name(pulse);
        j["method"] = method_name(*method);
        j["xi"] = coord.xi;
        j["tau"] = coord.tau;
        j["value"] = ok ? nlohmann::ordered_json(outcome.value)
                        : nlohmann::ordered_json(nullptr);
        j["error_estimate"] = std::isfinite(outcome.error_estimate)
                                  ? nlohmann::ordered_json(outcome.error_estimate)
                                  : nlohmann::ordered_json(nullptr);
        j["function_evals"] = outcome.function_evals;
        j["wall_time_ms"] = wall_ms;
        j["status"] = ok ? "ok" : "no_converge";
        body << j.dump(2) << '\n';
    } else if (format == "csv") {
        PointRecord row{coord.xi, coord.tau, *method, outcome, wall_ms};
        write_sweep_csv(body, {row});
    } else {
        body << "pulse: " << pulse_name(pulse) << '\n'
             << "method: " << method_name(*method) << '\n'
             << "xi: " << format_sci17(coord.xi) << '\n'
             << "tau: " << format_sci17(coord.tau) << '\n'
             << "value: " << (ok ? format_sci17(outcome.value) : "n/a") << '\n'
             << "error_estimate: " << format_sci17(outcome.error_estimate) << '\n'
             << "function_evals: " << outcome.function_evals << '\n'
             << "wall_time_ms: " << wall_ms << '\n'
             << "status: " << (ok ? "ok" : "no_converge") << '\n';
    }
    write_output(common.out, body.str());
    if (!ok) {
        std::cerr << "kvwave: method did not converge at (xi=" << coord.xi
                  << ", tau=" << coord.tau << ")\n";
        return kExitNoConverge;
    }
    return kExitOk;
}

SweepSpec make_sweep_spec(const CommonArgs& common, const std::string& fix, double from,
                          double to, std::size_t points, const std::string& spacing,
                          const std::string& methods_csv) {
    SweepSpec spec;
    spec.pulse = pulse_of(common);
    const auto [axis, value] = parse_fix(fix);
    spec.fixed_axis = axis;
    spec.fixed_value = value;
    spec.var_from = from;
    spec.var_to = to;
    spec.points = points;
    if (spacing == "log") {
        spec.spacing = SweepSpec::Spacing::Log;
    } else if (spacing == "linear") {
        spec.spacing = SweepSpec::Spacing::Linear;
    } else {
        throw std::invalid_argument("--spacing must be linear or log");
    }
    spec.methods = parse_method_list(methods_csv, spec.pulse);
    spec.validate();
    return spec;
}

int cmd_sweep(const CommonArgs& common, const SweepSpec& spec) {
    const std::vector<PointRecord> rows = run_sweep(spec, make_options(common));
    std::ostringstream body;
    write_sweep_csv(body, rows);
    write_output(common.out, body.str());
    for (const PointRecord& row : rows) {
        if (!row.outcome.converged) return kExitNoConverge;
    }
    return kExitOk;
}

int cmd_compare(const CommonArgs& common, const SweepSpec& spec) {
    if (spec.methods.size() != 2) {
        throw std::invalid_argument("compare expects exactly two methods (--methods a,b)");
    }
    const ComparisonReport report =
        run_compare(spec, spec.methods[0], spec.methods[1], make_options(common));
    write_output(common.out, comparison_to_json(report).dump(2) + "\n");
    return report.all_converged() ? kExitOk : kExitNoConverge;
}

int cmd_bench(const CommonArgs& common, const SweepSpec& spec, std::size_t repeats) {
    const nlohmann::ordered_json j = run_bench(spec, repeats, make_options(common));
    write_output(common.out, j.dump(2) + "\n");
    for (const auto& point : j["points"]) {
        for (const auto& [name, cell] : point["results"].items()) {
            if (cell["status"] != "ok") return kExitNoConverge;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transient pulse responses of a semi-infinite Kelvin-Voigt medium"};
    app.require_subcommand(1);

    // eval
    CommonArgs eval_args;
    double xi = 0.0, tau = 1.0, x = 0.0, t = 0.0;
    std::string method = "integral", format = "text", material;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate one method at one point");
    add_common(eval, eval_args);
    eval->add_option("--xi", xi, "Dimensionless distance");
    eval->add_option("--tau", tau, "Dimensionless time");
    eval->add_option("--method", method, "Evaluation method");
    eval->add_option("--format", format, "Output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    eval->add_option("--material", material, "rho,Ge,t_eps for dimensionful input");
    CLI::Option* opt_x = eval->add_option("--x", x, "Position [m] (with --material)");
    CLI::Option* opt_t = eval->add_option("--t", t, "Time [s] (with --material)");

    // sweep / compare / bench share the grid options
    struct GridArgs {
        CommonArgs common;
        std::string fix = "xi=0.5";
        double from = 0.05, to = 5.0;
        std::size_t points = 100;
        std::string spacing = "linear";
        std::string methods = "integral";
    };
    GridArgs sweep_args, compare_args, bench_args;
    std::size_t repeats = 5;

    auto add_grid = [](CLI::App* cmd, GridArgs& args) {
        add_common(cmd, args.common);
        cmd->add_option("--fix", args.fix, "Fixed coordinate, e.g. xi=0.5 or tau=0.5");
        cmd->add_option("--from", args.from, "Sweep start");
        cmd->add_option("--to", args.to, "Sweep end");
        cmd->add_option("--points", args.points, "Number of grid points (>= 2)");
        cmd->add_option("--spacing", args.spacing, "linear or log")
            ->check(CLI::IsMember({"linear", "log"}));
        cmd->add_option("--methods", args.methods, "Comma-separated method list");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "Evaluate methods over a 1-D grid (CSV)");
    add_grid(sweep, sweep_args);
    CLI::App* compare =
        app.add_subcommand("compare", "Compare two methods over a grid (JSON report)");
    add_grid(compare, compare_args);
    CLI::App* bench = app.add_subcommand("bench", "Median timings per method (JSON)");
    add_grid(bench, bench_args);
    bench->add_option("--repeats", repeats, "Timing repeats (>= 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(eval_args, xi, tau, method, format, material, x, t,
                            opt_x->count() > 0, opt_t->count() > 0);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_args.common,
                             make_sweep_spec(sweep_args.common, sweep_args.fix,
                                             sweep_args.from, sweep_args.to,
                                             sweep_args.points, sweep_args.spacing,
                                             sweep_args.methods));
        }
        if (compare->parsed()) {
            return cmd_compare(compare_args.common,
                               make_sweep_spec(compare_args.common, compare_args.fix,
                                               compare_args.from, compare_args.to,
                                               compare_args.points, compare_args.spacing,
                                               compare_args.methods));
        }
        if (bench->parsed()) {
            return cmd_bench(bench_args.common,
                             make_sweep_spec(bench_args.common, bench_args.fix,
                                             bench_args.from, bench_args.to,
                                             bench_args.points, bench_args.spacing,
                                             bench_args.methods),
                             repeats);
        }
    } catch (const kvwave::ConvergenceError& e) {
        std::cerr << "kvwave: " << e.what() << " (terms used: " << e.terms_used() << ")\n";
        return kExitNoConverge;
    } catch (const std::exception& e) {
        std::cerr << "kvwave: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
