#pragma once

/**
 * @file methods.hpp
 * @brief Method registry, grid sweeps, comparison reports and benchmarks.
 *
 * This is the layer the CLI drives: it names the evaluation methods, checks
 * pulse/method compatibility, runs deterministic grid sweeps and emits the
 * CSV / JSON products.
 */

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kvwave/ilt.hpp"
#include "kvwave/kvcore.hpp"
#include "kvwave/literature.hpp"

namespace kvwave {

enum class Pulse { Step, Delta };

enum class Method {
    Integral,      ///< integral-form response (kvcore)
    Ilt,           ///< Talbot inversion of the Laplace image
    AsymSmallTau,  ///< small-tau / large-xi asymptotic
    AsymLargeTau,  ///< large-tau asymptotic
    AsymSmallXi,   ///< small-xi asymptotic
    Hanin,         ///< Hanin's delta-pulse formulation
    Morrison,      ///< Morrison's step-pulse formulation
    Dozio,         ///< Dozio's delta-pulse formulation (known defect)
};

[[nodiscard]] std::string_view pulse_name(Pulse pulse);
[[nodiscard]] std::optional<Pulse> parse_pulse(std::string_view name);
[[nodiscard]] std::string_view method_name(Method method);
[[nodiscard]] std::optional<Method> parse_method(std::string_view name);
[[nodiscard]] bool method_supports(Method method, Pulse pulse);

/// Shared evaluation knobs for all methods.
struct MethodOptions {
    QuadSpec quad = default_response_spec();
    IltConfig ilt{};
    double morrison_tau_limit = 8.0;
};

/// Evaluates one method at one grid point. Throws std::invalid_argument if
/// the method does not apply to the pulse kind.
[[nodiscard]] EvalOutcome evaluate_method(Pulse pulse, Method method,
                                          const DimensionlessCoord& c,
                                          const MethodOptions& opts);

/// One-dimensional sweep: one coordinate fixed, the other sampled.
struct SweepSpec {
    enum class Axis { Xi, Tau };
    enum class Spacing { Linear, Log };

    Pulse pulse = Pulse::Step;
    Axis fixed_axis = Axis::Xi;
    double fixed_value = 0.5;
    double var_from = 0.0;
    double var_to = 1.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::Linear;
    std::vector<Method> methods;

    void validate() const;
    [[nodiscard]] std::vector<DimensionlessCoord> grid() const;
};

struct PointRecord {
    double xi = 0.0;
    double tau = 0.0;
    Method method = Method::Integral;
    EvalOutcome outcome{};
    double wall_ms = 0.0;
};

/// Grid-major evaluation, method order as given; deterministic row order.
[[nodiscard]] std::vector<PointRecord> run_sweep(const SweepSpec& spec,
                                                 const MethodOptions& opts);

/// Scientific notation with 17 significant digits (reproducible output).
[[nodiscard]] std::string format_sci17(double v);

/// CSV schema: xi,tau,method,value,error_estimate,function_evals,status
/// with status in {ok, no_converge}; failed rows carry an empty value.
void write_sweep_csv(std::ostream& os, const std::vector<PointRecord>& rows);

struct ComparisonPoint {
    double xi = 0.0;
    double tau = 0.0;
    EvalOutcome a{};
    EvalOutcome b{};
};

struct ComparisonReport {
    Pulse pulse = Pulse::Step;
    Method method_a = Method::Integral;
    Method method_b = Method::Ilt;
    std::vector<ComparisonPoint> grid;
    double max_abs_discrepancy = 0.0;
    bool any_valid = false;        ///< at least one point where both methods converged
    double argmax_xi = 0.0;
    double argmax_tau = 0.0;
    double wall_ms_a = 0.0;
    double wall_ms_b = 0.0;

    [[nodiscard]] bool all_converged() const;
};

[[nodiscard]] ComparisonReport run_compare(const SweepSpec& spec, Method method_a,
                                           Method method_b, const MethodOptions& opts);

[[nodiscard]] nlohmann::ordered_json comparison_to_json(const ComparisonReport& report);

/// Per-point, per-method median wall time and evaluation counts; repeats >= 3.
[[nodiscard]] nlohmann::ordered_json run_bench(const SweepSpec& spec, std::size_t repeats,
                                               const MethodOptions& opts);

}  // namespace kvwave
