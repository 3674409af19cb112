#pragma once

/**
 * @file quadrature.hpp
 * @brief Adaptive numerical integration over finite and semi-infinite
 *        intervals with certified error estimates.
 *
 * Finite intervals use an embedded Gauss(7)/Kronrod(15) pair with
 * bisection of the worst segment. Semi-infinite intervals are truncated at
 * a point V chosen so that a caller-supplied certified tail bound fits in a
 * configurable fraction of the error budget; the tail bound is added to the
 * reported error estimate.
 */

#include <cstddef>
#include <functional>

namespace kvwave {

/// Tolerances and budgets for one integration call.
struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_subdivisions = 200;
    /// Fraction of the error budget that the truncation tail may consume.
    double tail_tol_fraction = 0.1;

    void validate() const;
};

/// Result of a numeric evaluation: value, certified error estimate and cost.
struct EvalOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t function_evals = 0;
    bool converged = false;
};

/// Certified truncation aid for semi-infinite integrals.
///
/// tail_integral(V) must upper-bound the integral of |f| over [V, inf) for
/// every V >= search_from and be non-increasing in V (it may return +inf
/// where the bound formula does not yet apply).
struct DecayHint {
    std::function<double(double)> tail_integral;
    double search_from = 0.0;
};

/// Hint for |f(v)| <= exp(phi(v)) with phi concave and eventually decreasing
/// on [valid_from, inf). Uses the bound integral_V^inf exp(phi) <=
/// exp(phi(V)) / (-phi'(V)) wherever phi'(V) < 0.
[[nodiscard]] DecayHint log_concave_decay(std::function<double(double)> log_envelope,
                                          std::function<double(double)> dlog_envelope,
                                          double valid_from);

/// Hint for |f(v)| <= exp(log_prefactor - rate * v), rate > 0.
[[nodiscard]] DecayHint exponential_decay(double rate, double log_prefactor,
                                          double valid_from = 0.0);

/// Adaptive integration of f over [a, b]. Endpoints may be integrable
/// singular limits; they are never evaluated. A subdivision budget that runs
/// out yields a non-converged outcome with an honest error estimate, never a
/// silent wrong answer.
[[nodiscard]] EvalOutcome integrate_finite(const std::function<double(double)>& f,
                                           double a, double b, const QuadSpec& spec);

/// Adaptive integration of f over [a, inf). The truncation point is found by
/// expansion and bisection on hint.tail_integral; throws std::invalid_argument
/// if no admissible truncation point exists below 1e154.
[[nodiscard]] EvalOutcome integrate_semi_infinite(const std::function<double(double)>& f,
                                                  double a, const DecayHint& hint,
                                                  const QuadSpec& spec);

}  // namespace kvwave
