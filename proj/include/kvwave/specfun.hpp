#pragma once

/**
 * @file specfun.hpp
 * @brief Scaled special functions shared by every response formula:
 *        complementary error function (plain and exponentially scaled),
 *        the regularized hypergeometric 0F1bar(-;1;z) and the generalized
 *        hypergeometric 0F2(-;b1,b2;z).
 *
 * All functions are pure and reentrant.
 */

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kvwave {

/// Truncation control for the hypergeometric power series.
struct SeriesControl {
    double rel_tol = 1e-15;       ///< relative truncation tolerance, in (0, 1)
    std::size_t max_terms = 500;  ///< hard cap on the number of series terms

    void validate() const;
};

/// A series failed to meet its truncation tolerance within max_terms.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, std::size_t terms_used)
        : std::runtime_error(msg), terms_used_(terms_used) {}

    [[nodiscard]] std::size_t terms_used() const noexcept { return terms_used_; }

private:
    std::size_t terms_used_;
};

/// Value represented as mantissa * exp(log_scale).
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    /// mantissa * exp(log_scale); may overflow where the plain value does.
    [[nodiscard]] double combined() const;
};

/// Complementary error function. Total on finite reals: small arguments use
/// the Maclaurin series of erf, large positive arguments the scaled Laplace
/// continued fraction, negative arguments the reflection erfc(-x) = 2 - erfc(x).
[[nodiscard]] double erfc(double x);

/// Scaled complementary error function exp(x^2) * erfc(x).
/// For x >= 0 the result is in (0, 1]. Throws std::overflow_error for
/// x < -26.6 where exp(x^2) exceeds the double range.
[[nodiscard]] double erfcx(double x);

/// Regularized confluent hypergeometric limit function
///   0F1bar(-;1;z) = sum_k z^k / (k!)^2,
/// equal to the modified Bessel function I0(2 sqrt(z)). Requires z >= 0.
[[nodiscard]] double hyp0f1_reg1(double z, const SeriesControl& ctl = {});

/// 0F1bar(-;1;z) in scaled form with log_scale fixed to 2*sqrt(z), the leading
/// exponential growth, so that integrand exponents can be combined before a
/// single exponentiation. The mantissa stays bounded for all z >= 0.
[[nodiscard]] ScaledValue hyp0f1_reg1_scaled(double z, const SeriesControl& ctl = {});

/// Generalized hypergeometric 0F2(-;b1,b2;z) = sum_k z^k / ((b1)_k (b2)_k k!),
/// evaluated by term recurrence. Requires b1 > 0, b2 > 0, z >= 0; the result
/// is >= 1.
[[nodiscard]] double hyp0f2(double b1, double b2, double z, const SeriesControl& ctl = {});

}  // namespace kvwave
