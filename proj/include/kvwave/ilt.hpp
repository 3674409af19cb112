#pragma once

/**
 * @file ilt.hpp
 * @brief Numerical inverse Laplace transform on a fixed Talbot contour,
 *        used as an independent oracle for the integral-form solutions.
 *
 * Valid for images whose singularities all lie on the non-positive real
 * axis (poles or branch cuts); the deformed contour wraps that axis.
 */

#include <complex>
#include <functional>

#include "kvwave/quadrature.hpp"

namespace kvwave {

/// A Laplace-domain image F(s), analytic to the right of singularity_abscissa.
struct LaplaceImage {
    std::function<std::complex<double>(std::complex<double>)> evaluate;
    double singularity_abscissa = 0.0;
    /// True when the original is not a pointwise function (e.g. a pure
    /// impulse); inversion of such images is refused.
    bool distributional = false;
};

/// Contour parameters for the Talbot inversion.
struct IltConfig {
    std::size_t node_count = 32;  ///< trapezoid nodes M on the half contour; >= 8
    double contour_scale = 1.0;   ///< multiplies the contour radius parameter
    double t_min_guard = 1e-3;    ///< inversion refused below this time

    void validate() const;
};

/// Inverts image at time t > 0. The error estimate comes from repeating the
/// contour sum with ceil(1.4 * node_count) nodes; the returned value is the
/// finer of the two. function_evals counts image evaluations.
/// Throws std::domain_error for t below t_min_guard or distributional images.
[[nodiscard]] EvalOutcome invert(const LaplaceImage& image, double t,
                                 const IltConfig& cfg = {});

/// Full bilateral contour sum without the conjugate-symmetry shortcut;
/// for real-valued originals the imaginary part is pure roundoff residue.
[[nodiscard]] std::complex<double> contour_sum(const LaplaceImage& image, double t,
                                               const IltConfig& cfg = {});

/// Image of the step-pulse response: s -> exp(-xi * s / sqrt(1 + s)) / s,
/// principal branch; pole at s = 0, branch point at s = -1.
[[nodiscard]] LaplaceImage step_image(double xi);

/// Image whose inversion at tau yields the delta-pulse response directly:
/// s -> exp(-xi * s / sqrt(1 + s)); branch point at s = -1. For xi = 0 the
/// original is a pure impulse and the image is marked distributional.
[[nodiscard]] LaplaceImage delta_image(double xi);

}  // namespace kvwave
