#pragma once

/**
 * @file kvcore.hpp
 * @brief Kelvin-Voigt transient response engine: the kernels f and g, the
 *        step / delta / general boundary-pulse responses, their asymptotic
 *        expansions, and the dimensionful-to-dimensionless mapping.
 *
 * All responses are functions of the dimensionless distance
 * xi = x / (c' t_eps) and time tau = t / t_eps, with c' = sqrt(Ge / rho).
 * Every integrand is assembled in combined-exponent form (the Gaussian
 * exponent, the exponential growth of the 0F1bar factor and any bracket
 * shifts are summed before a single exponentiation) so evaluation stays
 * finite far outside the plotted ranges.
 */

#include <cstddef>
#include <vector>

#include "kvwave/quadrature.hpp"
#include "kvwave/specfun.hpp"

namespace kvwave {

/// Dimensionful constants of the medium.
struct MaterialParams {
    double rho;    ///< mass density [kg m^-3]
    double Ge;     ///< equilibrium modulus [Pa]
    double t_eps;  ///< retardation time [s]

    MaterialParams(double rho_, double Ge_, double t_eps_);

    /// Velocity scale c' = sqrt(Ge / rho) [m/s].
    [[nodiscard]] double velocity() const;
};

/// Evaluation point in dimensionless coordinates; xi >= 0, tau > 0.
struct DimensionlessCoord {
    double xi;
    double tau;

    DimensionlessCoord(double xi_, double tau_);
};

enum class PulseKind { Step, Delta, Sampled };

/// One sample of a tabulated boundary pulse; time is dimensionful [s].
struct PulseSample {
    double time = 0.0;
    double value = 0.0;
};

/// Boundary excitation r0(t): Heaviside step, Dirac impulse, or a sampled
/// signal interpolated piecewise-linearly.
class PulseSignal {
public:
    static PulseSignal step();
    static PulseSignal delta();
    /// Requires >= 2 samples with strictly increasing non-negative times.
    static PulseSignal sampled(std::vector<PulseSample> samples);

    [[nodiscard]] PulseKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<PulseSample>& samples() const noexcept { return samples_; }

    /// Piecewise-linear value of a Sampled pulse at a dimensionful time
    /// inside the sample support (endpoint-clamped against roundoff).
    [[nodiscard]] double sample_at(double time) const;

private:
    PulseSignal(PulseKind kind, std::vector<PulseSample> samples);

    PulseKind kind_;
    std::vector<PulseSample> samples_;
};

/// Maps a dimensionful point (x [m], t [s]) to (xi, tau).
[[nodiscard]] DimensionlessCoord to_dimensionless(double x, double t,
                                                  const MaterialParams& p);

/// Quadrature defaults used for response evaluation.
[[nodiscard]] QuadSpec default_response_spec();

/// Kernel f(xi, tau) = (1/sqrt(pi tau)) * integral_xi^inf exp(-v^2/(4 tau))
/// 0F1bar(-;1; xi(v-xi)) dv; building block of all responses.
[[nodiscard]] EvalOutcome kernel_f(const DimensionlessCoord& c, const QuadSpec& spec);

/// Kernel g = df/dtau in integral form:
/// (1/(4 sqrt(pi) tau^{5/2})) * integral_xi^inf (v^2 - 2 tau)
/// exp(-v^2/(4 tau)) 0F1bar(-;1; xi(v-xi)) dv.
[[nodiscard]] EvalOutcome kernel_g(const DimensionlessCoord& c, const QuadSpec& spec);

/// Response to a Heaviside boundary pulse. The erfc bracket is evaluated in
/// cancellation-safe scaled form; at xi = 0 the integrand reduces
/// analytically and the exact boundary value 1 is returned.
[[nodiscard]] EvalOutcome step_response(const DimensionlessCoord& c, const QuadSpec& spec);

/// Response to a Dirac boundary impulse: exp(-tau) * g(xi, tau).
[[nodiscard]] EvalOutcome delta_response(const DimensionlessCoord& c, const QuadSpec& spec);

/// Response to an arbitrary boundary pulse via the convolution
/// r(xi, tau) = integral_0^tau r0(t_eps (tau - tau')) exp(-tau') g(xi, tau') dtau'.
/// Delta pulses dispatch to delta_response; a Sampled pulse must cover
/// [0, t_eps * tau] or std::domain_error is thrown.
[[nodiscard]] EvalOutcome general_response(const PulseSignal& pulse,
                                           const DimensionlessCoord& c,
                                           const MaterialParams& p, const QuadSpec& spec);

/// Step response for tau -> 0 or xi -> inf: erfc(xi / (2 sqrt(tau))).
[[nodiscard]] double step_asym_small_tau(const DimensionlessCoord& c);

/// Step response for tau -> inf:
/// 1 - xi^2 e^{-tau} [ 0F2(-;1/2,2;w)/2 + (2 xi sqrt(tau)/(3 sqrt(pi))) 0F2(-;3/2,5/2;w) ],
/// w = xi^2 tau / 4.
[[nodiscard]] double step_asym_large_tau(const DimensionlessCoord& c,
                                         const SeriesControl& ctl = {});

/// Step response for xi -> 0, second order:
/// 1 - (e^{-tau}/sqrt(pi tau)) xi - (e^{-tau}/2) xi^2.
/// Both coefficients follow from the Taylor expansion of the Laplace image
/// exp(-xi s / sqrt(1+s))/s in xi; the xi^2 coefficient is -(e^{-tau})/2.
[[nodiscard]] double step_asym_small_xi(const DimensionlessCoord& c);

/// Delta response for tau -> 0 or xi -> inf:
/// (xi / (2 sqrt(pi) tau^{3/2})) exp(-xi^2/(4 tau) - tau), overflow-safe.
[[nodiscard]] double delta_asym_small_tau(const DimensionlessCoord& c);

/// Delta response for tau -> inf:
/// xi e^{-tau} [ (2 xi^2 sqrt(tau)/(9 sqrt(pi))) 0F2(-;5/2,5/2;w)
///               + (xi/2) 0F2(-;3/2,2;w) + (1/sqrt(pi tau)) 0F2(-;3/2,3/2;w) ].
[[nodiscard]] double delta_asym_large_tau(const DimensionlessCoord& c,
                                          const SeriesControl& ctl = {});

/// Delta response for xi -> 0:
/// xi e^{-tau} [ xi/2 + (1/sqrt(pi tau)) (1 + 1/(2 tau)) ].
[[nodiscard]] double delta_asym_small_xi(const DimensionlessCoord& c);

}  // namespace kvwave
