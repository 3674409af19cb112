#include "kvwave/kvcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kvwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
    return v;
}

// d/dv of the combined Gaussian + 0F1bar-growth exponent
// -v^2/(4 tau) + 2 sqrt(xi (v - xi)); +inf at v <= xi where the growth term
// has unbounded slope, so truncation searches are pushed past that region.
double combined_exponent_slope(double v, double xi, double tau) {
    const double gauss = -v / (2.0 * tau);
    if (xi == 0.0) return gauss;
    if (v <= xi) return std::numeric_limits<double>::infinity();
    return gauss + std::sqrt(xi / (v - xi));
}

}  // namespace

MaterialParams::MaterialParams(double rho_, double Ge_, double t_eps_)
    : rho(rho_), Ge(Ge_), t_eps(t_eps_) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("MaterialParams: rho must be positive");
    }
    if (!(Ge > 0.0) || !std::isfinite(Ge)) {
        throw std::invalid_argument("MaterialParams: Ge must be positive");
    }
    if (!(t_eps > 0.0) || !std::isfinite(t_eps)) {
        throw std::invalid_argument("MaterialParams: t_eps must be positive");
    }
}

double MaterialParams::velocity() const { return std::sqrt(Ge / rho); }

DimensionlessCoord::DimensionlessCoord(double xi_, double tau_) : xi(xi_), tau(tau_) {
    require_finite(xi, "DimensionlessCoord: xi");
    require_finite(tau, "DimensionlessCoord: tau");
    if (!(xi >= 0.0)) throw std::invalid_argument("DimensionlessCoord: xi must be >= 0");
    if (!(tau > 0.0)) throw std::invalid_argument("DimensionlessCoord: tau must be > 0");
}

PulseSignal::PulseSignal(PulseKind kind, std::vector<PulseSample> samples)
    : kind_(kind), samples_(std::move(samples)) {}

PulseSignal PulseSignal::step() { return PulseSignal(PulseKind::Step, {}); }

PulseSignal PulseSignal::delta() { return PulseSignal(PulseKind::Delta, {}); }

PulseSignal PulseSignal::sampled(std::vector<PulseSample> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("PulseSignal: Sampled requires >= 2 samples");
    }
    if (!(samples.front().time >= 0.0)) {
        throw std::invalid_argument("PulseSignal: sample times must be >= 0");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].time > samples[i - 1].time)) {
            throw std::invalid_argument("PulseSignal: sample times must be strictly increasing");
        }
    }
    return PulseSignal(PulseKind::Sampled, std::move(samples));
}

double PulseSignal::sample_at(double time) const {
    if (kind_ != PulseKind::Sampled) {
        throw std::logic_error("PulseSignal: sample_at is only defined for Sampled pulses");
    }
    if (time <= samples_.front().time) return samples_.front().value;
    if (time >= samples_.back().time) return samples_.back().value;
    const auto it = std::upper_bound(
        samples_.begin(), samples_.end(), time,
        [](double t, const PulseSample& s) { return t < s.time; });
    const PulseSample& hi = *it;
    const PulseSample& lo = *(it - 1);
    const double w = (time - lo.time) / (hi.time - lo.time);
    return lo.value + w * (hi.value - lo.value);
}

DimensionlessCoord to_dimensionless(double x, double t, const MaterialParams& p) {
    require_finite(x, "to_dimensionless: x");
    require_finite(t, "to_dimensionless: t");
    if (!(x >= 0.0)) throw std::invalid_argument("to_dimensionless: x must be >= 0");
    if (!(t > 0.0)) throw std::invalid_argument("to_dimensionless: t must be > 0");
    return {x / (p.velocity() * p.t_eps), t / p.t_eps};
}

QuadSpec default_response_spec() {
    QuadSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-12;
    spec.max_subdivisions = 200;
    spec.tail_tol_fraction = 0.1;
    return spec;
}

EvalOutcome kernel_f(const DimensionlessCoord& c, const QuadSpec& spec) {
    const double xi = c.xi;
    const double tau = c.tau;
    const double log_pref = -0.5 * std::log(kPi * tau);

    auto integrand = [xi, tau, log_pref](double v) {
        const double z = std::max(0.0, xi * (v - xi));
        const ScaledValue sc = hyp0f1_reg1_scaled(z);
        return sc.mantissa * std::exp(-v * v / (4.0 * tau) + sc.log_scale + log_pref);
    };

    // The 0F1bar mantissa is <= 1, so exp of the combined exponent bounds |integrand|.
    auto phi = [xi, tau, log_pref](double v) {
        const double z = std::max(0.0, xi * (v - xi));
        return -v * v / (4.0 * tau) + 2.0 * std::sqrt(z) + log_pref;
    };
    auto dphi = [xi, tau](double v) { return combined_exponent_slope(v, xi, tau); };

    return integrate_semi_infinite(integrand, xi, log_concave_decay(phi, dphi, xi), spec);
}

EvalOutcome kernel_g(const DimensionlessCoord& c, const QuadSpec& spec) {
    const double xi = c.xi;
    const double tau = c.tau;
    const double log_pref = -std::log(4.0 * kSqrtPi) - 2.5 * std::log(tau);

    auto integrand = [xi, tau, log_pref](double v) {
        const double z = std::max(0.0, xi * (v - xi));
        const ScaledValue sc = hyp0f1_reg1_scaled(z);
        return (v * v - 2.0 * tau) * sc.mantissa *
               std::exp(-v * v / (4.0 * tau) + sc.log_scale + log_pref);
    };

    // |v^2 - 2 tau| <= v^2 for v >= sqrt(2 tau), so the envelope carries an
    // extra 2 ln v and the truncation search starts past sqrt(2 tau).
    auto phi = [xi, tau, log_pref](double v) {
        const double z = std::max(0.0, xi * (v - xi));
        return 2.0 * std::log(v) - v * v / (4.0 * tau) + 2.0 * std::sqrt(z) + log_pref;
    };
    auto dphi = [xi, tau](double v) {
        const double slope = combined_exponent_slope(v, xi, tau);
        return 2.0 / v + slope;
    };
    const double from = std::max(xi, std::sqrt(2.0 * tau));

    return integrate_semi_infinite(integrand, xi, log_concave_decay(phi, dphi, from), spec);
}

EvalOutcome step_response(const DimensionlessCoord& c, const QuadSpec& spec) {
    const double xi = c.xi;
    const double tau = c.tau;
    if (xi == 0.0) {
        spec.validate();
        return {1.0, 0.0, 0, true};  // boundary value; the integral is exactly 1
    }

    const double sqrt_tau = std::sqrt(tau);
    const double inv_spt = 1.0 / (kSqrtPi * sqrt_tau);

    // All three bracket terms share the factor exp(-v^2/(4 tau) - tau) once
    // e^{+-v} erfc(.) is rewritten through erfcx; for v < 2 tau the reflection
    // erfc(b) = 2 - erfc(-b) leaves a separate, bounded e^{-v} contribution.
    auto integrand = [xi, tau, sqrt_tau, inv_spt](double v) {
        const double z = std::max(0.0, xi * (v - xi));
        const ScaledValue sc = hyp0f1_reg1_scaled(z);
        const double bm = (v - 2.0 * tau) / (2.0 * sqrt_tau);
        const double bp = (v + 2.0 * tau) / (2.0 * sqrt_tau);
        const double e_common = -v * v / (4.0 * tau) - tau + sc.log_scale;
        if (bm >= 0.0) {
            const double bracket = inv_spt + 0.5 * (erfcx(bm) - erfcx(bp));
            return sc.mantissa * bracket * std::exp(e_common);
        }
        const double bracket = inv_spt - 0.5 * (erfcx(-bm) + erfcx(bp));
        return sc.mantissa * (bracket * std::exp(e_common) + std::exp(-v + sc.log_scale));
    };

    // Tail envelope: the scaled bracket is bounded by 1/sqrt(pi tau) + 1 and
    // the reflected e^{-v} piece (present only below v = 2 tau) by
    // exp(-v + 2 sqrt(xi (v - xi))), which peaks at zero exponent.
    auto tail = [xi, tau, inv_spt](double v) -> double {
        const double inf = std::numeric_limits<double>::infinity();
        const double z = std::max(0.0, xi * (v - xi));
        const double growth = 2.0 * std::sqrt(z);

        const double d_gauss = combined_exponent_slope(v, xi, tau);
        if (!(d_gauss < 0.0)) return inf;
        double bound = (1.0 + inv_spt) *
                       std::exp(-v * v / (4.0 * tau) - tau + growth) / (-d_gauss);

        if (v < 2.0 * tau) {
            const double d_exp =
                (v <= xi) ? inf : -1.0 + std::sqrt(xi / (v - xi));
            if (!(d_exp < 0.0)) return inf;
            bound += std::exp(-v + growth) / (-d_exp);
        }
        return bound;
    };

    return integrate_semi_infinite(integrand, xi, DecayHint{tail, xi}, spec);
}

EvalOutcome delta_response(const DimensionlessCoord& c, const QuadSpec& spec) {
    const EvalOutcome g = kernel_g(c, spec);
    const double damp = std::exp(-c.tau);
    return {damp * g.value, damp * g.error_estimate, g.function_evals, g.converged};
}

EvalOutcome general_response(const PulseSignal& pulse, const DimensionlessCoord& c,
                             const MaterialParams& p, const QuadSpec& spec) {
    if (pulse.kind() == PulseKind::Delta) return delta_response(c, spec);

    if (pulse.kind() == PulseKind::Sampled) {
        if (pulse.samples().front().time > 0.0 ||
            pulse.samples().back().time < p.t_eps * c.tau) {
            throw std::domain_error(
                "general_response: sampled pulse does not cover [0, t_eps * tau]");
        }
    }

    if (c.xi == 0.0) {
        // g(0, .) degenerates to a unit impulse at tau' = 0, so the
        // convolution sifts out the boundary value r0(t_eps * tau).
        spec.validate();
        const double v = pulse.kind() == PulseKind::Step
                             ? 1.0
                             : pulse.sample_at(p.t_eps * c.tau);
        return {v, 0.0, 0, true};
    }

    QuadSpec inner = spec;
    inner.rel_tol *= 0.1;
    inner.abs_tol *= 0.1;

    std::size_t inner_evals = 0;
    double max_inner_err = 0.0;
    bool inner_ok = true;
    auto integrand = [&](double tp) {
        const EvalOutcome g = kernel_g(DimensionlessCoord(c.xi, tp), inner);
        inner_evals += g.function_evals;
        max_inner_err = std::max(max_inner_err, g.error_estimate);
        inner_ok = inner_ok && g.converged;
        const double r0 = pulse.kind() == PulseKind::Step
                              ? 1.0
                              : pulse.sample_at(p.t_eps * (c.tau - tp));
        return r0 * std::exp(-tp) * g.value;
    };

    EvalOutcome out = integrate_finite(integrand, 0.0, c.tau, spec);
    out.function_evals += inner_evals;
    out.error_estimate += c.tau * max_inner_err;
    out.converged = out.converged && inner_ok &&
                    out.error_estimate <=
                        std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    return out;
}

double step_asym_small_tau(const DimensionlessCoord& c) {
    return erfc(c.xi / (2.0 * std::sqrt(c.tau)));
}

double step_asym_large_tau(const DimensionlessCoord& c, const SeriesControl& ctl) {
    const double w = c.xi * c.xi * c.tau / 4.0;
    const double bracket = 0.5 * hyp0f2(0.5, 2.0, w, ctl) +
                           2.0 * c.xi * std::sqrt(c.tau) / (3.0 * kSqrtPi) *
                               hyp0f2(1.5, 2.5, w, ctl);
    return 1.0 - c.xi * c.xi * std::exp(-c.tau) * bracket;
}

double step_asym_small_xi(const DimensionlessCoord& c) {
    const double damp = std::exp(-c.tau);
    return 1.0 - damp / (kSqrtPi * std::sqrt(c.tau)) * c.xi - 0.5 * damp * c.xi * c.xi;
}

double delta_asym_small_tau(const DimensionlessCoord& c) {
    if (c.xi == 0.0) return 0.0;
    const double expo = -c.xi * c.xi / (4.0 * c.tau) - c.tau + std::log(c.xi) -
                        std::log(2.0 * kSqrtPi) - 1.5 * std::log(c.tau);
    return std::exp(expo);
}

double delta_asym_large_tau(const DimensionlessCoord& c, const SeriesControl& ctl) {
    const double w = c.xi * c.xi * c.tau / 4.0;
    const double sqrt_tau = std::sqrt(c.tau);
    const double bracket = 2.0 * c.xi * c.xi * sqrt_tau / (9.0 * kSqrtPi) *
                               hyp0f2(2.5, 2.5, w, ctl) +
                           0.5 * c.xi * hyp0f2(1.5, 2.0, w, ctl) +
                           1.0 / (kSqrtPi * sqrt_tau) * hyp0f2(1.5, 1.5, w, ctl);
    return c.xi * std::exp(-c.tau) * bracket;
}

double delta_asym_small_xi(const DimensionlessCoord& c) {
    const double radial = 1.0 / (kSqrtPi * std::sqrt(c.tau)) * (1.0 + 0.5 / c.tau);
    return c.xi * std::exp(-c.tau) * (0.5 * c.xi + radial);
}

}  // namespace kvwave
