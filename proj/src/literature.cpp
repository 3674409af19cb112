#include "kvwave/literature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kvwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_interior(const DimensionlessCoord& c, const char* who) {
    if (!(c.xi > 0.0)) {
        throw std::domain_error(std::string(who) + ": requires xi > 0");
    }
}

// Tolerance split for a value assembled from two scaled pieces: each piece
// may spend half the absolute budget (descaled by its prefactor) and half
// the relative budget.
QuadSpec piece_spec(const QuadSpec& spec, double prefactor) {
    QuadSpec piece = spec;
    piece.rel_tol = 0.5 * spec.rel_tol;
    piece.abs_tol = 0.5 * spec.abs_tol / std::max(std::abs(prefactor), 1e-300);
    return piece;
}

EvalOutcome combine(double c0, double pref1, const EvalOutcome& o1, double pref2,
                    const EvalOutcome& o2, const QuadSpec& spec) {
    EvalOutcome out;
    out.value = c0 + pref1 * o1.value + pref2 * o2.value;
    out.error_estimate =
        std::abs(pref1) * o1.error_estimate + std::abs(pref2) * o2.error_estimate;
    out.function_evals = o1.function_evals + o2.function_evals;
    out.converged = o1.converged && o2.converged &&
                    out.error_estimate <=
                        std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    return out;
}

}  // namespace

LiteratureMethod literature_method(LiteratureTag tag) {
    return {tag, tag == LiteratureTag::DozioDelta};
}

EvalOutcome hanin_delta(const DimensionlessCoord& c, const QuadSpec& spec) {
    require_interior(c, "hanin_delta");
    spec.validate();
    const double xi = c.xi;
    const double tau = c.tau;
    const double pref1 = 2.0 * xi / (kPi * tau);
    const double pref2 = std::exp(-2.0 * tau) / kPi;

    auto f1 = [xi, tau](double u) {
        const double root = std::sqrt(std::max(0.0, 1.0 - u * u));
        return std::exp(-2.0 * tau * u * u) * std::cos(2.0 * u * (xi - tau * root));
    };
    const EvalOutcome o1 = integrate_finite(f1, 0.0, 1.0, piece_spec(spec, pref1));

    auto f2 = [xi, tau](double u) {
        return std::exp(-tau * u) *
               (std::sin((2.0 + u) / std::sqrt(1.0 + u) * xi) - std::sin(2.0 * xi));
    };
    // |f2| <= 2 exp(-tau u)
    const EvalOutcome o2 = integrate_semi_infinite(
        f2, 0.0, exponential_decay(tau, std::log(2.0)), piece_spec(spec, pref2));

    return combine(0.0, pref1, o1, pref2, o2, spec);
}

EvalOutcome morrison_step(const DimensionlessCoord& c, const QuadSpec& spec,
                          double tau_limit) {
    require_interior(c, "morrison_step");
    spec.validate();
    if (c.tau > tau_limit) {
        // Beyond the limit the exp(2 tau sin^2 theta) growth against e^{-tau}
        // cancels past double precision; refuse rather than return junk.
        return {std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::infinity(), 0, false};
    }
    const double xi = c.xi;
    const double tau = c.tau;
    const double pref = 2.0 / kPi;

    auto f = [xi, tau](double theta) {
        const double s = std::sin(theta);
        const double s2 = s * s;
        if (s2 <= 0.0) return 0.0;
        const double expo = 2.0 * tau * s2 - tau - xi * xi / (4.0 * tau * s2);
        return std::cos(tau * std::sin(2.0 * theta)) * std::exp(expo);
    };
    const EvalOutcome o = integrate_finite(f, 0.0, 0.5 * kPi, piece_spec(spec, pref));

    EvalOutcome out;
    out.value = pref * o.value;
    out.error_estimate = pref * o.error_estimate;
    out.function_evals = o.function_evals;
    out.converged = o.converged &&
                    out.error_estimate <=
                        std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    return out;
}

EvalOutcome dozio_delta(const DimensionlessCoord& c, const QuadSpec& spec) {
    require_interior(c, "dozio_delta");
    spec.validate();
    const double xi = c.xi;
    const double tau = c.tau;
    const double damp = std::exp(-tau);
    const double pref = damp * 2.0 / kPi;

    // (0, 1] piece after w = 1/u: integral_1^inf w^-3 e^{-tau/w^2} sin(xi (w + 1/w)) dw.
    auto fa = [xi, tau](double w) {
        return std::exp(-tau / (w * w)) / (w * w * w) * std::sin(xi * (w + 1.0 / w));
    };
    // Second-mean-value truncation bound: for V past the amplitude peak the
    // amplitude w^-3 e^{-tau/w^2} decreases and the phase slope
    // xi (1 - 1/w^2) increases, so |tail| <= 2 * amplitude(V) / slope(V).
    DecayHint ha;
    ha.search_from = std::max(2.0, std::sqrt(2.0 * tau / 3.0) + 0.01);
    ha.tail_integral = [xi](double v) -> double {
        const double slope = xi * (1.0 - 1.0 / (v * v));
        if (!(slope > 0.0)) return std::numeric_limits<double>::infinity();
        return 2.0 / (v * v * v) / slope;
    };
    const EvalOutcome oa = integrate_semi_infinite(fa, 1.0, ha, piece_spec(spec, pref));

    // [1, inf) piece with Gaussian damping.
    auto fb = [xi, tau](double u) {
        return u * std::exp(-tau * u * u) * std::sin(xi * (u + 1.0 / u));
    };
    DecayHint hb = log_concave_decay(
        [tau](double u) { return std::log(u) - tau * u * u; },
        [tau](double u) { return 1.0 / u - 2.0 * tau * u; }, 1.0);
    const EvalOutcome ob = integrate_semi_infinite(fb, 1.0, hb, piece_spec(spec, pref));

    return combine(damp * 0.5 * xi * xi, pref, oa, pref, ob, spec);
}

}  // namespace kvwave
