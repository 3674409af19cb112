#include "kvwave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kvwave {

namespace {

// 15-point Kronrod nodes on [0, 1-half]; odd indices are the embedded
// 7-point Gauss nodes, kXgk[7] = 0 is the common center.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double err = 0.0;
};

using Fn = std::function<double(double)>;

Segment gk15(const Fn& f, double a, double b, std::size_t& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    Segment s;
    s.a = a;
    s.b = b;
    s.value = resk * half;
    const double raw = std::abs(resk - resg) * half;
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * half;
    s.err = std::max(raw, floor);
    return s;
}

double tolerance_for(const QuadSpec& spec, double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

// Smallest V >= start with hint.tail_integral(V) <= budget, found by
// geometric expansion followed by bisection.
double find_truncation(const DecayHint& hint, double start, double budget) {
    if (!(budget > 0.0)) {
        throw std::invalid_argument("quadrature: tail budget must be positive");
    }
    if (hint.tail_integral(start) <= budget) return start;
    double lo = start;
    double hi = std::max(start, 1.0);
    while (!(hint.tail_integral(hi) <= budget)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e154) {
            throw std::invalid_argument(
                "quadrature: no admissible truncation point; envelope decays too slowly");
        }
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hint.tail_integral(mid) <= budget) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

void QuadSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1) {
        throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
    }
    if (!(tail_tol_fraction > 0.0) || !(tail_tol_fraction < 1.0)) {
        throw std::invalid_argument("QuadSpec: tail_tol_fraction must be in (0, 1)");
    }
}

DecayHint log_concave_decay(std::function<double(double)> log_envelope,
                            std::function<double(double)> dlog_envelope,
                            double valid_from) {
    DecayHint hint;
    hint.search_from = valid_from;
    hint.tail_integral = [phi = std::move(log_envelope),
                          dphi = std::move(dlog_envelope)](double v) -> double {
        const double d = dphi(v);
        if (!(d < 0.0)) return std::numeric_limits<double>::infinity();
        return std::exp(phi(v)) / (-d);
    };
    return hint;
}

DecayHint exponential_decay(double rate, double log_prefactor, double valid_from) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential_decay: rate must be > 0");
    DecayHint hint;
    hint.search_from = valid_from;
    hint.tail_integral = [rate, log_prefactor](double v) {
        return std::exp(log_prefactor - rate * v) / rate;
    };
    return hint;
}

EvalOutcome integrate_finite(const std::function<double(double)>& f, double a, double b,
                             const QuadSpec& spec) {
    spec.validate();
    if (!f) throw std::invalid_argument("integrate_finite: integrand is empty");
    if (!(a <= b)) throw std::invalid_argument("integrate_finite: requires a <= b");
    if (a == b) return {0.0, 0.0, 0, true};

    std::size_t evals = 0;
    std::vector<Segment> segs;
    segs.reserve(64);
    segs.push_back(gk15(f, a, b, evals));

    std::size_t splits = 0;
    while (true) {
        double total = 0.0;
        double err = 0.0;
        for (const Segment& s : segs) {
            total += s.value;
            err += s.err;
        }
        if (err <= tolerance_for(spec, total)) break;
        if (splits >= spec.max_subdivisions) break;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i) {
            if (segs[i].err > segs[worst].err) worst = i;
        }
        const Segment old = segs[worst];
        const double mid = 0.5 * (old.a + old.b);
        if (mid <= old.a || mid >= old.b) break;  // interval no longer splittable
        segs[worst] = gk15(f, old.a, mid, evals);
        segs.push_back(gk15(f, mid, old.b, evals));
        ++splits;
    }

    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double total = 0.0;
    double err = 0.0;
    for (const Segment& s : segs) {
        total += s.value;
        err += s.err;
    }
    return {total, err, evals, err <= tolerance_for(spec, total)};
}

EvalOutcome integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                    const DecayHint& hint, const QuadSpec& spec) {
    spec.validate();
    if (!hint.tail_integral) {
        throw std::invalid_argument("integrate_semi_infinite: missing tail_integral");
    }
    const double start = std::max(a, hint.search_from);

    // First-stage budget: the absolute tolerance when available, otherwise the
    // relative tolerance at unit scale; refined below once a value is known.
    const double budget0 = spec.tail_tol_fraction *
                           (spec.abs_tol > 0.0 ? spec.abs_tol : spec.rel_tol);
    double cut = find_truncation(hint, start, budget0);

    QuadSpec inner = spec;
    inner.abs_tol *= (1.0 - spec.tail_tol_fraction);
    inner.rel_tol *= (1.0 - spec.tail_tol_fraction);

    EvalOutcome out =
        (cut > a) ? integrate_finite(f, a, cut, inner) : EvalOutcome{0.0, 0.0, 0, true};
    double tail = hint.tail_integral(cut);

    // Second stage: re-derive the budget from the computed magnitude and
    // extend the truncation point if the first guess was too generous.
    const double budget1 = spec.tail_tol_fraction *
                           std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    if (tail > budget1 && budget1 > 0.0) {
        const double cut2 = find_truncation(hint, cut, budget1);
        if (cut2 > cut) {
            const EvalOutcome ext = integrate_finite(f, cut, cut2, inner);
            out.value += ext.value;
            out.error_estimate += ext.error_estimate;
            out.function_evals += ext.function_evals;
            out.converged = out.converged && ext.converged;
            tail = hint.tail_integral(cut2);
        }
    }

    out.error_estimate += tail;
    out.converged = out.converged && out.error_estimate <= tolerance_for(spec, out.value);
    return out;
}

}  // namespace kvwave
