#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "kvwave/ilt.hpp"
#include "kvwave/specfun.hpp"

using namespace kvwave;
using cplx = std::complex<double>;

namespace {

struct KnownPair {
    const char* name;
    LaplaceImage image;
    std::function<double(double)> original;
};

std::vector<KnownPair> known_pairs() {
    std::vector<KnownPair> pairs;
    pairs.push_back({"1/s",
                     {[](cplx s) { return 1.0 / s; }, 0.0, false},
                     [](double) { return 1.0; }});
    pairs.push_back({"1/s^2",
                     {[](cplx s) { return 1.0 / (s * s); }, 0.0, false},
                     [](double t) { return t; }});
    pairs.push_back({"1/(s+1)",
                     {[](cplx s) { return 1.0 / (s + 1.0); }, -1.0, false},
                     [](double t) { return std::exp(-t); }});
    pairs.push_back({"1/(s^2+1)",
                     {[](cplx s) { return 1.0 / (s * s + 1.0); }, 0.0, false},
                     [](double t) { return std::sin(t); }});
    pairs.push_back({"exp(-sqrt(s))/s",
                     {[](cplx s) { return std::exp(-std::sqrt(s)) / s; }, 0.0, false},
                     [](double t) { return kvwave::erfc(1.0 / (2.0 * std::sqrt(t))); }});
    return pairs;
}

const std::vector<double> kTimes = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};

}  // namespace

TEST_CASE("known transform pairs invert to 1e-8 absolute") {
    IltConfig cfg;  // default node count
    for (const KnownPair& pair : known_pairs()) {
        for (double t : kTimes) {
            const EvalOutcome out = invert(pair.image, t, cfg);
            INFO(pair.name << " at t=" << t);
            CHECK(out.converged);
            CHECK(std::abs(out.value - pair.original(t)) <= 1e-8);
            CHECK(out.function_evals == cfg.node_count +
                                            static_cast<std::size_t>(
                                                std::ceil(1.4 * cfg.node_count)));
        }
    }
}

TEST_CASE("per-pair worst error is non-increasing (within 10x) as M doubles") {
    // 5e-12 absolute floor: image evaluations are double precision, so below
    // that level the comparison sits in roundoff, three orders under the
    // 1e-8 accuracy contract of the suite.
    constexpr double kFloor = 5e-12;
    for (const KnownPair& pair : known_pairs()) {
        double prev_worst = 0.0;
        bool first = true;
        for (std::size_t m : {16u, 32u, 64u}) {
            IltConfig cfg;
            cfg.node_count = m;
            double worst = 0.0;
            for (double t : kTimes) {
                const EvalOutcome out = invert(pair.image, t, cfg);
                worst = std::max(worst, std::abs(out.value - pair.original(t)));
            }
            INFO(pair.name << " at M=" << m << ": worst=" << worst);
            if (!first) CHECK(worst <= 10.0 * prev_worst + kFloor);
            prev_worst = worst;
            first = false;
        }
    }
}

TEST_CASE("real originals leave only a roundoff imaginary residue") {
    IltConfig cfg;
    for (const KnownPair& pair : known_pairs()) {
        for (double t : {0.5, 2.0}) {
            const cplx full = contour_sum(pair.image, t, cfg);
            CHECK(std::abs(full.imag()) <= 1e-10 * std::max(std::abs(full.real()), 1.0));
        }
    }
}

TEST_CASE("step image") {
    const LaplaceImage unit = step_image(0.0);  // reduces to 1/s
    for (double t : {0.3, 1.0, 7.0}) {
        CHECK(invert(unit, t).value == doctest::Approx(1.0).epsilon(1e-10));
    }

    const LaplaceImage img = step_image(0.5);
    const cplx at_one = img.evaluate(cplx(1.0, 0.0));
    CHECK(at_one.real() == doctest::Approx(std::exp(-0.5 / std::sqrt(2.0))).epsilon(1e-15));
    CHECK(std::abs(at_one.imag()) < 1e-16);
    CHECK(img.singularity_abscissa == 0.0);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const cplx s(dist(rng), dist(rng) - 5.0);
        const cplx direct = img.evaluate(std::conj(s));
        const cplx mirrored = std::conj(img.evaluate(s));
        CHECK(std::abs(direct - mirrored) <= 1e-14 * std::abs(direct));
    }
}

TEST_CASE("delta image") {
    const LaplaceImage degenerate = delta_image(0.0);  // image == 1: pure impulse
    CHECK(degenerate.distributional);
    CHECK_THROWS_AS((void)invert(degenerate, 1.0), std::domain_error);

    const LaplaceImage img = delta_image(0.5);
    CHECK_FALSE(img.distributional);
    CHECK(img.singularity_abscissa == doctest::Approx(-1.0));
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const cplx s(dist(rng), dist(rng) - 5.0);
        CHECK(std::abs(img.evaluate(std::conj(s)) - std::conj(img.evaluate(s))) <=
              1e-14 * std::abs(img.evaluate(s)));
    }
}

TEST_CASE("guards and validation") {
    const LaplaceImage img = step_image(0.5);
    CHECK_THROWS_AS((void)invert(img, 1e-5), std::domain_error);

    IltConfig bad;
    bad.node_count = 4;
    CHECK_THROWS_AS((void)invert(img, 1.0, bad), std::invalid_argument);
    bad = IltConfig{};
    bad.contour_scale = 0.0;
    CHECK_THROWS_AS((void)invert(img, 1.0, bad), std::invalid_argument);
    CHECK_THROWS_AS((void)step_image(-1.0), std::invalid_argument);
}

TEST_CASE("error estimate tracks the node-count difference") {
    const LaplaceImage img = step_image(0.5);
    const EvalOutcome out = invert(img, 0.5);
    CHECK(out.converged);
    CHECK(out.error_estimate >= 0.0);
    CHECK(out.error_estimate < 1e-8);
}

TEST_CASE("contour scale rescales the radius without losing accuracy") {
    const LaplaceImage img{[](cplx s) { return 1.0 / (s + 1.0); }, -1.0, false};
    for (double scale : {0.7, 1.0, 1.3}) {
        IltConfig cfg;
        cfg.contour_scale = scale;
        for (double t : {0.5, 2.0}) {
            const EvalOutcome out = invert(img, t, cfg);
            INFO("scale=" << scale << " t=" << t);
            CHECK(out.converged);
            CHECK(std::abs(out.value - std::exp(-t)) <= 1e-8);
        }
    }
}
