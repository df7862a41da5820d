#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hzlab/afe.hpp"
#include "hzlab/errors.hpp"
#include "hzlab/hurwitz.hpp"
#include "oracles.hpp"

using namespace hzlab;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}
}  // namespace

TEST_CASE("one-term decomposition at t = 2*pi") {
    for (const double y : {0.0, 0.3, 0.8}) {
        const auto d = afe_decompose(kTwoPi, y, 1.0);
        CHECK(d.N == doctest::Approx(1.0).epsilon(1e-15));
        // S1 = (1+y)^{-1/2-it}
        const double l = std::log(1.0 + y);
        const std::complex<double> s1 =
            std::exp(-0.5 * l) *
            std::complex<double>(std::cos(kTwoPi * l), -std::sin(kTwoPi * l));
        CHECK(std::abs(d.S1 - s1) <= 1e-14);
        // S2 = e(-y)
        const std::complex<double> s2(std::cos(kTwoPi * y),
                                      -std::sin(kTwoPi * y));
        CHECK(std::abs(d.S2 - s2) <= 1e-14);
        CHECK(d.residual >= 0.0);
    }
}

TEST_CASE("balanced split stays inside its envelope at t = 100") {
    const double m = std::sqrt(100.0 / kTwoPi);
    const auto d = afe_decompose(100.0, 0.0, m);
    const double envelope = 1.0 + std::pow(m, -1.5) * 10.0;
    CHECK(d.residual <= envelope);  // observed ratio is near 0.1
}

TEST_CASE("two admissible splits approximate the same value") {
    const double t = 500.0;
    for (const double y : {0.0, 0.4}) {
        const auto a = afe_decompose(t, y, std::sqrt(t / kTwoPi));
        const auto b = afe_decompose(t, y, 4.0);
        const auto chi = chi_factor(t);
        const double gap =
            std::abs((a.S1 + chi * a.S2) - (b.S1 + chi * b.S2));
        CHECK(gap <= a.residual + b.residual + 1e-8);
    }
}

TEST_CASE("residual envelope scan: finite, stable, uniform in y") {
    const auto scan0 = residual_envelope_scan(10.0, 1000.0, 100, 0.0,
                                              MPolicy::balanced);
    REQUIRE(scan0.size() == 100);
    double max0 = 0.0, min0 = 1e300;
    for (const auto& row : scan0) {
        CHECK(std::isfinite(row.ratio));
        max0 = std::max(max0, row.ratio);
        min0 = std::min(min0, row.ratio);
    }
    CHECK(max0 / min0 < 10.0);

    // decade maxima stay within a factor 10 of one another
    double dec_max[2] = {0.0, 0.0};
    for (const auto& row : scan0) {
        dec_max[row.t < 100.0 ? 0 : 1] =
            std::max(dec_max[row.t < 100.0 ? 0 : 1], row.ratio);
    }
    CHECK(dec_max[0] / dec_max[1] < 10.0);
    CHECK(dec_max[1] / dec_max[0] < 10.0);

    const auto scan_half = residual_envelope_scan(10.0, 1000.0, 100, 0.5,
                                                  MPolicy::balanced);
    double max_half = 0.0;
    for (const auto& row : scan_half) max_half = std::max(max_half, row.ratio);
    CHECK(max0 / max_half < 4.0);
    CHECK(max_half / max0 < 4.0);
}

TEST_CASE("smallest admissible scan") {
    const auto rows = residual_envelope_scan(kTwoPi, kTwoPi + 1.0, 2, 0.3,
                                             MPolicy::balanced);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.residual));
        CHECK(std::isfinite(row.ratio));
    }
}

TEST_CASE("decompose argument validation") {
    CHECK_THROWS_AS(afe_decompose(5.0, 0.0, 1.0), InvalidRange);
    CHECK_THROWS_AS(afe_decompose(100.0, 0.0, 0.5), InvalidRange);
    CHECK_THROWS_AS(afe_decompose(100.0, 0.0, 101.0), InvalidRange);
    CHECK_THROWS_AS(afe_decompose(100.0, 1.2, 3.0), InvalidShift);
    CHECK_THROWS_AS(
        residual_envelope_scan(10.0, 100.0, 1, 0.0, MPolicy::balanced),
        InvalidRange);
}

TEST_CASE("kernel spot values") {
    // u = 0: every summand is 1
    const auto at_zero = kernel_eval({1000.0, 0.0});
    CHECK(at_zero.real() == static_cast<double>(kernel_cutoff(1000.0)));
    CHECK(at_zero.imag() == 0.0);

    // t = 8*pi gives cutoff 2 and e(-1/2) + e(-1) = 0
    const auto two_term = kernel_eval({8.0 * std::numbers::pi, 0.5});
    CHECK(std::abs(two_term) <= 1e-12);

    // near-integer u goes through direct summation and matches the cutoff
    const auto near_zero = kernel_eval({1000.0, 1e-9});
    CHECK(std::abs(near_zero - at_zero) <= 1e-4);

    CHECK_THROWS_AS(kernel_eval({5.0, 0.3}), InvalidRange);
    CHECK_THROWS_AS(kernel_eval({1000.0, 1.5}), InvalidRange);
}

TEST_CASE("kernel bound holds on 1e4 random queries") {
    std::mt19937_64 eng(404);
    for (int i = 0; i < 10000; ++i) {
        const double t = kTwoPi * std::exp(std::log(1e6 / kTwoPi) *
                                           uniform01(eng));
        const double u = uniform01(eng);
        const auto cutoff = kernel_cutoff(t);
        if (cutoff < 1) continue;
        const double bound_u = unit_circle_distance(u) > 0.0
                                   ? 1.0 / (2.0 * unit_circle_distance(u))
                                   : 1e300;
        const double bound =
            std::min(static_cast<double>(cutoff), bound_u);
        CHECK(std::abs(kernel_eval({t, u})) <= bound);
    }
}

TEST_CASE("kernel L1 norm") {
    // cutoff 1: |e(-u)| = 1 everywhere, so the midpoint mean is exactly 1
    CHECK(kernel_l1(1.5 * kTwoPi, 1000) == 1.0);

    const double t = kTwoPi * 1e4;
    const double l1 = kernel_l1(t, 20000);
    CHECK(l1 <= std::log(t));  // observed c is about 0.3
    const double refined = kernel_l1(t, 40000);
    CHECK(std::abs(refined - l1) / l1 < 0.005);

    double max_ratio = 0.0, min_ratio = 1e300;
    for (int j = 1; j <= 7; ++j) {
        const double tj = kTwoPi * std::pow(4.0, j);
        const double ratio = kernel_l1(tj, 20000) / std::log(tj);
        max_ratio = std::max(max_ratio, ratio);
        min_ratio = std::min(min_ratio, ratio);
    }
    CHECK(max_ratio < 1.0);
    CHECK(max_ratio / min_ratio < 10.0);

    CHECK_THROWS_AS(kernel_l1(1000.0, 999), InvalidRange);
}

TEST_CASE("discrete orthogonality of e(z u) on uniform grids") {
    std::mt19937_64 eng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::int64_t q = 3 + static_cast<std::int64_t>(48.0 * uniform01(eng));
        std::int64_t z =
            static_cast<std::int64_t>(static_cast<double>(2 * q - 1) *
                                      uniform01(eng)) -
            (q - 1);
        if (z == 0) z = 1;
        CHECK(std::abs(oracles::grid_average_of_e(z, q)) <= 1e-12);
        CHECK(std::abs(oracles::grid_average_of_e(0, q) -
                       std::complex<double>(1.0, 0.0)) <= 1e-15);
    }
}

TEST_CASE("selection identity is exact up to rounding") {
    CHECK(selection_identity_check(18.0 * std::numbers::pi, 0.0,
                                   18.0 * std::numbers::pi, 64) <= 1e-10);

    // one-term selection with the minimal admissible grid
    const std::int64_t minimal = 4 * 2 + 2;  // floor(sqrt(2*pi)) = 2
    CHECK(selection_identity_check(kTwoPi, 0.4, kTwoPi, minimal) <= 1e-12);

    // exactness beyond Nyquist: doubling nodes changes nothing
    const double a = selection_identity_check(40.0, 0.25, 90.0, 64);
    const double b = selection_identity_check(40.0, 0.25, 90.0, 128);
    CHECK(std::abs(a - b) <= 1e-12);

    CHECK_THROWS_AS(selection_identity_check(40.0, 0.25, 90.0, 4 * 9 + 1),
                    NodesTooFew);
    CHECK_THROWS_AS(selection_identity_check(100.0, 0.25, 90.0, 256),
                    InvalidRange);
}

TEST_CASE("selection identity across 20 admissible triples") {
    std::mt19937_64 eng(2024);
    const double ys[4] = {0.0, 0.25, 0.5, 0.75};
    for (int i = 0; i < 20; ++i) {
        const double t = kTwoPi * (1.0 + 40.0 * uniform01(eng));
        const double v = t * (1.0 + 2.0 * uniform01(eng));
        const double y = ys[i % 4];
        const auto nodes =
            4 * static_cast<std::int64_t>(std::floor(std::sqrt(v))) + 8;
        CHECK(selection_identity_check(t, y, v, nodes) < 1e-9);
    }
}
