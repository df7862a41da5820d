#include "hzlab/hurwitz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hzlab/errors.hpp"

namespace hzlab {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k}/(2k)! for k = 1..26.  The 26th entry is only used as the first
// omitted term of the remainder bound.
constexpr double kBernoulliOverFact[26] = {
    8.3333333333333333333e-02,   // k=1
    -1.3888888888888888889e-03,  // k=2
    3.3068783068783068783e-05,   // k=3
    -8.2671957671957671958e-07,  // k=4
    2.0876756987868098979e-08,   // k=5
    -5.2841901386874931848e-10,  // k=6
    1.3382536530684678833e-11,   // k=7
    -3.3896802963225828668e-13,  // k=8
    8.5860620562778445641e-15,   // k=9
    -2.1748686985580618730e-16,  // k=10
    5.5090028283602295152e-18,   // k=11
    -1.3954464685812523341e-19,  // k=12
    3.5347070396294674717e-21,   // k=13
    -8.9535174270375468504e-23,  // k=14
    2.2679524523376830603e-24,   // k=15
    -5.7447906688722024453e-26,  // k=16
    1.4551724756148649019e-27,   // k=17
    -3.6859949406653101782e-29,  // k=18
    9.3367342570950446720e-31,   // k=19
    -2.3650224157006299346e-32,  // k=20
    5.9906717624821343047e-34,   // k=21
    -1.5174548844682902617e-35,  // k=22
    3.8437581254541882322e-37,   // k=23
    -9.7363530726466910353e-39,  // k=24
    2.4662470442006809571e-40,   // k=25
    -6.2470767418207436931e-42,  // k=26
};

inline std::complex<double> unit_phase(double angle_neg) {
    // exp(-i*angle_neg); cos/sin keep their even/odd symmetry bit-exactly,
    // which is what makes conjugation in t exact.
    return {std::cos(angle_neg), -std::sin(angle_neg)};
}

}  // namespace

EulerMaclaurinParams EulerMaclaurinParams::for_height(double t) {
    return for_height(t, std::abs(t) <= 1e4 ? 1e-10 : 1e-8);
}

EulerMaclaurinParams EulerMaclaurinParams::for_height(double t, double target) {
    EulerMaclaurinParams p;
    p.cutoff_n = std::max<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(1.1 * std::abs(t))), 50);
    p.bernoulli_pairs_q = 10;
    p.target_abs_error = target;
    return p;
}

namespace detail {

std::complex<double> em_eval(double sigma, double t, double y,
                             std::int64_t cutoff_n, int pairs_q,
                             double target_abs_error,
                             const double* r_cache, const double* l_cache) {
    const std::complex<double> s(sigma, t);

    // Main sum over n = 1..N, Kahan-compensated: at heights near 1e4 the
    // naive partial-sum rounding alone would eat the 1e-10 budget.
    double acc_re = 0.0, acc_im = 0.0, c_re = 0.0, c_im = 0.0;
    for (std::int64_t n = 1; n <= cutoff_n; ++n) {
        const double l = l_cache ? l_cache[n - 1] : std::log(static_cast<double>(n) + y);
        const double r = r_cache ? r_cache[n - 1] : std::exp(-sigma * l);
        const double ph = t * l;
        const double term_re = r * std::cos(ph);
        const double term_im = -r * std::sin(ph);

        double yv = term_re - c_re;
        double tv = acc_re + yv;
        c_re = (tv - acc_re) - yv;
        acc_re = tv;

        yv = term_im - c_im;
        tv = acc_im + yv;
        c_im = (tv - acc_im) - yv;
        acc_im = tv;
    }
    std::complex<double> total(acc_re, acc_im);

    const double x = static_cast<double>(cutoff_n + 1) + y;
    const double lx = std::log(x);
    const std::complex<double> phase_x = unit_phase(t * lx);

    // Integral term x^{1-s}/(s-1) and half term x^{-s}/2.
    total += std::exp((1.0 - sigma) * lx) * phase_x / (s - 1.0);
    total += 0.5 * std::exp(-sigma * lx) * phase_x;

    // Bernoulli corrections.  P_k = (s)_{2k-1} * x^{-s-2k+1}, advanced by
    // P_{k+1} = P_k * (s+2k-1)(s+2k)/x^2; the factor has modulus < 1 for
    // N >= 1.1|t|, so nothing can overflow.
    const double x2 = x * x;
    std::complex<double> p = s * std::exp(-(sigma + 1.0) * lx) * phase_x;
    int k = 1;
    while (true) {
        total += kBernoulliOverFact[k - 1] * p;
        if (k >= kMaxBernoulliPairs) {
            const std::complex<double> p_next =
                p * (s + static_cast<double>(2 * k - 1)) *
                (s + static_cast<double>(2 * k)) / x2;
            const double omitted = std::abs(kBernoulliOverFact[k] * p_next);
            const double denom = sigma + static_cast<double>(2 * k + 1);
            const double bound =
                denom > 0.0 ? omitted * std::abs(s + static_cast<double>(2 * k + 1)) / denom
                            : omitted;
            if (bound >= target_abs_error) {
                throw PrecisionUnreachable(
                    "euler-maclaurin tail bound " + std::to_string(bound) +
                    " above target " + std::to_string(target_abs_error) +
                    " at q=" + std::to_string(kMaxBernoulliPairs));
            }
            break;
        }
        const std::complex<double> p_next =
            p * (s + static_cast<double>(2 * k - 1)) *
            (s + static_cast<double>(2 * k)) / x2;
        if (k >= pairs_q) {
            const double omitted = std::abs(kBernoulliOverFact[k] * p_next);
            const double denom = sigma + static_cast<double>(2 * k + 1);
            if (denom > 0.0 &&
                omitted * std::abs(s + static_cast<double>(2 * k + 1)) / denom <
                    target_abs_error) {
                break;
            }
        }
        p = p_next;
        ++k;
    }
    return total;
}

}  // namespace detail

std::complex<double> hurwitz_eval(const HurwitzPoint& point,
                                  const EulerMaclaurinParams& params) {
    if (!(point.y >= 0.0 && point.y < 1.0)) {
        throw InvalidShift("shift y=" + std::to_string(point.y) +
                           " outside [0,1)");
    }
    if (!(std::isfinite(point.sigma) && std::isfinite(point.t))) {
        throw InvalidRange("non-finite evaluation point");
    }
    if (params.cutoff_n < 1 || params.bernoulli_pairs_q < 1 ||
        params.bernoulli_pairs_q > kMaxBernoulliPairs ||
        !(params.target_abs_error > 0.0)) {
        throw InvalidRange("invalid EulerMaclaurinParams");
    }
    const double pole_dist = std::hypot(point.sigma - 1.0, point.t);
    if (pole_dist < 10.0 * params.target_abs_error) {
        throw PoleProximity("|s-1|=" + std::to_string(pole_dist) +
                            " below pole guard " +
                            std::to_string(10.0 * params.target_abs_error));
    }
    return detail::em_eval(point.sigma, point.t, point.y, params.cutoff_n,
                           params.bernoulli_pairs_q, params.target_abs_error,
                           nullptr, nullptr);
}

std::complex<double> hurwitz_eval(const HurwitzPoint& point) {
    return hurwitz_eval(point, EulerMaclaurinParams::for_height(point.t));
}

std::complex<double> riemann_eval(std::complex<double> s,
                                  const EulerMaclaurinParams& params) {
    return hurwitz_eval({s.real(), s.imag(), 0.0}, params);
}

std::complex<double> riemann_eval(std::complex<double> s) {
    return hurwitz_eval({s.real(), s.imag(), 0.0});
}

namespace {

// log sin(z) without overflow for large |Im z|: for Im z > 0,
// sin z = (i/2) e^{-iz} (1 - e^{2iz}) with |e^{2iz}| < 1.
std::complex<double> log_sin(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    if (z.imag() > 20.0) {
        return std::log(0.5) + i * (kPi / 2.0) - i * z +
               std::log(1.0 - std::exp(2.0 * i * z));
    }
    if (z.imag() < -20.0) {
        return std::log(0.5) - i * (kPi / 2.0) + i * z +
               std::log(1.0 - std::exp(-2.0 * i * z));
    }
    return std::log(std::sin(z));
}

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

}  // namespace

std::complex<double> log_gamma_lanczos(std::complex<double> z) {
    if (z.real() < 0.5) {
        // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z).
        return std::log(kPi) - log_sin(kPi * z) - log_gamma_lanczos(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> sum(kLanczosCoeff[0], 0.0);
    for (int i = 1; i < 9; ++i) {
        sum += kLanczosCoeff[i] / (z + static_cast<double>(i));
    }
    const std::complex<double> base = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(base) - base +
           std::log(sum);
}

std::complex<double> chi_closed_form(std::complex<double> s) {
    const std::complex<double> log_chi =
        s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
        log_sin(kPi * s / 2.0) + log_gamma_lanczos(1.0 - s);
    return std::exp(log_chi);
}

std::complex<double> chi_factor(double t) {
    if (!(std::abs(t) <= 1e8)) {
        throw GammaOverflow("chi height |t|=" + std::to_string(std::abs(t)) +
                            " outside supported range 1e8");
    }
    return chi_closed_form(std::complex<double>(0.5, t));
}

}  // namespace hzlab
