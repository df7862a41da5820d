#pragma once

#include <complex>
#include <cstdint>

namespace hzlab {

// Evaluation site for zeta(sigma + i*t, y).  The shift convention is
// zeta(s, y) = sum_{n>=1} (n+y)^{-s}, i.e. the classical Hurwitz zeta
// taken at second argument 1+y.
struct HurwitzPoint {
    double sigma = 0.0;
    double t = 0.0;
    double y = 0.0;  // 0 <= y < 1
};

// Euler-Maclaurin continuation knobs.
//
//   zeta(s,y) ~ sum_{n=1}^{N} (n+y)^{-s}
//             + x^{1-s}/(s-1) + x^{-s}/2
//             + sum_{k=1}^{q} B_{2k}/(2k)! * (s)_{2k-1} * x^{-s-2k+1},
//   with x = N+1+y.
//
// q is raised adaptively (up to kMaxBernoulliPairs) until the remainder
// bound drops below target_abs_error.
struct EulerMaclaurinParams {
    std::int64_t cutoff_n = 50;     // truncation index N, >= 1
    int bernoulli_pairs_q = 10;     // starting correction pairs, 1..25
    double target_abs_error = 1e-10;

    // Default policy: N = max(ceil(1.1*|t|), 50), q = 10, target 1e-10
    // for |t| <= 1e4 and 1e-8 above.
    static EulerMaclaurinParams for_height(double t);
    static EulerMaclaurinParams for_height(double t, double target);
};

inline constexpr int kMaxBernoulliPairs = 25;

// zeta(s, y) with |error| <= params.target_abs_error.
// Throws InvalidShift, PoleProximity, PrecisionUnreachable.
std::complex<double> hurwitz_eval(const HurwitzPoint& point,
                                  const EulerMaclaurinParams& params);
std::complex<double> hurwitz_eval(const HurwitzPoint& point);

// zeta(s) = zeta(s, 0).
std::complex<double> riemann_eval(std::complex<double> s,
                                  const EulerMaclaurinParams& params);
std::complex<double> riemann_eval(std::complex<double> s);

// chi(1/2 + i*t) from chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s),
// evaluated in log space so large heights neither overflow nor underflow.
// Throws GammaOverflow for |t| > 1e8.
std::complex<double> chi_factor(double t);

// chi(s) for general s (same closed form, log space).
std::complex<double> chi_closed_form(std::complex<double> s);

// log Gamma(z), Lanczos g=7 rational approximation with reflection for
// Re z < 1/2.  Imaginary part is not reduced to the principal branch;
// callers exponentiate.
std::complex<double> log_gamma_lanczos(std::complex<double> z);

namespace detail {

// Shared Euler-Maclaurin core.  When r_cache/l_cache are non-null they
// must hold (n+y)^{-sigma} and log(n+y) for n = 1..cutoff_n; passing
// caches does not change the arithmetic, so cached and uncached paths
// produce bit-identical results.
std::complex<double> em_eval(double sigma, double t, double y,
                             std::int64_t cutoff_n, int pairs_q,
                             double target_abs_error,
                             const double* r_cache, const double* l_cache);

}  // namespace detail

}  // namespace hzlab
