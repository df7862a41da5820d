#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace hzlab {

// Shifted Dirichlet polynomial F(t) = sum_{K < k <= 2K} a_k (k+theta)^{i*alpha*t}.
// coeffs[j] is the coefficient of k = K+1+j; |coeffs[j]| <= 1.
struct PolynomialSpec {
    std::int64_t scale_k = 1;  // dyadic scale K
    std::vector<std::complex<double>> coeffs;
    double theta = 0.0;  // in [0, 1)
    double alpha = 1.0;  // frequency multiplier, != 0
};

struct TGrid {
    double t0 = 0.0;
    double step = 1.0;  // > 0
    std::int64_t count = 1;
};

PolynomialSpec make_all_ones(std::int64_t K, double theta, double alpha);
PolynomialSpec make_random_unimodular(std::int64_t K, double theta, double alpha,
                                      std::uint64_t seed);
// Throws CoefficientTooLarge when any |coeff| > 1.
PolynomialSpec make_explicit(std::vector<std::complex<double>> coeffs,
                             double theta, double alpha);

std::complex<double> eval_at(const PolynomialSpec& spec, double t);

// Grid evaluation by per-term phase recurrence; restarts from a direct
// evaluation every segment and renormalizes rotation states every 1024
// steps, keeping the deviation from eval_at below 1e-9 on grids up to
// 1e6 points.
std::vector<std::complex<double>> multi_eval(const PolynomialSpec& spec,
                                             const TGrid& grid);

// Low-level oscillatory engine shared with the moment integrals:
// sum_i coeffs[i] * exp(i * t * omega[i]).
struct PhaseSum {
    std::vector<std::complex<double>> coeffs;
    std::vector<double> omega;
};

PhaseSum phase_sum_of(const PolynomialSpec& spec);
std::complex<double> phase_sum_eval(const PhaseSum& ps, double t);
// out[j] = phase_sum evaluated at t0 + j*step, j = 0..count-1.
void phase_sum_eval_grid(const PhaseSum& ps, double t0, double step,
                         std::int64_t count, std::complex<double>* out);

}  // namespace hzlab
