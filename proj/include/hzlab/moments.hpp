#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hzlab/dirichlet_poly.hpp"

namespace hzlab {

// Uniform composite-Simpson settings.  step must be <= 0.2 (the integrands
// decorrelate on a scale of about 2*pi/log t at desk heights).
struct QuadratureSpec {
    double step = 0.05;
    bool refine_check = true;
};

struct MomentResult {
    double value = 0.0;
    double quad_error_est = 0.0;  // |half-step value - value| when refined
    std::int64_t evals = 0;
    double elapsed_seconds = 0.0;
};

struct ScalingFit {
    double logC = 0.0;
    double p = 0.0;  // V exponent
    double q = 0.0;  // log V exponent
    double rms_residual = 0.0;
};

// rho(x) = min(1, 1/|x|), rho(0) = 1.
double rho_weight(double x);

// Optional zeta source for the critical-line integrands; when set it
// replaces the built-in evaluator (the CLI routes it through the cache).
using ZetaLineSource =
    std::function<std::complex<double>(double /*y*/, double /*t*/)>;

// int_{-V}^{V} |zeta(1/2+it, y)|^power dt, power in {2, 4}, computed as
// twice the [0, V] integral by conjugation symmetry.
MomentResult zeta_power_moment(double V, double y, int power,
                               const QuadratureSpec& quad,
                               unsigned threads = 1,
                               const ZetaLineSource& source = nullptr);

// int_{2pi}^{V} |sum_{1<=m<=sqrt(V)} (m+y)^{-1/2-it} e(mu)|^4 dt.
MomentResult twisted_fourth_moment(double V, double y, double u,
                                   const QuadratureSpec& quad,
                                   unsigned threads = 1);

// int_0^T |F(t)|^2 |G(t)|^2 dt; the frequency multipliers live inside the
// specs.  step must also be <= 1/(4*log(2K*(|alpha|+|beta|)*2L)).
MomentResult product_mean_value(double T, const PolynomialSpec& spec_f,
                                const PolynomialSpec& spec_g,
                                const QuadratureSpec& quad,
                                unsigned threads = 1);

enum class LogPower {
    log15_T,    // (T+KL) K L (log T)^15
    log3_2KLT,  // (T+KL) K L log^3(2KLT)
};

double theorem3_ratio(const MomentResult& mv, double T, double K, double L,
                      LogPower mode);

// |D(alpha t)| / (K^{1/2} int_{-V}^{V} |zeta(1/2+i(sigma - alpha t), theta)|
//                 rho(sigma) dsigma + K log T / V), spec_d all-ones.
double t2_ratio(double t, const PolynomialSpec& spec_d, double V, double T,
                const QuadratureSpec& quad, unsigned threads = 1);

// Least squares for log I = logC + p log V + q log log V.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace hzlab
