#include "hzlab/afe.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hzlab/errors.hpp"
#include "hzlab/hurwitz.hpp"

namespace hzlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline std::complex<double> e_of(double x) {
    // e(x) = exp(2*pi*i*x)
    return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

}  // namespace

std::int64_t kernel_cutoff(double t) {
    return static_cast<std::int64_t>(std::floor(std::sqrt(t / kTwoPi)));
}

double unit_circle_distance(double u) {
    const double f = u - std::floor(u);
    return std::min(f, 1.0 - f);
}

AfeDecomposition afe_decompose(double t, double y, double M) {
    if (!(t >= kTwoPi)) {
        throw InvalidRange("afe_decompose: t=" + std::to_string(t) +
                           " below 2*pi");
    }
    if (!(M >= 1.0 && M <= t)) {
        throw InvalidRange("afe_decompose: M=" + std::to_string(M) +
                           " outside [1, t]");
    }
    if (!(y >= 0.0 && y < 1.0)) {
        throw InvalidShift("afe_decompose: y=" + std::to_string(y) +
                           " outside [0,1)");
    }

    AfeDecomposition d;
    d.t = t;
    d.y = y;
    d.M = M;
    d.N = t / (kTwoPi * M);

    const auto m_top = static_cast<std::int64_t>(std::floor(M));
    std::complex<double> s1(0.0, 0.0);
    for (std::int64_t m = 1; m <= m_top; ++m) {
        const double base = static_cast<double>(m) + y;
        const double l = std::log(base);
        s1 += std::exp(-0.5 * l) *
              std::complex<double>(std::cos(t * l), -std::sin(t * l));
    }
    d.S1 = s1;

    const auto n_top = static_cast<std::int64_t>(std::floor(d.N));
    std::complex<double> s2(0.0, 0.0);
    for (std::int64_t n = 1; n <= n_top; ++n) {
        const double nd = static_cast<double>(n);
        const double ph = t * std::log(nd) - kTwoPi * nd * y;
        s2 += std::complex<double>(std::cos(ph), std::sin(ph)) / std::sqrt(nd);
    }
    d.S2 = s2;

    const std::complex<double> zeta =
        hurwitz_eval({0.5, t, y}, EulerMaclaurinParams::for_height(t, 1e-9));
    d.residual = std::abs(zeta - d.S1 - chi_factor(t) * d.S2);
    return d;
}

std::vector<AfeScanRow> residual_envelope_scan(double t_min, double t_max,
                                               int steps, double y,
                                               MPolicy policy, double fixed_m) {
    if (!(t_min >= kTwoPi && t_min < t_max)) {
        throw InvalidRange("residual_envelope_scan: need 2*pi <= t_min < t_max");
    }
    if (steps < 2) {
        throw InvalidRange("residual_envelope_scan: steps must be >= 2");
    }
    const double log_ratio = std::log(t_max / t_min);
    std::vector<AfeScanRow> rows(static_cast<std::size_t>(steps));
    for (int j = 0; j < steps; ++j) {
        const double t =
            t_min * std::exp(log_ratio * static_cast<double>(j) /
                             static_cast<double>(steps - 1));
        const double m =
            policy == MPolicy::balanced ? std::sqrt(t / kTwoPi) : fixed_m;
        const AfeDecomposition d = afe_decompose(t, y, m);
        AfeScanRow& row = rows[static_cast<std::size_t>(j)];
        row.t = t;
        row.M = d.M;
        row.N = d.N;
        row.residual = d.residual;
        row.envelope = 1.0 + std::pow(d.M, -1.5) * std::sqrt(t);
        row.ratio = row.residual / row.envelope;
    }
    return rows;
}

std::complex<double> kernel_eval(const KernelQuery& q) {
    const std::int64_t cutoff = kernel_cutoff(q.t);
    if (cutoff < 1) {
        throw InvalidRange("kernel_eval: t=" + std::to_string(q.t) +
                           " gives empty kernel (need t >= 2*pi)");
    }
    if (!(q.u >= 0.0 && q.u < 1.0)) {
        throw InvalidRange("kernel_eval: u=" + std::to_string(q.u) +
                           " outside [0,1)");
    }
    if (unit_circle_distance(q.u) < 1e-8) {
        // The closed form divides by sin(pi u); sum directly instead.
        std::complex<double> k(0.0, 0.0);
        for (std::int64_t n = 1; n <= cutoff; ++n) {
            k += e_of(-static_cast<double>(n) * q.u);
        }
        return k;
    }
    // sum_{n=1}^{C} e(-nu) = e(-(C+1)u/2) * sin(pi C u)/sin(pi u)
    const double c = static_cast<double>(cutoff);
    const double amp = std::sin(kPi * c * q.u) / std::sin(kPi * q.u);
    const double ph = -kPi * (c + 1.0) * q.u;
    return amp * std::complex<double>(std::cos(ph), std::sin(ph));
}

double kernel_l1(double t, std::int64_t nodes) {
    if (kernel_cutoff(t) < 1) {
        throw InvalidRange("kernel_l1: t below 2*pi");
    }
    if (nodes < 1000) {
        throw InvalidRange("kernel_l1: nodes must be >= 1000");
    }
    double acc = 0.0;
    for (std::int64_t j = 0; j < nodes; ++j) {
        const double u = (static_cast<double>(j) + 0.5) /
                         static_cast<double>(nodes);
        acc += std::abs(kernel_eval({t, u}));
    }
    return acc / static_cast<double>(nodes);
}

double selection_identity_check(double t, double y, double V,
                                std::int64_t nodes) {
    if (!(t >= kTwoPi && t <= V)) {
        throw InvalidRange("selection_identity_check: need 2*pi <= t <= V");
    }
    if (!(y >= 0.0 && y < 1.0)) {
        throw InvalidShift("selection_identity_check: y outside [0,1)");
    }
    const auto long_top = static_cast<std::int64_t>(std::floor(std::sqrt(V)));
    if (nodes <= 4 * long_top + 1) {
        throw NodesTooFew("selection_identity_check: nodes=" +
                          std::to_string(nodes) + " <= 4*floor(sqrt(V))+1=" +
                          std::to_string(4 * long_top + 1));
    }

    const auto short_top = kernel_cutoff(t);
    std::complex<double> lhs(0.0, 0.0);
    for (std::int64_t m = 1; m <= short_top; ++m) {
        const double base = static_cast<double>(m) + y;
        const double l = std::log(base);
        lhs += std::exp(-0.5 * l) *
               std::complex<double>(std::cos(t * l), -std::sin(t * l));
    }

    // Trapezoid on the uniform grid u_j = j/Q is exact here: the integrand
    // is a trigonometric polynomial of degree below Q.
    std::complex<double> rhs(0.0, 0.0);
    for (std::int64_t j = 0; j < nodes; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(nodes);
        std::complex<double> long_sum(0.0, 0.0);
        for (std::int64_t m = 1; m <= long_top; ++m) {
            const double base = static_cast<double>(m) + y;
            const double l = std::log(base);
            const double ph = kTwoPi * static_cast<double>(m) * u - t * l;
            long_sum += std::exp(-0.5 * l) *
                        std::complex<double>(std::cos(ph), std::sin(ph));
        }
        rhs += long_sum * kernel_eval({t, u});
    }
    rhs /= static_cast<double>(nodes);

    return std::abs(lhs - rhs);
}

}  // namespace hzlab
