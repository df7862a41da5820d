#include "hzlab/moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "hzlab/errors.hpp"
#include "hzlab/hurwitz.hpp"
#include "hzlab/parallel.hpp"

namespace hzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kPanelsPerBlock = 256;  // 513 nodes per block

struct QuadOut {
    double value = 0.0;
    std::int64_t evals = 0;
};

// Deterministic block-parallel composite Simpson: the block layout is fixed,
// each block accumulates its nodes in index order into its own slot, and the
// slots are reduced in block order, so any thread count gives identical bits.
template <typename BlockFill>
QuadOut simpson_blocks(double a, double b, double step, unsigned threads,
                       const BlockFill& fill) {
    auto n_sub = static_cast<std::int64_t>(std::ceil((b - a) / step));
    n_sub = std::max<std::int64_t>(n_sub, 2);
    if (n_sub % 2 != 0) ++n_sub;
    const double h = (b - a) / static_cast<double>(n_sub);
    const std::int64_t panels = n_sub / 2;
    const std::int64_t n_blocks = (panels + kPanelsPerBlock - 1) / kPanelsPerBlock;

    std::vector<double> partials(static_cast<std::size_t>(n_blocks), 0.0);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_blocks), 0);

    run_blocks(n_blocks, threads, [&](std::int64_t blk) {
        const std::int64_t p0 = blk * kPanelsPerBlock;
        const std::int64_t p1 = std::min(panels, p0 + kPanelsPerBlock);
        const std::int64_t j0 = 2 * p0;
        const std::int64_t n_nodes = 2 * (p1 - p0) + 1;
        std::vector<double> f(static_cast<std::size_t>(n_nodes));
        fill(j0, n_nodes, h, f.data());
        double acc = 0.0;
        for (std::int64_t i = 0; i < n_nodes; ++i) {
            double w;
            if (i == 0 || i == n_nodes - 1) {
                w = 1.0;
            } else {
                w = (i % 2 == 1) ? 4.0 : 2.0;
            }
            acc += w * f[static_cast<std::size_t>(i)];
        }
        partials[static_cast<std::size_t>(blk)] = acc;
        counts[static_cast<std::size_t>(blk)] = n_nodes;
    });

    QuadOut out;
    double total = 0.0;
    for (std::int64_t blk = 0; blk < n_blocks; ++blk) {
        total += partials[static_cast<std::size_t>(blk)];
        out.evals += counts[static_cast<std::size_t>(blk)];
    }
    out.value = total * h / 3.0;
    return out;
}

// zeta(1/2+it, y) with (n+y)^{-1/2} and log(n+y) precomputed once; the
// cached path reproduces hurwitz_eval bit-for-bit.
class ZetaLineEvaluator {
public:
    ZetaLineEvaluator(double y, double t_abs_max) : y_(y) {
        const std::int64_t n_max =
            EulerMaclaurinParams::for_height(t_abs_max).cutoff_n;
        r_.resize(static_cast<std::size_t>(n_max));
        l_.resize(static_cast<std::size_t>(n_max));
        for (std::int64_t n = 1; n <= n_max; ++n) {
            const double l = std::log(static_cast<double>(n) + y);
            l_[static_cast<std::size_t>(n - 1)] = l;
            r_[static_cast<std::size_t>(n - 1)] = std::exp(-0.5 * l);
        }
    }

    std::complex<double> operator()(double t) const {
        const EulerMaclaurinParams p = EulerMaclaurinParams::for_height(t);
        return detail::em_eval(0.5, t, y_, p.cutoff_n, p.bernoulli_pairs_q,
                               p.target_abs_error, r_.data(), l_.data());
    }

private:
    double y_;
    std::vector<double> r_;
    std::vector<double> l_;
};

void check_step(const QuadratureSpec& quad) {
    if (!(quad.step > 0.0) || quad.step > 0.2) {
        throw StepTooCoarse("quadrature step " + std::to_string(quad.step) +
                            " outside (0, 0.2]");
    }
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

double rho_weight(double x) {
    if (x == 0.0) return 1.0;
    return std::min(1.0, 1.0 / std::abs(x));
}

MomentResult zeta_power_moment(double V, double y, int power,
                               const QuadratureSpec& quad, unsigned threads,
                               const ZetaLineSource& source) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(V > kTwoPi)) {
        throw InvalidRange("zeta_power_moment: V=" + std::to_string(V) +
                           " must exceed 2*pi");
    }
    if (!(y >= 0.0 && y < 1.0)) {
        throw InvalidShift("zeta_power_moment: y outside [0,1)");
    }
    if (power != 2 && power != 4) {
        throw InvalidRange("zeta_power_moment: power must be 2 or 4");
    }
    check_step(quad);

    const ZetaLineEvaluator line(y, V);
    auto fill = [&](std::int64_t j0, std::int64_t n_nodes, double h,
                    double* out) {
        for (std::int64_t i = 0; i < n_nodes; ++i) {
            const double t = static_cast<double>(j0 + i) * h;
            const std::complex<double> z = source ? source(y, t) : line(t);
            const double sq = std::norm(z);
            out[i] = power == 2 ? sq : sq * sq;
        }
    };

    const QuadOut base = simpson_blocks(0.0, V, quad.step, threads, fill);
    MomentResult res;
    res.value = 2.0 * base.value;  // conjugation symmetry: 2 * [0, V]
    res.evals = base.evals;
    if (quad.refine_check) {
        const QuadOut fine =
            simpson_blocks(0.0, V, quad.step / 2.0, threads, fill);
        res.quad_error_est = std::abs(2.0 * fine.value - res.value);
        res.evals += fine.evals;
    }
    res.elapsed_seconds = elapsed_since(t_start);
    return res;
}

MomentResult twisted_fourth_moment(double V, double y, double u,
                                   const QuadratureSpec& quad,
                                   unsigned threads) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(V > kTwoPi)) {
        throw InvalidRange("twisted_fourth_moment: V must exceed 2*pi");
    }
    if (!(y >= 0.0 && y < 1.0)) {
        throw InvalidShift("twisted_fourth_moment: y outside [0,1)");
    }
    if (!(u >= 0.0 && u < 1.0)) {
        throw InvalidRange("twisted_fourth_moment: u outside [0,1)");
    }
    check_step(quad);

    // Fixed-length twisted polynomial sum_{1<=m<=sqrt(V)} (m+y)^{-1/2-it} e(mu).
    PhaseSum ps;
    const auto m_top = static_cast<std::int64_t>(std::floor(std::sqrt(V)));
    for (std::int64_t m = 1; m <= m_top; ++m) {
        const double base = static_cast<double>(m) + y;
        const double l = std::log(base);
        const double ph = kTwoPi * static_cast<double>(m) * u;
        ps.coeffs.push_back(std::exp(-0.5 * l) *
                            std::complex<double>(std::cos(ph), std::sin(ph)));
        ps.omega.push_back(-l);
    }

    auto fill = [&](std::int64_t j0, std::int64_t n_nodes, double h,
                    double* out) {
        std::vector<std::complex<double>> vals(
            static_cast<std::size_t>(n_nodes));
        const double t0 = kTwoPi + static_cast<double>(j0) * h;
        phase_sum_eval_grid(ps, t0, h, n_nodes, vals.data());
        for (std::int64_t i = 0; i < n_nodes; ++i) {
            const double sq = std::norm(vals[static_cast<std::size_t>(i)]);
            out[i] = sq * sq;
        }
    };

    const QuadOut base = simpson_blocks(kTwoPi, V, quad.step, threads, fill);
    MomentResult res;
    res.value = base.value;
    res.evals = base.evals;
    if (quad.refine_check) {
        const QuadOut fine =
            simpson_blocks(kTwoPi, V, quad.step / 2.0, threads, fill);
        res.quad_error_est = std::abs(fine.value - res.value);
        res.evals += fine.evals;
    }
    res.elapsed_seconds = elapsed_since(t_start);
    return res;
}

MomentResult product_mean_value(double T, const PolynomialSpec& spec_f,
                                const PolynomialSpec& spec_g,
                                const QuadratureSpec& quad, unsigned threads) {
    const auto t_start = std::chrono::steady_clock::now();
    if (!(T >= 1.0)) {
        throw InvalidRange("product_mean_value: T must be >= 1");
    }
    check_step(quad);
    const double k = static_cast<double>(spec_f.scale_k);
    const double l = static_cast<double>(spec_g.scale_k);
    const double freq_span =
        2.0 * k * (std::abs(spec_f.alpha) + std::abs(spec_g.alpha)) * 2.0 * l;
    const double limit = std::min(0.2, 1.0 / (4.0 * std::log(freq_span)));
    if (quad.step > limit) {
        throw StepTooCoarse("product_mean_value: step " +
                            std::to_string(quad.step) + " above limit " +
                            std::to_string(limit) + " for K=" +
                            std::to_string(spec_f.scale_k) + " L=" +
                            std::to_string(spec_g.scale_k));
    }

    const PhaseSum ps_f = phase_sum_of(spec_f);
    const PhaseSum ps_g = phase_sum_of(spec_g);
    auto fill = [&](std::int64_t j0, std::int64_t n_nodes, double h,
                    double* out) {
        std::vector<std::complex<double>> fv(static_cast<std::size_t>(n_nodes));
        std::vector<std::complex<double>> gv(static_cast<std::size_t>(n_nodes));
        const double t0 = static_cast<double>(j0) * h;
        phase_sum_eval_grid(ps_f, t0, h, n_nodes, fv.data());
        phase_sum_eval_grid(ps_g, t0, h, n_nodes, gv.data());
        for (std::int64_t i = 0; i < n_nodes; ++i) {
            out[i] = std::norm(fv[static_cast<std::size_t>(i)]) *
                     std::norm(gv[static_cast<std::size_t>(i)]);
        }
    };

    const QuadOut base = simpson_blocks(0.0, T, quad.step, threads, fill);
    MomentResult res;
    res.value = base.value;
    res.evals = base.evals;
    if (quad.refine_check) {
        const QuadOut fine =
            simpson_blocks(0.0, T, quad.step / 2.0, threads, fill);
        res.quad_error_est = std::abs(fine.value - res.value);
        res.evals += fine.evals;
    }
    res.elapsed_seconds = elapsed_since(t_start);
    return res;
}

double theorem3_ratio(const MomentResult& mv, double T, double K, double L,
                      LogPower mode) {
    if (!(T > std::numbers::e)) {
        throw InvalidRange("theorem3_ratio: T must exceed e");
    }
    if (!(K >= 1.0 && L >= 1.0)) {
        throw InvalidRange("theorem3_ratio: K and L must be >= 1");
    }
    const double kl = K * L;
    if (mode == LogPower::log15_T) {
        return mv.value / ((T + kl) * kl * std::pow(std::log(T), 15.0));
    }
    return mv.value / ((T + kl) * kl * std::pow(std::log(2.0 * kl * T), 3.0));
}

double t2_ratio(double t, const PolynomialSpec& spec_d, double V, double T,
                const QuadratureSpec& quad, unsigned threads) {
    for (const auto& c : spec_d.coeffs) {
        if (c != std::complex<double>(1.0, 0.0)) {
            throw InvalidRange("t2_ratio: spec_d must be all-ones");
        }
    }
    if (!(V >= 1.0 && V <= T)) {
        throw InvalidRange("t2_ratio: need 1 <= V <= T");
    }
    check_step(quad);

    const double numerator = std::abs(eval_at(spec_d, t));

    const double height_max = V + std::abs(spec_d.alpha) * std::abs(t);
    const ZetaLineEvaluator line(spec_d.theta, height_max);
    const double alpha_t = spec_d.alpha * t;
    auto fill = [&](std::int64_t j0, std::int64_t n_nodes, double h,
                    double* out) {
        for (std::int64_t i = 0; i < n_nodes; ++i) {
            const double sigma = -V + static_cast<double>(j0 + i) * h;
            out[i] = std::abs(line(sigma - alpha_t)) * rho_weight(sigma);
        }
    };
    const double sigma_step = std::min(quad.step, 0.1);
    const QuadOut integral =
        simpson_blocks(-V, V, sigma_step, threads, fill);

    const double kd = static_cast<double>(spec_d.scale_k);
    const double denominator =
        std::sqrt(kd) * integral.value + kd * std::log(T) / V;
    return numerator / denominator;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) {
        throw TooFewPoints("scaling_fit: need at least 4 points, got " +
                           std::to_string(points.size()));
    }
    for (const auto& [v, i] : points) {
        if (!(v >= 3.0)) {
            throw InvalidRange("scaling_fit: every V must be >= 3");
        }
        if (!(i > 0.0)) {
            throw InvalidRange("scaling_fit: every I must be positive");
        }
    }
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = a + 1; b < points.size(); ++b) {
            if (points[a].first == points[b].first) {
                throw InvalidRange("scaling_fit: V values must be distinct");
            }
        }
    }

    // Normal equations for [1, log V, log log V].
    double m[3][4] = {{0.0}};
    for (const auto& [v, i] : points) {
        const double x1 = std::log(v);
        const double x2 = std::log(x1);
        const double yv = std::log(i);
        const double row[3] = {1.0, x1, x2};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
            m[r][3] += row[r] * yv;
        }
    }

    // Gaussian elimination with partial pivoting.
    double scale = 0.0;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) scale = std::max(scale, std::abs(m[r][c]));
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-12 * scale) {
            throw DegenerateDesign("scaling_fit: design matrix rank-deficient");
        }
        if (pivot != col) {
            for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
        }
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    double coef[3];
    for (int r = 2; r >= 0; --r) {
        double rhs = m[r][3];
        for (int c = r + 1; c < 3; ++c) rhs -= m[r][c] * coef[c];
        coef[r] = rhs / m[r][r];
    }

    ScalingFit fit;
    fit.logC = coef[0];
    fit.p = coef[1];
    fit.q = coef[2];
    double ss = 0.0;
    for (const auto& [v, i] : points) {
        const double x1 = std::log(v);
        const double pred = coef[0] + coef[1] * x1 + coef[2] * std::log(x1);
        const double r = std::log(i) - pred;
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(points.size()));
    return fit;
}

}  // namespace hzlab
