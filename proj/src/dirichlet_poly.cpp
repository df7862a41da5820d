#include "hzlab/dirichlet_poly.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hzlab/errors.hpp"

namespace hzlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::int64_t kSegment = 4096;  // recurrence restart cadence
constexpr std::int64_t kRenorm = 1024;   // rotation renormalization cadence

void validate(std::int64_t K, double theta, double alpha) {
    if (K < 1) {
        throw InvalidRange("polynomial scale K must be >= 1");
    }
    if (!(theta >= 0.0 && theta < 1.0)) {
        throw InvalidShift("polynomial shift theta=" + std::to_string(theta) +
                           " outside [0,1)");
    }
    if (!(alpha != 0.0) || !std::isfinite(alpha)) {
        throw InvalidRange("frequency multiplier alpha must be finite and nonzero");
    }
}

}  // namespace

PolynomialSpec make_all_ones(std::int64_t K, double theta, double alpha) {
    validate(K, theta, alpha);
    PolynomialSpec spec;
    spec.scale_k = K;
    spec.coeffs.assign(static_cast<std::size_t>(K), {1.0, 0.0});
    spec.theta = theta;
    spec.alpha = alpha;
    return spec;
}

PolynomialSpec make_random_unimodular(std::int64_t K, double theta, double alpha,
                                      std::uint64_t seed) {
    validate(K, theta, alpha);
    PolynomialSpec spec;
    spec.scale_k = K;
    spec.coeffs.reserve(static_cast<std::size_t>(K));
    spec.theta = theta;
    spec.alpha = alpha;
    std::mt19937_64 eng(seed);
    for (std::int64_t j = 0; j < K; ++j) {
        // uniform phase in [0,1), portable bits (no distribution objects)
        const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        spec.coeffs.emplace_back(std::cos(kTwoPi * u), std::sin(kTwoPi * u));
    }
    return spec;
}

PolynomialSpec make_explicit(std::vector<std::complex<double>> coeffs,
                             double theta, double alpha) {
    const auto K = static_cast<std::int64_t>(coeffs.size());
    validate(K, theta, alpha);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (std::norm(coeffs[j]) > 1.0 + 1e-12) {
            throw CoefficientTooLarge("coefficient " + std::to_string(j) +
                                      " has modulus " +
                                      std::to_string(std::abs(coeffs[j])) +
                                      " > 1");
        }
    }
    PolynomialSpec spec;
    spec.scale_k = K;
    spec.coeffs = std::move(coeffs);
    spec.theta = theta;
    spec.alpha = alpha;
    return spec;
}

PhaseSum phase_sum_of(const PolynomialSpec& spec) {
    PhaseSum ps;
    ps.coeffs = spec.coeffs;
    ps.omega.reserve(spec.coeffs.size());
    for (std::int64_t j = 0; j < spec.scale_k; ++j) {
        const double base =
            static_cast<double>(spec.scale_k + 1 + j) + spec.theta;
        ps.omega.push_back(spec.alpha * std::log(base));
    }
    return ps;
}

std::complex<double> phase_sum_eval(const PhaseSum& ps, double t) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < ps.coeffs.size(); ++i) {
        const double ph = t * ps.omega[i];
        acc += ps.coeffs[i] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc;
}

void phase_sum_eval_grid(const PhaseSum& ps, double t0, double step,
                         std::int64_t count, std::complex<double>* out) {
    const std::size_t n_terms = ps.coeffs.size();
    std::vector<std::complex<double>> state(n_terms);
    std::vector<std::complex<double>> rot(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) {
        const double a = step * ps.omega[i];
        rot[i] = {std::cos(a), std::sin(a)};
    }

    for (std::int64_t seg = 0; seg < count; seg += kSegment) {
        const std::int64_t seg_end = std::min(count, seg + kSegment);
        const double t_seg = t0 + static_cast<double>(seg) * step;
        for (std::size_t i = 0; i < n_terms; ++i) {
            const double ph = t_seg * ps.omega[i];
            state[i] = {std::cos(ph), std::sin(ph)};
        }
        for (std::int64_t j = seg; j < seg_end; ++j) {
            std::complex<double> acc(0.0, 0.0);
            for (std::size_t i = 0; i < n_terms; ++i) {
                acc += ps.coeffs[i] * state[i];
            }
            out[j] = acc;
            const std::int64_t local = j - seg + 1;
            if (local % kRenorm == 0) {
                for (std::size_t i = 0; i < n_terms; ++i) {
                    state[i] = rot[i] * (state[i] / std::abs(state[i]));
                }
            } else {
                for (std::size_t i = 0; i < n_terms; ++i) {
                    state[i] *= rot[i];
                }
            }
        }
    }
}

std::complex<double> eval_at(const PolynomialSpec& spec, double t) {
    std::complex<double> acc(0.0, 0.0);
    for (std::int64_t j = 0; j < spec.scale_k; ++j) {
        const double base =
            static_cast<double>(spec.scale_k + 1 + j) + spec.theta;
        // same association as the grid engine: t * (alpha * log), so a
        // one-point grid reproduces eval_at bit-for-bit
        const double ph = t * (spec.alpha * std::log(base));
        acc += spec.coeffs[static_cast<std::size_t>(j)] *
               std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return acc;
}

std::vector<std::complex<double>> multi_eval(const PolynomialSpec& spec,
                                             const TGrid& grid) {
    if (!(grid.step > 0.0) || grid.count < 1 ||
        !std::isfinite(grid.step * static_cast<double>(grid.count))) {
        throw InvalidRange("invalid TGrid");
    }
    std::vector<std::complex<double>> out(
        static_cast<std::size_t>(grid.count));
    const PhaseSum ps = phase_sum_of(spec);
    phase_sum_eval_grid(ps, grid.t0, grid.step, grid.count, out.data());
    return out;
}

}  // namespace hzlab
