#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace hzlab {

// Split zeta(1/2+it, y) into the two approximate-functional-equation sums
//   S1 = sum_{1<=m<=M} (m+y)^{-1/2-it},
//   S2 = sum_{1<=n<=N} e(-ny) n^{-1/2+it},      2*pi*M*N = t,
// with residual = |zeta - S1 - chi(1/2+it)*S2|.
struct AfeDecomposition {
    double t = 0.0;
    double y = 0.0;
    double M = 0.0;
    double N = 0.0;
    std::complex<double> S1;
    std::complex<double> S2;
    double residual = 0.0;
};

struct KernelQuery {
    double t = 0.0;  // >= 2*pi so the cutoff floor(sqrt(t/2pi)) is >= 1
    double u = 0.0;  // in [0, 1)
};

enum class MPolicy { balanced, fixed };

struct AfeScanRow {
    double t = 0.0;
    double M = 0.0;
    double N = 0.0;
    double residual = 0.0;
    double envelope = 0.0;  // 1 + M^{-3/2} t^{1/2}
    double ratio = 0.0;     // residual / envelope
};

// floor(sqrt(t/(2*pi))), the kernel/AFE cutoff.
std::int64_t kernel_cutoff(double t);

// Distance from u to the nearest integer.
double unit_circle_distance(double u);

AfeDecomposition afe_decompose(double t, double y, double M);

// Samples `steps` log-spaced heights in [t_min, t_max]; "balanced" puts
// M = N = sqrt(t/(2*pi)).
std::vector<AfeScanRow> residual_envelope_scan(double t_min, double t_max,
                                               int steps, double y,
                                               MPolicy policy,
                                               double fixed_m = 0.0);

// K(t,u) = sum_{1<=n<=floor(sqrt(t/2pi))} e(-nu), closed geometric form;
// direct summation when ||u|| < 1e-8.
std::complex<double> kernel_eval(const KernelQuery& q);

// Composite-midpoint estimate of int_0^1 |K(t,u)| du.
double kernel_l1(double t, std::int64_t nodes);

// |lhs - rhs| of the selection identity: the short sum on one side, the
// uniform-grid discretization of int_0^1 [sum_{m<=sqrt(V)} ...] e(mu) K(t,u) du
// on the other.  Exact (up to rounding) once nodes > 4*floor(sqrt(V)) + 1.
double selection_identity_check(double t, double y, double V,
                                std::int64_t nodes);

}  // namespace hzlab
