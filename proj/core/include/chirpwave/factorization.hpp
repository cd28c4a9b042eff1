#pragma once

#include "chirpwave/grid.hpp"
#include "chirpwave/initial_state.hpp"

namespace chirpwave {

/// Coefficients of the squeeze factorization of free evolution applied to a
/// chirped state exp(i*alpha*x^2)*phi:
///   f1 = alpha/(1+2*alpha*t)     chirp surviving the evolution
///   f2 = -ln(1+2*alpha*t)/2      squeeze parameter, s = exp(-2 f2)
///   f3 = alpha*t^2/(1+2*alpha*t)
///   f4 = f3 - t/2                residual free-propagation coefficient
///   s  = 1 + 2*alpha*t           scale factor of the squeeze
/// Requires 1 + 2*alpha*t > 0 (the factorization is singular otherwise).
struct FactorCoeffs {
    double alpha = 0.0;
    double t = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
    double f4 = 0.0;
    double s = 1.0;
};

FactorCoeffs factor_coeffs(double alpha, double t);

struct F4Asymptotics {
    double small_alpha = 0.0;  // -t/2 + t^2 a - 2 t^3 a^2
    double large_alpha = 0.0;  // -1/(4a) + 1/(8 t a^2)
};

F4Asymptotics f4_asymptotics(double alpha, double t);

/// values_j <- exp(i c x_j^2) values_j
WaveField apply_chirp(const WaveField& f, double c);

/// (1/sqrt(s)) phi(x_j / s) with phi evaluated analytically. s > 0.
WaveField squeeze_scale_analytic(const InitialState& state, double s, const Grid& grid);

struct SqueezeSampledResult {
    WaveField field;
    double coverage = 1.0;  // fraction of targets x_j/s inside the source domain
};

/// (1/sqrt(s)) f(x_j / s) by cubic interpolation of f's samples; targets
/// outside the domain produce zeros and lower the coverage ratio. Exact at
/// the knots (s = 1 returns f bit-identically).
SqueezeSampledResult squeeze_scale_sampled(const WaveField& f, double s);

/// Cubic interpolation helper shared with TabulatedState evaluation.
cplx interpolate_cubic(const WaveField& f, double x);

}  // namespace chirpwave
