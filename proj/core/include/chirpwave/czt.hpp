#pragma once

#include <functional>

#include "chirpwave/grid.hpp"

namespace chirpwave {

/// Evaluates the periodic trigonometric interpolant of f's samples at the
/// compressed points x_j/s, after multiplying the centered spectrum by
/// mult(k). Exact for the interpolant (Bluestein chirp-Z evaluation, no
/// polynomial interpolation), so it realizes squeeze(s) composed with a
/// spectral multiplier without leaving the lattice.
///
/// Returns samples g_j = sum_m c_m * mult(k_m) * exp(i k_m x_j / s) where
/// c_m are the centered Fourier coefficients of f. No 1/sqrt(s) factor.
std::vector<cplx> spectral_resample_scaled(const WaveField& f, double s,
                                           const std::function<cplx(double)>& mult);

}  // namespace chirpwave
