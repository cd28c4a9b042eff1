#pragma once

#include <complex>
#include <vector>

#include "chirpwave/quadrature.hpp"

namespace chirpwave {

/// Generalized Bessel function
///   G_n(x, c) = (1/2pi) \int_{-pi}^{pi} exp(i n th) exp(-i x sin th)
///                                        exp(i c sin^2 th) dth,
/// evaluated by the periodic trapezoid kernel. Reduces to J_n at c = 0 with
/// bit-identical arithmetic (same kernel, same nodes).
std::complex<double> generalized_bessel(int n, double x, double c,
                                        const QuadratureSpec& spec = {});

/// Integer-order J_n through the same integral at c = 0. The quadrature's
/// residual imaginary part must stay below spec.abs_tol (it cancels exactly
/// for symmetric nodes); a larger residual throws quadrature_error.
double bessel_jn(int n, double x, const QuadratureSpec& spec = {});

/// J_n at a single point by Taylor-stepped integration of Bessel's ODE from
/// the origin. Same function as bessel_jn, different route; used where
/// per-point quadrature is too slow (large-grid sampling). Cross-checked
/// against the integral definition in the suite.
double bessel_jn_point(int n, double x);

/// J_n on the uniform lattice x0 + j*dx, j = 0..count-1.
std::vector<double> bessel_jn_grid(int n, double x0, double dx, std::size_t count);

}  // namespace chirpwave
