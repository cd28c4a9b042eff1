#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace chirpwave {

enum class QuadRule {
    periodic_trapezoid,  // full-period integrands; spectrally accurate
    gauss_legendre,      // finite non-periodic intervals; composite GL-16
};

/// Fixed-order composite quadrature with panel doubling: the panel count
/// doubles until two successive estimates differ by less than abs_tol,
/// capped at max_panels (throws quadrature_error past the cap).
struct QuadratureSpec {
    std::size_t panel_count = 512;  // starting resolution
    QuadRule rule = QuadRule::periodic_trapezoid;
    double abs_tol = 1e-10;
    std::size_t max_panels = std::size_t{1} << 16;

    void validate() const;  // panel_count >= 16, abs_tol > 0
};

/// Integral of f over [-pi, pi] for a smooth 2*pi-periodic f.
std::complex<double> integrate_periodic(const std::function<std::complex<double>(double)>& f,
                                        const QuadratureSpec& spec);

/// Integral of f over [a, b] by composite 16-node Gauss-Legendre panels.
std::complex<double> integrate_finite(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, const QuadratureSpec& spec);

}  // namespace chirpwave
