#pragma once

#include <complex>

namespace chirpwave {

/// Airy function Ai on the real line. Maclaurin series pair inside
/// |x| <= airy_series_radius(), asymptotic expansions outside; the switch
/// point is validated by an overlap test in the suite.
double airy_ai(double x);

/// Ai on the complex plane (principal branches throughout). Series inside
/// the switch disk; the |arg z| <= 2*pi/3 expansion outside; near the
/// negative real axis the two rotated sectors are combined through
/// Ai(z) + w*Ai(w*z) + conj(w)*Ai(conj(w)*z) = 0, w = exp(2*pi*i/3).
std::complex<double> airy_ai(std::complex<double> z);

double airy_series_radius();

}  // namespace chirpwave
