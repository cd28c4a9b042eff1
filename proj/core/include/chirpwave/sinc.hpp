#pragma once

namespace chirpwave {

/// Sinc in the convention used throughout this project:
///   Sinc_b(x) = (1/b) \int_{-b}^{b} exp(i u x) du = 2 sin(bx)/(bx),
/// value 2 at x = 0 (not the conventional normalized sinc).
double paper_sinc(double b, double x);

/// Second-moment kernel \int_{-b}^{b} u^2 exp(i u y) du (real and even in y).
/// Closed form away from y = 0, Taylor series near it to dodge the
/// cancellation between the 1/y^2 and 1/y^3 terms.
double sinc_second_moment(double b, double y);

}  // namespace chirpwave
