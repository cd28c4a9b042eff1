#include "chirpwave/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chirpwave/errors.hpp"

namespace chirpwave {

namespace {

std::size_t ceil_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Maclaurin series of J_n; plenty for |x| <= 1.
double jn_series(int n, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int m = 1; m <= n; ++m) term *= half / m;  // (x/2)^n / n!
    double sum = term;
    const double q = -half * half;
    for (int m = 1; m <= 40; ++m) {
        term *= q / (m * (n + m));
        sum += term;
        if (std::abs(term) < 1e-19 * (std::abs(sum) + 1e-30)) break;
    }
    return sum;
}

double jn_series_derivative(int n, double x) {
    if (n == 0) return -jn_series(1, x);
    return 0.5 * (jn_series(n - 1, x) - jn_series(n + 1, x));
}

constexpr int kTaylorTerms = 24;

// Taylor coefficients of y around a from Bessel's ODE
// x^2 y'' + x y' + (x^2 - n^2) y = 0, given y(a), y'(a).
std::array<double, kTaylorTerms> taylor_coeffs(int n, double a, double y, double yp) {
    std::array<double, kTaylorTerms> c{};
    c[0] = y;
    c[1] = yp;
    const double a2 = a * a;
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    for (int m = 0; m + 2 < kTaylorTerms; ++m) {
        const double cm = c[static_cast<std::size_t>(m)];
        const double cm1 = c[static_cast<std::size_t>(m + 1)];
        const double cm_1 = (m >= 1) ? c[static_cast<std::size_t>(m - 1)] : 0.0;
        const double cm_2 = (m >= 2) ? c[static_cast<std::size_t>(m - 2)] : 0.0;
        const double rhs = 2.0 * a * m * (m + 1.0) * cm1 + m * (m - 1.0) * cm +
                           a * (m + 1.0) * cm1 + m * cm + (a2 - n2) * cm + 2.0 * a * cm_1 + cm_2;
        c[static_cast<std::size_t>(m + 2)] = -rhs / (a2 * (m + 2.0) * (m + 1.0));
    }
    return c;
}

double eval_poly(const std::array<double, kTaylorTerms>& c, double h) {
    double acc = 0.0;
    for (int m = kTaylorTerms - 1; m >= 0; --m) acc = acc * h + c[static_cast<std::size_t>(m)];
    return acc;
}

double eval_poly_derivative(const std::array<double, kTaylorTerms>& c, double h) {
    double acc = 0.0;
    for (int m = kTaylorTerms - 1; m >= 1; --m)
        acc = acc * h + static_cast<double>(m) * c[static_cast<std::size_t>(m)];
    return acc;
}

constexpr double kSeriesCut = 1.0;  // |x| below this: Maclaurin directly

double march_step(double a) { return std::min(0.45 * a, 0.5); }

struct TaylorPiece {
    double a;
    std::array<double, kTaylorTerms> c;
};

// Piecewise Taylor representation of J_n on [kSeriesCut, x_max]. Marching
// outward is stable: both solutions of the ODE have neutral (decaying)
// envelopes, so seed errors do not grow.
std::vector<TaylorPiece> march_table(int n, double x_max) {
    std::vector<TaylorPiece> table;
    double a = kSeriesCut;
    double y = jn_series(n, a);
    double yp = jn_series_derivative(n, a);
    while (a < x_max) {
        const double h = march_step(a);
        table.push_back({a, taylor_coeffs(n, a, y, yp)});
        y = eval_poly(table.back().c, h);
        yp = eval_poly_derivative(table.back().c, h);
        a += h;
    }
    return table;
}

double eval_from_table(const std::vector<TaylorPiece>& table, int n, double ax) {
    if (ax <= kSeriesCut) return jn_series(n, ax);
    auto it = std::upper_bound(table.begin(), table.end(), ax,
                               [](double v, const TaylorPiece& p) { return v < p.a; });
    const auto& piece = *(it - 1);
    return eval_poly(piece.c, ax - piece.a);
}

}  // namespace

std::complex<double> generalized_bessel(int n, double x, double c, const QuadratureSpec& spec) {
    if (!std::isfinite(x) || !std::isfinite(c))
        throw std::invalid_argument("generalized_bessel: arguments must be finite");
    QuadratureSpec local = spec;
    // The integrand oscillates ~(|n|+|x|+|c|)/pi times per period; start the
    // panel ladder above that so the first estimate is already resolved.
    const double oscillation = std::abs(x) + std::abs(c) + std::abs(n);
    local.panel_count = std::max<std::size_t>(
        spec.panel_count, ceil_pow2(static_cast<std::size_t>(2.0 * oscillation) + 32));
    local.max_panels = std::max(local.max_panels, local.panel_count * 4);
    const double inv_two_pi = 1.0 / (2.0 * std::numbers::pi);
    auto integrand = [&](double th) {
        const double st = std::sin(th);
        const double phase = n * th - x * st + c * st * st;
        return std::complex<double>(std::cos(phase), std::sin(phase));
    };
    return integrate_periodic(integrand, local) * inv_two_pi;
}

double bessel_jn(int n, double x, const QuadratureSpec& spec) {
    if (n < 0) throw std::invalid_argument("bessel_jn: order must be >= 0");
    const std::complex<double> val = generalized_bessel(n, x, 0.0, spec);
    if (std::abs(val.imag()) > spec.abs_tol)
        throw quadrature_error("bessel_jn: residual imaginary part " +
                               std::to_string(val.imag()) + " exceeds abs_tol (under-resolved)");
    return val.real();
}

double bessel_jn_point(int n, double x) {
    const int an = std::abs(n);
    double sign = 1.0;
    if (n < 0 && (an & 1)) sign = -1.0;  // J_{-n} = (-1)^n J_n
    double ax = std::abs(x);
    if (x < 0.0 && (an & 1)) sign = -sign;
    if (ax <= kSeriesCut) return sign * jn_series(an, ax);
    const auto table = march_table(an, ax);
    return sign * eval_from_table(table, an, ax);
}

std::vector<double> bessel_jn_grid(int n, double x0, double dx, std::size_t count) {
    const int an = std::abs(n);
    const double order_sign = (n < 0 && (an & 1)) ? -1.0 : 1.0;
    double max_abs = 0.0;
    for (std::size_t j = 0; j < count; ++j)
        max_abs = std::max(max_abs, std::abs(x0 + dx * static_cast<double>(j)));
    const auto table = march_table(an, max_abs);
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        const double x = x0 + dx * static_cast<double>(j);
        double v = eval_from_table(table, an, std::abs(x));
        if (x < 0.0 && (an & 1)) v = -v;
        out[j] = order_sign * v;
    }
    return out;
}

}  // namespace chirpwave
