#include "chirpwave/factorization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chirpwave/fft.hpp"

namespace chirpwave {

FactorCoeffs factor_coeffs(double alpha, double t) {
    if (!std::isfinite(alpha) || !std::isfinite(t))
        throw std::invalid_argument("factor_coeffs: alpha and t must be finite");
    const double s = 1.0 + 2.0 * alpha * t;
    if (!(s > 0.0))
        throw std::invalid_argument("factor_coeffs: 1 + 2*alpha*t must be positive "
                                    "(factorization singularity)");
    FactorCoeffs c;
    c.alpha = alpha;
    c.t = t;
    c.s = s;
    c.f1 = alpha / s;
    c.f2 = -0.5 * std::log(s);
    c.f3 = alpha * t * t / s;
    c.f4 = c.f3 - 0.5 * t;
    return c;
}

F4Asymptotics f4_asymptotics(double alpha, double t) {
    F4Asymptotics a;
    a.small_alpha = -0.5 * t + t * t * alpha - 2.0 * t * t * t * alpha * alpha;
    a.large_alpha = (alpha != 0.0 && t != 0.0)
                        ? -1.0 / (4.0 * alpha) + 1.0 / (8.0 * t * alpha * alpha)
                        : std::numeric_limits<double>::quiet_NaN();
    return a;
}

WaveField apply_chirp(const WaveField& f, double c) {
    std::vector<cplx> out(f.values().begin(), f.values().end());
    const Grid& g = f.grid();
    for (std::size_t j = 0; j < out.size(); ++j) {
        const long double x = g.x(j);
        out[j] *= unit_phase(static_cast<long double>(c) * x * x);
    }
    return WaveField(g, std::move(out));
}

WaveField squeeze_scale_analytic(const InitialState& state, double s, const Grid& grid) {
    if (!(s > 0.0)) throw std::invalid_argument("squeeze_scale_analytic: s must be positive");
    auto vals = sample_scaled(state, grid, s);
    const double scale = 1.0 / std::sqrt(s);
    for (auto& v : vals) v *= scale;
    return WaveField(grid, std::move(vals));
}

cplx interpolate_cubic(const WaveField& f, double x) {
    const Grid& g = f.grid();
    const double pos = (x - g.x_min) / g.dx;
    const auto n = static_cast<long long>(g.n);
    const auto cell = static_cast<long long>(std::floor(pos));
    if (cell < 0 || cell >= n) return {0.0, 0.0};
    const double frac = pos - static_cast<double>(cell);
    if (frac == 0.0) return f[static_cast<std::size_t>(cell)];  // exact at knots

    // Catmull-Rom 4-point stencil; the field is zero-extended past the domain.
    auto at = [&](long long idx) -> cplx {
        if (idx < 0 || idx >= n) return {0.0, 0.0};
        return f[static_cast<std::size_t>(idx)];
    };
    const cplx p0 = at(cell - 1);
    const cplx p1 = at(cell);
    const cplx p2 = at(cell + 1);
    const cplx p3 = at(cell + 2);
    const double u = frac;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

SqueezeSampledResult squeeze_scale_sampled(const WaveField& f, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("squeeze_scale_sampled: s must be positive");
    if (s == 1.0) return {f, 1.0};  // identity resample, bit-exact
    const Grid& g = f.grid();
    std::vector<cplx> out(g.n);
    const double scale = 1.0 / std::sqrt(s);
    std::size_t covered = 0;
    const double hi = g.x_min + g.dx * static_cast<double>(g.n - 1);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double y = g.x(j) / s;
        if (y >= g.x_min && y <= hi) ++covered;
        out[j] = scale * interpolate_cubic(f, y);
    }
    SqueezeSampledResult r{WaveField(g, std::move(out)),
                           static_cast<double>(covered) / static_cast<double>(g.n)};
    return r;
}

}  // namespace chirpwave
