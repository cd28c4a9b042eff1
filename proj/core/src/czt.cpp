#include "chirpwave/czt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chirpwave/fft.hpp"

namespace chirpwave {

// Bluestein evaluation of g_j = sum_{m=-n/2}^{n/2-1} B_m exp(i m j theta),
// theta = 2*pi/(n*s). Writing m = m' - n/2 turns the sum into a standard
// chirp-Z transform of length n, done as one circular convolution of size 2n.
// All quadratic phases are reduced in long double; m^2 <= 4n^2 stays exact in
// a double for every n used here.
std::vector<cplx> spectral_resample_scaled(const WaveField& f, double s,
                                           const std::function<cplx(double)>& mult) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("spectral_resample_scaled: s must be positive and finite");
    const std::size_t n = f.size();
    const Grid& g = f.grid();
    const long double pi = std::numbers::pi_v<long double>;
    const long double theta = 2.0L * pi / (static_cast<long double>(n) * static_cast<long double>(s));

    std::vector<cplx> coef = spectrum(f);  // DFT order, unnormalized

    // Centered coefficients with the multiplier and the absolute-coordinate
    // phase k_m * x_min * (1 - s)/s folded in.
    const long double x_min = g.x_min;
    const long double dk = 2.0L * pi / (static_cast<long double>(n) * static_cast<long double>(g.dx));
    const long double shift = x_min * (1.0L - static_cast<long double>(s)) / static_cast<long double>(s);
    const double inv_n = 1.0 / static_cast<double>(n);
    const std::size_t half = n / 2;

    std::vector<cplx> b(n);  // index m' = m + n/2, m in [-n/2, n/2)
    for (std::size_t mp = 0; mp < n; ++mp) {
        const long long m = static_cast<long long>(mp) - static_cast<long long>(half);
        const std::size_t bin = static_cast<std::size_t>((m + static_cast<long long>(n)) % static_cast<long long>(n));
        const double km = static_cast<double>(m) * static_cast<double>(dk);
        b[mp] = coef[bin] * inv_n * mult(km) * unit_phase(static_cast<long double>(m) * dk * shift);
    }

    const std::size_t nn = 2 * n;
    std::vector<cplx> u(nn, cplx{0.0, 0.0});
    std::vector<cplx> v(nn, cplx{0.0, 0.0});
    const long double nsl = static_cast<long double>(n) * static_cast<long double>(s);
    auto quad_phase = [&](long double m2) { return pi * m2 / nsl; };  // theta*m^2/2

    for (std::size_t mp = 0; mp < n; ++mp) {
        const long double m2 = static_cast<long double>(mp) * static_cast<long double>(mp);
        u[mp] = b[mp] * unit_phase(quad_phase(m2));
    }
    for (long long r = -(static_cast<long long>(n) - 1); r < static_cast<long long>(n); ++r) {
        const long double r2 = static_cast<long double>(r) * static_cast<long double>(r);
        const std::size_t idx = static_cast<std::size_t>((r + static_cast<long long>(nn)) % static_cast<long long>(nn));
        v[idx] = unit_phase(-quad_phase(r2));
    }

    fft_in_place(u, false);
    fft_in_place(v, false);
    for (std::size_t i = 0; i < nn; ++i) u[i] *= v[i];
    fft_in_place(u, true);

    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long double j2 = static_cast<long double>(j) * static_cast<long double>(j);
        // A_j = W^{j^2/2} * conv_j, then undo the m -> m' shift.
        const cplx a = u[j] * unit_phase(quad_phase(j2));
        const long double shift_back = -static_cast<long double>(half) * static_cast<long double>(j) * theta;
        out[j] = a * unit_phase(shift_back);
    }
    return out;
}

}  // namespace chirpwave
