#include "chirpwave/grid.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace chirpwave {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid Grid::make(std::size_t n, double x_min, double x_max) {
    if (n < 2 || !is_power_of_two(n))
        throw std::invalid_argument("Grid: n must be a power of two >= 2, got " + std::to_string(n));
    if (!(x_max > x_min))
        throw std::invalid_argument("Grid: requires x_max > x_min");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw std::invalid_argument("Grid: endpoints must be finite");
    Grid g;
    g.n = n;
    g.x_min = x_min;
    g.x_max = x_max;
    g.dx = (x_max - x_min) / static_cast<double>(n);
    return g;
}

double Grid::dk() const { return 2.0 * std::numbers::pi / (static_cast<double>(n) * dx); }

double Grid::k(std::size_t j) const {
    const auto half = n / 2;
    const double m = (j < half) ? static_cast<double>(j)
                                : static_cast<double>(j) - static_cast<double>(n);
    return m * dk();
}

double Grid::nyquist() const { return std::numbers::pi / dx; }

double Grid::max_abs_x() const { return std::max(std::abs(x_min), std::abs(x_max - dx)); }

std::vector<double> Grid::xs() const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = x(j);
    return out;
}

std::vector<double> Grid::ks() const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = k(j);
    return out;
}

WaveField::WaveField(const Grid& grid) : grid_(grid), values_(grid.n, cplx{0.0, 0.0}) {}

WaveField::WaveField(const Grid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n)
        throw std::invalid_argument("WaveField: values length must equal grid.n");
}

bool WaveField::all_finite() const {
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double l2_norm(const WaveField& f) {
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::norm(v);
    return std::sqrt(acc * f.grid().dx);
}

std::vector<double> density(const WaveField& f) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = std::norm(f[j]);
    return out;
}

double rel_l2_error(const WaveField& a, const WaveField& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("rel_l2_error: fields live on different grids");
    const double ref = l2_norm(b);
    if (ref == 0.0) throw std::invalid_argument("rel_l2_error: zero-norm reference");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::norm(a[j] - b[j]);
    return std::sqrt(acc * a.grid().dx) / ref;
}

double sup_norm_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("sup_norm_diff: length mismatch");
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

void write_field_csv(const WaveField& f, std::ostream& os) {
    os << "x,re,im,density\n";
    char buf[160];
    for (std::size_t j = 0; j < f.size(); ++j) {
        const cplx v = f[j];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", f.grid().x(j), v.real(),
                      v.imag(), std::norm(v));
        os << buf;
    }
}

}  // namespace chirpwave
