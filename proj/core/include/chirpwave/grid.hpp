#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace chirpwave {

using cplx = std::complex<double>;

/// Uniform endpoint-exclusive lattice x_j = x_min + j*dx, j = 0..n-1, with the
/// conjugate wavenumber lattice in standard DFT ordering (bins [0, n/2) carry
/// k >= 0, bins [n/2, n) carry k < 0, spacing 2*pi/(n*dx), max |k| = pi/dx).
/// n is restricted to powers of two.
struct Grid {
    std::size_t n = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    double dx = 0.0;

    /// Validates and builds a grid; throws std::invalid_argument for
    /// non-power-of-two n, n < 2, or x_max <= x_min.
    static Grid make(std::size_t n, double x_min, double x_max);

    double x(std::size_t j) const { return x_min + dx * static_cast<double>(j); }
    double k(std::size_t j) const;
    double dk() const;
    double nyquist() const;  // pi/dx
    double max_abs_x() const;

    std::vector<double> xs() const;
    std::vector<double> ks() const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Complex samples of a wavefunction on a Grid. Treated as immutable by all
/// operations: transforms return new fields.
class WaveField {
public:
    WaveField() = default;
    explicit WaveField(const Grid& grid);  // zero field
    WaveField(const Grid& grid, std::vector<cplx> values);

    const Grid& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    std::size_t size() const { return values_.size(); }
    const cplx& operator[](std::size_t j) const { return values_[j]; }
    cplx& operator[](std::size_t j) { return values_[j]; }

    /// True if every sample is finite.
    bool all_finite() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

/// sqrt(sum |psi_j|^2 dx)
double l2_norm(const WaveField& f);

/// |psi_j|^2 per grid point.
std::vector<double> density(const WaveField& f);

/// l2_norm(a - b) / l2_norm(b); b is the reference. Throws
/// std::invalid_argument on grid mismatch or a zero-norm reference.
double rel_l2_error(const WaveField& a, const WaveField& b);

double sup_norm_diff(std::span<const double> a, std::span<const double> b);

/// Field dump, columns x,re,im,density with a header row.
void write_field_csv(const WaveField& f, std::ostream& os);

bool is_power_of_two(std::size_t n);

}  // namespace chirpwave
