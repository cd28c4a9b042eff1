#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "chirpwave/grid.hpp"

namespace chirpwave {

/// In-place power-of-two FFT. Forward is unnormalized; inverse applies 1/n.
/// Thread-safe: concurrent transforms on distinct buffers are fine.
void fft_in_place(std::span<cplx> data, bool inverse);

std::vector<cplx> fft(std::vector<cplx> data, bool inverse);

/// Unnormalized DFT of the field samples, standard bin ordering.
std::vector<cplx> spectrum(const WaveField& f);

/// exp(i*phase) with the argument reduced in extended precision. Use this
/// whenever the phase can be many multiples of 2*pi (k^2 multipliers, chirps
/// on wide grids), where plain double reduction costs ~|phase|*eps radians.
cplx unit_phase(long double phase);

/// Fraction of spectral power carried by bins with |k| >= frac * nyquist.
double high_k_mass_fraction(const WaveField& f, double frac);

namespace detail {
/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Deterministic as
/// long as iterations touch disjoint state. jobs == 0 means hardware default.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);
}  // namespace detail

}  // namespace chirpwave
