#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "chirpwave/grid.hpp"
#include "chirpwave/quadrature.hpp"

namespace chirpwave {

struct AiryState {
    double eps = 1.0;  // Ai(eps * x)
};

struct AiryGaussState {
    double eps = 1.0;   // Ai(eps * x) * exp(-beta x^2)
    double beta = 0.01; // > 0
};

struct SincState {
    double b = 1.0;  // > 0
};

struct BesselState {
    int n = 0;  // >= 0
};

/// Arbitrary sampled profile; evaluated between knots by cubic interpolation,
/// zero outside its domain.
struct TabulatedState {
    WaveField samples;
};

using InitialState = std::variant<AiryState, AiryGaussState, SincState, BesselState, TabulatedState>;

/// Throws std::invalid_argument when parameters violate their constraints
/// (b > 0, beta > 0, n >= 0, finite tabulated samples).
void validate_state(const InitialState& state);

/// phi(x, 0) at a point.
cplx evaluate(const InitialState& state, double x);

/// phi sampled on the grid; pure (bit-identical across calls).
WaveField sample(const InitialState& state, const Grid& grid);

/// phi(x_j / s) for every grid point, evaluated analytically. The compressed
/// points form a uniform lattice, which keeps Bessel states on their fast
/// grid evaluator.
std::vector<cplx> sample_scaled(const InitialState& state, const Grid& grid, double s);

/// One-line descriptor matching the CLI mini-grammar, e.g. "bessel:0".
std::string describe(const InitialState& state);

/// Parses "airy:<eps>", "airygauss:<eps>,<beta>", "sinc:<b>", "bessel:<n>".
InitialState parse_state(std::string_view text);

/// Half-width of phi's spectral support (conservative), given how far in |x|
/// the state will be sampled. Feeds the aliasing guards.
double spectral_halfwidth(const InitialState& state, double max_abs_x);

/// Envelope bound on |phi(x)| for |x| >= r; drives oracle taper planning.
double tail_amplitude(const InitialState& state, double r);

}  // namespace chirpwave
