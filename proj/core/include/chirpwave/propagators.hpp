#pragma once

#include <optional>
#include <string>

#include "chirpwave/factorization.hpp"
#include "chirpwave/grid.hpp"
#include "chirpwave/initial_state.hpp"
#include "chirpwave/quadrature.hpp"

namespace chirpwave {

enum class Method { oracle, exact_closed_form, psi0, psi1 };

std::string method_name(Method m);

struct EvolvedField {
    WaveField field;
    Method method = Method::oracle;
    FactorCoeffs coeffs;
    std::string state;
    double t = 0.0;
};

/// Free evolution exp(-i t p^2 / 2) applied spectrally. Guard: the top 10%
/// of |k| must carry less than 1e-8 of the spectral power, else
/// aliasing_error. Preserves the l2 norm to roundoff.
WaveField spectral_free_step(const WaveField& f, double t);

/// Limits for the oracle's internal grid enlargement.
struct OraclePlanLimits {
    std::size_t n_cap = std::size_t{1} << 24;
    double rel_tol = 1e-6;  // target fidelity of the restriction to obs_grid
};

/// Ground-truth evolution of exp(i alpha x^2) phi: sample, chirp, spectral
/// free step. Slowly decaying states are handled on an internal grid that is
/// enlarged (and the initial samples smoothly tapered) so that mass leaving
/// the observation window cannot wrap back onto it; the result is restricted
/// to obs_grid, whose lattice the internal one refines exactly. Throws
/// aliasing_error when no grid within limits.n_cap can resolve the chirp.
EvolvedField chirped_oracle(const InitialState& state, double alpha, double t,
                            const Grid& obs_grid, const OraclePlanLimits& limits = {});

/// Accelerating Airy packet Ai[eps(x - eps^3 t^2/4)] exp[i eps^3 t/2 (x - eps^3 t^2/6)].
WaveField airy_exact(double eps, double t, const Grid& grid);

/// Apodized Airy packet evolved in closed form; needs Ai at complex argument.
WaveField airy_gauss_exact(double eps, double beta, double t, const Grid& grid);

/// Zeroth-order approximant (1/sqrt(s)) e^{i f1 x^2} phi(x/s, 0).
EvolvedField psi0(const InitialState& state, double alpha, double t, const Grid& grid);

/// psi0 at one point; the invariance audits probe off-lattice coordinates.
cplx psi0_at(const InitialState& state, double alpha, double t, double x);

/// First-order approximant: psi0 plus i f4 times the squeezed-and-chirped
/// p^2 phi, with p^2 phi formed spectrally on the unsqueezed samples and
/// carried to x_j/s by exact trigonometric resampling.
EvolvedField psi1_generic(const InitialState& state, double alpha, double t, const Grid& grid);

/// The factored pipeline chirp(f1) o squeeze(s) o exp(i f4 p^2) applied to
/// phi's samples, all on the lattice. Used to verify the operator identity
/// against chirp(alpha)-then-free-evolution.
WaveField factored_evolution(const WaveField& phi, double alpha, double t);

/// factored_evolution run on the same enlarged, tapered internal grid the
/// oracle uses, restricted to obs_grid. Comparing this against
/// chirped_oracle checks the operator identity with both pipelines seeing
/// identical lattice data, so window truncation cancels instead of limiting
/// the comparison.
WaveField factored_evolution_windowed(const InitialState& state, double alpha, double t,
                                      const Grid& obs_grid, const OraclePlanLimits& limits = {});

/// Default spec for finite-interval (Gauss-Legendre) quadratures.
QuadratureSpec finite_default_spec();

// Sinc family, closed forms and the quadrature exact solution.
EvolvedField sinc_psi0(double b, double alpha, double t, const Grid& grid);
EvolvedField sinc_psi1(double b, double alpha, double t, const Grid& grid);
EvolvedField sinc_exact(double b, double alpha, double t, const Grid& grid,
                        const QuadratureSpec& spec = finite_default_spec());

// Bessel family. psi1 uses the derived coefficient (1 + i f4/2) J_n
// - i (f4/4)(J_{n+2} + J_{n-2}); the exact solution is the generalized
// Bessel function at argument (x/s, f4).
EvolvedField bessel_psi0(int n, double alpha, double t, const Grid& grid);
EvolvedField bessel_psi1(int n, double alpha, double t, const Grid& grid);
EvolvedField bessel_exact(int n, double alpha, double t, const Grid& grid,
                          const QuadratureSpec& spec = {});

/// Exact closed-form evolution for states that have one at the given chirp
/// (Sinc and Bessel for any alpha; Airy and Airy-Gauss only at alpha = 0).
std::optional<EvolvedField> exact_evolution(const InitialState& state, double alpha,
                                            double t, const Grid& grid);

}  // namespace chirpwave
