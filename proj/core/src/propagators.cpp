#include "chirpwave/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>

#include "chirpwave/airy.hpp"
#include "chirpwave/bessel.hpp"
#include "chirpwave/czt.hpp"
#include "chirpwave/errors.hpp"
#include "chirpwave/fft.hpp"
#include "chirpwave/sinc.hpp"

namespace chirpwave {

namespace {

constexpr double kHighKGuardFraction = 0.9;
constexpr double kHighKGuardMass = 1e-8;

using std::numbers::pi;

std::size_t ceil_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

/// C-infinity partition-of-unity taper: 1 for |x| <= r, 0 for |x| >= r + w.
double smooth_taper(double abs_x, double r, double w) {
    if (abs_x <= r) return 1.0;
    if (abs_x >= r + w) return 0.0;
    const double u = (abs_x - r) / w;
    const auto bump = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
    const double f1 = bump(1.0 - u);
    const double f0 = bump(u);
    return f1 / (f1 + f0);
}

EvolvedField wrap(WaveField field, Method m, const FactorCoeffs& c, const InitialState& state) {
    return EvolvedField{std::move(field), m, c, describe(state), c.t};
}

/// e^{i f1 x^2} * vals[j] / sqrt(s), assembled in place.
WaveField chirp_and_scale(const Grid& grid, std::vector<cplx> vals, double f1, double s) {
    const double scale = 1.0 / std::sqrt(s);
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const long double x = grid.x(j);
        vals[j] *= scale * unit_phase(static_cast<long double>(f1) * x * x);
    }
    return WaveField(grid, std::move(vals));
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::oracle: return "oracle";
        case Method::exact_closed_form: return "exact_closed_form";
        case Method::psi0: return "psi0";
        case Method::psi1: return "psi1";
    }
    return "unknown";
}

QuadratureSpec finite_default_spec() {
    QuadratureSpec spec;
    spec.rule = QuadRule::gauss_legendre;
    return spec;
}

WaveField spectral_free_step(const WaveField& f, double t) {
    const double high = high_k_mass_fraction(f, kHighKGuardFraction);
    if (high > kHighKGuardMass)
        throw aliasing_error("spectral_free_step: " + std::to_string(high) +
                             " of the spectral mass sits in the top 10% of |k| "
                             "(limit 1e-8); the field is not band-limited on this grid");
    const Grid& g = f.grid();
    std::vector<cplx> data(f.values().begin(), f.values().end());
    fft_in_place(data, false);
    const long double dk = 2.0L * std::numbers::pi_v<long double> /
                           (static_cast<long double>(g.n) * static_cast<long double>(g.dx));
    const long double factor = -static_cast<long double>(t) * 0.5L * dk * dk;
    const auto n = static_cast<long long>(g.n);
    for (long long j = 0; j < n; ++j) {
        const long long m = (j < n / 2) ? j : j - n;
        const long double m2 = static_cast<long double>(m) * static_cast<long double>(m);
        data[static_cast<std::size_t>(j)] *= unit_phase(factor * m2);
    }
    fft_in_place(data, true);

    WaveField out(g, std::move(data));
    const double n_in = l2_norm(f);
    const double n_out = l2_norm(out);
    if (n_in > 0.0 && std::abs(n_out / n_in - 1.0) > 1e-12)
        throw numerical_guard_error("spectral_free_step: norm drifted by more than 1e-12");
    return out;
}

WaveField airy_exact(double eps, double t, const Grid& grid) {
    const double e3 = eps * eps * eps;
    const double shift = e3 * t * t / 4.0;
    const double phase_origin = e3 * e3 * t * t * t / 6.0;  // eps^3 t/2 * eps^3 t^2/6
    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double amp = airy_ai(eps * (x - shift));
        const long double phase =
            static_cast<long double>(e3) * t * 0.5L * x - static_cast<long double>(phase_origin) * 0.5L;
        vals[j] = amp * unit_phase(phase);
    }
    return WaveField(grid, std::move(vals));
}

// Closed-form free evolution of Ai(eps x) exp(-beta x^2), from the Airy
// integral representation and a Gaussian Fresnel integral:
//   psi = D^{-1/2} Ai(q - p^2) exp(-beta x^2 / D) exp[i(2p^3/3 - p q)]
// with D = 1 + 2 i beta t, q = eps x / D, p = -eps^2 t / (2 D). At beta -> 0
// this reduces term by term to the accelerating Airy packet, which pins every
// coefficient; the suite also checks it against the spectral propagator.
WaveField airy_gauss_exact(double eps, double beta, double t, const Grid& grid) {
    if (!(beta > 0.0)) throw std::invalid_argument("airy_gauss_exact: beta must be positive");
    const cplx i{0.0, 1.0};
    const cplx big_d = 1.0 + 2.0 * i * beta * t;
    const cplx pref = 1.0 / std::sqrt(big_d);  // principal branch; Re(D) = 1 > 0
    const cplx p = -eps * eps * t / (2.0 * big_d);
    const cplx phase_cubic = 2.0 * p * p * p / 3.0;

    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const cplx q = eps * x / big_d;
        const cplx zeta = q - p * p;
        const cplx gamma = phase_cubic - p * q;
        const cplx gaussian = std::exp(-beta * x * x / big_d);
        vals[j] = pref * airy_ai(zeta) * gaussian * std::exp(i * gamma);
    }
    return WaveField(grid, std::move(vals));
}

EvolvedField psi0(const InitialState& state, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    WaveField squeezed = squeeze_scale_analytic(state, c.s, grid);
    return wrap(apply_chirp(squeezed, c.f1), Method::psi0, c, state);
}

cplx psi0_at(const InitialState& state, double alpha, double t, double x) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    const long double xl = x;
    return evaluate(state, x / c.s) * unit_phase(static_cast<long double>(c.f1) * xl * xl) /
           std::sqrt(c.s);
}

EvolvedField psi1_generic(const InitialState& state, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    EvolvedField zeroth = psi0(state, alpha, t, grid);
    if (c.f4 == 0.0) {
        zeroth.method = Method::psi1;
        return zeroth;
    }

    // p^2 phi = -phi'' formed spectrally on the unsqueezed samples, tapered at
    // the window edge so the truncation kink cannot pollute the k^2 multiplier,
    // then carried to x_j/s exactly. The correction is only trusted where
    // x_j/s clears the taper, which holds for every s > 1.25 on these windows.
    WaveField phi = sample(state, grid);
    const double L = grid.max_abs_x();
    const double taper_r = 0.80 * L;
    const double taper_w = 0.15 * L;
    for (std::size_t j = 0; j < grid.n; ++j)
        phi[j] *= smooth_taper(std::abs(grid.x(j)), taper_r, taper_w);

    auto k2 = [](double k) { return cplx{k * k, 0.0}; };
    std::vector<cplx> d2 = spectral_resample_scaled(phi, c.s, k2);

    const double scale = 1.0 / std::sqrt(c.s);
    const cplx if4{0.0, c.f4};
    std::vector<cplx> vals(zeroth.field.values().begin(), zeroth.field.values().end());
    for (std::size_t j = 0; j < grid.n; ++j) {
        const long double x = grid.x(j);
        vals[j] += if4 * scale * unit_phase(static_cast<long double>(c.f1) * x * x) * d2[j];
    }
    return wrap(WaveField(grid, std::move(vals)), Method::psi1, c, state);
}

WaveField factored_evolution(const WaveField& phi, double alpha, double t) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    auto mult = [&](double k) {
        return unit_phase(static_cast<long double>(c.f4) * static_cast<long double>(k) *
                          static_cast<long double>(k));
    };
    std::vector<cplx> resampled = spectral_resample_scaled(phi, c.s, mult);
    return chirp_and_scale(phi.grid(), std::move(resampled), c.f1, c.s);
}

// ---------------------------------------------------------------------------
// chirped oracle

namespace {

struct OraclePlan {
    Grid internal;
    double taper_r = 0.0;
    double taper_w = 0.0;
    std::size_t stride = 1;
    std::size_t offset = 0;
    bool identical = false;  // internal grid == observation grid, no taper
};

OraclePlan plan_oracle(const InitialState& state, double alpha, double t, const Grid& obs,
                       const OraclePlanLimits& limits) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    const double L = obs.max_abs_x() + obs.dx;

    const double band0 = spectral_halfwidth(state, L);
    const double smear = 2.0 * (2.0 * std::abs(c.f4)) * band0 + 6.0;
    const double y_max = L / c.s + smear;

    // The taper starts well past the feed region; its smoothness keeps the
    // removed tail's influence on the window superpolynomially small. States
    // whose envelope underflows earlier get a correspondingly smaller radius.
    double amp_cut = y_max;
    while (tail_amplitude(state, amp_cut) > 1e-15 && amp_cut < 1e6) amp_cut *= 1.5;
    const double r = std::min(2.0 * y_max + 30.0, std::max(amp_cut, 1.3 * y_max + 10.0));
    const double w = std::max(r, 20.0);
    const double r_out = r + w;

    // Resolution: the chirp's local wavenumber across the kept support plus
    // phi's band, under 90% of Nyquist.
    const double k_need = 2.0 * std::abs(alpha) * r_out + spectral_halfwidth(state, r_out);
    std::size_t refine = 1;
    while (kHighKGuardFraction * pi / (obs.dx / static_cast<double>(refine)) < k_need) refine *= 2;
    const double dxi = obs.dx / static_cast<double>(refine);

    // Domain: evolved mass reaches |x| ~ s*r_out + band*t; keep its periodic
    // images off the observation window.
    const double reach = c.s * r_out + band0 * t + 30.0;
    const double d_need = std::max(0.5 * (reach + L) + 10.0, L);
    // Half-width must be 2^m times the observation half-width so the
    // observation lattice embeds exactly.
    const double obs_half = obs.dx * static_cast<double>(obs.n / 2);
    const double x_center = obs.x_min + obs_half;  // lattice point of obs
    double d = obs_half;
    while (d < d_need) d *= 2.0;

    const double n_real = 2.0 * d / dxi;
    if (n_real > static_cast<double>(limits.n_cap))
        throw aliasing_error(
            "chirped_oracle: resolving the chirp needs " + std::to_string(n_real) +
            " points (cap " + std::to_string(limits.n_cap) +
            "); reduce alpha/t or enlarge the cap");

    OraclePlan plan;
    plan.internal = Grid::make(ceil_pow2(static_cast<std::size_t>(std::llround(n_real))),
                               x_center - d, x_center + d);
    plan.taper_r = r;
    plan.taper_w = w;

    const double off = (d - obs_half) / dxi;
    plan.offset = static_cast<std::size_t>(std::llround(off));
    if (std::abs(off - static_cast<double>(plan.offset)) > 1e-6)
        throw std::logic_error("chirped_oracle: internal lattice failed to embed the grid");
    plan.stride = refine;
    plan.identical = (plan.internal == obs);
    return plan;
}

// Big internal grids are serialized to bound peak memory; cells of a sweep
// can still run in parallel around the small ones.
std::mutex& big_oracle_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

namespace {

WaveField tapered_internal_sample(const InitialState& state, const OraclePlan& plan) {
    WaveField phi = sample(state, plan.internal);
    if (!plan.identical) {
        for (std::size_t j = 0; j < plan.internal.n; ++j)
            phi[j] *= smooth_taper(std::abs(plan.internal.x(j)), plan.taper_r, plan.taper_w);
    }
    return phi;
}

WaveField restrict_to(const WaveField& internal, const Grid& obs, const OraclePlan& plan) {
    std::vector<cplx> vals(obs.n);
    for (std::size_t j = 0; j < obs.n; ++j) vals[j] = internal[plan.offset + j * plan.stride];
    return WaveField(obs, std::move(vals));
}

}  // namespace

EvolvedField chirped_oracle(const InitialState& state, double alpha, double t,
                            const Grid& obs_grid, const OraclePlanLimits& limits) {
    validate_state(state);
    const FactorCoeffs c = factor_coeffs(alpha, t);
    if (t == 0.0)
        return wrap(apply_chirp(sample(state, obs_grid), alpha), Method::oracle, c, state);

    const OraclePlan plan = plan_oracle(state, alpha, t, obs_grid, limits);

    std::unique_lock<std::mutex> lock(big_oracle_mutex(), std::defer_lock);
    if (plan.internal.n >= (std::size_t{1} << 21)) lock.lock();

    WaveField phi = tapered_internal_sample(state, plan);
    WaveField evolved = spectral_free_step(apply_chirp(phi, alpha), t);
    if (plan.identical) return wrap(std::move(evolved), Method::oracle, c, state);
    return wrap(restrict_to(evolved, obs_grid, plan), Method::oracle, c, state);
}

WaveField factored_evolution_windowed(const InitialState& state, double alpha, double t,
                                      const Grid& obs_grid, const OraclePlanLimits& limits) {
    validate_state(state);
    if (t == 0.0) return apply_chirp(sample(state, obs_grid), alpha);

    const OraclePlan plan = plan_oracle(state, alpha, t, obs_grid, limits);

    std::unique_lock<std::mutex> lock(big_oracle_mutex(), std::defer_lock);
    if (plan.internal.n >= (std::size_t{1} << 21)) lock.lock();

    const WaveField phi = tapered_internal_sample(state, plan);
    const WaveField factored = factored_evolution(phi, alpha, t);
    if (plan.identical) return factored;
    return restrict_to(factored, obs_grid, plan);
}

// ---------------------------------------------------------------------------
// sinc family

EvolvedField sinc_psi0(double b, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j)
        vals[j] = cplx{paper_sinc(b, grid.x(j) / c.s), 0.0};
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::psi0,
                c, InitialState{SincState{b}});
}

EvolvedField sinc_psi1(double b, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    const cplx if4_over_b{0.0, c.f4 / b};
    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double y = grid.x(j) / c.s;
        vals[j] = cplx{paper_sinc(b, y), 0.0} + if4_over_b * sinc_second_moment(b, y);
    }
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::psi1,
                c, InitialState{SincState{b}});
}

EvolvedField sinc_exact(double b, double alpha, double t, const Grid& grid,
                        const QuadratureSpec& spec) {
    if (!(b > 0.0)) throw std::invalid_argument("sinc_exact: b must be positive");
    const FactorCoeffs c = factor_coeffs(alpha, t);
    std::vector<cplx> vals(grid.n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    detail::parallel_for(grid.n, 0, [&](std::size_t j) {
        try {
            const double y = grid.x(j) / c.s;
            auto integrand = [&](double u) {
                const double phase = c.f4 * u * u + u * y;
                return cplx{std::cos(phase), std::sin(phase)};
            };
            vals[j] = integrate_finite(integrand, -b, b, spec) / b;
        } catch (...) {
            std::lock_guard<std::mutex> g(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::exact_closed_form,
                c, InitialState{SincState{b}});
}

// ---------------------------------------------------------------------------
// bessel family

EvolvedField bessel_psi0(int n, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    const auto jn = bessel_jn_grid(n, grid.x_min / c.s, grid.dx / c.s, grid.n);
    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) vals[j] = cplx{jn[j], 0.0};
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::psi0,
                c, InitialState{BesselState{n}});
}

EvolvedField bessel_psi1(int n, double alpha, double t, const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    const auto jn = bessel_jn_grid(n, grid.x_min / c.s, grid.dx / c.s, grid.n);
    const auto jp2 = bessel_jn_grid(n + 2, grid.x_min / c.s, grid.dx / c.s, grid.n);
    const auto jm2 = bessel_jn_grid(n - 2, grid.x_min / c.s, grid.dx / c.s, grid.n);
    // (1 + i f4 p^2) J_n with J_n'' = (J_{n-2} - 2 J_n + J_{n+2})/4:
    // coefficient (1 + i f4/2) on J_n, -i f4/4 on J_{n+2} + J_{n-2}.
    const cplx c_n{1.0, 0.5 * c.f4};
    const cplx c_pm{0.0, -0.25 * c.f4};
    std::vector<cplx> vals(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) vals[j] = c_n * jn[j] + c_pm * (jp2[j] + jm2[j]);
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::psi1,
                c, InitialState{BesselState{n}});
}

EvolvedField bessel_exact(int n, double alpha, double t, const Grid& grid,
                          const QuadratureSpec& spec) {
    if (n < 0) throw std::invalid_argument("bessel_exact: order must be >= 0");
    const FactorCoeffs c = factor_coeffs(alpha, t);
    std::vector<cplx> vals(grid.n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    detail::parallel_for(grid.n, 0, [&](std::size_t j) {
        try {
            vals[j] = generalized_bessel(n, grid.x(j) / c.s, c.f4, spec);
        } catch (...) {
            std::lock_guard<std::mutex> g(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return wrap(chirp_and_scale(grid, std::move(vals), c.f1, c.s), Method::exact_closed_form,
                c, InitialState{BesselState{n}});
}

std::optional<EvolvedField> exact_evolution(const InitialState& state, double alpha, double t,
                                            const Grid& grid) {
    const FactorCoeffs c = factor_coeffs(alpha, t);
    if (const auto* s = std::get_if<SincState>(&state)) return sinc_exact(s->b, alpha, t, grid);
    if (const auto* s = std::get_if<BesselState>(&state)) return bessel_exact(s->n, alpha, t, grid);
    if (alpha == 0.0) {
        if (const auto* s = std::get_if<AiryState>(&state))
            return wrap(airy_exact(s->eps, t, grid), Method::exact_closed_form, c, state);
        if (const auto* s = std::get_if<AiryGaussState>(&state))
            return wrap(airy_gauss_exact(s->eps, s->beta, t, grid), Method::exact_closed_form, c,
                        state);
    }
    return std::nullopt;
}

}  // namespace chirpwave
