#include "chirpwave/initial_state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "chirpwave/airy.hpp"
#include "chirpwave/bessel.hpp"
#include "chirpwave/factorization.hpp"
#include "chirpwave/fft.hpp"
#include "chirpwave/sinc.hpp"

namespace chirpwave {

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("state spec: bad " + std::string(what) + " '" +
                                    std::string(text) + "'");
    return value;
}

}  // namespace

void validate_state(const InitialState& state) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AiryState>) {
                if (!std::isfinite(s.eps)) throw std::invalid_argument("airy: eps must be finite");
            } else if constexpr (std::is_same_v<T, AiryGaussState>) {
                if (!std::isfinite(s.eps)) throw std::invalid_argument("airygauss: eps must be finite");
                if (!(s.beta > 0.0) || !std::isfinite(s.beta))
                    throw std::invalid_argument("airygauss: beta must be positive");
            } else if constexpr (std::is_same_v<T, SincState>) {
                if (!(s.b > 0.0) || !std::isfinite(s.b))
                    throw std::invalid_argument("sinc: b must be positive");
            } else if constexpr (std::is_same_v<T, BesselState>) {
                if (s.n < 0) throw std::invalid_argument("bessel: order must be >= 0");
            } else if constexpr (std::is_same_v<T, TabulatedState>) {
                if (!s.samples.all_finite())
                    throw std::invalid_argument("tabulated: samples must be finite");
            }
        },
        state);
}

cplx evaluate(const InitialState& state, double x) {
    return std::visit(
        [x](const auto& s) -> cplx {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AiryState>) {
                return {airy_ai(s.eps * x), 0.0};
            } else if constexpr (std::is_same_v<T, AiryGaussState>) {
                return {airy_ai(s.eps * x) * std::exp(-s.beta * x * x), 0.0};
            } else if constexpr (std::is_same_v<T, SincState>) {
                return {paper_sinc(s.b, x), 0.0};
            } else if constexpr (std::is_same_v<T, BesselState>) {
                return {bessel_jn_point(s.n, x), 0.0};
            } else {
                return interpolate_cubic(s.samples, x);
            }
        },
        state);
}

std::vector<cplx> sample_scaled(const InitialState& state, const Grid& grid, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("sample_scaled: s must be positive");
    std::vector<cplx> out(grid.n);
    if (const auto* bessel = std::get_if<BesselState>(&state)) {
        const auto vals = bessel_jn_grid(bessel->n, grid.x_min / s, grid.dx / s, grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) out[j] = {vals[j], 0.0};
        return out;
    }
    const std::size_t jobs = grid.n >= 32768 ? 0 : 1;
    detail::parallel_for(grid.n, jobs,
                         [&](std::size_t j) { out[j] = evaluate(state, grid.x(j) / s); });
    return out;
}

WaveField sample(const InitialState& state, const Grid& grid) {
    validate_state(state);
    return WaveField(grid, sample_scaled(state, grid, 1.0));
}

std::string describe(const InitialState& state) {
    char buf[96];
    return std::visit(
        [&](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AiryState>) {
                std::snprintf(buf, sizeof buf, "airy:%g", s.eps);
            } else if constexpr (std::is_same_v<T, AiryGaussState>) {
                std::snprintf(buf, sizeof buf, "airygauss:%g,%g", s.eps, s.beta);
            } else if constexpr (std::is_same_v<T, SincState>) {
                std::snprintf(buf, sizeof buf, "sinc:%g", s.b);
            } else if constexpr (std::is_same_v<T, BesselState>) {
                std::snprintf(buf, sizeof buf, "bessel:%d", s.n);
            } else {
                std::snprintf(buf, sizeof buf, "tabulated:%zu", s.samples.size());
            }
            return buf;
        },
        state);
}

InitialState parse_state(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view kind = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? "" : text.substr(colon + 1);
    InitialState state;
    if (kind == "airy") {
        state = AiryState{args.empty() ? 1.0 : parse_number(args, "eps")};
    } else if (kind == "airygauss") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos)
            throw std::invalid_argument("state spec: airygauss needs <eps>,<beta>");
        state = AiryGaussState{parse_number(args.substr(0, comma), "eps"),
                               parse_number(args.substr(comma + 1), "beta")};
    } else if (kind == "sinc") {
        state = SincState{args.empty() ? 1.0 : parse_number(args, "b")};
    } else if (kind == "bessel") {
        const double n = args.empty() ? 0.0 : parse_number(args, "n");
        if (n != std::floor(n)) throw std::invalid_argument("state spec: bessel order must be an integer");
        state = BesselState{static_cast<int>(n)};
    } else {
        throw std::invalid_argument("state spec: unknown kind '" + std::string(kind) +
                                    "' (expected airy|airygauss|sinc|bessel)");
    }
    validate_state(state);
    return state;
}

double spectral_halfwidth(const InitialState& state, double max_abs_x) {
    return std::visit(
        [max_abs_x](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AiryState>) {
                // local wavenumber of Ai(eps x) is |eps|^{3/2} sqrt(|x|) on the
                // oscillatory side
                const double e = std::abs(s.eps);
                return e * std::sqrt(e * max_abs_x) + 2.0;
            } else if constexpr (std::is_same_v<T, AiryGaussState>) {
                const double e = std::abs(s.eps);
                const double cut = std::sqrt(40.0 / s.beta);  // envelope < 1e-17 beyond
                const double reach = std::min(max_abs_x, cut);
                return e * std::sqrt(e * reach) + 2.0 * s.beta * reach + 2.0;
            } else if constexpr (std::is_same_v<T, SincState>) {
                return s.b + 1.0;
            } else if constexpr (std::is_same_v<T, BesselState>) {
                return 2.0;  // support of the integral representation is [-1, 1]
            } else {
                return s.samples.grid().nyquist();
            }
        },
        state);
}

double tail_amplitude(const InitialState& state, double r) {
    if (r <= 0.0) return 1.0;
    return std::visit(
        [r](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AiryState>) {
                const double e = std::abs(s.eps);
                if (e == 0.0) return 1.0;
                return std::pow(e * r, -0.25) / std::sqrt(std::numbers::pi);
            } else if constexpr (std::is_same_v<T, AiryGaussState>) {
                const double base = (std::abs(s.eps) == 0.0)
                                        ? 1.0
                                        : std::pow(std::abs(s.eps) * r, -0.25);
                return base * std::exp(-s.beta * r * r);
            } else if constexpr (std::is_same_v<T, SincState>) {
                return 2.0 / (s.b * r);
            } else if constexpr (std::is_same_v<T, BesselState>) {
                return std::sqrt(2.0 / (std::numbers::pi * r));
            } else {
                const Grid& g = s.samples.grid();
                return (r >= g.max_abs_x()) ? 0.0 : 1.0;
            }
        },
        state);
}

}  // namespace chirpwave
