#include "chirpwave/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chirpwave/errors.hpp"

namespace chirpwave {

void QuadratureSpec::validate() const {
    if (panel_count < 16) throw std::invalid_argument("QuadratureSpec: panel_count >= 16 required");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
    if (max_panels < panel_count)
        throw std::invalid_argument("QuadratureSpec: max_panels < panel_count");
}

namespace {

std::size_t ceil_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// 16-node Gauss-Legendre rule on [-1, 1]; nodes from Newton iteration on
// P_16 so no transcribed tables are involved.
struct GL16 {
    std::array<double, 16> node{};
    std::array<double, 16> weight{};
    GL16() {
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            node[static_cast<std::size_t>(i)] = -x;
            node[static_cast<std::size_t>(n - 1 - i)] = x;
            weight[static_cast<std::size_t>(i)] = w;
            weight[static_cast<std::size_t>(n - 1 - i)] = w;
        }
    }
};

const GL16& gl16() {
    static const GL16 rule;
    return rule;
}

}  // namespace

std::complex<double> integrate_periodic(const std::function<std::complex<double>(double)>& f,
                                        const QuadratureSpec& spec) {
    spec.validate();
    const double a = -std::numbers::pi, b = std::numbers::pi;
    std::size_t n = ceil_pow2(spec.panel_count);

    // Trapezoid == midpoint-free uniform sum for a periodic integrand; the
    // doubling step reuses previous nodes and adds the midpoints.
    double h = (b - a) / static_cast<double>(n);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) sum += f(a + h * static_cast<double>(j));
    std::complex<double> prev = sum * h;

    while (n < spec.max_panels) {
        std::complex<double> mids{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) mids += f(a + h * (static_cast<double>(j) + 0.5));
        n *= 2;
        h *= 0.5;
        sum += mids;
        const std::complex<double> cur = sum * h;
        if (std::abs(cur - prev) < spec.abs_tol) return cur;
        prev = cur;
    }
    throw quadrature_error("integrate_periodic: no convergence within " +
                           std::to_string(spec.max_panels) + " panels");
}

std::complex<double> integrate_finite(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(b > a)) throw std::invalid_argument("integrate_finite: requires b > a");
    const auto& rule = gl16();

    auto estimate = [&](std::size_t panels) {
        const double h = (b - a) / static_cast<double>(panels);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t p = 0; p < panels; ++p) {
            const double lo = a + h * static_cast<double>(p);
            const double mid = lo + 0.5 * h;
            std::complex<double> local{0.0, 0.0};
            for (std::size_t q = 0; q < rule.node.size(); ++q)
                local += rule.weight[q] * f(mid + 0.5 * h * rule.node[q]);
            acc += local * (0.5 * h);
        }
        return acc;
    };

    // GL panels converge so fast that starting near panel_count/16 and
    // doubling keeps the cost close to one converged pass.
    std::size_t panels = std::max<std::size_t>(1, ceil_pow2(spec.panel_count) / 16);
    std::complex<double> prev = estimate(panels);
    while (panels < spec.max_panels) {
        panels *= 2;
        const std::complex<double> cur = estimate(panels);
        if (std::abs(cur - prev) < spec.abs_tol) return cur;
        prev = cur;
    }
    throw quadrature_error("integrate_finite: no convergence within " +
                           std::to_string(spec.max_panels) + " panels");
}

}  // namespace chirpwave
