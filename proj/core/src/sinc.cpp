#include "chirpwave/sinc.hpp"

#include <cmath>
#include <stdexcept>

namespace chirpwave {

double paper_sinc(double b, double x) {
    if (!(b > 0.0)) throw std::invalid_argument("paper_sinc: b must be positive");
    const double u = b * x;
    if (u == 0.0) return 2.0;
    return 2.0 * std::sin(u) / u;
}

double sinc_second_moment(double b, double y) {
    if (!(b > 0.0)) throw std::invalid_argument("sinc_second_moment: b must be positive");
    const double u = b * y;
    if (std::abs(u) < 0.5) {
        // 2 sum_m (-1)^m y^{2m} b^{2m+3} / ((2m)! (2m+3)); the closed form
        // cancels catastrophically as y -> 0.
        double term = b * b * b;  // m = 0 numerator before /3
        double sum = term / 3.0;
        const double q = -(y * b) * (y * b);
        for (int m = 1; m <= 12; ++m) {
            term *= q / ((2.0 * m) * (2.0 * m - 1.0));
            sum += term / (2.0 * m + 3.0);
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return 2.0 * sum;
    }
    const double s = std::sin(u);
    const double c = std::cos(u);
    return 2.0 * b * b * s / y + 4.0 * b * c / (y * y) - 4.0 * s / (y * y * y);
}

}  // namespace chirpwave
