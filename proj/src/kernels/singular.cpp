#include "gsqg/kernels/singular.hpp"

#include <cmath>

#include "gsqg/specfun.hpp"

namespace gsqg::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> singular_weights(double alpha, int n, SelfQuadrature mode) {
    std::vector<double> w(static_cast<size_t>(n), 0.0);
    if (mode == SelfQuadrature::trapezoid) {
        for (int s = 1; s < n; ++s)
            w[s] = (2.0 * kPi / n) * std::pow(2.0 * std::abs(std::sin(kPi * s / n)), -alpha);
        return w;
    }
    const std::vector<double> cd = specfun::kernel_mode_offsets(alpha, n / 2);
    for (int s = 0; s < n; ++s) {
        double acc = 0.0;
        for (int k = 1; k <= n / 2; ++k) {
            const double fac = (2 * k == n) ? 1.0 : 2.0;
            acc += fac * cd[k] * std::cos(2.0 * kPi * k * s / n);
        }
        w[s] = (2.0 * kPi / n) * acc;
    }
    return w;
}

}  // namespace gsqg::kernels
