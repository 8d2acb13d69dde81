#include "gsqg/specfun.hpp"

#include <cmath>

namespace gsqg::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, 9 terms
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_positive(double x) {
    // x >= 0.5
    const double z = x - 1.0;
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * s;
}

bool near_nonpositive_integer(double x) {
    if (x > 0.5) return false;
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) < 1e-13;
}

}  // namespace

double gamma_fn(double x) {
    if (near_nonpositive_integer(x))
        throw ConfigError("gamma_fn: pole at non-positive integer x = " + std::to_string(x));
    if (x >= 0.5) return gamma_positive(x);
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
}

KernelConstants kernel_constants(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ConfigError("kernel_constants: alpha must lie in (0,2)");
    const double a = alpha;
    const double c = gamma_fn(a / 2.0) / (std::pow(2.0, 1.0 - a) * gamma_fn(1.0 - a / 2.0));
    return {c, a * c};
}

SpectrumTable sigma_spectrum(double alpha, int n_max) {
    if (n_max < 2) throw ConfigError("sigma_spectrum: n_max must be >= 2");
    if (!(alpha >= 1.0 && alpha < 2.0))
        throw ConfigError("sigma_spectrum: alpha must lie in [1,2)");
    SpectrumTable table;
    table.alpha = alpha;
    table.values.resize(static_cast<size_t>(n_max));
    if (alpha == 1.0) {
        double s = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            s += 1.0 / (2.0 * n - 1.0);
            table.values[n - 1] = (2.0 / kPi) * s;
        }
        return table;
    }
    const double a = alpha / 2.0;
    const double pref =
        std::pow(2.0, alpha - 1.0) * gamma_fn(1.0 - alpha) / std::pow(gamma_fn(1.0 - a), 2);
    // g_n = Gamma(n + a) / Gamma(n + 1 - a) by recurrence from g_1
    double g1 = gamma_fn(1.0 + a) / gamma_fn(2.0 - a);
    double gn = g1;
    table.values[0] = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        gn *= (n - 1 + a) / (n - a);
        table.values[n - 1] = pref * (g1 - gn);
    }
    return table;
}

double self_mode_multiplier(double alpha, int n) {
    if (n < 1) throw ConfigError("self_mode_multiplier: n must be >= 1");
    if (alpha == 1.0) {
        double s = 0.0;
        for (int i = 2; i <= n; ++i) s += 1.0 / (2.0 * i - 1.0);
        return -n * (2.0 / kPi) * s;
    }
    const SpectrumTable t = sigma_spectrum(alpha, n < 2 ? 2 : n);
    return -n * t.sigma(n);
}

double polygon_sum(int m, double alpha) {
    if (m < 2) throw ConfigError("polygon_sum: m must be >= 2");
    double s = 0.0;
    for (int k = 1; k < m; ++k) s += std::pow(2.0 * std::sin(k * kPi / m), -alpha);
    return s;
}

double interaction_sum(double d, int vartheta, int m, double alpha, int sign) {
    if (d <= 0.0) throw ConfigError("interaction_sum: d must be positive");
    if (m < 2) throw ConfigError("interaction_sum: m must be >= 2");
    if (vartheta != 0 && vartheta != 1) throw ConfigError("interaction_sum: vartheta must be 0 or 1");
    if (sign != 1 && sign != -1) throw ConfigError("interaction_sum: sign must be +-1");
    const double dd = sign > 0 ? d : 1.0 / d;
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
        const double c = std::cos((2.0 * k + sign * vartheta) * kPi / m);
        const double den = 1.0 + dd * dd - 2.0 * dd * c;
        if (den < 1e-12) throw ConfigError("interaction_sum: rings intersect (coincident vortices)");
        s += (1.0 - dd * c) / std::pow(den, alpha / 2.0 + 1.0);
    }
    return s;
}

std::vector<double> kernel_mode_offsets(double alpha, int k_max) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw ConfigError("kernel_mode_offsets: alpha must lie in (0,2)");
    std::vector<double> out(static_cast<size_t>(k_max) + 1, 0.0);
    if (alpha == 1.0) {
        double s = 0.0;
        for (int k = 1; k <= k_max; ++k) {
            s += 1.0 / (2.0 * k - 1.0);
            out[k] = -(2.0 / kPi) * s;
        }
        return out;
    }
    const double a = alpha / 2.0;
    const double kappa = gamma_fn(1.0 - alpha) / (gamma_fn(a) * gamma_fn(1.0 - a));
    const double g0 = gamma_fn(a) / gamma_fn(1.0 - a);
    double gk = g0;
    for (int k = 1; k <= k_max; ++k) {
        gk *= (k - 1 + a) / (k - a);
        out[k] = kappa * (gk - g0);
    }
    return out;
}

}  // namespace gsqg::specfun
