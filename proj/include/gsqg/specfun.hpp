#pragma once

#include <vector>

#include "gsqg/types.hpp"

namespace gsqg::specfun {

/// Euler Gamma for real x away from the poles at 0, -1, -2, ...
/// Lanczos approximation with reflection for x < 0.5; relative accuracy
/// better than 1e-13 on |x| <= 10.
double gamma_fn(double x);

struct KernelConstants {
    double c_alpha;  ///< C_alpha = Gamma(a/2) / (2^{1-a} Gamma(1-a/2))
    double c_hat;    ///< alpha * C_alpha = 2^a Gamma(1+a/2) / Gamma(1-a/2)
};

/// valid for 0 < alpha < 2
KernelConstants kernel_constants(double alpha);

struct SpectrumTable {
    double alpha = 0.0;
    std::vector<double> values;  ///< values[n-1] = sigma_n, n = 1..n_max

    double sigma(int n) const { return values.at(static_cast<size_t>(n - 1)); }
};

/// Eigenvalue table of the linearized self-interaction, tabulated form:
/// Gamma-ratio expression for 1 < alpha < 2 (sigma_1 = 0), harmonic-type sum
/// (2/pi) sum_{i<=n} 1/(2i-1) at alpha = 1. The two branches differ by the
/// constant 2/pi at alpha = 1; see self_mode_multiplier for the operator value.
SpectrumTable sigma_spectrum(double alpha, int n_max);

/// Fourier multiplier of the shape linearization: the boundary functional maps
/// a cos(nx) perturbation of patch j to gamma_j * M_n * sin(nx) with
/// M_n = -n sigma_n for alpha in (1,2) and M_n = -n (sigma_n - 2/pi) at alpha = 1.
double self_mode_multiplier(double alpha, int n);

/// S_alpha = sum_{k=1}^{m-1} (2 sin(k pi / m))^{-alpha}
double polygon_sum(int m, double alpha);

/// T_alpha^{+-}(d, vartheta) =
///   sum_{k=0}^{m-1} [1 - d^{+-1} cos((2k +- vartheta) pi/m)]
///                 / [1 + d^{+-2} - 2 d^{+-1} cos((2k +- vartheta) pi/m)]^{alpha/2+1}
/// sign = +1 or -1. Throws ConfigError when a denominator vanishes
/// (coincident rings).
double interaction_sum(double d, int vartheta, int m, double alpha, int sign);

/// Differences c_k - c_0 of the Fourier cosine coefficients of the periodic
/// kernel (2|sin(t/2)|)^{-alpha}; finite for all alpha in (0,2) although the
/// individual c_k diverge for alpha >= 1. Used to build product-integration
/// weights for the singular self-interaction quadrature. Index k = 0..k_max.
std::vector<double> kernel_mode_offsets(double alpha, int k_max);

}  // namespace gsqg::specfun
