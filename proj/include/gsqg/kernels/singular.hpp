#pragma once

#include <vector>

namespace gsqg::kernels {

enum class SelfQuadrature {
    spectral,   ///< product-integration weights from the kernel's Fourier multipliers
    trapezoid,  ///< plain periodic trapezoid with the singular node skipped
};

/// Quadrature weights for the singular periodic integral
///   I(x_i) = \oint phi(tau) (2|sin((x_i - tau)/2)|)^{-alpha} dtau
/// on the n-point uniform grid, for integrands with phi(x_i) = 0:
///   I(x_i) ~= sum_l phi(x_l) W[(l - i) mod n].
/// The spectral weights integrate trigonometric polynomials up to degree n/2
/// exactly; the trapezoid weights are the plain skipped-node rule with
/// O(h^{2-alpha}) worst-case error.
std::vector<double> singular_weights(double alpha, int n, SelfQuadrature mode);

}  // namespace gsqg::kernels
