#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "gsqg/equilibria.hpp"
#include "gsqg/kernels/singular.hpp"
#include "gsqg/types.hpp"
#include "gsqg/util/fourier.hpp"

namespace gsqg::contour {

/// Cosine-series patch profile f_j(x) = sum_{n>=2} a_n cos(nx), with modes
/// restricted to multiples of symmetry_fold (m for the central patch).
struct PatchShape {
    int index = 0;
    int symmetry_fold = 1;
    std::vector<double> coeffs;  ///< coeffs[n] = a_n; coeffs[0] = coeffs[1] = 0

    static PatchShape zero(int index, int fold, int n_max);

    int max_mode() const { return static_cast<int>(coeffs.size()) - 1; }
    double get(int n) const;
    void set(int n, double value);  ///< throws ConfigError on a forbidden mode
    /// modes this patch is allowed to carry, in increasing order (n >= 2)
    std::vector<int> permitted_modes() const;
};

/// Solver unknown: patch profiles and lambda = (Omega, gamma2) at a given eps.
struct VState {
    double epsilon = 0.0;
    std::array<PatchShape, 3> shapes;
    double omega = 0.0;
    double gamma2 = 0.0;

    static VState trivial(const equilibria::ConfigParams& params, int n_max);
    /// shape prefactor eps |eps|^alpha b_j^{1+alpha}
    double delta(const equilibria::ConfigParams& params, int j) const;
};

/// Sine (and diagnostic cosine) spectra of the boundary residual per family.
struct ResidualSpectrum {
    std::array<std::vector<double>, 3> sine;    ///< [j][n], n = 0..n_max
    std::array<std::vector<double>, 3> cosine;  ///< [j][n]

    double max_sine() const;
    double max_cosine() const;
};

/// Samples of one replica boundary (equispaced in the angle parameter).
std::vector<Vec2> sample_boundary(const VState& state, const equilibria::ConfigParams& params,
                                  int family, int replica, int nodes);

/// CSV rows `patch,replica,x,px,py` for every replica, 17 significant digits.
std::string boundary_csv(const VState& state, const equilibria::ConfigParams& params, int nodes);

/// Evaluator of the desingularized boundary functional F^alpha(eps, f, lambda).
/// Normalization: at (0, 0, lambda) the n = 1 sine coefficients of the ring
/// residuals reproduce the point-vortex balance
///   A_1^j = Omega d_j - C_hat/(2 d_j^{1+alpha}) [gamma0 + gamma_j S/2 + gamma_{3-j} T^{(j)}],
/// and the Gateaux derivative in a cos(nx) shape direction on patch j is
/// gamma_j * M_n * sin(nx) with M_n from specfun::self_mode_multiplier.
class BoundaryFunctional {
public:
    BoundaryFunctional(const equilibria::ConfigParams& params, int n_max, int n_quad,
                       kernels::SelfQuadrature quad = kernels::SelfQuadrature::spectral);

    ResidualSpectrum evaluate(const VState& state) const;
    /// pointwise residual samples on the quadrature grid, per family
    std::array<std::vector<double>, 3> residual_samples(const VState& state) const;

    int n_max() const { return n_max_; }
    int n_quad() const { return n_quad_; }
    const equilibria::ConfigParams& params() const { return params_; }

    /// startup-measured floor ||F(0,0,lambda*)||_inf, and the derived
    /// quadrature tolerance tau_q = max(10 * floor, 1e-12)
    double floor_measured() const { return floor_; }
    double tau_q() const { return tau_q_; }

private:
    equilibria::ConfigParams params_;
    int n_max_;
    int n_quad_;
    kernels::SelfQuadrature quad_mode_;
    util::FourierGrid grid_;
    std::vector<double> weights_;  // singular weights by offset
    std::vector<double> s2_;       // 4 sin^2(pi s / n) by offset
    double floor_ = 0.0;
    double tau_q_ = 0.0;

    void eps_zero_samples(const VState& state, std::array<std::vector<double>, 3>& out) const;
    void finite_eps_samples(const VState& state, std::array<std::vector<double>, 3>& out) const;
    void check_disjoint(const VState& state) const;
};

/// gamma_j * n * sigma_n, the tabulated linearization diagonal
double linearized_diag(double alpha, double gamma_j, int n);

/// 2x2 lambda-block [[d1, -C_hat T+/(2 d1^{1+a})], [d2, -C_hat S/(4 d2^{1+a})]]
util::Matrix jacobian_lambda(const equilibria::ConfigParams& params);

/// signed curvature of the patch boundary at `nodes` equispaced parameters
std::vector<double> curvature(const PatchShape& shape, double epsilon, double b, double alpha,
                              int nodes);

/// patch area (exact for the truncated series)
double patch_area(const PatchShape& shape, double epsilon, double b, double alpha);

}  // namespace gsqg::contour
