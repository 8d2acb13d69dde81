#pragma once

#include <array>
#include <vector>

#include "gsqg/types.hpp"

namespace gsqg::equilibria {

/// Physical and geometric parameters of the nested-polygon configuration:
/// a central patch at the origin plus two rings of m patches at radii
/// d1 < d2, aligned (vartheta = 0) or staggered (vartheta = 1).
struct ConfigParams {
    double alpha = 1.5;
    int m = 5;
    int vartheta = 1;
    double b0 = 1.0, b1 = 1.0, b2 = 1.0;
    double d1 = 1.0, d2 = 1.5;
    double gamma0 = 1.0, gamma1 = 1.0;

    void validate() const;

    double b(int j) const { return j == 0 ? b0 : (j == 1 ? b1 : b2); }
    double d(int j) const { return j == 0 ? 0.0 : (j == 1 ? d1 : d2); }
    double radius_ratio() const { return d2 / d1; }
    int replicas(int j) const { return j == 0 ? 1 : m; }
    /// rotation angle of replica k of family j
    double replica_angle(int j, int k) const;
};

/// Point-vortex snapshot: 2m+1 positions and strengths. A vortex of strength
/// gamma induces azimuthal speed C_hat*gamma / (2 r^{1+alpha}) at distance r,
/// counterclockwise for gamma > 0.
struct Configuration {
    std::vector<Vec2> positions;
    std::vector<double> strengths;
};

struct Equilibrium {
    double omega_star = 0.0;
    double gamma2_star = 0.0;
    double s_alpha = 0.0;
    double t_plus = 0.0;
    double t_minus = 0.0;
    double det_jacobian = 0.0;
    double nondeg_lhs = 0.0;
    std::array<double, 2> residuals{0.0, 0.0};
};

struct NondegeneracyReport {
    double nondeg_lhs = 0.0;
    double det_jacobian = 0.0;
    bool nondeg_nonzero = false;
    bool det_nonzero = false;
};

/// vortex positions (z) and strengths (gamma0, gamma1 x m, gamma2 x m)
Configuration build_configuration(const ConfigParams& params, double gamma2);

/// P_j = Omega d_j - C_hat/(2 d_j^{1+alpha}) [gamma0 + gamma_j S/2 + gamma_{3-j} T^{(j)}],
/// with T^{(1)} = T^+(d, vartheta) and T^{(2)} = T^-(d, vartheta).
std::array<double, 2> point_vortex_residual(double omega, double gamma2,
                                            const ConfigParams& params);

/// closed-form solution of P_1 = P_2 = 0; throws ConfigError when the
/// gamma2 denominator S/2 - T^+ d^{alpha+2} degenerates
Equilibrium solve_equilibrium(const ConfigParams& params);

NondegeneracyReport nondegeneracy_report(const ConfigParams& params, const Equilibrium& eq);

/// velocity induced at a point by all vortices; throws GeometryError when the
/// point coincides with a vortex (distance < 1e-10)
Vec2 induced_velocity(Vec2 point, const Configuration& config, double alpha);

/// RK4-integrate the 2m+1 vortex system over [0, t_final] and return the
/// maximum over steps and vortices of |z_i(t) - Q_{omega t} z_i(0)|.
/// Aborts with GeometryError on near collision.
double rigid_rotation_check(const Configuration& config, double omega, double alpha,
                            double t_final, double dt);

}  // namespace gsqg::equilibria
