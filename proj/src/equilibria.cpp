#include "gsqg/equilibria.hpp"

#include <cmath>
#include <limits>

#include "gsqg/specfun.hpp"

namespace gsqg::equilibria {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ConfigParams::validate() const {
    if (!(alpha >= 1.0 && alpha < 2.0)) throw ConfigError("params: alpha must lie in [1,2)");
    if (m < 2) throw ConfigError("params: m must be >= 2");
    if (vartheta != 0 && vartheta != 1) throw ConfigError("params: vartheta must be 0 or 1");
    if (!(b0 > 0.0 && b1 > 0.0 && b2 > 0.0)) throw ConfigError("params: b_j must be positive");
    if (!(d1 > 0.0 && d2 > d1)) throw ConfigError("params: need d2 > d1 > 0");
    if (gamma0 == 0.0 || gamma1 == 0.0) throw ConfigError("params: gamma0, gamma1 must be nonzero");
}

double ConfigParams::replica_angle(int j, int k) const {
    if (j == 0) return 0.0;
    if (j == 1) return 2.0 * k * kPi / m;
    return (2.0 * k + vartheta) * kPi / m;
}

Configuration build_configuration(const ConfigParams& params, double gamma2) {
    params.validate();
    Configuration config;
    config.positions.push_back({0.0, 0.0});
    config.strengths.push_back(params.gamma0);
    for (int j = 1; j <= 2; ++j)
        for (int k = 0; k < params.m; ++k) {
            Rotation q(params.replica_angle(j, k));
            config.positions.push_back(q(Vec2{params.d(j), 0.0}));
            config.strengths.push_back(j == 1 ? params.gamma1 : gamma2);
        }
    return config;
}

std::array<double, 2> point_vortex_residual(double omega, double gamma2,
                                            const ConfigParams& params) {
    params.validate();
    const double a = params.alpha;
    const double chat = specfun::kernel_constants(a).c_hat;
    const double s = specfun::polygon_sum(params.m, a);
    const double d = params.radius_ratio();
    const double tp = specfun::interaction_sum(d, params.vartheta, params.m, a, +1);
    const double tm = specfun::interaction_sum(d, params.vartheta, params.m, a, -1);
    const double p1 =
        omega * params.d1 -
        chat / (2.0 * std::pow(params.d1, 1.0 + a)) *
            (params.gamma0 + params.gamma1 * s / 2.0 + gamma2 * tp);
    const double p2 =
        omega * params.d2 -
        chat / (2.0 * std::pow(params.d2, 1.0 + a)) *
            (params.gamma0 + params.gamma1 * tm + gamma2 * s / 2.0);
    return {p1, p2};
}

Equilibrium solve_equilibrium(const ConfigParams& params) {
    params.validate();
    const double a = params.alpha;
    const double chat = specfun::kernel_constants(a).c_hat;
    Equilibrium eq;
    eq.s_alpha = specfun::polygon_sum(params.m, a);
    const double d = params.radius_ratio();
    eq.t_plus = specfun::interaction_sum(d, params.vartheta, params.m, a, +1);
    eq.t_minus = specfun::interaction_sum(d, params.vartheta, params.m, a, -1);

    const double dpow = std::pow(d, a + 2.0);
    const double den = eq.s_alpha / 2.0 - eq.t_plus * dpow;
    const double den_scale =
        std::max({1.0, std::abs(eq.s_alpha) / 2.0, std::abs(eq.t_plus) * dpow});
    if (std::abs(den) < 1e-10 * den_scale)
        throw ConfigError("solve_equilibrium: degenerate configuration, S/2 - T+ d^{alpha+2} vanishes");

    eq.nondeg_lhs = (dpow - 1.0) * params.gamma0 +
                    (eq.s_alpha / 2.0 * dpow - eq.t_minus) * params.gamma1;
    eq.gamma2_star = eq.nondeg_lhs / den;
    eq.omega_star = chat / (2.0 * std::pow(params.d1, a + 2.0)) *
                    (params.gamma0 + params.gamma1 * eq.s_alpha / 2.0 + eq.gamma2_star * eq.t_plus);
    eq.det_jacobian =
        -chat * params.d1 / (2.0 * std::pow(params.d2, a + 1.0)) * den;
    eq.residuals = point_vortex_residual(eq.omega_star, eq.gamma2_star, params);
    return eq;
}

NondegeneracyReport nondegeneracy_report(const ConfigParams& params, const Equilibrium& eq) {
    NondegeneracyReport rep;
    rep.nondeg_lhs = eq.nondeg_lhs;
    rep.det_jacobian = eq.det_jacobian;
    const double a = params.alpha;
    const double dpow = std::pow(params.radius_ratio(), a + 2.0);
    const double scale_nd =
        std::max({1.0, std::abs((dpow - 1.0) * params.gamma0),
                  std::abs((eq.s_alpha / 2.0 * dpow - eq.t_minus) * params.gamma1)});
    const double chat = specfun::kernel_constants(a).c_hat;
    const double pref = chat * params.d1 / (2.0 * std::pow(params.d2, a + 1.0));
    const double scale_det =
        std::max({1.0, pref * std::abs(eq.s_alpha) / 2.0, pref * std::abs(eq.t_plus) * dpow});
    rep.nondeg_nonzero = std::abs(rep.nondeg_lhs) > 1e-10 * scale_nd;
    rep.det_nonzero = std::abs(rep.det_jacobian) > 1e-10 * scale_det;
    return rep;
}

Vec2 induced_velocity(Vec2 point, const Configuration& config, double alpha) {
    const double chat = specfun::kernel_constants(alpha).c_hat;
    Vec2 v{0.0, 0.0};
    for (size_t i = 0; i < config.positions.size(); ++i) {
        const Vec2 r = point - config.positions[i];
        const double rn = r.norm();
        if (rn < 1e-10) throw GeometryError("induced_velocity: evaluation at a vortex location");
        v += (0.5 * chat * config.strengths[i] * std::pow(rn, -(alpha + 2.0))) * r.perp();
    }
    return v;
}

namespace {

void vortex_rhs(const std::vector<Vec2>& z, const std::vector<double>& gam, double alpha,
                double chat, std::vector<Vec2>& out) {
    const size_t n = z.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 v{0.0, 0.0};
        for (size_t l = 0; l < n; ++l) {
            if (l == i) continue;
            const Vec2 r = z[i] - z[l];
            const double r2 = r.norm2();
            v += (0.5 * chat * gam[l] * std::pow(r2, -(alpha + 2.0) / 2.0)) * r.perp();
        }
        out[i] = v;
    }
}

}  // namespace

double rigid_rotation_check(const Configuration& config, double omega, double alpha,
                            double t_final, double dt) {
    if (!(dt > 0.0)) throw ConfigError("rigid_rotation_check: dt must be positive");
    if (t_final < 0.0) throw ConfigError("rigid_rotation_check: t_final must be >= 0");
    const double chat = specfun::kernel_constants(alpha).c_hat;
    const size_t n = config.positions.size();

    double min_dist2 = std::numeric_limits<double>::max();
    for (size_t i = 0; i < n; ++i)
        for (size_t l = i + 1; l < n; ++l)
            min_dist2 = std::min(min_dist2, (config.positions[i] - config.positions[l]).norm2());
    const double collision2 = 1e-12 * min_dist2;

    std::vector<Vec2> z = config.positions;
    std::vector<Vec2> k1(n), k2(n), k3(n), k4(n), tmp(n);
    const int steps = static_cast<int>(std::ceil(t_final / dt));
    double dev = 0.0;
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double h = std::min(dt, t_final - t);
        vortex_rhs(z, config.strengths, alpha, chat, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + (0.5 * h) * k1[i];
        vortex_rhs(tmp, config.strengths, alpha, chat, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + (0.5 * h) * k2[i];
        vortex_rhs(tmp, config.strengths, alpha, chat, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
        vortex_rhs(tmp, config.strengths, alpha, chat, k4);
        for (size_t i = 0; i < n; ++i)
            z[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;

        Rotation q(omega * t);
        for (size_t i = 0; i < n; ++i)
            dev = std::max(dev, (z[i] - q(config.positions[i])).norm());
        for (size_t i = 0; i < n; ++i)
            for (size_t l = i + 1; l < n; ++l)
                if ((z[i] - z[l]).norm2() < collision2)
                    throw GeometryError("rigid_rotation_check: vortex collision at t = " +
                                        std::to_string(t));
    }
    return dev;
}

}  // namespace gsqg::equilibria
