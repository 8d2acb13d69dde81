#pragma once

#include <vector>

#include "gsqg/contour.hpp"
#include "gsqg/equilibria.hpp"
#include "gsqg/kernels/singular.hpp"
#include "gsqg/types.hpp"

namespace gsqg::dynamics {

/// Closed boundary curves of all patch replicas plus per-patch uniform
/// vorticity amplitudes gamma_j / (eps b_j)^2.
struct CurveEnsemble {
    struct Curve {
        std::vector<double> x, y;  ///< node positions, uniform parameter grid
        int family = 0;
        int replica = 0;
        double amplitude = 0.0;
    };
    std::vector<Curve> curves;

    int nodes() const { return curves.empty() ? 0 : static_cast<int>(curves.front().x.size()); }

    static CurveEnsemble from_vstate(const contour::VState& state,
                                     const equilibria::ConfigParams& params, int nodes);
};

/// spectral (trapezoid-of-derivative) area of a closed curve
double curve_area(const CurveEnsemble::Curve& c);
Vec2 curve_centroid(const CurveEnsemble::Curve& c);
/// sum over patches of amplitude * second moment (angular impulse of the scalar)
double angular_impulse(const CurveEnsemble& ensemble);

struct VelocityOptions {
    kernels::SelfQuadrature quad = kernels::SelfQuadrature::spectral;
};

/// Node velocities: cross-curve contributions by the plain contour integral,
/// the self-curve by the tangentially subtracted integrand.
std::vector<std::vector<Vec2>> cde_velocity(const CurveEnsemble& ensemble, double alpha,
                                            const VelocityOptions& opts = {});

struct EvolveOptions {
    double dt = 0.0;            ///< 0 selects the stability-bound step automatically
    int respace_interval = 100; ///< uniform-arclength reparametrization cadence (0 = never)
    int check_interval = 25;    ///< cadence of the intersection guard
    kernels::SelfQuadrature quad = kernels::SelfQuadrature::spectral;
    bool record_areas = true;
    int snapshot_count = 0;  ///< > 0: keep roughly this many intermediate states
};

struct EvolveResult {
    CurveEnsemble state;
    double dt = 0.0;
    int steps = 0;
    double max_area_drift = 0.0;  ///< max over curves of |A_final/A_initial - 1|
    std::vector<double> initial_areas, final_areas;
    std::vector<std::vector<double>> area_history;  ///< [curve][step] when recorded
    std::vector<std::pair<double, CurveEnsemble>> snapshots;
    double impulse_initial = 0.0, impulse_final = 0.0;
};

/// classical RK4 on the full node velocities
EvolveResult evolve(const CurveEnsemble& ensemble, double alpha, double t_final,
                    const EvolveOptions& opts = {});

enum class Matching { nodes, closest_point };

struct RotationFit {
    double omega_fit = 0.0;
    double deviation = 0.0;  ///< rms residual of the fit
};

/// Angle phi minimizing the summed squared mismatch between Q_phi(initial) and
/// final; `nodes` matches node-to-node (closed form), `closest_point` measures
/// node-to-curve distances (parametrization-aware).
RotationFit rotation_fit(const CurveEnsemble& initial, const CurveEnsemble& final_state, double t,
                         Matching matching = Matching::nodes);

/// rotation rate from the swept centroid angles of the ring replicas
double centroid_rotation_rate(const CurveEnsemble& initial, const CurveEnsemble& final_state,
                              double t);

}  // namespace gsqg::dynamics
