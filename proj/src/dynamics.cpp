#include "gsqg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "gsqg/kernels/pairwise.hpp"
#include "gsqg/specfun.hpp"
#include "gsqg/util/fourier.hpp"
#include "gsqg/util/parallel.hpp"

namespace gsqg::dynamics {

namespace {
constexpr double kPi = 3.14159265358979323846;

const util::FourierGrid& grid_for(int n) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<util::FourierGrid>> cache;
    const std::lock_guard<std::mutex> lock(mu);
    for (const auto& g : cache)
        if (g->size() == n) return *g;
    cache.push_back(std::make_unique<util::FourierGrid>(n));
    return *cache.back();
}

}  // namespace

CurveEnsemble CurveEnsemble::from_vstate(const contour::VState& state,
                                         const equilibria::ConfigParams& params, int nodes) {
    if (state.epsilon == 0.0)
        throw ConfigError("CurveEnsemble: point-limit state has no patch boundaries");
    CurveEnsemble ens;
    const double gamma[3] = {params.gamma0, params.gamma1, state.gamma2};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < params.replicas(j); ++k) {
            const std::vector<Vec2> pts = contour::sample_boundary(state, params, j, k, nodes);
            Curve c;
            c.family = j;
            c.replica = k;
            c.amplitude = gamma[j] / std::pow(state.epsilon * params.b(j), 2);
            c.x.resize(pts.size());
            c.y.resize(pts.size());
            for (size_t l = 0; l < pts.size(); ++l) {
                c.x[l] = pts[l].x;
                c.y[l] = pts[l].y;
            }
            ens.curves.push_back(std::move(c));
        }
    return ens;
}

double curve_area(const CurveEnsemble::Curve& c) {
    const int n = static_cast<int>(c.x.size());
    const util::FourierGrid& grid = grid_for(n);
    const std::vector<double> dx = grid.derivative(c.x);
    const std::vector<double> dy = grid.derivative(c.y);
    double a = 0.0;
    for (int l = 0; l < n; ++l) a += c.x[l] * dy[l] - c.y[l] * dx[l];
    return 0.5 * a * (2.0 * kPi / n);
}

Vec2 curve_centroid(const CurveEnsemble::Curve& c) {
    const int n = static_cast<int>(c.x.size());
    const util::FourierGrid& grid = grid_for(n);
    const std::vector<double> dx = grid.derivative(c.x);
    const std::vector<double> dy = grid.derivative(c.y);
    const double a = curve_area(c);
    double cx = 0.0, cy = 0.0;
    for (int l = 0; l < n; ++l) {
        cx += 0.5 * c.x[l] * c.x[l] * dy[l];
        cy -= 0.5 * c.y[l] * c.y[l] * dx[l];
    }
    return {cx * (2.0 * kPi / n) / a, cy * (2.0 * kPi / n) / a};
}

double angular_impulse(const CurveEnsemble& ensemble) {
    double total = 0.0;
    for (const auto& c : ensemble.curves) {
        const int n = static_cast<int>(c.x.size());
        const util::FourierGrid& grid = grid_for(n);
        const std::vector<double> dx = grid.derivative(c.x);
        const std::vector<double> dy = grid.derivative(c.y);
        double m2 = 0.0;
        for (int l = 0; l < n; ++l)
            m2 += (c.x[l] * c.x[l] + c.y[l] * c.y[l]) * (c.x[l] * dy[l] - c.y[l] * dx[l]);
        total += c.amplitude * 0.25 * m2 * (2.0 * kPi / n);
    }
    return total;
}

namespace {

struct Workspace {
    int n = 0;
    double alpha = 0.0;
    double c_alpha = 0.0;
    std::vector<double> weights2;  // singular weights doubled by offset
    std::vector<double> s2x2;      // 4 sin^2(pi s / n) doubled by offset

    Workspace(double a, int nodes, kernels::SelfQuadrature quad) : n(nodes), alpha(a) {
        c_alpha = specfun::kernel_constants(a).c_alpha;
        const std::vector<double> w = kernels::singular_weights(a, n, quad);
        weights2.resize(static_cast<size_t>(2 * n));
        s2x2.resize(static_cast<size_t>(2 * n));
        for (int s = 0; s < 2 * n; ++s) {
            weights2[s] = w[s % n];
            const double v = 2.0 * std::sin(kPi * (s % n) / n);
            s2x2[s] = (s % n == 0) ? 1.0 : v * v;
        }
    }
};

void velocities_into(const CurveEnsemble& ens, const Workspace& ws,
                     const std::vector<std::vector<double>>& tx,
                     const std::vector<std::vector<double>>& ty,
                     std::vector<std::vector<Vec2>>& out) {
    const int n = ws.n;
    const double neg_ahalf = -ws.alpha / 2.0;
    const size_t nc = ens.curves.size();
    for (size_t ic = 0; ic < nc; ++ic) out[ic].assign(static_cast<size_t>(n), Vec2{});
    util::parallel_for(static_cast<int>(nc) * n, [&](int begin, int end) {
      for (int flat = begin; flat < end; ++flat) {
        const size_t ic = static_cast<size_t>(flat / n);
        const int i = flat % n;
        const auto& tgt = ens.curves[ic];
        {
            double vx = 0.0, vy = 0.0;
            for (size_t sc = 0; sc < nc; ++sc) {
                const auto& src = ens.curves[sc];
                const double scale_cross = src.amplitude * ws.c_alpha / n;
                if (sc != ic) {
                    kernels::biot_savart_row(tgt.x[i], tgt.y[i], src.x.data(), src.y.data(),
                                             tx[sc].data(), ty[sc].data(), 0, n, neg_ahalf,
                                             scale_cross, &vx, &vy);
                } else {
                    const double scale_self = src.amplitude * ws.c_alpha / (2.0 * kPi);
                    const double* w = ws.weights2.data() + (n - i);
                    const double* s2 = ws.s2x2.data() + (n - i);
                    kernels::self_term_row(tgt.x[i], tgt.y[i], tx[sc][i], ty[sc][i], src.x.data(),
                                           src.y.data(), tx[sc].data(), ty[sc].data(), s2, w, 0, i,
                                           neg_ahalf, scale_self, &vx, &vy);
                    kernels::self_term_row(tgt.x[i], tgt.y[i], tx[sc][i], ty[sc][i], src.x.data(),
                                           src.y.data(), tx[sc].data(), ty[sc].data(), s2, w, i + 1,
                                           n, neg_ahalf, scale_self, &vx, &vy);
                }
            }
            out[ic][i] = {vx, vy};
        }
      }
    });
}

std::vector<std::vector<Vec2>> compute_velocity(const CurveEnsemble& ens, const Workspace& ws) {
    const int n = ws.n;
    const util::FourierGrid& grid = grid_for(n);
    const size_t nc = ens.curves.size();
    std::vector<std::vector<double>> tx(nc), ty(nc);
    for (size_t c = 0; c < nc; ++c) {
        tx[c] = grid.derivative(ens.curves[c].x);
        ty[c] = grid.derivative(ens.curves[c].y);
    }
    std::vector<std::vector<Vec2>> out(nc);
    velocities_into(ens, ws, tx, ty, out);
    return out;
}

void respace_curve(CurveEnsemble::Curve& c, const util::FourierGrid& grid) {
    const int n = grid.size();
    for (int pass = 0; pass < 3; ++pass) {
        const util::FourierGrid::Coeffs cx = grid.analyze(c.x);
        const util::FourierGrid::Coeffs cy = grid.analyze(c.y);
        const std::vector<double> dx = grid.derivative(c.x);
        const std::vector<double> dy = grid.derivative(c.y);
        std::vector<double> speed(static_cast<size_t>(n));
        for (int l = 0; l < n; ++l) speed[l] = std::hypot(dx[l], dy[l]);
        // cumulative arclength at nodes (periodic trapezoid)
        std::vector<double> s(static_cast<size_t>(n) + 1, 0.0);
        const double h = 2.0 * kPi / n;
        for (int l = 0; l < n; ++l) {
            const double sp_next = speed[(l + 1) % n];
            s[l + 1] = s[l] + 0.5 * (speed[l] + sp_next) * h;
        }
        const double total = s[n];
        bool uniform = true;
        for (int l = 0; l <= n && uniform; ++l)
            if (std::abs(s[l] - total * l / n) > 1e-12 * total) uniform = false;
        if (uniform) return;
        // invert s(tau) at the uniform arclength targets
        std::vector<double> tau(static_cast<size_t>(n), 0.0);
        int seg = 0;
        for (int l = 0; l < n; ++l) {
            const double starget = total * l / n;
            while (seg + 1 <= n && s[seg + 1] < starget) ++seg;
            const double frac = (starget - s[seg]) / (s[seg + 1] - s[seg]);
            tau[l] = (seg + frac) * h;
        }
        for (int l = 0; l < n; ++l) {
            c.x[l] = grid.interpolate(cx, tau[l]);
            c.y[l] = grid.interpolate(cy, tau[l]);
        }
    }
}

void check_intersections(const CurveEnsemble& ens, double t) {
    const size_t nc = ens.curves.size();
    std::vector<Vec2> centers(nc);
    std::vector<double> radii(nc, 0.0);
    for (size_t c = 0; c < nc; ++c) {
        centers[c] = curve_centroid(ens.curves[c]);
        for (size_t l = 0; l < ens.curves[c].x.size(); ++l)
            radii[c] = std::max(radii[c], (Vec2{ens.curves[c].x[l], ens.curves[c].y[l]} -
                                           centers[c])
                                              .norm());
    }
    for (size_t p = 0; p < nc; ++p)
        for (size_t q = p + 1; q < nc; ++q) {
            if ((centers[p] - centers[q]).norm() > radii[p] + radii[q] + 1e-9) continue;
            double mind = std::numeric_limits<double>::max();
            for (size_t i = 0; i < ens.curves[p].x.size(); ++i)
                for (size_t l = 0; l < ens.curves[q].x.size(); ++l) {
                    const double dx = ens.curves[p].x[i] - ens.curves[q].x[l];
                    const double dy = ens.curves[p].y[i] - ens.curves[q].y[l];
                    mind = std::min(mind, dx * dx + dy * dy);
                }
            if (mind < 1e-16)
                throw GeometryError("evolve: curves intersect at t = " + std::to_string(t));
        }
}

}  // namespace

std::vector<std::vector<Vec2>> cde_velocity(const CurveEnsemble& ensemble, double alpha,
                                            const VelocityOptions& opts) {
    if (ensemble.curves.empty()) throw ConfigError("cde_velocity: empty ensemble");
    Workspace ws(alpha, ensemble.nodes(), opts.quad);
    return compute_velocity(ensemble, ws);
}

EvolveResult evolve(const CurveEnsemble& ensemble, double alpha, double t_final,
                    const EvolveOptions& opts) {
    if (ensemble.curves.empty()) throw ConfigError("evolve: empty ensemble");
    const int n = ensemble.nodes();
    for (const auto& c : ensemble.curves)
        if (static_cast<int>(c.x.size()) != n || static_cast<int>(c.y.size()) != n)
            throw ConfigError("evolve: node counts differ across curves");
    Workspace ws(alpha, n, opts.quad);
    const util::FourierGrid& grid = grid_for(n);

    EvolveResult result;
    result.state = ensemble;
    for (const auto& c : ensemble.curves) result.initial_areas.push_back(curve_area(c));
    result.impulse_initial = angular_impulse(ensemble);

    // stability bound: shape-mode rate |amp| * r^{-alpha} * |M_{n/2}|
    double lam_max = 0.0;
    for (const auto& c : ensemble.curves) {
        const Vec2 cen = curve_centroid(c);
        double r = 0.0;
        for (size_t l = 0; l < c.x.size(); ++l)
            r += (Vec2{c.x[l], c.y[l]} - cen).norm();
        r /= static_cast<double>(c.x.size());
        lam_max = std::max(lam_max, std::abs(c.amplitude) * std::pow(r, -alpha) *
                                        std::abs(specfun::self_mode_multiplier(alpha, n / 2)));
    }
    // CFL-like guard data
    const std::vector<std::vector<Vec2>> v0 = compute_velocity(ensemble, ws);
    double vmax = 0.0;
    for (const auto& vc : v0)
        for (const Vec2& v : vc) vmax = std::max(vmax, v.norm());
    double min_spacing = std::numeric_limits<double>::max();
    for (const auto& c : ensemble.curves)
        for (size_t l = 0; l < c.x.size(); ++l) {
            const size_t r = (l + 1) % c.x.size();
            min_spacing = std::min(
                min_spacing, std::hypot(c.x[r] - c.x[l], c.y[r] - c.y[l]));
        }

    double dt = opts.dt;
    if (dt <= 0.0) {
        dt = 1.4 / lam_max;
        if (vmax > 0.0) dt = std::min(dt, 0.2 * min_spacing / vmax);
    } else if (dt * vmax > 0.2 * min_spacing) {
        throw ConfigError("evolve: dt violates the advection guard; use a smaller dt");
    }
    if (t_final <= 0.0) {
        result.dt = dt;
        result.final_areas = result.initial_areas;
        result.impulse_final = result.impulse_initial;
        return result;
    }
    const int steps = static_cast<int>(std::ceil(t_final / dt));
    dt = t_final / steps;
    result.dt = dt;
    result.steps = steps;
    if (opts.record_areas) result.area_history.assign(ensemble.curves.size(), {});

    CurveEnsemble cur = ensemble;
    CurveEnsemble tmp = ensemble;
    std::vector<std::vector<Vec2>> k1, k2, k3, k4;
    const size_t nc = cur.curves.size();
    auto shifted = [&](const CurveEnsemble& base, const std::vector<std::vector<Vec2>>& k,
                       double factor, CurveEnsemble& dst) {
        for (size_t c = 0; c < nc; ++c)
            for (int l = 0; l < n; ++l) {
                dst.curves[c].x[l] = base.curves[c].x[l] + factor * k[c][l].x;
                dst.curves[c].y[l] = base.curves[c].y[l] + factor * k[c][l].y;
            }
    };
    for (int s = 0; s < steps; ++s) {
        k1 = compute_velocity(cur, ws);
        shifted(cur, k1, 0.5 * dt, tmp);
        k2 = compute_velocity(tmp, ws);
        shifted(cur, k2, 0.5 * dt, tmp);
        k3 = compute_velocity(tmp, ws);
        shifted(cur, k3, dt, tmp);
        k4 = compute_velocity(tmp, ws);
        for (size_t c = 0; c < nc; ++c)
            for (int l = 0; l < n; ++l) {
                cur.curves[c].x[l] +=
                    dt / 6.0 * (k1[c][l].x + 2.0 * k2[c][l].x + 2.0 * k3[c][l].x + k4[c][l].x);
                cur.curves[c].y[l] +=
                    dt / 6.0 * (k1[c][l].y + 2.0 * k2[c][l].y + 2.0 * k3[c][l].y + k4[c][l].y);
            }
        if (opts.respace_interval > 0 && (s + 1) % opts.respace_interval == 0)
            for (auto& c : cur.curves) respace_curve(c, grid);
        if (opts.record_areas)
            for (size_t c = 0; c < nc; ++c)
                result.area_history[c].push_back(curve_area(cur.curves[c]));
        if (opts.check_interval > 0 && (s + 1) % opts.check_interval == 0)
            check_intersections(cur, (s + 1) * dt);
        if (opts.snapshot_count > 0) {
            const int stride = std::max(1, steps / opts.snapshot_count);
            if ((s + 1) % stride == 0 || s + 1 == steps)
                result.snapshots.emplace_back((s + 1) * dt, cur);
        }
    }
    result.state = cur;
    for (const auto& c : cur.curves) result.final_areas.push_back(curve_area(c));
    for (size_t c = 0; c < nc; ++c)
        result.max_area_drift =
            std::max(result.max_area_drift,
                     std::abs(result.final_areas[c] / result.initial_areas[c] - 1.0));
    result.impulse_final = angular_impulse(cur);
    return result;
}

namespace {

double closest_point_rms(const CurveEnsemble& initial, const CurveEnsemble& final_state,
                         double phi) {
    // distance from final nodes to the rotated, spectrally upsampled initial curves
    const int n = initial.nodes();
    const int fine = 8 * n;
    const util::FourierGrid& grid = grid_for(n);
    const Rotation q(phi);
    double ss = 0.0;
    size_t count = 0;
    for (size_t c = 0; c < initial.curves.size(); ++c) {
        const util::FourierGrid::Coeffs cx = grid.analyze(initial.curves[c].x);
        const util::FourierGrid::Coeffs cy = grid.analyze(initial.curves[c].y);
        std::vector<Vec2> poly(static_cast<size_t>(fine));
        for (int l = 0; l < fine; ++l) {
            const double tau = 2.0 * kPi * l / fine;
            poly[l] = q(Vec2{grid.interpolate(cx, tau), grid.interpolate(cy, tau)});
        }
        for (int i = 0; i < n; ++i) {
            const Vec2 p{final_state.curves[c].x[i], final_state.curves[c].y[i]};
            double best = std::numeric_limits<double>::max();
            for (int l = 0; l < fine; ++l) {
                const Vec2 a = poly[l];
                const Vec2 b = poly[(l + 1) % fine];
                const Vec2 ab = b - a;
                double tproj = (p - a).dot(ab) / ab.norm2();
                tproj = std::clamp(tproj, 0.0, 1.0);
                best = std::min(best, (p - (a + tproj * ab)).norm2());
            }
            ss += best;
            ++count;
        }
    }
    return std::sqrt(ss / count);
}

}  // namespace

RotationFit rotation_fit(const CurveEnsemble& initial, const CurveEnsemble& final_state, double t,
                         Matching matching) {
    if (t == 0.0) throw ConfigError("rotation_fit: t must be nonzero");
    if (initial.curves.size() != final_state.curves.size() ||
        initial.nodes() != final_state.nodes())
        throw ConfigError("rotation_fit: ensembles do not match");
    // closed-form node-to-node minimizer
    double cross = 0.0, dot = 0.0;
    for (size_t c = 0; c < initial.curves.size(); ++c)
        for (size_t l = 0; l < initial.curves[c].x.size(); ++l) {
            const double ax = initial.curves[c].x[l], ay = initial.curves[c].y[l];
            const double bx = final_state.curves[c].x[l], by = final_state.curves[c].y[l];
            cross += ax * by - ay * bx;
            dot += ax * bx + ay * by;
        }
    double phi = std::atan2(cross, dot);
    RotationFit fit;
    if (matching == Matching::nodes) {
        double ss = 0.0;
        size_t count = 0;
        const Rotation q(phi);
        for (size_t c = 0; c < initial.curves.size(); ++c)
            for (size_t l = 0; l < initial.curves[c].x.size(); ++l) {
                const Vec2 a = q(Vec2{initial.curves[c].x[l], initial.curves[c].y[l]});
                const Vec2 b{final_state.curves[c].x[l], final_state.curves[c].y[l]};
                ss += (a - b).norm2();
                ++count;
            }
        fit.omega_fit = phi / t;
        fit.deviation = std::sqrt(ss / count);
        return fit;
    }
    // refine with the parametrization-aware objective (golden section around phi)
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = phi - 0.2, hi = phi + 0.2;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = closest_point_rms(initial, final_state, x1);
    double f2 = closest_point_rms(initial, final_state, x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = closest_point_rms(initial, final_state, x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = closest_point_rms(initial, final_state, x2);
        }
    }
    fit.omega_fit = 0.5 * (lo + hi) / t;
    fit.deviation = closest_point_rms(initial, final_state, 0.5 * (lo + hi));
    return fit;
}

double centroid_rotation_rate(const CurveEnsemble& initial, const CurveEnsemble& final_state,
                              double t) {
    if (t == 0.0) throw ConfigError("centroid_rotation_rate: t must be nonzero");
    double acc = 0.0;
    int count = 0;
    for (size_t c = 0; c < initial.curves.size(); ++c) {
        if (initial.curves[c].family == 0) continue;  // central centroid stays at the origin
        const Vec2 a = curve_centroid(initial.curves[c]);
        const Vec2 b = curve_centroid(final_state.curves[c]);
        double dphi = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
        dphi = std::remainder(dphi, 2.0 * kPi);
        acc += dphi / t;
        ++count;
    }
    if (count == 0) throw ConfigError("centroid_rotation_rate: no ring curves present");
    return acc / count;
}

}  // namespace gsqg::dynamics
