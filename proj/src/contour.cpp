#include "gsqg/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>

#include "gsqg/specfun.hpp"

namespace gsqg::contour {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

PatchShape PatchShape::zero(int index, int fold, int n_max) {
    PatchShape s;
    s.index = index;
    s.symmetry_fold = fold;
    s.coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
    return s;
}

double PatchShape::get(int n) const {
    if (n < 0 || n > max_mode()) return 0.0;
    return coeffs[static_cast<size_t>(n)];
}

void PatchShape::set(int n, double value) {
    if (n < 2 || n > max_mode())
        throw ConfigError("PatchShape: mode out of range, n = " + std::to_string(n));
    if (n % symmetry_fold != 0)
        throw ConfigError("PatchShape: mode " + std::to_string(n) + " violates " +
                          std::to_string(symmetry_fold) + "-fold symmetry");
    coeffs[static_cast<size_t>(n)] = value;
}

std::vector<int> PatchShape::permitted_modes() const {
    std::vector<int> modes;
    for (int n = 2; n <= max_mode(); ++n)
        if (n % symmetry_fold == 0) modes.push_back(n);
    return modes;
}

VState VState::trivial(const equilibria::ConfigParams& params, int n_max) {
    const equilibria::Equilibrium eq = equilibria::solve_equilibrium(params);
    VState s;
    s.epsilon = 0.0;
    s.shapes = {PatchShape::zero(0, params.m, n_max), PatchShape::zero(1, 1, n_max),
                PatchShape::zero(2, 1, n_max)};
    s.omega = eq.omega_star;
    s.gamma2 = eq.gamma2_star;
    return s;
}

double VState::delta(const equilibria::ConfigParams& params, int j) const {
    return epsilon * std::pow(std::abs(epsilon), params.alpha) *
           std::pow(params.b(j), 1.0 + params.alpha);
}

double ResidualSpectrum::max_sine() const {
    double v = 0.0;
    for (const auto& s : sine)
        for (double x : s) v = std::max(v, std::abs(x));
    return v;
}

double ResidualSpectrum::max_cosine() const {
    double v = 0.0;
    for (const auto& c : cosine)
        for (double x : c) v = std::max(v, std::abs(x));
    return v;
}

std::vector<Vec2> sample_boundary(const VState& state, const equilibria::ConfigParams& params,
                                  int family, int replica, int nodes) {
    if (nodes < 8) throw ConfigError("sample_boundary: need at least 8 nodes");
    const double delta = state.delta(params, family);
    const double eb = state.epsilon * params.b(family);
    const Rotation q(params.replica_angle(family, replica));
    std::vector<Vec2> pts(static_cast<size_t>(nodes));
    for (int l = 0; l < nodes; ++l) {
        const double x = 2.0 * kPi * l / nodes;
        double f = 0.0;
        for (int n = 2; n <= state.shapes[family].max_mode(); ++n)
            f += state.shapes[family].get(n) * std::cos(n * x);
        const double r = 1.0 + delta * f;
        if (r <= 0.1)
            throw GeometryError("sample_boundary: radius fell below the validity bound");
        pts[l] = q(Vec2{params.d(family) + eb * r * std::cos(x), eb * r * std::sin(x)});
    }
    return pts;
}

std::string boundary_csv(const VState& state, const equilibria::ConfigParams& params, int nodes) {
    std::string out = "patch,replica,x,px,py\n";
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < params.replicas(j); ++k) {
            const std::vector<Vec2> pts = sample_boundary(state, params, j, k, nodes);
            for (int l = 0; l < nodes; ++l) {
                const double x = 2.0 * kPi * l / nodes;
                out += std::to_string(j) + "," + std::to_string(k) + "," + fmt17(x) + "," +
                       fmt17(pts[l].x) + "," + fmt17(pts[l].y) + "\n";
            }
        }
    return out;
}

BoundaryFunctional::BoundaryFunctional(const equilibria::ConfigParams& params, int n_max,
                                       int n_quad, kernels::SelfQuadrature quad)
    : params_(params), n_max_(n_max), n_quad_(n_quad), quad_mode_(quad), grid_(n_quad) {
    params_.validate();
    if (n_quad < 4 * n_max)
        throw ConfigError("BoundaryFunctional: n_quad must be at least 4 * n_max");
    weights_ = kernels::singular_weights(params.alpha, n_quad, quad);
    s2_.assign(static_cast<size_t>(n_quad), 0.0);
    for (int s = 1; s < n_quad; ++s) {
        const double v = 2.0 * std::sin(kPi * s / n_quad);
        s2_[s] = v * v;
    }
    s2_[0] = 1.0;  // diagonal excluded from sums; keep the ratio finite

    // startup floor: the known-zero case (0, 0, lambda*)
    VState zero = VState::trivial(params_, n_max_);
    std::array<std::vector<double>, 3> samples;
    eps_zero_samples(zero, samples);
    double floor = 0.0;
    for (const auto& s : samples)
        for (double v : s) floor = std::max(floor, std::abs(v));
    floor_ = floor;
    tau_q_ = std::max(10.0 * floor_, 1e-12);
}

void BoundaryFunctional::eps_zero_samples(const VState& state,
                                          std::array<std::vector<double>, 3>& out) const {
    const int nq = n_quad_;
    const double a = params_.alpha;
    const double c_alpha = specfun::kernel_constants(a).c_alpha;
    const std::array<double, 2> pv =
        equilibria::point_vortex_residual(state.omega, state.gamma2, params_);
    const double gamma[3] = {params_.gamma0, params_.gamma1, state.gamma2};

    for (int j = 0; j < 3; ++j) {
        out[j].assign(static_cast<size_t>(nq), 0.0);
        // raw profile samples (the extended functional at eps = 0 acts on f itself)
        std::vector<double> f(static_cast<size_t>(nq), 0.0), fp(static_cast<size_t>(nq), 0.0);
        bool nonzero = false;
        for (int n = 2; n <= state.shapes[j].max_mode(); ++n) {
            const double an = state.shapes[j].get(n);
            if (an == 0.0) continue;
            nonzero = true;
            for (int l = 0; l < nq; ++l) {
                f[l] += an * grid_.cosk(n, l);
                fp[l] -= an * n * grid_.sink(n, l);
            }
        }
        const double pj = (j == 0) ? 0.0 : pv[j - 1];
        for (int i = 0; i < nq; ++i) out[j][i] = pj * grid_.sink(1, i);
        if (!nonzero) continue;
        for (int i = 0; i < nq; ++i) {
            double acc = 0.0;
            for (int l = 0; l < nq; ++l) {
                if (l == i) continue;
                const double t = grid_.node(i) - grid_.node(l);
                const double phi = -(1.0 - a / 2.0) * (f[i] + f[l]) * std::sin(t) +
                                   (fp[i] - fp[l]) * std::cos(t);
                acc += phi * weights_[(l - i + nq) % nq];
            }
            out[j][i] += gamma[j] * c_alpha * acc / (2.0 * kPi);
        }
    }
}

void BoundaryFunctional::check_disjoint(const VState& state) const {
    // conservative bound first; fine check only if bounding circles overlap
    double maxr[3];
    for (int j = 0; j < 3; ++j) {
        double m = 0.0;
        for (int n = 2; n <= state.shapes[j].max_mode(); ++n)
            m += std::abs(state.shapes[j].get(n));
        maxr[j] = std::abs(state.epsilon) * params_.b(j) *
                  (1.0 + std::abs(state.delta(params_, j)) * m);
    }
    struct Rep { int j, k; };
    std::vector<Rep> reps;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < params_.replicas(j); ++k) reps.push_back({j, k});
    for (size_t p = 0; p < reps.size(); ++p)
        for (size_t q = p + 1; q < reps.size(); ++q) {
            const Rotation qp(params_.replica_angle(reps[p].j, reps[p].k));
            const Rotation qq(params_.replica_angle(reps[q].j, reps[q].k));
            const Vec2 cp = qp(Vec2{params_.d(reps[p].j), 0.0});
            const Vec2 cq = qq(Vec2{params_.d(reps[q].j), 0.0});
            const double gap = (cp - cq).norm() - maxr[reps[p].j] - maxr[reps[q].j];
            if (gap > 1e-6) continue;
            const auto bp = sample_boundary(state, params_, reps[p].j, reps[p].k, n_quad_);
            const auto bq = sample_boundary(state, params_, reps[q].j, reps[q].k, n_quad_);
            auto inside = [](const Vec2& pt, const std::vector<Vec2>& poly) {
                bool in = false;
                for (size_t i = 0, l = poly.size() - 1; i < poly.size(); l = i++) {
                    if ((poly[i].y > pt.y) == (poly[l].y > pt.y)) continue;
                    const double xc = poly[l].x + (pt.y - poly[l].y) / (poly[i].y - poly[l].y) *
                                                      (poly[i].x - poly[l].x);
                    if (pt.x < xc) in = !in;
                }
                return in;
            };
            double mind = std::numeric_limits<double>::max();
            for (const Vec2& u : bp)
                for (const Vec2& v : bq) mind = std::min(mind, (u - v).norm());
            if (mind < 1e-8 || inside(bq.front(), bp) || inside(bp.front(), bq))
                throw GeometryError("boundary functional: patch boundaries overlap");
        }
}

void BoundaryFunctional::finite_eps_samples(const VState& state,
                                            std::array<std::vector<double>, 3>& out) const {
    const int nq = n_quad_;
    const double a = params_.alpha;
    const double eps = state.epsilon;
    const double c_alpha = specfun::kernel_constants(a).c_alpha;
    const double gamma[3] = {params_.gamma0, params_.gamma1, state.gamma2};
    const double omega = state.omega;

    check_disjoint(state);

    // per-family scaled profile samples: fx = delta * f (carried directly), fp = fx'
    std::array<std::vector<double>, 3> fx, fp, radius;
    for (int j = 0; j < 3; ++j) {
        fx[j].assign(static_cast<size_t>(nq), 0.0);
        fp[j].assign(static_cast<size_t>(nq), 0.0);
        const double delta = state.delta(params_, j);
        for (int n = 2; n <= state.shapes[j].max_mode(); ++n) {
            const double an = delta * state.shapes[j].get(n);
            if (an == 0.0) continue;
            for (int l = 0; l < nq; ++l) {
                fx[j][l] += an * grid_.cosk(n, l);
                fp[j][l] -= an * n * grid_.sink(n, l);
            }
        }
        radius[j].assign(static_cast<size_t>(nq), 0.0);
        for (int l = 0; l < nq; ++l) {
            radius[j][l] = 1.0 + fx[j][l];
            if (radius[j][l] < 0.1)
                throw GeometryError("boundary functional: radius fell below the validity bound");
        }
    }

    // offsets U and tangents T of every replica in the common frame
    struct Curve {
        Vec2 center;
        std::vector<double> ux, uy, tx, ty;
        int family;
    };
    std::vector<Curve> curves;
    for (int j = 0; j < 3; ++j) {
        const double eb = eps * params_.b(j);
        std::vector<double> ux(static_cast<size_t>(nq)), uy(static_cast<size_t>(nq)),
            tx(static_cast<size_t>(nq)), ty(static_cast<size_t>(nq));
        for (int l = 0; l < nq; ++l) {
            const double c = grid_.cosk(1, l), s = grid_.sink(1, l);
            ux[l] = eb * radius[j][l] * c;
            uy[l] = eb * radius[j][l] * s;
            tx[l] = eb * (fp[j][l] * c - radius[j][l] * s);
            ty[l] = eb * (fp[j][l] * s + radius[j][l] * c);
        }
        for (int k = 0; k < params_.replicas(j); ++k) {
            const Rotation q(params_.replica_angle(j, k));
            Curve cv;
            cv.center = q(Vec2{params_.d(j), 0.0});
            cv.family = j;
            cv.ux.resize(static_cast<size_t>(nq));
            cv.uy.resize(static_cast<size_t>(nq));
            cv.tx.resize(static_cast<size_t>(nq));
            cv.ty.resize(static_cast<size_t>(nq));
            for (int l = 0; l < nq; ++l) {
                const Vec2 u = q(Vec2{ux[l], uy[l]});
                const Vec2 t = q(Vec2{tx[l], ty[l]});
                cv.ux[l] = u.x;
                cv.uy[l] = u.y;
                cv.tx[l] = t.x;
                cv.ty[l] = t.y;
            }
            curves.push_back(std::move(cv));
        }
    }

    int rep0[3] = {0, 1, 1 + params_.m};  // index of replica 0 per family

    for (int j = 0; j < 3; ++j) {
        out[j].assign(static_cast<size_t>(nq), 0.0);
        const double eb = eps * params_.b(j);
        const double dj = params_.d(j);
        const std::vector<double>& f = fx[j];
        const std::vector<double>& g = fp[j];
        const std::vector<double>& rr = radius[j];

        // Omega part: -Omega [ d_j (R' cos - R sin) + eps b_j R R' ]
        for (int i = 0; i < nq; ++i)
            out[j][i] = -omega * (dj * (g[i] * grid_.cosk(1, i) - rr[i] * grid_.sink(1, i)) +
                                  eb * rr[i] * g[i]);

        // self part, flat-circle integrand removed analytically
        const double self_scale = gamma[j] * c_alpha * (eps >= 0.0 ? 1.0 : -1.0) *
                                  std::pow(std::abs(eps) * params_.b(j), -1.0 - a) / (2.0 * kPi);
        for (int i = 0; i < nq; ++i) {
            double acc = 0.0;
            for (int l = 0; l < nq; ++l) {
                if (l == i) continue;
                const int off = (l - i + nq) % nq;
                const double t = grid_.node(i) - grid_.node(l);
                const double st = std::sin(t), ct = std::cos(t);
                const double ntil = -(f[i] + f[l] + f[i] * f[l] + g[i] * g[l]) * st +
                                    (g[i] - g[l] + g[i] * f[l] - g[l] * f[i]) * ct;
                const double dfd = (f[i] - f[l]) * (f[i] - f[l]) / s2_[off];
                const double h = f[i] + f[l] + f[i] * f[l] + dfd;
                const double gq = std::expm1(-(a / 2.0) * std::log1p(h));
                acc += (ntil * (1.0 + gq) - st * gq) * weights_[off];
            }
            out[j][i] += self_scale * acc;
        }

        // cross parts in centered q-form; the constant-kernel contribution is
        // dropped exactly (closed-curve tangent integral vanishes)
        const Curve& tgt = curves[static_cast<size_t>(rep0[j])];
        for (size_t src = 0; src < curves.size(); ++src) {
            if (static_cast<int>(src) == rep0[j]) continue;
            const Curve& sc = curves[src];
            const Vec2 dc = tgt.center - sc.center;
            const double d2c = dc.norm2();
            const double amp = gamma[sc.family] /
                               std::pow(eps * params_.b(sc.family), 2);
            const double pref =
                amp * c_alpha / nq * std::pow(d2c, -a / 2.0) / (eps * params_.b(j));
            for (int i = 0; i < nq; ++i) {
                const double tpx = -tgt.ty[i], tpy = tgt.tx[i];  // w'^perp
                double acc = 0.0;
                for (int l = 0; l < nq; ++l) {
                    const double dux = tgt.ux[i] - sc.ux[l];
                    const double duy = tgt.uy[i] - sc.uy[l];
                    const double svar = (2.0 * (dux * dc.x + duy * dc.y) + dux * dux + duy * duy) / d2c;
                    const double q = std::expm1(-(a / 2.0) * std::log1p(svar));
                    acc += (sc.tx[l] * tpx + sc.ty[l] * tpy) * q;
                }
                out[j][i] += pref * acc;
            }
        }
    }

    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < nq; ++i)
            if (!std::isfinite(out[j][i]))
                throw NumericalError("boundary functional: non-finite residual at family " +
                                     std::to_string(j) + ", node " + std::to_string(i));
}

std::array<std::vector<double>, 3> BoundaryFunctional::residual_samples(const VState& state) const {
    std::array<std::vector<double>, 3> samples;
    if (state.epsilon == 0.0)
        eps_zero_samples(state, samples);
    else
        finite_eps_samples(state, samples);
    return samples;
}

ResidualSpectrum BoundaryFunctional::evaluate(const VState& state) const {
    const std::array<std::vector<double>, 3> samples = residual_samples(state);
    ResidualSpectrum spec;
    for (int j = 0; j < 3; ++j) {
        const util::FourierGrid::Coeffs c = grid_.analyze(samples[j]);
        spec.sine[j].assign(static_cast<size_t>(n_max_) + 1, 0.0);
        spec.cosine[j].assign(static_cast<size_t>(n_max_) + 1, 0.0);
        for (int n = 0; n <= n_max_; ++n) {
            spec.sine[j][n] = n == 0 ? 0.0 : c.sine[n];
            spec.cosine[j][n] = c.cosine[n];
        }
    }
    return spec;
}

double linearized_diag(double alpha, double gamma_j, int n) {
    if (n < 2) throw ConfigError("linearized_diag: n must be >= 2");
    return gamma_j * n * specfun::sigma_spectrum(alpha, n).sigma(n);
}

util::Matrix jacobian_lambda(const equilibria::ConfigParams& params) {
    params.validate();
    const double a = params.alpha;
    const double chat = specfun::kernel_constants(a).c_hat;
    const double d = params.radius_ratio();
    const double tp = specfun::interaction_sum(d, params.vartheta, params.m, a, +1);
    const double s = specfun::polygon_sum(params.m, a);
    util::Matrix jac(2, 2);
    jac(0, 0) = params.d1;
    jac(0, 1) = -chat / 2.0 * tp / std::pow(params.d1, 1.0 + a);
    jac(1, 0) = params.d2;
    jac(1, 1) = -chat / 2.0 * (s / 2.0) / std::pow(params.d2, 1.0 + a);
    return jac;
}

std::vector<double> curvature(const PatchShape& shape, double epsilon, double b, double alpha,
                              int nodes) {
    const double delta = epsilon * std::pow(std::abs(epsilon), alpha) * std::pow(b, 1.0 + alpha);
    std::vector<double> kappa(static_cast<size_t>(nodes), 0.0);
    for (int i = 0; i < nodes; ++i) {
        const double x = 2.0 * kPi * i / nodes;
        double r = 1.0, rp = 0.0, rpp = 0.0;
        for (int n = 2; n <= shape.max_mode(); ++n) {
            const double an = shape.get(n);
            if (an == 0.0) continue;
            r += delta * an * std::cos(n * x);
            rp -= delta * an * n * std::sin(n * x);
            rpp -= delta * an * n * n * std::cos(n * x);
        }
        const double den = r * r + rp * rp;
        if (den <= 0.0) throw GeometryError("curvature: degenerate boundary point");
        kappa[i] = (r * r + 2.0 * rp * rp - r * rpp) / std::pow(den, 1.5);
    }
    return kappa;
}

double patch_area(const PatchShape& shape, double epsilon, double b, double alpha) {
    const double delta = epsilon * std::pow(std::abs(epsilon), alpha) * std::pow(b, 1.0 + alpha);
    double sum2 = 0.0;
    for (int n = 2; n <= shape.max_mode(); ++n) sum2 += shape.get(n) * shape.get(n);
    return kPi * (epsilon * b) * (epsilon * b) * (1.0 + 0.5 * delta * delta * sum2);
}

}  // namespace gsqg::contour
