#include "gsqg/solver.hpp"

#include <cmath>

#include "gsqg/specfun.hpp"

namespace gsqg::solver {

namespace {
constexpr double kPi = 3.14159265358979323846;

/// least-squares slope of y against x, plus rms residual
std::pair<double, double> fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double icept = my - slope * mx;
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - slope * x[i] - icept;
        rss += r * r;
    }
    return {slope, std::sqrt(rss / n)};
}

}  // namespace

VStateSolver::VStateSolver(const equilibria::ConfigParams& params, const SolveOptions& opts)
    : params_(params), opts_(opts), functional_(params, opts.n_modes, opts.n_quad, opts.quad) {
    if (opts.tol < 10.0 * functional_.tau_q())
        throw ConfigError("SolveOptions: tol must be at least 10x the quadrature floor tau_q");
    const contour::VState trivial = contour::VState::trivial(params_, opts_.n_modes);
    for (int j = 0; j < 3; ++j)
        for (int n : trivial.shapes[j].permitted_modes()) layout_.emplace_back(j, n);
}

std::vector<double> VStateSolver::pack(const contour::VState& state) const {
    std::vector<double> u(layout_.size() + 2, 0.0);
    for (size_t i = 0; i < layout_.size(); ++i)
        u[i] = state.shapes[layout_[i].first].get(layout_[i].second);
    u[layout_.size()] = state.omega;
    u[layout_.size() + 1] = state.gamma2;
    return u;
}

contour::VState VStateSolver::unpack(double eps, const std::vector<double>& u) const {
    contour::VState s;
    s.epsilon = eps;
    s.shapes = {contour::PatchShape::zero(0, params_.m, opts_.n_modes),
                contour::PatchShape::zero(1, 1, opts_.n_modes),
                contour::PatchShape::zero(2, 1, opts_.n_modes)};
    for (size_t i = 0; i < layout_.size(); ++i)
        s.shapes[layout_[i].first].set(layout_[i].second, u[i]);
    s.omega = u[layout_.size()];
    s.gamma2 = u[layout_.size() + 1];
    return s;
}

std::vector<double> VStateSolver::residual_vector(const contour::VState& state) const {
    const contour::ResidualSpectrum spec = functional_.evaluate(state);
    std::vector<double> r(layout_.size() + 2, 0.0);
    for (size_t i = 0; i < layout_.size(); ++i)
        r[i] = spec.sine[layout_[i].first][layout_[i].second];
    r[layout_.size()] = spec.sine[1][1];
    r[layout_.size() + 1] = spec.sine[2][1];
    return r;
}

util::Matrix VStateSolver::analytic_jacobian(double gamma2) const {
    const int n = unknown_count();
    util::Matrix jac(n, n);
    const double gamma[3] = {params_.gamma0, params_.gamma1, gamma2};
    for (size_t i = 0; i < layout_.size(); ++i)
        jac(static_cast<int>(i), static_cast<int>(i)) =
            gamma[layout_[i].first] *
            specfun::self_mode_multiplier(params_.alpha, layout_[i].second);
    const util::Matrix lam = contour::jacobian_lambda(params_);
    const int base = static_cast<int>(layout_.size());
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) jac(base + r, base + c) = lam(r, c);
    return jac;
}

util::Matrix VStateSolver::fd_jacobian(const contour::VState& state) const {
    const int n = unknown_count();
    util::Matrix jac(n, n);
    std::vector<double> u = pack(state);
    for (int c = 0; c < n; ++c) {
        const double h = 1e-6 * std::max(1.0, std::abs(u[c]));
        std::vector<double> up = u, um = u;
        up[c] += h;
        um[c] -= h;
        const std::vector<double> rp = residual_vector(unpack(state.epsilon, up));
        const std::vector<double> rm = residual_vector(unpack(state.epsilon, um));
        for (int r = 0; r < n; ++r) jac(r, c) = (rp[r] - rm[r]) / (2.0 * h);
    }
    return jac;
}

util::Matrix VStateSolver::newton_jacobian(const contour::VState& state, double* condition) const {
    bool trivial = state.epsilon == 0.0;
    for (int j = 0; j < 3 && trivial; ++j)
        for (int n = 2; n <= state.shapes[j].max_mode() && trivial; ++n)
            if (state.shapes[j].get(n) != 0.0) trivial = false;
    util::Matrix jac = trivial ? analytic_jacobian(state.gamma2) : fd_jacobian(state);
    if (condition) *condition = jac.condition_1norm();
    return jac;
}

contour::VState VStateSolver::solve(double eps, const contour::VState* initial,
                                    NewtonReport* report) const {
    NewtonReport rep;
    contour::VState base = contour::VState::trivial(params_, opts_.n_modes);
    std::vector<double> u = initial ? pack(*initial) : pack(base);

    if (eps == 0.0 && !initial) {
        // the trivial state solves the system exactly
        const std::vector<double> r = residual_vector(base);
        double rn = 0.0;
        for (double v : r) rn = std::max(rn, std::abs(v));
        rep.converged = rn <= opts_.tol;
        rep.residual = rn;
        rep.history.push_back(rn);
        if (report) *report = rep;
        if (!rep.converged) throw SolverError("solve_vstate: trivial state residual above tol");
        return base;
    }

    util::Matrix jac = analytic_jacobian(base.gamma2);
    bool refreshed_at_current = false;
    double prev = 0.0;
    for (int it = 0; it <= opts_.max_iter; ++it) {
        const contour::VState state = unpack(eps, u);
        const std::vector<double> r = residual_vector(state);
        double rn = 0.0;
        for (double v : r) rn = std::max(rn, std::abs(v));
        rep.history.push_back(rn);
        rep.residual = rn;
        rep.iterations = it;
        if (!std::isfinite(rn)) break;
        if (rn <= opts_.tol) {
            rep.converged = true;
            if (report) *report = rep;
            return state;
        }
        if (it == opts_.max_iter) break;
        if (it > 0 && rn > 0.5 * prev && !refreshed_at_current) {
            jac = fd_jacobian(state);
            ++rep.jacobian_refreshes;
            refreshed_at_current = true;
        } else if (rn <= 0.5 * prev) {
            refreshed_at_current = false;
        }
        prev = rn;
        const std::vector<double> du = jac.solve(r);
        for (size_t i = 0; i < u.size(); ++i) u[i] -= du[i];
    }
    if (report) *report = rep;
    throw SolverError("solve_vstate: Newton failed to reach tol " + std::to_string(opts_.tol) +
                      " in " + std::to_string(opts_.max_iter) +
                      " iterations (last residual " + std::to_string(rep.residual) + ")");
}

ContinuationResult VStateSolver::continuation(const std::vector<double>& eps_targets) const {
    ContinuationResult result;
    const contour::VState* warm = nullptr;
    contour::VState last;
    for (size_t i = 0; i < eps_targets.size(); ++i) {
        NewtonReport rep;
        try {
            last = solve(eps_targets[i], warm, &rep);
        } catch (const std::exception&) {
            result.reports.push_back(rep);
            result.failed_index = static_cast<int>(i);
            return result;
        }
        result.states.push_back(last);
        result.reports.push_back(rep);
        warm = &result.states.back();
    }
    result.complete = true;
    return result;
}

AsymptoticReport asymptotic_report(const std::vector<contour::VState>& family,
                                   const equilibria::ConfigParams& params) {
    if (family.size() < 3)
        throw ConfigError("asymptotic_report: need at least 3 states at distinct eps");
    AsymptoticReport rep;
    const double a = params.alpha;
    using specfun::gamma_fn;
    rep.xi = (a + 2.0) * gamma_fn(1.0 - a / 2.0) * gamma_fn(3.0 - a / 2.0) /
             (4.0 * gamma_fn(2.0 - a));

    const equilibria::Equilibrium eq = equilibria::solve_equilibrium(params);
    // H sums with the equilibrium gamma2 weighting
    auto h_full = [&](int j, bool displayed) {
        double total = params.gamma0;
        for (int ell = 1; ell <= 2; ++ell) {
            const double dl = params.d(ell), dj = params.d(j);
            const double gl = ell == 1 ? params.gamma1 : eq.gamma2_star;
            double s = 0.0;
            const int kfrom = (ell == j) ? 1 : 0;
            for (int k = kfrom; k < params.m; ++k) {
                const double delta_diff = (ell == 2 ? 1.0 : 0.0) - (j == 2 ? 1.0 : 0.0);
                const double theta =
                    2.0 * k * kPi / params.m - delta_diff * params.vartheta * kPi / params.m;
                double num, den;
                if (displayed) {
                    num = 2.0 * dj * dl * std::cos(theta) - dj * dj -
                          dl * dl * std::cos(2.0 * (2.0 * k * kPi / params.m - delta_diff));
                    den = std::pow(
                        std::abs(dl * dl + 2.0 * dj * dl * std::cos(theta) - dj * dj),
                        a / 2.0 + 2.0);
                } else {
                    num = 2.0 * dj * dl * std::cos(theta) - dj * dj -
                          dl * dl * std::cos(2.0 * theta);
                    den = std::pow(dj * dj + dl * dl - 2.0 * dj * dl * std::cos(theta),
                                   a / 2.0 + 2.0);
                }
                s += num / den;
            }
            total += gl * s;
        }
        return total;
    };
    rep.h1 = h_full(1, false);
    rep.h2 = h_full(2, false);
    rep.h1_display = h_full(1, true);
    rep.h2_display = h_full(2, true);
    const double gamj[2] = {params.gamma1, eq.gamma2_star};
    for (int j = 0; j < 2; ++j)
        rep.predicted_slope[j] = rep.xi * params.b(j + 1) * (j == 0 ? rep.h1 : rep.h2) /
                                 (gamj[j] * std::pow(params.d(j + 1), a + 2.0));

    std::vector<double> le, ldrift, la1, la2;
    for (const contour::VState& s : family) {
        if (s.epsilon <= 0.0) continue;
        le.push_back(std::log(s.epsilon));
        const double dl = std::hypot(s.omega - eq.omega_star, s.gamma2 - eq.gamma2_star);
        ldrift.push_back(std::log(std::max(dl, 1e-300)));
        la1.push_back(std::log(std::max(std::abs(s.shapes[1].get(2)), 1e-300)));
        la2.push_back(std::log(std::max(std::abs(s.shapes[2].get(2)), 1e-300)));
    }
    if (le.size() < 3) throw ConfigError("asymptotic_report: need at least 3 positive-eps states");
    auto [sl_l, res_l] = fit_slope(le, ldrift);
    rep.lambda_drift_order = sl_l;
    rep.lambda_drift_residual = res_l;
    rep.ring_amp_order[0] = fit_slope(le, la1).first;
    rep.ring_amp_order[1] = fit_slope(le, la2).first;

    // measured linear slope of the leading ring mode
    {
        std::vector<double> ev, a1v, a2v;
        for (const contour::VState& s : family)
            if (s.epsilon > 0.0) {
                ev.push_back(s.epsilon);
                a1v.push_back(s.shapes[1].get(2));
                a2v.push_back(s.shapes[2].get(2));
            }
        rep.measured_slope[0] = fit_slope(ev, a1v).first;
        rep.measured_slope[1] = fit_slope(ev, a2v).first;
    }

    // central vs ring amplitude at the smallest positive eps
    const contour::VState* smallest = nullptr;
    for (const contour::VState& s : family)
        if (s.epsilon > 0.0 && (!smallest || s.epsilon < smallest->epsilon)) smallest = &s;
    double c0 = 0.0, cr = 0.0;
    for (int n = 2; n <= smallest->shapes[0].max_mode(); ++n)
        c0 = std::max(c0, std::abs(smallest->shapes[0].get(n)));
    for (int j = 1; j <= 2; ++j)
        for (int n = 2; n <= smallest->shapes[j].max_mode(); ++n)
            cr = std::max(cr, std::abs(smallest->shapes[j].get(n)));
    rep.central_ratio = cr > 0.0 ? c0 / cr : 0.0;
    return rep;
}

std::vector<ConvexityRow> convexity_sweep(const std::vector<contour::VState>& family,
                                          const equilibria::ConfigParams& params, int nodes) {
    if (family.empty()) throw ConfigError("convexity_sweep: empty family");
    std::vector<ConvexityRow> rows;
    for (const contour::VState& s : family) {
        ConvexityRow row;
        row.epsilon = s.epsilon;
        row.overall_min = std::numeric_limits<double>::max();
        for (int j = 0; j < 3; ++j) {
            const std::vector<double> kappa =
                contour::curvature(s.shapes[j], s.epsilon, params.b(j), params.alpha, nodes);
            double mn = std::numeric_limits<double>::max();
            for (double k : kappa) mn = std::min(mn, k);
            row.min_kappa[j] = mn;
            row.overall_min = std::min(row.overall_min, mn);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gsqg::solver
