#pragma once

#include <optional>
#include <vector>

#include "gsqg/contour.hpp"

namespace gsqg::solver {

struct SolveOptions {
    int n_modes = 24;
    int n_quad = 256;
    double tol = 1e-10;
    int max_iter = 30;
    int continuation_steps = 5;
    kernels::SelfQuadrature quad = kernels::SelfQuadrature::spectral;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> history;  ///< residual norm per iterate (including initial)
    int jacobian_refreshes = 0;
};

struct ContinuationResult {
    std::vector<contour::VState> states;     ///< converged states, one per reached target
    std::vector<NewtonReport> reports;
    bool complete = false;
    int failed_index = -1;                   ///< first failing target, -1 if none
};

struct AsymptoticReport {
    double h1 = 0.0, h2 = 0.0;                    ///< interaction sums, squared-distance form
    double h1_display = 0.0, h2_display = 0.0;    ///< as-displayed variant (|.| regularized)
    double xi = 0.0;                              ///< Xi_alpha
    double predicted_slope[2] = {0.0, 0.0};       ///< Xi b_j H_j / (gamma_j d_j^{alpha+2})
    double measured_slope[2] = {0.0, 0.0};        ///< fitted d|a_2^j|/d eps
    double ring_amp_order[2] = {0.0, 0.0};        ///< fitted exponent of |a_2^j(eps)|
    double lambda_drift_order = 0.0;              ///< fitted exponent of |lambda(eps)-lambda*|
    double lambda_drift_residual = 0.0;           ///< rms regression residual (log scale)
    double central_ratio = 0.0;                   ///< central/ring leading amplitude, smallest eps
};

struct ConvexityRow {
    double epsilon = 0.0;
    double min_kappa[3] = {0.0, 0.0, 0.0};
    double overall_min = 0.0;
};

/// Newton/continuation driver; owns the functional evaluator and the unknown
/// layout {a_n^j : permitted modes} + (Omega, gamma2) paired with the sine
/// residuals {A_n^j : n >= 2} + (A_1^1, A_1^2).
class VStateSolver {
public:
    VStateSolver(const equilibria::ConfigParams& params, const SolveOptions& opts);

    contour::VState solve(double eps, const contour::VState* initial = nullptr,
                          NewtonReport* report = nullptr) const;

    ContinuationResult continuation(const std::vector<double>& eps_targets) const;

    /// dense Jacobian of the residual map at the given state: analytic block
    /// structure at the trivial state, central finite differences otherwise
    util::Matrix newton_jacobian(const contour::VState& state, double* condition = nullptr) const;

    const contour::BoundaryFunctional& functional() const { return functional_; }
    const equilibria::ConfigParams& params() const { return params_; }
    const SolveOptions& options() const { return opts_; }
    int unknown_count() const { return static_cast<int>(layout_.size()) + 2; }

    std::vector<double> pack(const contour::VState& state) const;
    contour::VState unpack(double eps, const std::vector<double>& u) const;
    std::vector<double> residual_vector(const contour::VState& state) const;

private:
    equilibria::ConfigParams params_;
    SolveOptions opts_;
    contour::BoundaryFunctional functional_;
    std::vector<std::pair<int, int>> layout_;  // (family, mode)

    util::Matrix analytic_jacobian(double gamma2) const;
    util::Matrix fd_jacobian(const contour::VState& state) const;
};

AsymptoticReport asymptotic_report(const std::vector<contour::VState>& family,
                                   const equilibria::ConfigParams& params);

std::vector<ConvexityRow> convexity_sweep(const std::vector<contour::VState>& family,
                                          const equilibria::ConfigParams& params, int nodes = 256);

}  // namespace gsqg::solver
