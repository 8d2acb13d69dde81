#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gsqg/solver.hpp"
#include "gsqg/specfun.hpp"

using namespace gsqg;
using namespace gsqg::solver;
using gsqg::equilibria::ConfigParams;
using gsqg::contour::VState;

namespace {
constexpr double kPi = 3.14159265358979323846;

ConfigParams params_for(int m, int th, double d2, double alpha) {
    ConfigParams p;
    p.m = m;
    p.vartheta = th;
    p.d2 = d2;
    p.alpha = alpha;
    return p;
}

SolveOptions small_opts(int n_modes = 12, int n_quad = 96) {
    SolveOptions o;
    o.n_modes = n_modes;
    o.n_quad = n_quad;
    o.tol = 1e-10;
    o.max_iter = 30;
    return o;
}

}  // namespace

TEST_CASE("trivial solve returns lambda* with zero iterations") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts());
    NewtonReport rep;
    const VState s = vs.solve(0.0, nullptr, &rep);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
    const auto eq = equilibria::solve_equilibrium(p);
    CHECK(s.omega == eq.omega_star);
    CHECK(s.gamma2 == eq.gamma2_star);
}

TEST_CASE("tolerance below the quadrature floor is rejected") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    SolveOptions o = small_opts();
    o.tol = 1e-16;
    CHECK_THROWS_AS(VStateSolver(p, o), ConfigError);
}

TEST_CASE("newton converges quickly from the zero guess at small eps") {
    for (double alpha : {1.0, 1.5}) {
        const ConfigParams p = params_for(2, 1, 2.0, alpha);
        const VStateSolver vs(p, small_opts(16, 128));
        NewtonReport rep;
        const VState s = vs.solve(0.02, nullptr, &rep);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 8);
        CHECK(rep.residual <= 1e-10);
        const auto eq = equilibria::solve_equilibrium(p);
        CHECK(std::abs(s.omega - eq.omega_star) < 0.05 * std::abs(eq.omega_star));
        // the leading ring mode is n = 2
        double lead1 = 0.0;
        int argmax = 0;
        for (int n = 2; n <= 16; ++n)
            if (std::abs(s.shapes[1].get(n)) > lead1) {
                lead1 = std::abs(s.shapes[1].get(n));
                argmax = n;
            }
        CHECK(argmax == 2);
    }
}

TEST_CASE("positive and negative eps solves mirror at leading order") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(12, 96));
    const double eps = 5e-3;
    const VState sp = vs.solve(eps);
    const VState sm = vs.solve(-eps);
    const double a2p = sp.shapes[1].get(2);
    const double a2m = sm.shapes[1].get(2);
    CHECK(std::abs(a2m + a2p) < 0.1 * std::abs(a2p));  // f(-eps) ~ -f(eps) + O(eps^2)
}

TEST_CASE("local uniqueness under perturbed initial guesses") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(12, 96));
    const double eps = 0.02;
    const VState ref = vs.solve(eps);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
    VState init = ref;
    for (int j = 0; j < 3; ++j)
        for (int n : init.shapes[j].permitted_modes())
            init.shapes[j].set(n, init.shapes[j].get(n) + noise(rng));
    init.omega += noise(rng);
    init.gamma2 += noise(rng);
    const VState again = vs.solve(eps, &init);
    CHECK(std::abs(again.omega - ref.omega) < 1e-8);
    CHECK(std::abs(again.gamma2 - ref.gamma2) < 1e-8);
    for (int j = 0; j < 3; ++j)
        for (int n : ref.shapes[j].permitted_modes())
            CHECK(std::abs(again.shapes[j].get(n) - ref.shapes[j].get(n)) < 1e-8);
}

TEST_CASE("solved mode amplitudes decay down the spectrum") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(16, 128));
    const VState s = vs.solve(0.05);
    const double a2 = std::abs(s.shapes[1].get(2));
    const double a6 = std::abs(s.shapes[1].get(6));
    const double a10 = std::abs(s.shapes[1].get(10));
    const double a14 = std::abs(s.shapes[1].get(14));
    CHECK(a6 < a2);
    CHECK(a10 < a6);
    CHECK(a14 < a10);
    CHECK(a10 < 1e-3 * a2);
}

TEST_CASE("newton jacobian structure at the trivial state") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(8, 64));
    const VState triv = VState::trivial(p, 8);
    double cond = 0.0;
    const util::Matrix jac = vs.newton_jacobian(triv, &cond);
    CHECK(cond > 1.0);
    CHECK(std::isfinite(cond));
    // first unknown is (family 0, mode 2); magnitude equals 2 sigma_2 gamma_0
    const double sigma2 = specfun::sigma_spectrum(p.alpha, 2).sigma(2);
    CHECK(std::abs(std::abs(jac(0, 0)) - 2.0 * sigma2 * p.gamma0) < 1e-12);
    CHECK(jac(0, 0) < 0.0);  // the operator diagonal is -gamma_j n sigma_n
    const int base = vs.unknown_count() - 2;
    const double det =
        jac(base, base) * jac(base + 1, base + 1) - jac(base, base + 1) * jac(base + 1, base);
    const auto eq = equilibria::solve_equilibrium(p);
    CHECK(std::abs(det - eq.det_jacobian) < 1e-8 * std::abs(eq.det_jacobian));
    // just off the trivial state the finite-difference jacobian stays close
    VState near = triv;
    near.epsilon = 1e-3;
    const util::Matrix jfd = vs.newton_jacobian(near);
    for (int i = 0; i < vs.unknown_count(); ++i)
        CHECK(std::abs(jfd(i, i) - jac(i, i)) < 1e-2 * std::max(1.0, std::abs(jac(i, i))));
}

TEST_CASE("continuation warm starts along a ladder") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(12, 96));
    SUBCASE("single trivial target") {
        const ContinuationResult res = vs.continuation({0.0});
        CHECK(res.complete);
        REQUIRE(res.states.size() == 1);
        CHECK(res.states[0].epsilon == 0.0);
    }
    SUBCASE("three-step ladder converges with few iterations") {
        const ContinuationResult res = vs.continuation({0.0125, 0.025, 0.05});
        CHECK(res.complete);
        REQUIRE(res.states.size() == 3);
        for (const NewtonReport& rep : res.reports) {
            CHECK(rep.converged);
            CHECK(rep.iterations <= 10);
        }
        const auto eq = equilibria::solve_equilibrium(p);
        double prev = 1e300;
        for (auto it = res.states.rbegin(); it != res.states.rend(); ++it) {
            const double drift = std::hypot(it->omega - eq.omega_star, it->gamma2 - eq.gamma2_star);
            CHECK(drift < prev);
            prev = drift;
        }
    }
}

TEST_CASE("asymptotic report on a small family") {
    const ConfigParams p = params_for(5, 1, 1.5, 1.5);
    const VStateSolver vs(p, small_opts(10, 80));
    const ContinuationResult res = vs.continuation({0.0125, 0.025, 0.05, 0.1});
    REQUIRE(res.complete);
    const AsymptoticReport rep = asymptotic_report(res.states, p);
    CHECK(rep.lambda_drift_order >= 1.5);
    CHECK(std::abs(rep.ring_amp_order[0] - 1.0) <= 0.1);
    CHECK(std::abs(rep.ring_amp_order[1] - 1.0) <= 0.1);
    CHECK(rep.central_ratio < 0.1);
    CHECK(std::isfinite(rep.h1));
    CHECK(std::isfinite(rep.h2));
    CHECK(std::isfinite(rep.h1_display));
    CHECK(rep.xi > 0.0);
    CHECK_THROWS_AS(asymptotic_report({res.states[0]}, p), ConfigError);
}

TEST_CASE("xi prefactor at alpha = 1") {
    // 3 Gamma(1/2) Gamma(5/2) / (4 Gamma(1)) = 9 pi / 16
    const ConfigParams p = params_for(5, 1, 1.5, 1.0);
    const VStateSolver vs(p, small_opts(8, 64));
    const ContinuationResult res = vs.continuation({0.02, 0.04, 0.08});
    REQUIRE(res.complete);
    const AsymptoticReport rep = asymptotic_report(res.states, p);
    CHECK(std::abs(rep.xi - 9.0 * kPi / 16.0) < 1e-12);
}

TEST_CASE("convexity sweep") {
    const ConfigParams p = params_for(2, 1, 2.0, 1.5);
    const VStateSolver vs(p, small_opts(12, 96));
    const ContinuationResult res = vs.continuation({0.0, 0.025, 0.05});
    REQUIRE(res.complete);
    const std::vector<ConvexityRow> rows = convexity_sweep(res.states, p);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].overall_min == 1.0);  // trivial state: unit circles
    for (const ConvexityRow& row : rows) CHECK(row.overall_min > 0.0);
    CHECK_THROWS_AS(convexity_sweep({}, p), ConfigError);
}
