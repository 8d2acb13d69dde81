#include "gsqg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gsqg/contour.hpp"
#include "gsqg/dynamics.hpp"

namespace gsqg::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: invalid numeric value for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    const int i = static_cast<int>(std::llround(d));
    if (std::abs(d - i) > 1e-12) throw ConfigError("config: expected integer for " + key);
    return i;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: expected boolean for " + key);
}

std::string eps_tag(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", eps);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

}  // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "params.alpha") cfg.params.alpha = to_double(key, val);
        else if (key == "params.m") cfg.params.m = to_int(key, val);
        else if (key == "params.vartheta") cfg.params.vartheta = to_int(key, val);
        else if (key == "params.b0") cfg.params.b0 = to_double(key, val);
        else if (key == "params.b1") cfg.params.b1 = to_double(key, val);
        else if (key == "params.b2") cfg.params.b2 = to_double(key, val);
        else if (key == "params.d1") cfg.params.d1 = to_double(key, val);
        else if (key == "params.d2") cfg.params.d2 = to_double(key, val);
        else if (key == "params.gamma0") cfg.params.gamma0 = to_double(key, val);
        else if (key == "params.gamma1") cfg.params.gamma1 = to_double(key, val);
        else if (key == "solve.n_modes") cfg.solve.n_modes = to_int(key, val);
        else if (key == "solve.n_quad") cfg.solve.n_quad = to_int(key, val);
        else if (key == "solve.tol") cfg.solve.tol = to_double(key, val);
        else if (key == "solve.max_iter") cfg.solve.max_iter = to_int(key, val);
        else if (key == "solve.steps") cfg.solve.continuation_steps = to_int(key, val);
        else if (key == "solve.eps_max") cfg.eps_max = to_double(key, val);
        else if (key == "dynamics.t_fraction") cfg.dynamics.t_fraction = to_double(key, val);
        else if (key == "dynamics.dt") cfg.dynamics.dt = to_double(key, val);
        else if (key == "dynamics.nodes") cfg.dynamics.nodes = to_int(key, val);
        else if (key == "dynamics.respace_interval") cfg.dynamics.respace_interval = to_int(key, val);
        else if (key == "sweep.axis") cfg.sweep.axis = val;
        else if (key == "sweep.solve") cfg.sweep.with_solve = to_bool(key, val);
        else if (key == "sweep.grid") {
            cfg.sweep.grid.clear();
            std::istringstream gs(val);
            std::string item;
            while (std::getline(gs, item, ',')) {
                item = trim(item);
                if (!item.empty()) cfg.sweep.grid.push_back(to_double(key, item));
            }
        } else if (key == "output_dir") cfg.output_dir = val;
        else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::vector<double> geometric_ladder(double eps_max, int steps) {
    if (!(eps_max > 0.0) || steps < 1) throw ConfigError("ladder: need eps_max > 0 and steps >= 1");
    std::vector<double> out;
    for (int k = 1; k <= steps; ++k) out.push_back(eps_max * std::pow(2.0, k - steps));
    return out;
}

std::string vstate_to_json(const contour::VState& state, const equilibria::ConfigParams& params) {
    json doc;
    doc["epsilon"] = state.epsilon;
    doc["lambda"] = {{"omega", state.omega}, {"gamma2", state.gamma2}};
    doc["patches"] = json::array();
    for (int j = 0; j < 3; ++j) {
        json patch;
        patch["j"] = j;
        patch["b"] = params.b(j);
        patch["fold"] = state.shapes[j].symmetry_fold;
        json coeffs = json::array();
        for (int n = 2; n <= state.shapes[j].max_mode(); ++n)
            coeffs.push_back(state.shapes[j].get(n));
        patch["coeffs"] = coeffs;
        doc["patches"].push_back(patch);
    }
    return doc.dump(2) + "\n";
}

contour::VState vstate_from_json(const std::string& text, const equilibria::ConfigParams& params) {
    const json doc = json::parse(text);
    contour::VState state;
    state.epsilon = doc.at("epsilon").get<double>();
    state.omega = doc.at("lambda").at("omega").get<double>();
    state.gamma2 = doc.at("lambda").at("gamma2").get<double>();
    for (const json& patch : doc.at("patches")) {
        const int j = patch.at("j").get<int>();
        const int fold = patch.at("fold").get<int>();
        const auto& coeffs = patch.at("coeffs");
        const int n_max = static_cast<int>(coeffs.size()) + 1;
        contour::PatchShape shape = contour::PatchShape::zero(j, fold, n_max);
        for (size_t i = 0; i < coeffs.size(); ++i) {
            const double v = coeffs[i].get<double>();
            if (v != 0.0) shape.set(static_cast<int>(i) + 2, v);
        }
        if (j == 0 && fold != params.m)
            throw ConfigError("vstate json: central-patch fold " + std::to_string(fold) +
                              " does not match params.m = " + std::to_string(params.m));
        state.shapes[j] = std::move(shape);
    }
    return state;
}

int cmd_equilibrium(const RunConfig& config) {
    fs::create_directories(config.output_dir);
    equilibria::Equilibrium eq;
    try {
        eq = equilibria::solve_equilibrium(config.params);
    } catch (const ConfigError& e) {
        std::cerr << "equilibrium: " << e.what() << "\n";
        return exit_config;
    }
    const equilibria::NondegeneracyReport nd = nondegeneracy_report(config.params, eq);
    json doc;
    doc["omega_star"] = eq.omega_star;
    doc["gamma2_star"] = eq.gamma2_star;
    doc["s_alpha"] = eq.s_alpha;
    doc["t_plus"] = eq.t_plus;
    doc["t_minus"] = eq.t_minus;
    doc["det"] = eq.det_jacobian;
    doc["nondeg_lhs"] = eq.nondeg_lhs;
    doc["residuals"] = {eq.residuals[0], eq.residuals[1]};
    doc["nondeg_nonzero"] = nd.nondeg_nonzero;
    doc["det_nonzero"] = nd.det_nonzero;
    write_file(fs::path(config.output_dir) / "equilibrium.json", doc.dump(2) + "\n");
    if (!nd.nondeg_nonzero || !nd.det_nonzero) {
        std::cerr << "equilibrium: degenerate configuration ("
                  << (!nd.det_nonzero ? "lambda-Jacobian determinant vanishes"
                                      : "gamma2 numerator vanishes")
                  << ")\n";
        return exit_config;
    }
    return exit_ok;
}

int cmd_solve(const RunConfig& config) {
    fs::create_directories(fs::path(config.output_dir) / "vstates");
    solver::VStateSolver vs(config.params, config.solve);
    const std::vector<double> ladder =
        geometric_ladder(config.eps_max, config.solve.continuation_steps);
    solver::ContinuationResult cont = vs.continuation(ladder);
    for (const contour::VState& s : cont.states) {
        const std::string tag = eps_tag(s.epsilon);
        write_file(fs::path(config.output_dir) / "vstates" / ("eps_" + tag + ".json"),
                   vstate_to_json(s, config.params));
        write_file(fs::path(config.output_dir) / ("boundary_eps_" + tag + ".csv"),
                   contour::boundary_csv(s, config.params, config.solve.n_quad));
    }
    if (!cont.states.empty()) {
        json conv = json::array();
        for (const auto& row : solver::convexity_sweep(cont.states, config.params)) {
            conv.push_back({{"epsilon", row.epsilon},
                            {"min_kappa", {row.min_kappa[0], row.min_kappa[1], row.min_kappa[2]}},
                            {"overall_min", row.overall_min}});
        }
        write_file(fs::path(config.output_dir) / "convexity.json", conv.dump(2) + "\n");
    }
    if (cont.states.size() >= 3) {
        const solver::AsymptoticReport rep = solver::asymptotic_report(cont.states, config.params);
        json doc;
        doc["h1"] = rep.h1;
        doc["h2"] = rep.h2;
        doc["h1_display"] = rep.h1_display;
        doc["h2_display"] = rep.h2_display;
        doc["xi"] = rep.xi;
        doc["predicted_slope"] = {rep.predicted_slope[0], rep.predicted_slope[1]};
        doc["measured_slope"] = {rep.measured_slope[0], rep.measured_slope[1]};
        doc["ring_amp_order"] = {rep.ring_amp_order[0], rep.ring_amp_order[1]};
        doc["lambda_drift_order"] = rep.lambda_drift_order;
        doc["lambda_drift_residual"] = rep.lambda_drift_residual;
        doc["central_ratio"] = rep.central_ratio;
        write_file(fs::path(config.output_dir) / "asymptotics.json", doc.dump(2) + "\n");
    }
    if (!cont.complete) {
        std::cerr << "solve: continuation failed at target index " << cont.failed_index
                  << " (eps = " << ladder[static_cast<size_t>(cont.failed_index)] << ")\n";
        return exit_solver;
    }
    return exit_ok;
}

int cmd_verify(const RunConfig& config) {
    const fs::path vdir = fs::path(config.output_dir) / "vstates";
    std::vector<fs::path> files;
    if (fs::exists(vdir))
        for (const auto& entry : fs::directory_iterator(vdir))
            if (entry.path().extension() == ".json") files.push_back(entry.path());
    if (files.empty()) {
        std::cerr << "verify: no solved states found; run solve first\n";
        return exit_missing;
    }
    contour::VState best;
    bool have = false;
    for (const fs::path& p : files) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        const contour::VState s = vstate_from_json(buf.str(), config.params);
        if (!have || std::abs(s.epsilon) > std::abs(best.epsilon)) {
            best = s;
            have = true;
        }
    }
    if (best.epsilon == 0.0) {
        std::cerr << "verify: only the trivial state is available; run solve with eps_max > 0\n";
        return exit_missing;
    }
    const double omega_solver = best.omega;
    const double t_final = config.dynamics.t_fraction * 2.0 * kPi / std::abs(omega_solver);

    dynamics::CurveEnsemble ens =
        dynamics::CurveEnsemble::from_vstate(best, config.params, config.dynamics.nodes);
    dynamics::EvolveOptions opts;
    opts.dt = config.dynamics.dt;
    opts.respace_interval = config.dynamics.respace_interval;
    opts.snapshot_count = 10;
    dynamics::EvolveResult res;
    try {
        res = dynamics::evolve(ens, config.params.alpha, t_final, opts);
    } catch (const std::exception& e) {
        std::cerr << "verify: evolution failed: " << e.what() << "\n";
        return exit_verification;
    }
    const double omega_fit = dynamics::centroid_rotation_rate(ens, res.state, t_final);
    const dynamics::RotationFit fit =
        dynamics::rotation_fit(ens, res.state, t_final, dynamics::Matching::closest_point);
    const double rel_error = std::abs(omega_fit - omega_solver) / std::abs(omega_solver);
    const double impulse_drift =
        std::abs(res.impulse_final / res.impulse_initial - 1.0);

    json doc;
    doc["omega_fit"] = omega_fit;
    doc["omega_solver"] = omega_solver;
    doc["rel_error"] = rel_error;
    doc["deviation"] = fit.deviation;
    doc["area_drift"] = res.max_area_drift;
    doc["omega_fit_lsq"] = fit.omega_fit;
    doc["impulse_drift"] = impulse_drift;
    doc["dt"] = res.dt;
    doc["steps"] = res.steps;
    doc["t_final"] = t_final;
    fs::create_directories(config.output_dir);
    write_file(fs::path(config.output_dir) / "rotation.json", doc.dump(2) + "\n");
    {
        std::string csv = "t,patch,replica,node,px,py\n";
        char buf[96];
        auto append_state = [&](double t, const dynamics::CurveEnsemble& e) {
            for (const auto& c : e.curves)
                for (size_t l = 0; l < c.x.size(); ++l) {
                    std::snprintf(buf, sizeof(buf), "%.17g,%d,%d,%zu,%.17g,%.17g\n", t, c.family,
                                  c.replica, l, c.x[l], c.y[l]);
                    csv += buf;
                }
        };
        append_state(0.0, ens);
        for (const auto& [t, e] : res.snapshots) append_state(t, e);
        write_file(fs::path(config.output_dir) / "trajectory.csv", csv);
    }
    if (rel_error > 1e-3) {
        std::cerr << "verify: omega mismatch " << rel_error << " exceeds 1e-3\n";
        return exit_verification;
    }
    return exit_ok;
}

int cmd_sweep(const RunConfig& config) {
    if (config.sweep.grid.empty()) {
        std::cerr << "sweep: empty grid\n";
        return exit_config;
    }
    fs::create_directories(config.output_dir);
    std::string csv = "axis,value,omega_star,gamma2_star,s_alpha,t_plus,t_minus,det,nondeg_lhs,"
                      "degenerate";
    if (config.sweep.with_solve) csv += ",newton_iters,newton_residual";
    csv += "\n";
    char buf[64];
    for (double value : config.sweep.grid) {
        equilibria::ConfigParams p = config.params;
        const std::string& axis = config.sweep.axis;
        if (axis == "d1") p.d1 = value;
        else if (axis == "d2") p.d2 = value;
        else if (axis == "alpha") p.alpha = value;
        else if (axis == "gamma0") p.gamma0 = value;
        else if (axis == "gamma1") p.gamma1 = value;
        else if (axis == "m") p.m = static_cast<int>(std::llround(value));
        else if (axis == "vartheta") p.vartheta = static_cast<int>(std::llround(value));
        else {
            std::cerr << "sweep: unknown axis '" << axis << "'\n";
            return exit_config;
        }
        csv += axis + ",";
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        csv += buf;
        try {
            const equilibria::Equilibrium eq = equilibria::solve_equilibrium(p);
            const equilibria::NondegeneracyReport nd = nondegeneracy_report(p, eq);
            for (double v : {eq.omega_star, eq.gamma2_star, eq.s_alpha, eq.t_plus, eq.t_minus,
                             eq.det_jacobian, eq.nondeg_lhs}) {
                std::snprintf(buf, sizeof(buf), ",%.17g", v);
                csv += buf;
            }
            csv += (nd.nondeg_nonzero && nd.det_nonzero) ? ",0" : ",1";
            if (config.sweep.with_solve) {
                solver::SolveOptions so = config.solve;
                solver::VStateSolver vs(p, so);
                solver::NewtonReport rep;
                try {
                    vs.solve(config.eps_max, nullptr, &rep);
                    std::snprintf(buf, sizeof(buf), ",%d,%.17g", rep.iterations, rep.residual);
                } catch (const std::exception&) {
                    std::snprintf(buf, sizeof(buf), ",-1,%.17g", rep.residual);
                }
                csv += buf;
            }
        } catch (const ConfigError&) {
            csv += ",nan,nan,nan,nan,nan,nan,nan,1";
            if (config.sweep.with_solve) csv += ",-1,nan";
        }
        csv += "\n";
    }
    write_file(fs::path(config.output_dir) / "sweep.csv", csv);
    return exit_ok;
}

}  // namespace gsqg::cli
