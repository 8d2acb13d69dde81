#pragma once

#include <string>
#include <vector>

#include "gsqg/equilibria.hpp"
#include "gsqg/solver.hpp"

namespace gsqg::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_solver = 3,
    exit_verification = 4,
    exit_missing = 5,
};

struct DynamicsConfig {
    double t_fraction = 0.1;  ///< evolution window as a fraction of 2 pi / |Omega|
    double dt = 0.0;          ///< 0 = automatic stability-bound step
    int nodes = 64;
    int respace_interval = 100;
};

struct SweepConfig {
    std::string axis = "d2";
    std::vector<double> grid;
    bool with_solve = false;
};

struct RunConfig {
    equilibria::ConfigParams params;
    solver::SolveOptions solve;
    double eps_max = 0.2;
    DynamicsConfig dynamics;
    SweepConfig sweep;
    std::string output_dir = "out";

    /// `key = value` lines with dotted keys and '#' comments; unknown keys rejected
    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::string& path);
};

int cmd_equilibrium(const RunConfig& config);
int cmd_solve(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_sweep(const RunConfig& config);

/// geometric ladder eps_k = eps_max 2^{k - K}, k = 1..K
std::vector<double> geometric_ladder(double eps_max, int steps);

/// round-trip helpers for the VState JSON schema
std::string vstate_to_json(const contour::VState& state, const equilibria::ConfigParams& params);
contour::VState vstate_from_json(const std::string& text, const equilibria::ConfigParams& params);

}  // namespace gsqg::cli
