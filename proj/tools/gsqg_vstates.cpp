#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gsqg/cli.hpp"
#include "gsqg/kernels/pairwise.hpp"

int main(int argc, char** argv) {
    CLI::App app{"co-rotating nested polygonal vortex patches for the gSQG equations"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    double eps_max = -1.0;
    int steps = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file (key = value)")->required();
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--eps-max", eps_max, "continuation target override");
        sub->add_option("--steps", steps, "continuation step count override");
    };

    CLI::App* eq = app.add_subcommand("equilibrium", "point-vortex equilibrium and diagnostics");
    CLI::App* solve = app.add_subcommand("solve", "Newton continuation of finite-size patches");
    CLI::App* verify = app.add_subcommand("verify", "contour-dynamics rigid-rotation check");
    CLI::App* sweep = app.add_subcommand("sweep", "equilibrium scan over a parameter grid");
    for (CLI::App* sub : {eq, solve, verify, sweep}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    gsqg::cli::RunConfig config;
    try {
        config = gsqg::cli::RunConfig::parse_file(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (eps_max > 0.0) config.eps_max = eps_max;
        if (steps > 0) config.solve.continuation_steps = steps;
        config.params.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return gsqg::cli::exit_config;
    }

    try {
        if (eq->parsed()) return gsqg::cli::cmd_equilibrium(config);
        if (solve->parsed()) return gsqg::cli::cmd_solve(config);
        if (verify->parsed()) return gsqg::cli::cmd_verify(config);
        if (sweep->parsed()) return gsqg::cli::cmd_sweep(config);
    } catch (const gsqg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gsqg::cli::exit_config;
    } catch (const gsqg::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gsqg::cli::exit_solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
