//==============================================================================
// sqg_main.cpp : command-line driver
//
//   sqg [simulate|picard|verify|analyticity] [--config FILE] [--set key=value]...
//       [--emit-gnuplot]
//
// The subcommand (when given) overrides the mode from the config file; --set
// overrides apply after the file, in order.
//==============================================================================
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqg/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet strip transport solver and estimate auditor"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::vector<std::string> overrides;
    bool emit_gnuplot = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--set", overrides, "inline override, e.g. --set solver.dt=5e-4")
        ->take_all();
    app.add_flag("--emit-gnuplot", emit_gnuplot, "write a gnuplot script next to the CSVs");

    // Options may appear before or after the subcommand; unmatched arguments
    // inside a subcommand fall through to the global option set above.
    CLI::App* sub_simulate = app.add_subcommand("simulate", "time-step the equation");
    CLI::App* sub_picard = app.add_subcommand("picard", "fixed-point iteration on the mild form");
    CLI::App* sub_verify = app.add_subcommand("verify", "audit the governing estimates");
    CLI::App* sub_analyticity =
        app.add_subcommand("analyticity", "derivative tables at a snapshot");
    for (CLI::App* sub : {sub_simulate, sub_picard, sub_verify, sub_analyticity})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : sqg::kExitConfigError;
    }

    sqg::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = sqg::parse_config_file(config_path);
        for (const std::string& s : overrides) sqg::apply_override(cfg, s);
    } catch (const sqg::ConfigError& e) {
        if (e.line > 0)
            std::cerr << "config error at line " << e.line << ": " << e.what() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return sqg::kExitConfigError;
    }

    if (sub_simulate->parsed()) cfg.mode = sqg::RunMode::simulate;
    if (sub_picard->parsed()) cfg.mode = sqg::RunMode::picard;
    if (sub_verify->parsed()) cfg.mode = sqg::RunMode::verify;
    if (sub_analyticity->parsed()) cfg.mode = sqg::RunMode::analyticity;
    if (emit_gnuplot) cfg.emit_gnuplot = true;

    return sqg::run(cfg);
}
