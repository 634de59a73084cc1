//==============================================================================
// io.hpp : run configuration, binary field snapshots, CSV reports, run driver
//
// FieldFile layout (little endian):
//   magic "SQGF" | version u32 = 1 | n1 u32 | n2 u32 | L1 f64 | L2 f64 | t f64
//   | payload n1*n2 f64, row-major in (i, j) with j fastest.
// Round-trips are bit-exact (NaN payloads included).
//==============================================================================
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqg/grid.hpp"
#include "sqg/solver.hpp"

namespace sqg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitAuditFailure = 4;

struct FieldSnapshot {
    Field field;
    double t = 0.0;
};

// Binary snapshot I/O; read throws std::runtime_error on wrong magic/version
// or truncated payload (the CLI maps that to exit code 2).
void write_field_file(const std::string& path, const Field& f, double t);
FieldSnapshot read_field_file(const std::string& path);

enum class RunMode { simulate, picard, verify, analyticity };
RunMode mode_from_string(const std::string& name); // throws on unknown name
std::string to_string(RunMode m);

struct RunConfig {
    GridSpec grid;
    SolverConfig solver;
    RunMode mode = RunMode::simulate;
    std::string init_preset = "single_mode";
    std::map<std::string, double> init_params; // k, m, j_lo, j_hi, x0, width
    double init_amplitude = 1.0;
    std::string init_field_file; // when set, overrides the preset
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    double holder_a = 0.25;
    int holder_pair_budget = 2048;
    double analyticity_t = 0.5; // evaluation time for the analyticity mode
    int beta_max = 8;
    bool emit_gnuplot = false;
};

// Thrown by the config parser; line = 0 means the error is not line-specific.
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& what_)
        : std::runtime_error(what_), line(line_) {}
};

// Plain key=value text ('#' comments, blank lines allowed).  Unknown keys and
// malformed lines raise ConfigError naming the line number.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// One "key=value" override, same key set as the file format.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Executes cfg.mode: writes FieldFile snapshots, a diagnostics CSV with header
//   t,linf,l2,besov0_inf_1,besov1_inf_1,holder_a,max_principle_ok
// (simulate/picard), an estimates CSV (verify), or derivative tables
// (analyticity) into cfg.output_dir.  Returns a process exit code: 0 success,
// 2 config error, 3 numerical failure (NaN), 4 audit verdict failure.
int run(const RunConfig& cfg);

// Convenience wrapper: parse + run, mapping ConfigError to exit code 2.
int run(const std::string& config_path);

} // namespace sqg
