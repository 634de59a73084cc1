//==============================================================================
// io.cpp : binary snapshots, key=value configuration, CSV reports, run driver
//==============================================================================
#include "sqg/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doubled.hpp"
#include "sqg/harness.hpp"
#include "sqg/presets.hpp"
#include "sqg/warnings.hpp"

namespace sqg {

//--------------------------------------------------------------- field files --

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'Q', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff),
                       static_cast<char>((v >> 24) & 0xff)};
    os.write(b, 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("field file: truncated header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("field file: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::string fmt_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

void write_field_file(const std::string& path, const Field& f, double t) {
    f.grid.validate();
    if (f.values.size() != static_cast<size_t>(f.grid.n1) * f.grid.n2)
        throw std::runtime_error("write_field_file: payload size disagrees with grid");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field_file: cannot open " + path);
    os.write(kMagic.data(), 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(f.grid.n1));
    put_u32(os, static_cast<std::uint32_t>(f.grid.n2));
    put_f64(os, f.grid.L1);
    put_f64(os, f.grid.L2);
    put_f64(os, t);
    for (double v : f.values) put_f64(os, v);
    if (!os) throw std::runtime_error("write_field_file: short write to " + path);
}

FieldSnapshot read_field_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field_file: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic.data(), 4) != 0)
        throw std::runtime_error("read_field_file: bad magic in " + path);
    if (get_u32(is) != kVersion)
        throw std::runtime_error("read_field_file: unsupported version in " + path);

    GridSpec g;
    g.n1 = static_cast<int>(get_u32(is));
    g.n2 = static_cast<int>(get_u32(is));
    g.L1 = get_f64(is);
    g.L2 = get_f64(is);
    g.validate();

    FieldSnapshot snap;
    snap.t = get_f64(is);
    snap.field.grid = g;
    snap.field.values.resize(static_cast<size_t>(g.n1) * g.n2);
    for (double& v : snap.field.values) v = get_f64(is);
    // NaN payloads are legal here: round-trips are bit-exact, validation is
    // the consumer's business.
    char extra;
    if (is.read(&extra, 1))
        throw std::runtime_error("read_field_file: trailing bytes in " + path);
    return snap;
}

//-------------------------------------------------------------- configuration --

RunMode mode_from_string(const std::string& name) {
    if (name == "simulate") return RunMode::simulate;
    if (name == "picard") return RunMode::picard;
    if (name == "verify") return RunMode::verify;
    if (name == "analyticity") return RunMode::analyticity;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::simulate: return "simulate";
        case RunMode::picard: return "picard";
        case RunMode::verify: return "verify";
        default: return "analyticity";
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    double out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(line, "expected a number, got '" + v + "'");
    return out;
}

long parse_long(const std::string& v, int line) {
    long out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, "expected true/false, got '" + v + "'");
}

// Assign one key; line is reported in errors (0 for CLI overrides).
void assign(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    try {
        if (key == "grid.n1") cfg.grid.n1 = static_cast<int>(parse_long(value, line));
        else if (key == "grid.n2") cfg.grid.n2 = static_cast<int>(parse_long(value, line));
        else if (key == "grid.L1") cfg.grid.L1 = parse_double(value, line);
        else if (key == "grid.L2") cfg.grid.L2 = parse_double(value, line);
        else if (key == "grid.dealias_fraction")
            cfg.grid.dealias_fraction = parse_double(value, line);
        else if (key == "solver.dt") cfg.solver.dt = parse_double(value, line);
        else if (key == "solver.t_end") cfg.solver.t_end = parse_double(value, line);
        else if (key == "solver.scheme") cfg.solver.scheme = scheme_from_string(value);
        else if (key == "solver.snapshot_stride")
            cfg.solver.snapshot_stride = static_cast<int>(parse_long(value, line));
        else if (key == "solver.picard_max_iter")
            cfg.solver.picard_max_iter = static_cast<int>(parse_long(value, line));
        else if (key == "solver.picard_tol") cfg.solver.picard_tol = parse_double(value, line);
        else if (key == "solver.quadrature_nodes")
            cfg.solver.quadrature_nodes = static_cast<int>(parse_long(value, line));
        else if (key == "mode") cfg.mode = mode_from_string(value);
        else if (key == "init.preset") cfg.init_preset = value;
        else if (key == "init.amplitude") cfg.init_amplitude = parse_double(value, line);
        else if (key == "init.field_file") cfg.init_field_file = value;
        else if (key.rfind("init.", 0) == 0)
            cfg.init_params[key.substr(5)] = parse_double(value, line);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_long(value, line));
        else if (key == "holder.a") cfg.holder_a = parse_double(value, line);
        else if (key == "holder.pair_budget")
            cfg.holder_pair_budget = static_cast<int>(parse_long(value, line));
        else if (key == "analyticity.t") cfg.analyticity_t = parse_double(value, line);
        else if (key == "analyticity.beta_max")
            cfg.beta_max = static_cast<int>(parse_long(value, line));
        else if (key == "emit_gnuplot") cfg.emit_gnuplot = parse_bool(value, line);
        else throw ConfigError(line, "unknown key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(line, e.what());
    }
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected key=value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "empty key");
        assign(cfg, key, value, line);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(0, "cannot open config file " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError(0, "override must be key=value, got '" + assignment + "'");
    assign(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0);
}

//----------------------------------------------------------------- run driver --

namespace {

namespace fs = std::filesystem;

constexpr const char* kDiagnosticsHeader =
    "t,linf,l2,besov0_inf_1,besov1_inf_1,holder_a,max_principle_ok";

void write_diagnostics_csv(const std::string& path, const Trajectory& traj,
                           const RunConfig& cfg) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << kDiagnosticsHeader << "\n";
    for (size_t i = 0; i < traj.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        const double holder =
            holder_seminorm(traj.states[i], cfg.holder_a, cfg.holder_pair_budget);
        os << fmt_double(traj.times[i]) << ',' << fmt_double(d.at("linf")) << ','
           << fmt_double(d.at("l2")) << ',' << fmt_double(d.at("besov0_inf_1")) << ','
           << fmt_double(d.at("besov1_inf_1")) << ',' << fmt_double(holder) << ','
           << (d.at("max_principle_ok") != 0.0 ? 1 : 0) << "\n";
    }
}

void write_snapshots(const std::string& dir, const Trajectory& traj) {
    for (size_t i = 0; i < traj.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06zu.sqgf", i);
        write_field_file(dir + "/" + name, traj.states[i], traj.times[i]);
    }
}

void write_gnuplot(const std::string& dir) {
    std::ofstream os(dir + "/plot.gp");
    os << "# gnuplot script for the diagnostics series\n"
          "set datafile separator ','\n"
          "set key autotitle columnhead outside\n"
          "set xlabel 't'\n"
          "set logscale y\n"
          "plot for [col=2:6] 'diagnostics.csv' using 1:col with lines\n";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

Field initial_data(RunConfig& cfg) {
    if (!cfg.init_field_file.empty()) {
        FieldSnapshot snap = read_field_file(cfg.init_field_file);
        if (snap.field.grid.n1 != cfg.grid.n1 || snap.field.grid.n2 != cfg.grid.n2)
            warn("initial field file grid " + std::to_string(snap.field.grid.n1) + "x" +
                 std::to_string(snap.field.grid.n2) + " overrides the configured grid");
        snap.field.grid.dealias_fraction = cfg.grid.dealias_fraction;
        cfg.grid = snap.field.grid;
        snap.field.validate(); // evolving NaNs is not meaningful
        return detail::dealias_field(snap.field);
    }
    std::map<std::string, double> params = cfg.init_params;
    params.emplace("amplitude", cfg.init_amplitude);
    return make_preset(cfg.grid, cfg.init_preset, params, cfg.seed);
}

int run_simulate(RunConfig cfg) {
    const Field theta0 = initial_data(cfg);
    const Trajectory traj = simulate(theta0, cfg.solver);
    write_diagnostics_csv(cfg.output_dir + "/diagnostics.csv", traj, cfg);
    write_snapshots(cfg.output_dir, traj);
    if (cfg.emit_gnuplot) write_gnuplot(cfg.output_dir);
    return kExitOk;
}

int run_picard(RunConfig cfg) {
    const Field theta0 = initial_data(cfg);
    const PicardResult res = picard_solve(theta0, cfg.solver.t_end, cfg.solver);
    write_diagnostics_csv(cfg.output_dir + "/diagnostics.csv", res.trajectory, cfg);
    write_snapshots(cfg.output_dir, res.trajectory);

    std::ofstream os(cfg.output_dir + "/picard_summary.txt");
    os << "iterations " << res.iterations << "\n"
       << "converged " << (res.converged ? "true" : "false") << "\n"
       << "final_distance " << fmt_double(res.final_distance) << "\n"
       << "residual " << fmt_double(res.residual) << "\n";
    os << "contraction_ratios";
    for (double r : res.contraction_history) os << ' ' << fmt_double(r);
    os << "\n";
    if (cfg.emit_gnuplot) write_gnuplot(cfg.output_dir);
    return kExitOk;
}

int run_verify(const RunConfig& cfg) {
    const std::vector<EstimateReport> reports = run_verify_battery(cfg.grid, cfg.seed);
    std::ofstream os(cfg.output_dir + "/estimates.csv");
    if (!os) throw std::runtime_error("cannot open estimates.csv");
    os << "name,samples,fitted_constant,fitted_exponent,worst_ratio,verdict,notes\n";
    bool any_fail = false;
    for (const auto& r : reports) {
        os << r.name << ',' << r.samples << ',' << fmt_double(r.fitted_constant) << ','
           << fmt_double(r.fitted_exponent) << ',' << fmt_double(r.worst_ratio) << ','
           << to_string(r.verdict) << ',' << csv_quote(r.notes) << "\n";
        std::cout << r.name << ": " << to_string(r.verdict) << " (" << r.notes << ")\n";
        any_fail = any_fail || r.verdict == Verdict::fail;
    }
    return any_fail ? kExitAuditFailure : kExitOk;
}

int run_analyticity(RunConfig cfg) {
    if (!(cfg.analyticity_t > 0.0))
        throw ConfigError(0, "analyticity.t must be positive");
    if (cfg.solver.t_end < cfg.analyticity_t)
        throw ConfigError(0, "solver.t_end is before analyticity.t");
    const Field theta0 = initial_data(cfg);
    const Trajectory traj = simulate(theta0, cfg.solver);

    AnalyticityReport rep;
    try {
        rep = analyticity_diagnostic(traj, cfg.analyticity_t, cfg.beta_max);
    } catch (const std::out_of_range&) {
        throw ConfigError(0,
                          "analyticity.t does not land on a snapshot stamp; adjust "
                          "solver.dt or solver.snapshot_stride");
    }

    {
        std::ofstream os(cfg.output_dir + "/analyticity_space.csv");
        os << "b1,b2,entry\n";
        for (int b1 = 0; b1 <= rep.beta_max; ++b1)
            for (int b2 = 0; b2 <= rep.beta_max; ++b2)
                os << b1 << ',' << b2 << ','
                   << fmt_double(rep.space_table[b1][b2]) << "\n";
    }
    {
        std::ofstream os(cfg.output_dir + "/analyticity_time.csv");
        os << "alpha,entry\n";
        for (int a = 0; a <= rep.beta_max; ++a)
            os << a << ',' << fmt_double(rep.time_table[a]) << "\n";
    }
    {
        std::ofstream os(cfg.output_dir + "/analyticity_summary.txt");
        os << "t " << fmt_double(rep.t) << "\n"
           << "beta_max " << rep.beta_max << "\n"
           << "estimated_C " << fmt_double(rep.estimated_C) << "\n"
           << "estimated_C_joint " << fmt_double(rep.estimated_C_joint) << "\n"
           << "radius_fit " << fmt_double(rep.radius_fit) << "\n";
    }
    std::cout << "estimated_C " << fmt_double(rep.estimated_C) << ", joint "
              << fmt_double(rep.estimated_C_joint) << ", radius_fit "
              << fmt_double(rep.radius_fit) << "\n";
    return kExitOk;
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        cfg.grid.validate();
        cfg.solver.validate();
        if (!(cfg.holder_a > 0.0 && cfg.holder_a < 1.0))
            throw ConfigError(0, "holder.a must lie in (0, 1)");
        if (cfg.holder_pair_budget < 1)
            throw ConfigError(0, "holder.pair_budget must be >= 1");
        if (cfg.beta_max < 0 || cfg.beta_max > 10)
            throw ConfigError(0, "analyticity.beta_max must lie in [0, 10]");
        fs::create_directories(cfg.output_dir);

        switch (cfg.mode) {
            case RunMode::simulate: return run_simulate(cfg);
            case RunMode::picard: return run_picard(cfg);
            case RunMode::verify: return run_verify(cfg);
            case RunMode::analyticity: return run_analyticity(cfg);
        }
        return kExitConfigError;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure at step " << e.step << " (t = " << e.time
                  << "): " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const ConfigError& e) {
        if (e.line > 0)
            std::cerr << "config error at line " << e.line << ": " << e.what() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

int run(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& e) {
        if (e.line > 0)
            std::cerr << "config error at line " << e.line << ": " << e.what() << "\n";
        else
            std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return run(cfg);
}

} // namespace sqg
