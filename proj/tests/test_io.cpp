// Field-file format, config parsing, and the four run modes exercised
// end-to-end through the library entry points (the CLI binary is a thin
// wrapper over sqg::run, which is what these suites drive).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqg/io.hpp"
#include "sqg/presets.hpp"
#include "sqg/grid.hpp"
#include "sqg/transform.hpp"
#include "sqg/calculus.hpp"
#include "sqg/dyadic.hpp"
#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sqg;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case; removed up-front so reruns in the
// same build tree start clean.
fs::path scratch(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("sqg_io_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) out.push_back(l);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ',')) out.push_back(cell);
    return out;
}

double parse_strict(const std::string& cell) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    REQUIRE(end == cell.c_str() + cell.size());
    return v;
}

bool bit_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

} // namespace

TEST_CASE("field files survive a round trip bit for bit, including NaN payloads") {
    const fs::path dir = scratch("roundtrip");
    GridSpec g;
    g.n1 = 8;
    g.n2 = 5;
    g.L1 = 5.0;
    g.L2 = 2.5;
    Field f(g);
    // Values chosen to stress the format: signed zero, denormal, NaN, inf-adjacent.
    f.values[0] = -0.0;
    f.values[1] = std::numeric_limits<double>::denorm_min();
    f.values[2] = std::numeric_limits<double>::quiet_NaN();
    f.values[3] = -1.7976931348623157e308;
    f.values[4] = 0.1 + 0.2; // not representable exactly; must survive unchanged
    for (size_t i = 5; i < f.values.size(); ++i)
        f.values[i] = std::sin(0.37 * static_cast<double>(i)) * 1e-3;

    const std::string path = (dir / "field.sqgf").string();
    write_field_file(path, f, 0.125);
    const FieldSnapshot snap = read_field_file(path);

    CHECK(snap.field.grid.n1 == g.n1);
    CHECK(snap.field.grid.n2 == g.n2);
    CHECK(bit_equal(snap.field.grid.L1, g.L1));
    CHECK(bit_equal(snap.field.grid.L2, g.L2));
    CHECK(bit_equal(snap.t, 0.125));
    REQUIRE(snap.field.values.size() == f.values.size());
    for (size_t i = 0; i < f.values.size(); ++i)
        CHECK(bit_equal(snap.field.values[i], f.values[i]));

    // Writing the snapshot back out reproduces the original file exactly.
    const std::string path2 = (dir / "field2.sqgf").string();
    write_field_file(path2, snap.field, snap.t);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("corrupted field files are rejected rather than silently read") {
    const fs::path dir = scratch("corrupt");
    GridSpec g;
    g.n1 = 4;
    g.n2 = 3;
    Field f(g);
    for (size_t i = 0; i < f.values.size(); ++i) f.values[i] = double(i);
    const std::string good = (dir / "good.sqgf").string();
    write_field_file(good, f, 1.0);
    const std::string bytes = slurp(good);

    auto write_variant = [&](const std::string& name, const std::string& data) {
        const std::string p = (dir / name).string();
        std::ofstream os(p, std::ios::binary);
        os.write(data.data(), static_cast<std::streamsize>(data.size()));
        return p;
    };

    SUBCASE("bad magic") {
        std::string d = bytes;
        d[0] = 'X';
        CHECK_THROWS_AS(read_field_file(write_variant("magic.sqgf", d)), std::runtime_error);
    }
    SUBCASE("unsupported version") {
        std::string d = bytes;
        d[4] = 9; // version field follows the 4-byte magic
        CHECK_THROWS_AS(read_field_file(write_variant("ver.sqgf", d)), std::runtime_error);
    }
    SUBCASE("truncated payload") {
        std::string d = bytes.substr(0, bytes.size() - 5);
        CHECK_THROWS_AS(read_field_file(write_variant("trunc.sqgf", d)), std::runtime_error);
    }
    SUBCASE("truncated header") {
        std::string d = bytes.substr(0, 10);
        CHECK_THROWS_AS(read_field_file(write_variant("hdr.sqgf", d)), std::runtime_error);
    }
    SUBCASE("trailing bytes") {
        std::string d = bytes + "zz";
        CHECK_THROWS_AS(read_field_file(write_variant("trail.sqgf", d)), std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_field_file((dir / "nope.sqgf").string()), std::runtime_error);
    }
}

TEST_CASE("config text parsing covers every key, comments, and whitespace") {
    const std::string text =
        "# full configuration\n"
        "grid.n1 = 48\n"
        "grid.n2 = 31\n"
        "grid.L1 = 6.0\n"
        "grid.L2 = 3.0\n"
        "grid.dealias_fraction = 0.5   # tighter cut\n"
        "\n"
        "solver.dt = 0.002\n"
        "solver.t_end = 0.5\n"
        "solver.scheme = etd_rk2\n"
        "solver.snapshot_stride = 25\n"
        "solver.picard_max_iter = 12\n"
        "solver.picard_tol = 1e-11\n"
        "solver.quadrature_nodes = 96\n"
        "mode = picard\n"
        "init.preset = random_band\n"
        "init.amplitude = 0.05\n"
        "init.j_lo = 1\n"
        "init.j_hi = 3\n"
        "output_dir = /tmp/somewhere\n"
        "seed = 99\n"
        "holder.a = 0.3\n"
        "holder.pair_budget = 512\n"
        "analyticity.t = 0.25\n"
        "analyticity.beta_max = 6\n"
        "emit_gnuplot = true\n";
    const RunConfig cfg = parse_config_text(text);
    CHECK(cfg.grid.n1 == 48);
    CHECK(cfg.grid.n2 == 31);
    CHECK(cfg.grid.L1 == doctest::Approx(6.0));
    CHECK(cfg.grid.L2 == doctest::Approx(3.0));
    CHECK(cfg.grid.dealias_fraction == doctest::Approx(0.5));
    CHECK(cfg.solver.dt == doctest::Approx(0.002));
    CHECK(cfg.solver.t_end == doctest::Approx(0.5));
    CHECK(cfg.solver.scheme == Scheme::etd_rk2);
    CHECK(cfg.solver.snapshot_stride == 25);
    CHECK(cfg.solver.picard_max_iter == 12);
    CHECK(cfg.solver.picard_tol == doctest::Approx(1e-11));
    CHECK(cfg.solver.quadrature_nodes == 96);
    CHECK(cfg.mode == RunMode::picard);
    CHECK(cfg.init_preset == "random_band");
    CHECK(cfg.init_amplitude == doctest::Approx(0.05));
    REQUIRE(cfg.init_params.count("j_lo") == 1);
    CHECK(cfg.init_params.at("j_lo") == doctest::Approx(1.0));
    CHECK(cfg.init_params.at("j_hi") == doctest::Approx(3.0));
    CHECK(cfg.output_dir == "/tmp/somewhere");
    CHECK(cfg.seed == 99);
    CHECK(cfg.holder_a == doctest::Approx(0.3));
    CHECK(cfg.holder_pair_budget == 512);
    CHECK(cfg.analyticity_t == doctest::Approx(0.25));
    CHECK(cfg.beta_max == 6);
    CHECK(cfg.emit_gnuplot);

    // Defaults survive when a key is absent.
    const RunConfig d = parse_config_text("mode = verify\n");
    CHECK(d.grid.n1 == 64);
    CHECK(d.grid.n2 == 63);
    CHECK(d.mode == RunMode::verify);
    CHECK(d.init_preset == "single_mode");
    CHECK_FALSE(d.emit_gnuplot);
}

TEST_CASE("config errors carry the offending line number") {
    auto line_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.line;
        }
        return -1;
    };
    CHECK(line_of("grid.n1 = 16\nnot a key value pair\n") == 2);
    CHECK(line_of("grid.n1 = sixteen\n") == 1);
    CHECK(line_of("\n# comment\nno.such.key = 1\n") == 3);
    CHECK(line_of("emit_gnuplot = maybe\n") == 1);
    CHECK(line_of("= 3\n") == 1);
    CHECK(line_of("solver.scheme = leapfrog\n") == 1);
    CHECK(line_of("mode = meditate\n") == 1);

    // CLI-style overrides report line 0 and require key=value shape.
    RunConfig cfg;
    apply_override(cfg, "grid.n1=16");
    CHECK(cfg.grid.n1 == 16);
    try {
        apply_override(cfg, "grid.n1");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.line == 0);
    }
    try {
        apply_override(cfg, "grid.n1=abc");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(e.line == 0);
    }

    // Missing config file surfaces as a ConfigError, not a crash.
    CHECK_THROWS_AS(parse_config_file("/nonexistent/sqg.conf"), ConfigError);
}

TEST_CASE("mode names round-trip and unknown names throw") {
    for (RunMode m : {RunMode::simulate, RunMode::picard, RunMode::verify,
                      RunMode::analyticity})
        CHECK(mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(mode_from_string("render"), std::invalid_argument);
}

TEST_CASE("simulate mode writes diagnostics, snapshots, and decays the pure mode") {
    const fs::path dir = scratch("simulate");
    RunConfig cfg;
    cfg.mode = RunMode::simulate;
    cfg.init_preset = "single_mode";
    cfg.init_params = {{"k", 0.0}, {"m", 1.0}}; // pure Dirichlet mode sin(x2)
    cfg.init_amplitude = 1.0;
    cfg.solver.dt = 1e-3;
    cfg.solver.t_end = 0.25;
    cfg.solver.snapshot_stride = 50;
    cfg.output_dir = (dir / "out").string();
    REQUIRE(run(cfg) == kExitOk);

    // 250 steps at stride 50 -> stamps {0, 50, ..., 250} = 6 snapshots.
    for (int i = 0; i < 6; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06d.sqgf", i);
        CHECK(fs::exists(dir / "out" / name));
    }
    CHECK_FALSE(fs::exists(dir / "out" / "snapshot_000006.sqgf"));
    CHECK_FALSE(fs::exists(dir / "out" / "plot.gp")); // emit_gnuplot defaults off

    const FieldSnapshot last =
        read_field_file((dir / "out" / "snapshot_000005.sqgf").string());
    CHECK(last.t == doctest::Approx(0.25).epsilon(1e-12));
    const Field exact = oracles::sample_field(last.field.grid, [](double, double x2) {
        return std::exp(-0.25) * std::sin(x2);
    });
    CHECK(oracles::max_abs_diff(last.field, exact) <= 1e-10);

    // diagnostics.csv: exact header, one row per stamp, strictly numeric cells.
    const auto rows = lines_of(slurp(dir / "out" / "diagnostics.csv"));
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == "t,linf,l2,besov0_inf_1,besov1_inf_1,holder_a,max_principle_ok");
    double prev_linf = std::numeric_limits<double>::infinity();
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto cells = split_csv(rows[r]);
        REQUIRE(cells.size() == 7);
        const double t = parse_strict(cells[0]);
        const double linf = parse_strict(cells[1]);
        const double l2 = parse_strict(cells[2]);
        CHECK(t == doctest::Approx(0.05 * double(r - 1)).epsilon(1e-12));
        CHECK(linf <= prev_linf + 1e-12); // decaying mode
        CHECK(l2 > 0.0);
        CHECK(parse_strict(cells[6]) == 1.0); // max principle holds on this run
        prev_linf = linf;
    }
    // First row matches the initial data exactly: sup sin(x2) on interior rows
    // and the L2 norm of sin(x2) on the default box, sqrt(pi^2) = pi... the
    // quadrature gives exactly sqrt(L1*L2/4 * 2) = pi for the default grid.
    const auto first = split_csv(rows[1]);
    CHECK(parse_strict(first[1]) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(parse_strict(first[2]) == doctest::Approx(std::acos(-1.0)).epsilon(1e-12));
}

TEST_CASE("simulate honours emit_gnuplot and initial data from a field file") {
    const fs::path dir = scratch("gnuplot");
    // Stage an initial condition on a non-default grid; the run must adopt it.
    GridSpec g;
    g.n1 = 16;
    g.n2 = 15;
    Field init = preset_two_mode(g, 0.5);
    write_field_file((dir / "init.sqgf").string(), init, 0.0);

    RunConfig cfg;
    cfg.mode = RunMode::simulate;
    cfg.grid.n1 = 64; // deliberately different; the file wins, with a warning
    cfg.grid.n2 = 63;
    cfg.init_field_file = (dir / "init.sqgf").string();
    cfg.solver.dt = 5e-3;
    cfg.solver.t_end = 0.05;
    cfg.solver.snapshot_stride = 5;
    cfg.emit_gnuplot = true;
    cfg.output_dir = (dir / "out").string();

    oracles::WarningLog log;
    REQUIRE(run(cfg) == kExitOk);
    CHECK(log.any_contains("overrides the configured grid"));

    const FieldSnapshot first =
        read_field_file((dir / "out" / "snapshot_000000.sqgf").string());
    CHECK(first.field.grid.n1 == 16);
    CHECK(first.field.grid.n2 == 15);
    // The loader re-applies the dealias projection; the datum is already
    // band-limited, so only transform round-off can move it.
    CHECK(oracles::max_abs_diff(first.field, init) <= 1e-14);

    const std::string plot = slurp(dir / "out" / "plot.gp");
    CHECK(plot.find("diagnostics.csv") != std::string::npos);
    CHECK(plot.find("plot") != std::string::npos);
}

TEST_CASE("run reports configuration problems through exit codes, not exceptions") {
    const fs::path dir = scratch("badcfg");

    RunConfig cfg;
    cfg.output_dir = (dir / "out").string();
    SUBCASE("invalid grid") {
        cfg.grid.n1 = 7; // periodic direction needs an even sample count
        CHECK(run(cfg) == kExitConfigError);
    }
    SUBCASE("invalid holder exponent") {
        cfg.holder_a = 1.5;
        CHECK(run(cfg) == kExitConfigError);
    }
    SUBCASE("dt not below t_end") {
        cfg.solver.dt = 2.0;
        cfg.solver.t_end = 1.0;
        CHECK(run(cfg) == kExitConfigError);
    }
    SUBCASE("unknown preset") {
        cfg.init_preset = "vortex_sheet";
        cfg.solver.dt = 0.01;
        cfg.solver.t_end = 0.05;
        CHECK(run(cfg) == kExitConfigError);
    }
    SUBCASE("malformed config file") {
        const fs::path cfile = dir / "run.conf";
        std::ofstream(cfile) << "grid.n1 = 16\ngrid.n2 = fifteen\n";
        CHECK(run(cfile.string()) == kExitConfigError);
    }
    SUBCASE("missing config file") {
        CHECK(run((dir / "absent.conf").string()) == kExitConfigError);
    }
    SUBCASE("analyticity time past the end of the run") {
        cfg.mode = RunMode::analyticity;
        cfg.solver.dt = 0.01;
        cfg.solver.t_end = 0.1;
        cfg.analyticity_t = 0.5;
        CHECK(run(cfg) == kExitConfigError);
    }
}

TEST_CASE("blow-up candidates exit with the numerical-failure code") {
    const fs::path dir = scratch("blowup");
    RunConfig cfg;
    cfg.grid.n1 = 16;
    cfg.grid.n2 = 15;
    cfg.init_preset = "random_band";
    cfg.init_amplitude = 1e4;
    cfg.init_params["j_lo"] = 1;
    cfg.init_params["j_hi"] = 3;
    cfg.seed = 7;
    cfg.solver.dt = 0.5;
    cfg.solver.t_end = 2.0;
    cfg.solver.snapshot_stride = 1;
    cfg.output_dir = (dir / "out").string();
    CHECK(run(cfg) == kExitNumericalFailure);
}

TEST_CASE("picard mode writes the contraction summary next to the trajectory") {
    const fs::path dir = scratch("picard");
    RunConfig cfg;
    cfg.mode = RunMode::picard;
    cfg.grid.n1 = 16;
    cfg.grid.n2 = 15;
    cfg.init_preset = "two_mode";
    cfg.init_amplitude = 0.01;
    cfg.solver.dt = 0.02;
    cfg.solver.t_end = 0.1;
    cfg.solver.snapshot_stride = 1;
    cfg.output_dir = (dir / "out").string();
    REQUIRE(run(cfg) == kExitOk);

    CHECK(fs::exists(dir / "out" / "diagnostics.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_000005.sqgf"));

    const auto rows = lines_of(slurp(dir / "out" / "picard_summary.txt"));
    REQUIRE(rows.size() >= 5);
    CHECK(rows[0].rfind("iterations ", 0) == 0);
    CHECK(rows[1] == "converged true");
    CHECK(rows[2].rfind("final_distance ", 0) == 0);
    CHECK(rows[3].rfind("residual ", 0) == 0);
    CHECK(rows[4].rfind("contraction_ratios", 0) == 0);
    // Small data: every recorded contraction ratio sits below one half.
    {
        std::istringstream is(rows[4].substr(std::string("contraction_ratios").size()));
        double r;
        int n = 0;
        while (is >> r) {
            CHECK(r <= 0.5);
            ++n;
        }
        CHECK(n >= 1);
    }
    const double residual = parse_strict(split_csv(rows[3]).at(0).substr(9));
    CHECK(residual <= 1e-6);
}

TEST_CASE("verify mode writes one estimate row per audit and reflects them in the exit code") {
    const fs::path dir = scratch("verify");
    RunConfig cfg;
    cfg.mode = RunMode::verify;
    cfg.seed = 1;
    cfg.output_dir = (dir / "out").string();
    const int code = run(cfg);

    const auto rows = lines_of(slurp(dir / "out" / "estimates.csv"));
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0] == "name,samples,fitted_constant,fitted_exponent,worst_ratio,verdict,notes");
    bool all_pass = true;
    std::vector<std::string> names;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto cells = split_csv(rows[r]);
        REQUIRE(cells.size() >= 7);
        names.push_back(cells[0]);
        CHECK(std::stol(cells[1]) >= 1);
        CHECK(parse_strict(cells[2]) > 0.0); // fitted constants are positive
        CHECK((cells[5] == "pass" || cells[5] == "fail"));
        INFO(rows[r]);
        CHECK(cells[5] == "pass");
        if (cells[5] != "pass") all_pass = false;
    }
    CHECK(code == (all_pass ? kExitOk : kExitAuditFailure));

    auto has = [&](const char* n) {
        for (const auto& s : names)
            if (s == n) return true;
        return false;
    };
    CHECK(has("smoothing_eigenfunction"));
    CHECK(has("smoothing_band"));
    CHECK(has("maximal_regularity"));
    CHECK(has("bilinear_random_battery"));
    CHECK(has("shell_multiplier_bound"));
}

TEST_CASE("analyticity mode tabulates derivative growth to disk") {
    const fs::path dir = scratch("analytic");
    RunConfig cfg;
    cfg.mode = RunMode::analyticity;
    cfg.grid.n1 = 16;
    cfg.grid.n2 = 15;
    cfg.init_preset = "two_mode";
    cfg.init_amplitude = 0.05;
    cfg.solver.dt = 0.01;
    cfg.solver.t_end = 0.2;
    cfg.solver.snapshot_stride = 5;
    cfg.analyticity_t = 0.1;
    cfg.beta_max = 4;
    cfg.output_dir = (dir / "out").string();
    REQUIRE(run(cfg) == kExitOk);

    const auto space = lines_of(slurp(dir / "out" / "analyticity_space.csv"));
    REQUIRE(space.size() == 1 + 5 * 5);
    CHECK(space[0] == "b1,b2,entry");
    for (size_t r = 1; r < space.size(); ++r) {
        const auto cells = split_csv(space[r]);
        REQUIRE(cells.size() == 3);
        CHECK(parse_strict(cells[2]) >= 0.0);
    }
    // (0,0) entry is the sup norm at the evaluation time: positive and below
    // the initial amplitude budget for this decaying small solution.
    const auto c00 = split_csv(space[1]);
    CHECK(c00[0] == "0");
    CHECK(c00[1] == "0");
    const double sup_at_t = parse_strict(c00[2]);
    CHECK(sup_at_t > 0.0);
    CHECK(sup_at_t < 0.1);

    const auto time_rows = lines_of(slurp(dir / "out" / "analyticity_time.csv"));
    REQUIRE(time_rows.size() == 1 + 5);
    CHECK(time_rows[0] == "alpha,entry");

    const auto summary = lines_of(slurp(dir / "out" / "analyticity_summary.txt"));
    REQUIRE(summary.size() == 5);
    CHECK(summary[0].rfind("t ", 0) == 0);
    CHECK(summary[1] == "beta_max 4");
    CHECK(summary[2].rfind("estimated_C ", 0) == 0);
    CHECK(summary[3].rfind("estimated_C_joint ", 0) == 0);
    CHECK(summary[4].rfind("radius_fit ", 0) == 0);

    // A snapshot stamp that misses analyticity.t is a configuration error.
    RunConfig off = cfg;
    off.output_dir = (dir / "out2").string();
    off.analyticity_t = 0.07;
    CHECK(run(off) == kExitConfigError);
}

TEST_CASE("fixed seeds reproduce simulate output byte for byte") {
    const fs::path a = scratch("replay_a");
    const fs::path b = scratch("replay_b");
    RunConfig cfg;
    cfg.mode = RunMode::simulate;
    cfg.grid.n1 = 16;
    cfg.grid.n2 = 15;
    cfg.init_preset = "random_band";
    cfg.init_amplitude = 0.8;
    cfg.init_params["j_lo"] = 1;
    cfg.init_params["j_hi"] = 3;
    cfg.seed = 1234;
    cfg.solver.dt = 1e-3;
    cfg.solver.t_end = 0.05;
    cfg.solver.snapshot_stride = 10;
    cfg.output_dir = (a / "out").string();
    REQUIRE(run(cfg) == kExitOk);
    cfg.output_dir = (b / "out").string();
    REQUIRE(run(cfg) == kExitOk);

    CHECK(slurp(a / "out" / "diagnostics.csv") == slurp(b / "out" / "diagnostics.csv"));
    for (int i = 0; i <= 5; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06d.sqgf", i);
        CHECK(slurp(a / "out" / name) == slurp(b / "out" / name));
    }
    // Different seed, different bytes: the seed actually reaches the sampler.
    const fs::path c = scratch("replay_c");
    cfg.seed = 1235;
    cfg.output_dir = (c / "out").string();
    REQUIRE(run(cfg) == kExitOk);
    CHECK(slurp(a / "out" / "snapshot_000000.sqgf") !=
          slurp(c / "out" / "snapshot_000000.sqgf"));
}

TEST_CASE("random band preset concentrates its spectrum in the requested shells") {
    GridSpec g; // default 64x63
    Field f = preset_random_band(g, 2, 4, 1.0, 42);
    CHECK(linf_norm(f) == doctest::Approx(1.0).epsilon(1e-12));

    const DyadicPartition part = default_partition(g);
    double in_band = 0.0, total = 0.0;
    for (int j : part.shells()) {
        const double mass = lp_norm(lp_block(f, j, part), BesovParams::kInf);
        total += mass;
        if (j >= 2 && j <= 4) in_band += mass;
    }
    CHECK(total > 0.0);
    CHECK(in_band / total >= 0.99);

    // Same seed, same field; the amplitude only rescales.
    Field f2 = preset_random_band(g, 2, 4, 1.0, 42);
    CHECK(oracles::max_abs_diff(f, f2) == 0.0);
    Field f3 = preset_random_band(g, 2, 4, 0.25, 42);
    for (size_t i = 0; i < f.values.size(); ++i)
        CHECK(f3.values[i] == doctest::Approx(0.25 * f.values[i]).epsilon(1e-12));
}

TEST_CASE("preset factory matches the direct constructors and rejects nonsense") {
    GridSpec g;
    g.n1 = 16;
    g.n2 = 15;

    std::map<std::string, double> p;
    p["amplitude"] = 0.5;
    Field a = make_preset(g, "two_mode", p, 0);
    Field b = preset_two_mode(g, 0.5);
    CHECK(oracles::max_abs_diff(a, b) == 0.0);

    p.clear();
    p["amplitude"] = 1.0;
    p["j_lo"] = 1;
    p["j_hi"] = 2;
    Field r1 = make_preset(g, "random_band", p, 77);
    Field r2 = preset_random_band(g, 1, 2, 1.0, 77);
    CHECK(oracles::max_abs_diff(r1, r2) == 0.0);

    p.clear();
    p["amplitude"] = 1.0;
    p["x0"] = 2.0;
    p["width"] = 0.4;
    Field bump = make_preset(g, "boundary_bump", p, 0);
    Field bump2 = preset_boundary_bump(g, 2.0, 0.4, 1.0);
    CHECK(oracles::max_abs_diff(bump, bump2) == 0.0);

    CHECK_THROWS_AS(make_preset(g, "vortex_sheet", {}, 0), std::invalid_argument);
    // A bump wider than the strip cannot keep its support inside it.
    CHECK_THROWS_AS(preset_boundary_bump(g, 1.0, 3.0, 1.0), std::invalid_argument);
    // Zero amplitude is legal for the plain mode and gives the zero field.
    Field z = preset_single_mode(g, 1, 1, 0.0);
    CHECK(linf_norm(z) == 0.0);
}

TEST_CASE("boundary bump stays concentrated near its anchor point") {
    GridSpec g; // default 2pi x pi box
    const double x0 = 1.0, w = 0.3;
    Field f = preset_boundary_bump(g, x0, w, 1.0);
    CHECK(linf_norm(f) == doctest::Approx(1.0).epsilon(1e-12));

    // The sampled bump is supported in |x1-x0| < 2w, x2 < 2w; the dealias
    // projection smears that with small spectral ripples, so away from the
    // support we only demand smallness, and well away even more so.
    double near_edge = 0.0, far_away = 0.0;
    for (int i = 0; i < g.n1; ++i) {
        double d1 = std::abs(g.x1(i) - x0);
        d1 = std::min(d1, g.L1 - d1); // periodic distance
        for (int j = 1; j <= g.n2; ++j) {
            const double x2 = g.x2(j);
            const double v = std::abs(f.at(i, j));
            if (d1 > 2.0 * w || x2 > 2.0 * w) near_edge = std::max(near_edge, v);
            if (d1 > 4.0 * w && x2 > 4.0 * w) far_away = std::max(far_away, v);
        }
    }
    CHECK(near_edge <= 0.05);
    CHECK(far_away <= 0.01);
}
