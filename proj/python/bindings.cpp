//==============================================================================
// bindings.cpp : python module over the strip solver
//
// Exposes the operations a notebook actually wants — grids, fields as numpy
// arrays, the transform pair, spectral calculus, the two integrators, Picard
// iteration, and the estimate audits — without re-wrapping every C++ type.
//==============================================================================
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqg/calculus.hpp"
#include "sqg/dyadic.hpp"
#include "sqg/grid.hpp"
#include "sqg/harness.hpp"
#include "sqg/io.hpp"
#include "sqg/presets.hpp"
#include "sqg/solver.hpp"
#include "sqg/transform.hpp"

namespace py = pybind11;
using namespace sqg;

namespace {

py::array_t<double> field_to_array(const Field& f) {
    py::array_t<double> a({f.grid.n1, f.grid.n2});
    std::memcpy(a.mutable_data(), f.values.data(), f.values.size() * sizeof(double));
    return a;
}

Field field_from_array(const GridSpec& g, const py::array_t<double>& a) {
    const auto buf = a.request();
    if (buf.ndim != 2 || buf.shape[0] != g.n1 || buf.shape[1] != g.n2)
        throw std::invalid_argument("array shape must be (n1, n2) for the given grid");
    Field f(g);
    const auto view = a.unchecked<2>();
    for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j)
            f.values[static_cast<size_t>(i) * g.n2 + j] = view(i, j);
    return f;
}

py::array_t<std::complex<double>> spectrum_to_array(const Spectrum& s) {
    py::array_t<std::complex<double>> a({s.grid.n1, s.grid.n2});
    std::memcpy(a.mutable_data(), s.coeffs.data(),
                s.coeffs.size() * sizeof(std::complex<double>));
    return a;
}

// Besov parameters with 0 standing for infinity, matching the C++ side.
BesovParams besov_params(double s, int p, int q, bool homogeneous) {
    BesovParams bp;
    bp.s = s;
    bp.p = p;
    bp.q = q;
    bp.homogeneous = homogeneous;
    return bp;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral solver for the critical dissipative transport equation on a "
              "periodic strip with a Dirichlet wall, plus its estimate audits.";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int n1, int n2, double L1, double L2, double dealias) {
                 GridSpec g;
                 g.n1 = n1;
                 g.n2 = n2;
                 g.L1 = L1;
                 g.L2 = L2;
                 g.dealias_fraction = dealias;
                 g.validate();
                 return g;
             }),
             py::arg("n1") = 64, py::arg("n2") = 63,
             py::arg("L1") = 6.283185307179586477,
             py::arg("L2") = 3.141592653589793238,
             py::arg("dealias_fraction") = 2.0 / 3.0)
        .def_readonly("n1", &GridSpec::n1)
        .def_readonly("n2", &GridSpec::n2)
        .def_readonly("L1", &GridSpec::L1)
        .def_readonly("L2", &GridSpec::L2)
        .def_readonly("dealias_fraction", &GridSpec::dealias_fraction)
        .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(n1=" + std::to_string(g.n1) + ", n2=" + std::to_string(g.n2) +
                   ", L1=" + std::to_string(g.L1) + ", L2=" + std::to_string(g.L2) + ")";
        });

    py::class_<Field>(m, "Field")
        .def_readonly("grid", &Field::grid)
        .def("to_array", &field_to_array,
             "Interior samples as an (n1, n2) array; row j is x2 = (j+1)*L2/(n2+1).")
        .def("__repr__", [](const Field& f) {
            return "Field(" + std::to_string(f.grid.n1) + "x" +
                   std::to_string(f.grid.n2) + ", linf=" + std::to_string(linf_norm(f)) +
                   ")";
        });

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("grid", &Spectrum::grid)
        .def("to_array", &spectrum_to_array,
             "Coefficients as an (n1, n2) complex array, FFT row order in k, m-1 in "
             "columns.")
        .def("at", [](const Spectrum& s, int k, int m) { return s.at(k, m); },
             py::arg("k"), py::arg("m"));

    m.def("field_from_array", &field_from_array, py::arg("grid"), py::arg("values"),
          "Wrap an (n1, n2) array of interior samples as a Field.");
    m.def("forward_transform", &forward_transform, py::arg("field"));
    m.def("inverse_transform", &inverse_transform, py::arg("spectrum"));
    m.def("eigenvalue", &eigenvalue, py::arg("grid"), py::arg("k"), py::arg("m"));
    m.def("lambda_min", &lambda_min, py::arg("grid"));
    m.def("lambda_max", &lambda_max, py::arg("grid"));

    m.def("linf_norm", &linf_norm, py::arg("field"));
    m.def("lp_norm", &lp_norm, py::arg("field"), py::arg("p"),
          "Grid L^p norm; p in {1, 2} or 0 for the sup norm.");
    m.def(
        "besov_norm",
        [](const Field& f, double s, int p, int q, bool homogeneous) {
            return besov_norm(f, besov_params(s, p, q, homogeneous),
                              default_partition(f.grid));
        },
        py::arg("field"), py::arg("s") = 0.0, py::arg("p") = 0, py::arg("q") = 1,
        py::arg("homogeneous") = true,
        "Besov norm over the grid's default dyadic partition; p = q = 0 mean infinity.");
    m.def("holder_seminorm", &holder_seminorm, py::arg("field"), py::arg("a"),
          py::arg("pair_budget") = 2048);

    m.def(
        "semigroup", [](const Field& f, double t) { return semigroup(f, t); },
        py::arg("field"), py::arg("t"), "exp(-t Lambda) applied to the field.");
    m.def("frac_lambda", [](const Field& f, double s) { return frac_lambda(f, s); },
          py::arg("field"), py::arg("s"), "Lambda^s applied to the field.");
    m.def("velocity", &velocity, py::arg("theta"),
          "Perp-gradient of Lambda^{-1} theta as a (u1, u2) pair.");
    m.def("nonlinear_term",
          [](const Field& theta) { return nonlinear_term(theta, nullptr); },
          py::arg("theta"), "(u . grad) theta with dealiasing.");
    m.def("bilinear_transport", &bilinear_transport, py::arg("f"), py::arg("g"));
    m.def("time_derivative", &time_derivative, py::arg("theta"), py::arg("alpha"),
          "d^alpha/dt^alpha of the solution through the equation's recursion.");

    m.def(
        "make_preset",
        [](const GridSpec& g, const std::string& name,
           const std::map<std::string, double>& params, std::uint64_t seed) {
            return make_preset(g, name, params, seed);
        },
        py::arg("grid"), py::arg("name"),
        py::arg("params") = std::map<std::string, double>{}, py::arg("seed") = 0,
        "Initial data by name: single_mode, two_mode, boundary_bump, interior_bump, "
        "random_band.");

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](double dt, double t_end, const std::string& scheme,
                         int snapshot_stride, int picard_max_iter, double picard_tol,
                         int quadrature_nodes) {
                 SolverConfig c;
                 c.dt = dt;
                 c.t_end = t_end;
                 c.scheme = scheme_from_string(scheme);
                 c.snapshot_stride = snapshot_stride;
                 c.picard_max_iter = picard_max_iter;
                 c.picard_tol = picard_tol;
                 c.quadrature_nodes = quadrature_nodes;
                 c.validate();
                 return c;
             }),
             py::arg("dt") = 1e-3, py::arg("t_end") = 1.0,
             py::arg("scheme") = "integrating_factor_rk4",
             py::arg("snapshot_stride") = 10, py::arg("picard_max_iter") = 64,
             py::arg("picard_tol") = 1e-8, py::arg("quadrature_nodes") = 4)
        .def_readonly("dt", &SolverConfig::dt)
        .def_readonly("t_end", &SolverConfig::t_end)
        .def_readonly("snapshot_stride", &SolverConfig::snapshot_stride)
        .def_property_readonly(
            "scheme", [](const SolverConfig& c) { return to_string(c.scheme); });

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def("__len__", [](const Trajectory& t) { return t.size(); })
        .def("state", [](const Trajectory& t, size_t i) { return t.states.at(i); },
             py::arg("i"))
        .def("state_at", &Trajectory::state_at, py::arg("t"),
             py::return_value_policy::copy)
        .def("diagnostics",
             [](const Trajectory& t, size_t i) { return t.diagnostics.at(i); },
             py::arg("i"));

    m.def("simulate", &simulate, py::arg("theta0"), py::arg("config"),
          "Step theta0 to config.t_end, recording snapshots and diagnostics.");
    m.def("step_evolve", &step_evolve, py::arg("theta"), py::arg("dt"),
          py::arg("config"));

    py::class_<PicardResult>(m, "PicardResult")
        .def_readonly("trajectory", &PicardResult::trajectory)
        .def_readonly("iterations", &PicardResult::iterations)
        .def_readonly("contraction_history", &PicardResult::contraction_history)
        .def_readonly("converged", &PicardResult::converged)
        .def_readonly("final_distance", &PicardResult::final_distance)
        .def_readonly("residual", &PicardResult::residual);
    m.def("picard_solve", &picard_solve, py::arg("theta0"), py::arg("T"),
          py::arg("config"));

    py::class_<AnalyticityReport>(m, "AnalyticityReport")
        .def_readonly("t", &AnalyticityReport::t)
        .def_readonly("beta_max", &AnalyticityReport::beta_max)
        .def_readonly("space_table", &AnalyticityReport::space_table)
        .def_readonly("time_table", &AnalyticityReport::time_table)
        .def_readonly("estimated_C", &AnalyticityReport::estimated_C)
        .def_readonly("estimated_C_joint", &AnalyticityReport::estimated_C_joint)
        .def_readonly("radius_fit", &AnalyticityReport::radius_fit);
    m.def("analyticity_diagnostic", &analyticity_diagnostic, py::arg("trajectory"),
          py::arg("t"), py::arg("beta_max"),
          "Factorially normalized derivative tables at a stored stamp.");

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("name", &EstimateReport::name)
        .def_readonly("samples", &EstimateReport::samples)
        .def_readonly("fitted_constant", &EstimateReport::fitted_constant)
        .def_readonly("fitted_exponent", &EstimateReport::fitted_exponent)
        .def_readonly("worst_ratio", &EstimateReport::worst_ratio)
        .def_property_readonly(
            "verdict", [](const EstimateReport& r) { return to_string(r.verdict); })
        .def_readonly("notes", &EstimateReport::notes)
        .def("__repr__", [](const EstimateReport& r) {
            return "EstimateReport(" + r.name + ": " + to_string(r.verdict) + ")";
        });
    m.def("run_verify_battery", &run_verify_battery, py::arg("grid"),
          py::arg("seed") = 0,
          "The audit battery behind `sqg verify`: smoothing, maximal regularity, "
          "bilinear battery, shell multipliers.");

    m.def(
        "write_field_file",
        [](const std::string& path, const Field& f, double t) {
            write_field_file(path, f, t);
        },
        py::arg("path"), py::arg("field"), py::arg("t") = 0.0);
    m.def(
        "read_field_file",
        [](const std::string& path) {
            FieldSnapshot s = read_field_file(path);
            return py::make_tuple(std::move(s.field), s.t);
        },
        py::arg("path"), "Returns (field, t).");
}
