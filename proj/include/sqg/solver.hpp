//==============================================================================
// solver.hpp : nonlinear term, mild (Duhamel) formulation, Picard iteration,
//              and exponential time stepping
//
// The evolution solved is   d theta/dt + Lambda theta + (u . grad) theta = 0,
// u = perp-grad Lambda^{-1} theta, with the linear part integrated exactly by
// the semigroup multiplier in both schemes.
//==============================================================================
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqg/calculus.hpp"
#include "sqg/grid.hpp"
#include "sqg/transform.hpp"

namespace sqg {

enum class Scheme { integrating_factor_rk4, etd_rk2 };

Scheme scheme_from_string(const std::string& name); // throws on unknown name
std::string to_string(Scheme s);

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::integrating_factor_rk4;
    int snapshot_stride = 10;   // >= 1
    int picard_max_iter = 64;
    double picard_tol = 1e-8;   // > 0
    int quadrature_nodes = 4;   // >= 2, Duhamel nodes per stored interval

    void validate() const; // throws std::invalid_argument
};

struct Trajectory {
    GridSpec grid;
    std::vector<double> times;                          // strictly increasing
    std::vector<Field> states;                          // one per stamp
    std::vector<std::map<std::string, double>> diagnostics; // one map per stamp

    const Field& state_at(double t) const;  // exact stamp lookup (1e-12 slack)
    size_t size() const { return times.size(); }
};

// Thrown when the state turns non-finite; carries the offending step.
struct NumericalFailure : std::runtime_error {
    long step;
    double time;
    NumericalFailure(long step_, double time_, const std::string& what_)
        : std::runtime_error(what_), step(step_), time(time_) {}
};

// B(f, g) = (perp-grad Lambda^{-1} f . grad) g on the doubled grid: spectral
// derivatives, pointwise physical products, sharp dealias cutoff, restriction.
Field bilinear_transport(const Field& f, const Field& g);

// N(theta) = B(theta, theta).  trace_out (optional) receives the magnitude of
// the doubled-grid boundary rows of the product before restriction — the
// discrete Dirichlet-preservation measure.
Field nonlinear_term(const Field& theta, double* trace_out = nullptr);

// Psi(theta)(t) = e^{-t Lambda} theta0 - int_0^t e^{-(t-tau) Lambda} N(theta(tau)) dtau,
// composite trapezoid with cfg.quadrature_nodes per stored interval of traj
// (states linearly interpolated at interior nodes).  Throws if t is outside
// the trajectory span.
Field mild_rhs(const Field& theta0, const Trajectory& traj, double t,
               const SolverConfig& cfg);

struct PicardResult {
    Trajectory trajectory;
    int iterations = 0;
    std::vector<double> contraction_history; // successive distance ratios
    bool converged = false;
    double final_distance = 0.0;             // metric of the last update
    double residual = 0.0;                   // d(theta, Psi(theta)) at the end
};

// Iterates theta^{n+1} = Psi(theta^n) from theta^0(t) = e^{-t Lambda} theta0 on
// stamps {0, dt, 2dt, ..., T}, measuring the metric
//   d(a,b) = sup_t ||a-b||_{B0_inf_1} + int_0^T ||a-b||_{B1_inf_1} dt.
// Non-convergence within picard_max_iter is reported (converged = false), not
// thrown.  Data with ||theta0||_{B0_inf_1} > 0.1 raises a smallness advisory.
PicardResult picard_solve(const Field& theta0, double T, const SolverConfig& cfg);

// One exponential-integrator step of size dt.
Field step_evolve(const Field& theta, double dt, const SolverConfig& cfg);

// Steps to cfg.t_end recording a snapshot (state + diagnostics: linf, l2,
// besov0_inf_1, besov1_inf_1, holder_a, boundary_trace, nonlinear_trace,
// max_principle_ok) every snapshot_stride steps.  NaN aborts via
// NumericalFailure with the offending step index.
Trajectory simulate(const Field& theta0, const SolverConfig& cfg);

} // namespace sqg
