//==============================================================================
// solver.cpp : transport nonlinearity, mild formulation, Picard iteration,
//              exponential integrators, and the simulation driver
//==============================================================================
#include "sqg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "doubled.hpp"
#include "sqg/harness.hpp"
#include "sqg/warnings.hpp"

namespace sqg {

//-------------------------------------------------------------- configuration --

Scheme scheme_from_string(const std::string& name) {
    if (name == "integrating_factor_rk4") return Scheme::integrating_factor_rk4;
    if (name == "etd_rk2") return Scheme::etd_rk2;
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (expected integrating_factor_rk4 or etd_rk2)");
}

std::string to_string(Scheme s) {
    return s == Scheme::integrating_factor_rk4 ? "integrating_factor_rk4" : "etd_rk2";
}

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(dt < t_end)) throw std::invalid_argument("SolverConfig: dt must be smaller than t_end");
    if (snapshot_stride < 1)
        throw std::invalid_argument("SolverConfig: snapshot_stride must be >= 1");
    if (picard_max_iter < 1)
        throw std::invalid_argument("SolverConfig: picard_max_iter must be >= 1");
    if (!(picard_tol > 0.0))
        throw std::invalid_argument("SolverConfig: picard_tol must be positive");
    if (quadrature_nodes < 2)
        throw std::invalid_argument("SolverConfig: quadrature_nodes must be >= 2");
}

const Field& Trajectory::state_at(double t) const {
    for (size_t i = 0; i < times.size(); ++i)
        if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t)))
            return states[i];
    throw std::out_of_range("Trajectory::state_at: no stamp at t = " + std::to_string(t));
}

//------------------------------------------------------------------ nonlinear --

namespace {

Field bilinear_core(const Field& f, const Field& g, double* trace_out) {
    f.validate();
    if (&f != &g) {
        g.validate();
        if (f.grid != g.grid)
            throw std::invalid_argument("bilinear_transport: fields live on different grids");
    }
    using detail::DoubledCoeffs;

    DoubledCoeffs fhat = detail::doubled_transform(odd_extend(f));
    detail::dealias(fhat);
    DoubledCoeffs ghat = (&f == &g) ? fhat : [&g] {
        DoubledCoeffs h = detail::doubled_transform(odd_extend(g));
        detail::dealias(h);
        return h;
    }();

    DoubledCoeffs u1h = fhat, u2h = fhat;
    detail::map_modes(u1h, [](double xi1, double xi2, std::complex<double> z) {
        const double r = std::hypot(xi1, xi2);
        return r == 0.0 ? std::complex<double>(0.0)
                        : std::complex<double>(0.0, -xi2 / r) * z;
    });
    detail::map_modes(u2h, [](double xi1, double xi2, std::complex<double> z) {
        const double r = std::hypot(xi1, xi2);
        return r == 0.0 ? std::complex<double>(0.0)
                        : std::complex<double>(0.0, xi1 / r) * z;
    });
    DoubledCoeffs g1h = ghat, g2h = ghat;
    detail::map_modes(g1h, [](double xi1, double, std::complex<double> z) {
        return std::complex<double>(0.0, xi1) * z;
    });
    detail::map_modes(g2h, [](double, double xi2, std::complex<double> z) {
        return std::complex<double>(0.0, xi2) * z;
    });

    const ExtendedField u1 = detail::doubled_synthesis(u1h);
    const ExtendedField u2 = detail::doubled_synthesis(u2h);
    const ExtendedField g1 = detail::doubled_synthesis(g1h);
    const ExtendedField g2 = detail::doubled_synthesis(g2h);

    ExtendedField prod(f.grid);
    for (size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = u1.values[i] * g1.values[i] + u2.values[i] * g2.values[i];

    DoubledCoeffs ph = detail::doubled_transform(prod);
    detail::dealias(ph);
    const ExtendedField clean = detail::doubled_synthesis(ph);
    if (trace_out) *trace_out = detail::boundary_rows_max(clean);
    return restrict_field(clean);
}

// Per-mode eigenvalues in the spectrum's storage order.
std::vector<double> eigen_table(const GridSpec& g) {
    std::vector<double> lam(static_cast<size_t>(g.n1) * g.n2);
    Spectrum probe(g);
    for (int a = 0; a < g.n1; ++a) {
        const int k = probe.k_of_row(a);
        for (int m = 1; m <= g.n2; ++m)
            lam[static_cast<size_t>(a) * g.n2 + (m - 1)] = eigenvalue(g, k, m);
    }
    return lam;
}

// Spectrum of -N(theta) given theta's spectrum (the nonlinear part of the RHS).
Spectrum minus_nonlinear_hat(const Spectrum& xhat) {
    Spectrum nh = forward_transform(nonlinear_term(inverse_transform(xhat)));
    for (auto& z : nh.coeffs) z = -z;
    return nh;
}

Field lerp_fields(const Field& a, const Field& b, double w) {
    Field out(a.grid);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (1.0 - w) * a.values[i] + w * b.values[i];
    return out;
}

} // namespace

Field bilinear_transport(const Field& f, const Field& g) {
    return bilinear_core(f, g, nullptr);
}

Field nonlinear_term(const Field& theta, double* trace_out) {
    return bilinear_core(theta, theta, trace_out);
}

//----------------------------------------------------------- mild formulation --

Field mild_rhs(const Field& theta0, const Trajectory& traj, double t,
               const SolverConfig& cfg) {
    cfg.validate();
    theta0.validate();
    if (traj.times.empty())
        throw std::invalid_argument("mild_rhs: empty trajectory");
    if (t < traj.times.front() - 1e-12 || t > traj.times.back() + 1e-12)
        throw std::out_of_range("mild_rhs: time outside the trajectory span");
    t = std::clamp(t, traj.times.front(), traj.times.back());

    const GridSpec& g = theta0.grid;
    const std::vector<double> lam = eigen_table(g);
    const Spectrum hat0 = forward_transform(theta0);

    Spectrum acc(g); // int_0^t e^{-(t-tau) Lambda} Nhat(tau) dtau
    const int Q = cfg.quadrature_nodes;
    for (size_t i = 0; i + 1 < traj.times.size() && traj.times[i] < t; ++i) {
        const double a = traj.times[i];
        const double b = std::min(traj.times[i + 1], t);
        const double span = traj.times[i + 1] - traj.times[i];
        const double h = b - a;
        if (!(h > 0.0)) continue;
        const double sub = h / (Q - 1);
        for (int r = 0; r < Q; ++r) {
            const double tau = a + r * sub;
            const double w = (r == 0 || r == Q - 1) ? 0.5 * sub : sub;
            const double omega = (tau - traj.times[i]) / span;
            const Field state = lerp_fields(traj.states[i], traj.states[i + 1], omega);
            const Spectrum nh = forward_transform(nonlinear_term(state));
            const double decay = t - tau;
            for (size_t idx = 0; idx < acc.coeffs.size(); ++idx)
                acc.coeffs[idx] += w * std::exp(-decay * lam[idx]) * nh.coeffs[idx];
        }
    }

    Spectrum out(g);
    for (size_t idx = 0; idx < out.coeffs.size(); ++idx)
        out.coeffs[idx] = std::exp(-t * lam[idx]) * hat0.coeffs[idx] - acc.coeffs[idx];
    return inverse_transform(out);
}

//-------------------------------------------------------------------- Picard --

namespace {

std::vector<double> stamp_times(double T, double dt) {
    const long n = static_cast<long>(std::ceil(T / dt - 1e-12));
    std::vector<double> times(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) times[static_cast<size_t>(i)] = std::min(i * dt, T);
    times.back() = T;
    return times;
}

// Snapshot diagnostics shared by simulate() and picard_solve().
std::map<std::string, double> stamp_diagnostics(const Field& f,
                                                const DyadicPartition& P,
                                                bool max_principle_ok) {
    const Spectrum sp = forward_transform(f);
    double nl_trace = 0.0;
    nonlinear_term(f, &nl_trace);
    const double bdry = detail::boundary_rows_max(
        detail::doubled_synthesis(detail::doubled_transform(odd_extend(f))));
    return {
        {"linf", linf_norm(f)},
        {"l2", lp_norm(f, 2)},
        {"besov0_inf_1", besov_norm(sp, BesovParams{0.0, BesovParams::kInf, 1, true}, P)},
        {"besov1_inf_1", besov_norm(sp, BesovParams{1.0, BesovParams::kInf, 1, true}, P)},
        {"holder_a", holder_seminorm(f, 0.25, 2048)},
        {"boundary_trace", bdry},
        {"nonlinear_trace", nl_trace},
        {"max_principle_ok", max_principle_ok ? 1.0 : 0.0},
    };
}

} // namespace

PicardResult picard_solve(const Field& theta0, double T, const SolverConfig& cfg) {
    cfg.validate();
    theta0.validate();
    if (!(T > 0.0)) throw std::invalid_argument("picard_solve: horizon must be positive");

    const GridSpec& g = theta0.grid;
    const DyadicPartition P = default_partition(g);
    const BesovParams B0{0.0, BesovParams::kInf, 1, true};
    const BesovParams B1{1.0, BesovParams::kInf, 1, true};

    if (besov_norm(theta0, B0, P) > 0.1)
        warn("picard_solve: datum exceeds the smallness threshold 0.1; "
             "contraction is not guaranteed");

    const std::vector<double> times = stamp_times(T, cfg.dt);
    const size_t n = times.size() - 1;
    const std::vector<double> lam = eigen_table(g);
    const Spectrum hat0 = forward_transform(theta0);
    const int Q = cfg.quadrature_nodes;

    // Iterates live in coefficient space; fields are synthesized on demand.
    std::vector<Spectrum> cur(times.size(), Spectrum(g));
    for (size_t i = 0; i <= n; ++i)
        for (size_t idx = 0; idx < hat0.coeffs.size(); ++idx)
            cur[i].coeffs[idx] = std::exp(-times[i] * lam[idx]) * hat0.coeffs[idx];

    // One Duhamel sweep: out[i] = e^{-t_i L} theta0_hat - I_i with the integral
    // advanced incrementally, I_{i+1} = e^{-h L} I_i + (trapezoid over the
    // interval).  This evaluates the same quadrature as mild_rhs.
    auto sweep = [&](const std::vector<Spectrum>& st, std::vector<Spectrum>& out) {
        std::vector<Field> F(times.size());
        std::vector<Spectrum> nhat(times.size(), Spectrum(g));
        for (size_t i = 0; i <= n; ++i) {
            F[i] = inverse_transform(st[i]);
            nhat[i] = forward_transform(nonlinear_term(F[i]));
        }
        Spectrum I(g);
        out[0] = hat0;
        for (size_t i = 0; i < n; ++i) {
            const double h = times[i + 1] - times[i];
            const double sub = h / (Q - 1);
            Spectrum In(g);
            for (size_t idx = 0; idx < In.coeffs.size(); ++idx)
                In.coeffs[idx] = std::exp(-h * lam[idx]) * I.coeffs[idx];
            for (int r = 0; r < Q; ++r) {
                const double w = (r == 0 || r == Q - 1) ? 0.5 * sub : sub;
                const double decay = (Q - 1 - r) * sub; // t_{i+1} - tau_r
                const Spectrum* nh = nullptr;
                Spectrum interior(g);
                if (r == 0) {
                    nh = &nhat[i];
                } else if (r == Q - 1) {
                    nh = &nhat[i + 1];
                } else {
                    const double omega = static_cast<double>(r) / (Q - 1);
                    interior = forward_transform(
                        nonlinear_term(lerp_fields(F[i], F[i + 1], omega)));
                    nh = &interior;
                }
                for (size_t idx = 0; idx < In.coeffs.size(); ++idx)
                    In.coeffs[idx] += w * std::exp(-decay * lam[idx]) * nh->coeffs[idx];
            }
            I = In;
            for (size_t idx = 0; idx < I.coeffs.size(); ++idx)
                out[i + 1].coeffs[idx] =
                    std::exp(-times[i + 1] * lam[idx]) * hat0.coeffs[idx] - I.coeffs[idx];
        }
    };

    auto metric = [&](const std::vector<Spectrum>& A, const std::vector<Spectrum>& B) {
        double sup0 = 0.0;
        std::vector<double> b1(times.size());
        for (size_t i = 0; i <= n; ++i) {
            Spectrum d(g);
            for (size_t idx = 0; idx < d.coeffs.size(); ++idx)
                d.coeffs[idx] = A[i].coeffs[idx] - B[i].coeffs[idx];
            sup0 = std::max(sup0, besov_norm(d, B0, P));
            b1[i] = besov_norm(d, B1, P);
        }
        double int1 = 0.0;
        for (size_t i = 0; i < n; ++i)
            int1 += 0.5 * (b1[i] + b1[i + 1]) * (times[i + 1] - times[i]);
        return sup0 + int1;
    };

    PicardResult res;
    std::vector<Spectrum> next(times.size(), Spectrum(g));
    double prev_d = -1.0;
    for (int iter = 1; iter <= cfg.picard_max_iter; ++iter) {
        sweep(cur, next);
        const double d = metric(next, cur);
        res.iterations = iter;
        if (!std::isfinite(d)) {
            // Iteration left the contraction regime entirely; keep the last
            // finite iterate and report rather than propagate the overflow.
            warn("picard_solve: iteration diverged; keeping the last finite iterate");
            res.final_distance = d;
            break;
        }
        if (prev_d > 0.0) res.contraction_history.push_back(d / prev_d);
        prev_d = d;
        res.final_distance = d;
        cur.swap(next);
        if (d <= cfg.picard_tol) {
            res.converged = true;
            break;
        }
    }
    if (!res.converged)
        warn("picard_solve: tolerance not reached within picard_max_iter sweeps");

    sweep(cur, next); // fixed-point residual d(theta, Psi(theta))
    res.residual = metric(next, cur);

    res.trajectory.grid = g;
    res.trajectory.times = times;
    res.trajectory.states.reserve(times.size());
    res.trajectory.diagnostics.reserve(times.size());
    double prev_linf = 0.0;
    for (size_t i = 0; i <= n; ++i) {
        res.trajectory.states.push_back(inverse_transform(cur[i]));
        const Field& f = res.trajectory.states.back();
        const double m = linf_norm(f);
        const bool ok = (i == 0) || m <= prev_linf + 1e-6;
        prev_linf = m;
        res.trajectory.diagnostics.push_back(stamp_diagnostics(f, P, ok));
    }
    return res;
}

//-------------------------------------------------------------- time stepping --

namespace {

double phi1(double z) {
    if (std::abs(z) < 1e-2)
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    return std::expm1(z) / z;
}

double phi2(double z) {
    if (std::abs(z) < 1e-2)
        return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
    return (std::expm1(z) - z) / (z * z);
}

Field step_if_rk4(const Field& theta, double dt) {
    const GridSpec& g = theta.grid;
    const std::vector<double> lam = eigen_table(g);
    const size_t nmodes = lam.size();
    std::vector<double> E(nmodes), E2(nmodes);
    for (size_t i = 0; i < nmodes; ++i) {
        E[i] = std::exp(-0.5 * dt * lam[i]);
        E2[i] = std::exp(-dt * lam[i]);
    }

    const Spectrum c = forward_transform(theta);
    Spectrum tmp(g);

    const Spectrum a = minus_nonlinear_hat(c);
    for (size_t i = 0; i < nmodes; ++i)
        tmp.coeffs[i] = E[i] * (c.coeffs[i] + 0.5 * dt * a.coeffs[i]);
    const Spectrum b = minus_nonlinear_hat(tmp);
    for (size_t i = 0; i < nmodes; ++i)
        tmp.coeffs[i] = E[i] * c.coeffs[i] + 0.5 * dt * b.coeffs[i];
    const Spectrum c2 = minus_nonlinear_hat(tmp);
    for (size_t i = 0; i < nmodes; ++i)
        tmp.coeffs[i] = E2[i] * c.coeffs[i] + dt * E[i] * c2.coeffs[i];
    const Spectrum d = minus_nonlinear_hat(tmp);

    Spectrum out(g);
    for (size_t i = 0; i < nmodes; ++i)
        out.coeffs[i] = E2[i] * c.coeffs[i] +
                        (dt / 6.0) * (E2[i] * a.coeffs[i] +
                                      2.0 * E[i] * (b.coeffs[i] + c2.coeffs[i]) +
                                      d.coeffs[i]);
    return inverse_transform(out);
}

Field step_etd_rk2(const Field& theta, double dt) {
    const GridSpec& g = theta.grid;
    const std::vector<double> lam = eigen_table(g);
    const size_t nmodes = lam.size();

    const Spectrum c = forward_transform(theta);
    const Spectrum a = minus_nonlinear_hat(c);

    Spectrum ustar(g);
    for (size_t i = 0; i < nmodes; ++i) {
        const double z = -dt * lam[i];
        ustar.coeffs[i] = std::exp(z) * c.coeffs[i] + dt * phi1(z) * a.coeffs[i];
    }
    const Spectrum b = minus_nonlinear_hat(ustar);

    Spectrum out(g);
    for (size_t i = 0; i < nmodes; ++i) {
        const double z = -dt * lam[i];
        out.coeffs[i] = ustar.coeffs[i] + dt * phi2(z) * (b.coeffs[i] - a.coeffs[i]);
    }
    return inverse_transform(out);
}

} // namespace

Field step_evolve(const Field& theta, double dt, const SolverConfig& cfg) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_evolve: dt must be positive");
    theta.validate();
    return cfg.scheme == Scheme::integrating_factor_rk4 ? step_if_rk4(theta, dt)
                                                        : step_etd_rk2(theta, dt);
}

//------------------------------------------------------------------- simulate --

Trajectory simulate(const Field& theta0, const SolverConfig& cfg) {
    cfg.validate();
    theta0.validate();
    const GridSpec& g = theta0.grid;
    const DyadicPartition P = default_partition(g);

    Trajectory traj;
    traj.grid = g;

    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-12));
    Field cur = theta0;
    double t = 0.0;
    double prev_linf = linf_norm(cur);
    bool window_ok = true;

    traj.times.push_back(0.0);
    traj.states.push_back(cur);
    traj.diagnostics.push_back(stamp_diagnostics(cur, P, true));

    for (long step = 1; step <= n_steps; ++step) {
        const double t_next = (step == n_steps) ? cfg.t_end : step * cfg.dt;
        const double h = t_next - t;
        try {
            cur = step_evolve(cur, h, cfg);
        } catch (const NumericalFailure&) {
            throw;
        } catch (const std::exception& e) {
            // A state that is still finite but enormous can overflow inside the
            // stage arithmetic; surface that as a numerical failure with the
            // step that produced it rather than a bare validation error.
            throw NumericalFailure(step, t_next,
                                   std::string("simulate: step blew up (") + e.what() + ")");
        }
        t = t_next;

        const double m = linf_norm(cur);
        if (!std::isfinite(m))
            throw NumericalFailure(step, t, "simulate: state became non-finite");
        if (m > prev_linf + 1e-6) window_ok = false;
        prev_linf = m;

        if (step % cfg.snapshot_stride == 0 || step == n_steps) {
            traj.times.push_back(t);
            traj.states.push_back(cur);
            traj.diagnostics.push_back(stamp_diagnostics(cur, P, window_ok));
            window_ok = true;
        }
    }
    return traj;
}

} // namespace sqg
