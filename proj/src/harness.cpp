//==============================================================================
// harness.cpp : numerical audits of the governing estimates and the
//               analyticity diagnostics
//==============================================================================
#include "sqg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doubled.hpp"
#include "sqg/presets.hpp"
#include "sqg/warnings.hpp"

namespace sqg {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

namespace {

constexpr BesovParams kB0{0.0, BesovParams::kInf, 1, true};
constexpr BesovParams kB1{1.0, BesovParams::kInf, 1, true};

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

std::vector<double> binom_row(int n) {
    std::vector<double> row(static_cast<size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

//------------------------------------------------------------------ smoothing --

EstimateReport verify_smoothing(const DyadicPartition& P, double s, const Field& f,
                                const std::vector<double>& times,
                                double declared_constant) {
    if (times.empty())
        throw std::invalid_argument("verify_smoothing: no sample times");
    for (double t : times)
        if (!(t > 0.0))
            throw std::invalid_argument("verify_smoothing: times must be positive");
    f.validate();

    EstimateReport rep;
    rep.name = "smoothing";
    rep.samples = static_cast<int>(times.size());

    const Spectrum hat = forward_transform(f);
    const BesovParams Bs{s, BesovParams::kInf, 1, true};
    const double denom = besov_norm(hat, kB0, P);
    if (denom == 0.0) {
        rep.verdict = Verdict::pass;
        rep.notes = "zero datum: both sides vanish";
        return rep;
    }

    double worst = 0.0, t_worst = times.front();
    std::vector<double> lx, ly;
    for (double t : times) {
        const double ns = besov_norm(semigroup(hat, t), Bs, P);
        const double ratio = std::pow(t, s) * ns / denom;
        if (ratio > worst) {
            worst = ratio;
            t_worst = t;
        }
        if (ns > 0.0) {
            lx.push_back(std::log(t));
            ly.push_back(std::log(ns));
        }
    }
    rep.worst_ratio = worst;
    rep.fitted_constant = worst;
    rep.fitted_exponent = lx.size() >= 2 ? least_squares_slope(lx, ly) : 0.0;
    rep.verdict = worst <= declared_constant ? Verdict::pass : Verdict::fail;
    rep.notes = "sup ratio " + fmt(worst) + " at t = " + fmt(t_worst) +
                "; log-log slope " + fmt(rep.fitted_exponent) + "; declared " +
                fmt(declared_constant);
    return rep;
}

//--------------------------------------------------------- maximal regularity --

EstimateReport verify_maximal_regularity(const DyadicPartition& P,
                                         const Trajectory& forcing,
                                         double declared_constant) {
    if (forcing.times.empty())
        throw std::invalid_argument("verify_maximal_regularity: empty forcing");
    const size_t n = forcing.times.size();
    for (size_t i = 0; i + 1 < n; ++i)
        if (!(forcing.times[i] < forcing.times[i + 1]))
            throw std::invalid_argument(
                "verify_maximal_regularity: times must be strictly increasing");

    const GridSpec& g = forcing.grid;
    std::vector<Spectrum> fhat(n, Spectrum(g));
    std::vector<double> f0(n);
    for (size_t i = 0; i < n; ++i) {
        fhat[i] = forward_transform(forcing.states[i]);
        f0[i] = besov_norm(fhat[i], kB0, P);
    }

    // y_{i+1} = e^{-h L} y_i + (h/2)(e^{-h L} f_i + f_{i+1})  (trapezoid Duhamel)
    Spectrum y(g);
    double sup0 = 0.0;
    std::vector<double> y1(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        const double h = forcing.times[i + 1] - forcing.times[i];
        Spectrum next(g);
        for (size_t idx = 0; idx < next.coeffs.size(); ++idx)
            next.coeffs[idx] = y.coeffs[idx] + 0.5 * h * fhat[i].coeffs[idx];
        next = semigroup(next, h);
        for (size_t idx = 0; idx < next.coeffs.size(); ++idx)
            next.coeffs[idx] += 0.5 * h * fhat[i + 1].coeffs[idx];
        y = next;
        sup0 = std::max(sup0, besov_norm(y, kB0, P));
        y1[i + 1] = besov_norm(y, kB1, P);
    }

    double int1 = 0.0, rhs = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double h = forcing.times[i + 1] - forcing.times[i];
        int1 += 0.5 * h * (y1[i] + y1[i + 1]);
        rhs += 0.5 * h * (f0[i] + f0[i + 1]);
    }

    EstimateReport rep;
    rep.name = "maximal_regularity";
    rep.samples = static_cast<int>(n);
    const double lhs = sup0 + int1;
    if (rhs == 0.0) {
        rep.verdict = lhs == 0.0 ? Verdict::pass : Verdict::fail;
        rep.notes = "zero forcing";
        return rep;
    }
    rep.worst_ratio = lhs / rhs;
    rep.fitted_constant = rep.worst_ratio;
    rep.verdict = rep.worst_ratio <= declared_constant ? Verdict::pass : Verdict::fail;
    rep.notes = "sup-part " + fmt(sup0) + ", integral-part " + fmt(int1) +
                ", forcing mass " + fmt(rhs) + "; declared " + fmt(declared_constant);
    return rep;
}

//------------------------------------------------------------------- bilinear --

EstimateReport verify_bilinear(const DyadicPartition& P, const Field& f,
                               const Field& g, double s, double declared_constant) {
    if (s < 0.0)
        throw std::invalid_argument("verify_bilinear: regularity index must be >= 0");

    const double lhs =
        besov_norm(bilinear_transport(f, g), BesovParams{s, BesovParams::kInf, 1, true}, P);
    double rhs;
    if (s == 0.0) {
        rhs = besov_norm(f, kB0, P) * besov_norm(g, kB1, P);
    } else {
        const BesovParams Bs{s, BesovParams::kInf, 1, true};
        const BesovParams Bs1{s + 1.0, BesovParams::kInf, 1, true};
        rhs = besov_norm(f, Bs, P) * besov_norm(g, kB1, P) +
              besov_norm(f, kB0, P) * besov_norm(g, Bs1, P);
    }

    EstimateReport rep;
    rep.name = "bilinear";
    rep.samples = 1;
    if (rhs == 0.0) {
        rep.verdict = lhs == 0.0 ? Verdict::pass : Verdict::fail;
        rep.notes = "degenerate pair (zero right-hand side)";
        return rep;
    }
    rep.worst_ratio = lhs / rhs;
    rep.fitted_constant = std::pow(rep.worst_ratio, 1.0 / (s + 1.0));
    rep.fitted_exponent = s;
    rep.verdict = rep.fitted_constant <= declared_constant ? Verdict::pass : Verdict::fail;
    rep.notes = "ratio " + fmt(rep.worst_ratio) + " at s = " + fmt(s) + "; declared " +
                fmt(declared_constant);
    return rep;
}

EstimateReport verify_bilinear_battery(const GridSpec& grid, const DyadicPartition& P,
                                       int n_pairs, std::uint64_t seed,
                                       double declared_constant) {
    if (n_pairs < 1)
        throw std::invalid_argument("verify_bilinear_battery: n_pairs must be >= 1");
    grid.validate();

    static constexpr int kBands[][2] = {{1, 4}, {2, 5}, {1, 5}, {2, 4}, {3, 5}, {1, 3}};
    static constexpr int kNBands = 6;

    EstimateReport rep;
    rep.name = "bilinear_random_battery";
    rep.samples = n_pairs;
    double worst = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
        const auto& bf = kBands[p % kNBands];
        const auto& bg = kBands[(p + 2) % kNBands];
        const Field f =
            preset_random_band(grid, bf[0], bf[1], 1.0, seed + 2 * static_cast<std::uint64_t>(p));
        const Field g = preset_random_band(grid, bg[0], bg[1], 1.0,
                                           seed + 2 * static_cast<std::uint64_t>(p) + 1);
        const EstimateReport one = verify_bilinear(P, f, g, 0.0, declared_constant);
        worst = std::max(worst, one.worst_ratio);
    }
    rep.worst_ratio = worst;
    rep.fitted_constant = worst;
    rep.verdict = worst <= declared_constant ? Verdict::pass : Verdict::fail;
    rep.notes = "worst ratio " + fmt(worst) + " over " + std::to_string(n_pairs) +
                " band pairs; declared " + fmt(declared_constant);
    return rep;
}

//----------------------------------------------------------- time derivatives --

namespace {

// D[a] = dt^a theta for a = 0..alpha via the Leibniz recursion.
std::vector<Field> derivative_ladder(const Field& theta, int alpha) {
    std::vector<Field> D;
    D.reserve(static_cast<size_t>(alpha) + 1);
    D.push_back(theta);
    for (int a = 1; a <= alpha; ++a) {
        Field acc = frac_lambda(D[a - 1], 1.0);
        for (double& v : acc.values) v = -v;
        const std::vector<double> bin = binom_row(a - 1);
        for (int gamma = 0; gamma <= a - 1; ++gamma) {
            const Field b = bilinear_transport(D[gamma], D[a - 1 - gamma]);
            for (size_t i = 0; i < acc.values.size(); ++i)
                acc.values[i] -= bin[gamma] * b.values[i];
        }
        D.push_back(std::move(acc));
    }
    return D;
}

void roundoff_advisory(const GridSpec& g, int alpha) {
    if (alpha >= 1 && std::pow(lambda_max(g), alpha) > 1e12)
        warn("time_derivative: lambda_max^" + std::to_string(alpha) +
             " exceeds 1e12; round-off dominates the highest orders");
}

} // namespace

Field time_derivative(const Field& theta, int alpha) {
    if (alpha < 1)
        throw std::invalid_argument("time_derivative: order must be >= 1");
    theta.validate();
    roundoff_advisory(theta.grid, alpha);
    return derivative_ladder(theta, alpha).back();
}

//---------------------------------------------------------------- analyticity --

namespace {

// d1^b1 d2^b2 theta, restricted to the interior rows.
Field spatial_derivative(const detail::DoubledCoeffs& hat, int b1, int b2) {
    detail::DoubledCoeffs d = hat;
    const int quarter = (b1 + b2) % 4;
    std::complex<double> ipow(1.0, 0.0);
    switch (quarter) {
        case 1: ipow = {0.0, 1.0}; break;
        case 2: ipow = {-1.0, 0.0}; break;
        case 3: ipow = {0.0, -1.0}; break;
        default: break;
    }
    detail::map_modes(d, [b1, b2, ipow](double xi1, double xi2, std::complex<double> z) {
        return ipow * std::pow(xi1, b1) * std::pow(xi2, b2) * z;
    });
    return restrict_field(detail::doubled_synthesis(d));
}

} // namespace

AnalyticityReport analyticity_diagnostic(const Trajectory& traj, double t, int beta_max) {
    if (beta_max < 0 || beta_max > 10)
        throw std::invalid_argument("analyticity_diagnostic: beta_max must lie in [0, 10]");
    if (!(t > 0.0))
        throw std::invalid_argument(
            "analyticity_diagnostic: the t = 0 table is identically trivial; pick a "
            "positive stamp");
    const Field& th = traj.state_at(t); // throws when t is not a stamp

    AnalyticityReport rep;
    rep.t = t;
    rep.beta_max = beta_max;

    std::vector<double> fact(static_cast<size_t>(2 * beta_max) + 1, 1.0);
    for (size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * static_cast<double>(i);

    const detail::DoubledCoeffs hat = detail::doubled_transform(odd_extend(th));
    rep.space_table.assign(static_cast<size_t>(beta_max) + 1,
                           std::vector<double>(static_cast<size_t>(beta_max) + 1, 0.0));
    for (int b1 = 0; b1 <= beta_max; ++b1)
        for (int b2 = 0; b2 <= beta_max; ++b2) {
            const double sup = linf_norm(spatial_derivative(hat, b1, b2));
            rep.space_table[b1][b2] =
                std::pow(t, b1 + b2) * sup / (fact[b1] * fact[b2]);
        }

    roundoff_advisory(th.grid, beta_max);
    const std::vector<Field> D = derivative_ladder(th, beta_max);
    rep.time_table.resize(static_cast<size_t>(beta_max) + 1);
    for (int a = 0; a <= beta_max; ++a)
        rep.time_table[a] = std::pow(t, a) * linf_norm(D[a]) / fact[a];

    // estimated_C: every entry bounds C^order (order-0 entries enter at power 1).
    double C = 0.0, Cj = 0.0;
    for (int b1 = 0; b1 <= beta_max; ++b1)
        for (int b2 = 0; b2 <= beta_max; ++b2) {
            const int order = b1 + b2;
            const double e = rep.space_table[b1][b2];
            C = std::max(C, std::pow(e, 1.0 / std::max(order, 1)));
            const double ej = e * fact[b1] * fact[b2] / fact[order];
            Cj = std::max(Cj, std::pow(ej, 1.0 / std::max(order, 1)));
        }
    for (int a = 0; a <= beta_max; ++a) {
        const double e = rep.time_table[a];
        const double r = std::pow(e, 1.0 / std::max(a, 1));
        C = std::max(C, r);
        Cj = std::max(Cj, r);
    }
    rep.estimated_C = C;
    rep.estimated_C_joint = Cj;

    // Radius fit: slope of log|c| against lambda over the decaying mid band.
    const Spectrum sp = forward_transform(th);
    double cmax = 0.0, lam_at_max = 0.0;
    for (int a = 0; a < sp.grid.n1; ++a) {
        const int k = sp.k_of_row(a);
        for (int m = 1; m <= sp.grid.n2; ++m) {
            const double mag = std::abs(sp.coeffs[static_cast<size_t>(a) * sp.grid.n2 + (m - 1)]);
            if (mag > cmax) {
                cmax = mag;
                lam_at_max = eigenvalue(sp.grid, k, m);
            }
        }
    }
    std::vector<double> ls, lc;
    if (cmax > 0.0) {
        for (int a = 0; a < sp.grid.n1; ++a) {
            const int k = sp.k_of_row(a);
            for (int m = 1; m <= sp.grid.n2; ++m) {
                const double mag =
                    std::abs(sp.coeffs[static_cast<size_t>(a) * sp.grid.n2 + (m - 1)]);
                const double lam = eigenvalue(sp.grid, k, m);
                if (mag >= 1e-12 * cmax && lam >= 1.5 * lam_at_max) {
                    ls.push_back(lam);
                    lc.push_back(std::log(mag));
                }
            }
        }
    }
    if (ls.size() < 3) {
        rep.radius_fit = 0.0;
        warn("analyticity_diagnostic: spectrum too concentrated for a radius fit");
    } else {
        rep.radius_fit = least_squares_slope(ls, lc);
    }
    return rep;
}

//-------------------------------------------------------------------- Hoelder --

double holder_seminorm(const Field& f, double a, int pair_budget) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("holder_seminorm: exponent must lie in (0, 1)");
    if (pair_budget < 1)
        throw std::invalid_argument("holder_seminorm: pair_budget must be >= 1");
    f.validate();

    const GridSpec& g = f.grid;
    const int n1 = g.n1, n2 = g.n2;
    double best = 0.0;

    // Vertical neighbors, trace rows included (their values are exactly zero).
    const double va = std::pow(g.dx2(), a);
    for (int i = 0; i < n1; ++i) {
        double prev = 0.0;
        for (int j = 1; j <= n2; ++j) {
            const double cur = f.at(i, j);
            best = std::max(best, std::abs(cur - prev) / va);
            prev = cur;
        }
        best = std::max(best, std::abs(prev) / va);
    }

    // Horizontal neighbors with periodic wrap.
    const double ha = std::pow(g.dx1(), a);
    for (int i = 0; i < n1; ++i) {
        const int ip = (i + 1) % n1;
        for (int j = 1; j <= n2; ++j)
            best = std::max(best, std::abs(f.at(ip, j) - f.at(i, j)) / ha);
    }

    // Long-range pairs from a deterministic low-discrepancy sequence; growing
    // the budget only appends pairs, so the result is monotone in pair_budget.
    constexpr double kA1 = 0.6180339887498949;  // 1/golden ratio
    constexpr double kA2 = 0.41421356237309515; // sqrt(2) - 1
    const size_t npts = static_cast<size_t>(n1) * n2;
    for (int tpair = 1; tpair <= pair_budget; ++tpair) {
        const double u = tpair * kA1 - std::floor(tpair * kA1);
        const double v = tpair * kA2 - std::floor(tpair * kA2);
        size_t p = std::min(npts - 1, static_cast<size_t>(u * npts));
        size_t q = std::min(npts - 1, static_cast<size_t>(v * npts));
        if (p == q) continue;
        const int ip = static_cast<int>(p / n2), jp = static_cast<int>(p % n2) + 1;
        const int iq = static_cast<int>(q / n2), jq = static_cast<int>(q % n2) + 1;
        double d1 = std::abs(g.x1(ip) - g.x1(iq));
        d1 = std::min(d1, g.L1 - d1);
        const double d2 = std::abs(g.x2(jp) - g.x2(jq));
        const double dist = std::hypot(d1, d2);
        best = std::max(best,
                        std::abs(f.at(ip, jp) - f.at(iq, jq)) / std::pow(dist, a));
    }
    return best;
}

//-------------------------------------------------------------------- battery --

namespace {

// Frozen regression thresholds for the audit battery.  Values were measured on
// the shipped configuration and padded ~5 percent; the shell-multiplier bound
// is the theory-level constant.
// Eigenfunction data: sup_t t*lambda*e^{-t*lambda} = 1/e, times the shell-sum
// slack sum_j 2^j phi_j(lambda)/lambda, which lies in [1/2, 2].
constexpr double kSmoothEigenDeclared = 2.0 / 2.718281828459045;
constexpr double kSmoothBandDeclared = 2.6;
constexpr double kMaxRegDeclared = 2.9;
constexpr double kBilinearDeclared = 1.6;
constexpr double kShellMultDeclared = 10.0;

// Operator infinity-norm of phi_j(Lambda) probed through delta columns: the
// kernel is symmetric, so the L1 mass of the response to a delta equals the
// row sum at that point; translation invariance in x1 fixes i = 0.
double shell_multiplier_norm(const GridSpec& g, const DyadicPartition& P, int j) {
    double worst = 0.0;
    for (int j0 = 1; j0 <= g.n2; ++j0) {
        Field delta(g);
        delta.at(0, j0) = 1.0;
        const Field resp = lp_block(delta, j, P);
        double l1 = 0.0;
        for (double v : resp.values) l1 += std::abs(v);
        worst = std::max(worst, l1);
    }
    return worst;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return out;
}

} // namespace

std::vector<EstimateReport> run_verify_battery(const GridSpec& grid, std::uint64_t seed) {
    grid.validate();
    std::vector<EstimateReport> out;
    const DyadicPartition P = default_partition(grid);

    // 1. Smoothing on an eigenfunction: the ratio has the closed form
    //    (t lambda) e^{-t lambda} at s = 1, whose sup over t is 1/e.
    {
        const Field ef = preset_single_mode(grid, 1, 1, 1.0);
        EstimateReport rep =
            verify_smoothing(P, 1.0, ef, log_spaced(0.05, 3.0, 32), kSmoothEigenDeclared);
        rep.name = "smoothing_eigenfunction";
        out.push_back(std::move(rep));
    }

    // 2. Smoothing slope on broadband data.  The shipped default grid only
    //    resolves a short eigenvalue range, so the slope is audited on a
    //    dedicated tall grid whose band covers 1/t for t in [1e-3, 1e-1].
    {
        GridSpec audit;
        audit.n1 = 8;
        audit.n2 = 4095;
        audit.L1 = 2.0 * std::numbers::pi;
        audit.L2 = std::numbers::pi;
        const DyadicPartition AP = default_partition(audit);
        const Field band = preset_random_band(audit, 1, 11, 1.0, seed);
        EstimateReport rep = verify_smoothing(AP, 1.0, band, log_spaced(1e-3, 1e-1, 24),
                                              kSmoothBandDeclared);
        rep.name = "smoothing_band";
        if (std::abs(rep.fitted_exponent + 1.0) > 0.1) {
            rep.verdict = Verdict::fail;
            rep.notes += "; slope outside [-1.1, -0.9]";
        }
        out.push_back(std::move(rep));
    }

    // 3. Maximal regularity driven by a decaying broadband forcing.
    {
        const Field f0 = preset_random_band(grid, 1, 4, 1.0, seed ^ 0x9e3779b97f4a7c15ULL);
        Trajectory forcing;
        forcing.grid = grid;
        const int n = 50;
        const double T = 1.0;
        for (int i = 0; i <= n; ++i) {
            const double tau = T * i / n;
            forcing.times.push_back(tau);
            forcing.states.push_back(semigroup(f0, tau));
        }
        out.push_back(verify_maximal_regularity(P, forcing, kMaxRegDeclared));
    }

    // 4. Bilinear estimate over random band pairs.
    out.push_back(verify_bilinear_battery(grid, P, 12, seed, kBilinearDeclared));

    // 5. Shell multipliers are uniformly bounded on L-infinity.
    {
        EstimateReport rep;
        rep.name = "shell_multiplier_bound";
        double worst = 0.0;
        int probes = 0;
        for (int j : P.shells()) {
            worst = std::max(worst, shell_multiplier_norm(grid, P, j));
            probes += grid.n2;
        }
        rep.samples = probes;
        rep.worst_ratio = worst;
        rep.fitted_constant = worst;
        rep.verdict = worst <= kShellMultDeclared ? Verdict::pass : Verdict::fail;
        rep.notes = "max operator norm over shells; declared " + fmt(kShellMultDeclared);
        out.push_back(std::move(rep));
    }

    return out;
}

} // namespace sqg
