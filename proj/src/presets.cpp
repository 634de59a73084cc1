//==============================================================================
// presets.cpp : initial-data library
//==============================================================================
#include "sqg/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doubled.hpp"
#include "sqg/transform.hpp"
#include "sqg/warnings.hpp"

namespace sqg {

namespace {

constexpr double kPi = std::numbers::pi;

double bump(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

// Signed distance x - x0 wrapped into [-L/2, L/2).
double wrap_dist(double x, double x0, double L) {
    double d = std::fmod(x - x0, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
}

// Apply the sharp dealias projection, then scale the result so its grid sup
// equals amplitude (no-op on a zero field).
Field finalize(Field f, double amplitude) {
    Field g = detail::dealias_field(f);
    const double m = linf_norm(g);
    if (m > 0.0) {
        const double s = amplitude / m;
        for (double& v : g.values) v *= s;
    }
    return g;
}

// Uniform [0, 1) with an explicitly pinned bit mapping, so fields are
// byte-identical across platforms for the same seed.
double next_unit(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

} // namespace

Field preset_single_mode(const GridSpec& grid, int k, int m, double amplitude) {
    grid.validate();
    if (m < 1 || m > grid.n2)
        throw std::invalid_argument("preset_single_mode: m must lie in [1, n2]");
    if (std::abs(k) > grid.n1 / 2 - 1)
        throw std::invalid_argument("preset_single_mode: |k| must be < n1/2");
    Field f(grid);
    for (int i = 0; i < grid.n1; ++i) {
        const double cx = std::cos(2.0 * kPi * k * grid.x1(i) / grid.L1);
        for (int j = 1; j <= grid.n2; ++j)
            f.at(i, j) = amplitude * cx * std::sin(kPi * m * grid.x2(j) / grid.L2);
    }
    return detail::dealias_field(f);
}

Field preset_two_mode(const GridSpec& grid, double amplitude) {
    grid.validate();
    Field f(grid);
    for (int i = 0; i < grid.n1; ++i) {
        const double sx = std::sin(2.0 * kPi * grid.x1(i) / grid.L1);
        for (int j = 1; j <= grid.n2; ++j) {
            const double y = kPi * grid.x2(j) / grid.L2;
            f.at(i, j) = amplitude * (sx * std::sin(y) + std::sin(2.0 * y));
        }
    }
    return detail::dealias_field(f);
}

Field preset_boundary_bump(const GridSpec& grid, double x0, double width,
                           double amplitude) {
    grid.validate();
    if (!(width > 0.0))
        throw std::invalid_argument("preset_boundary_bump: width must be positive");
    if (2.0 * width > grid.L2)
        throw std::invalid_argument(
            "preset_boundary_bump: support 2*width overflows the strip height");
    Field f(grid);
    for (int i = 0; i < grid.n1; ++i) {
        const double bx = bump(wrap_dist(grid.x1(i), x0, grid.L1) / (2.0 * width));
        if (bx == 0.0) continue;
        for (int j = 1; j <= grid.n2; ++j) {
            const double y = grid.x2(j);
            if (y >= 2.0 * width) break;
            // The extra y/width factor keeps the Dirichlet trace explicit.
            f.at(i, j) = bx * (y / width) * bump((y - width) / width);
        }
    }
    return finalize(std::move(f), amplitude);
}

Field preset_interior_bump(const GridSpec& grid, double amplitude) {
    grid.validate();
    Field f(grid);
    for (int i = 0; i < grid.n1; ++i) {
        const double bx = bump((grid.x1(i) - 0.5 * grid.L1) / (0.25 * grid.L1));
        if (bx == 0.0) continue;
        for (int j = 1; j <= grid.n2; ++j)
            f.at(i, j) = bx * bump((grid.x2(j) - 0.5 * grid.L2) / (0.25 * grid.L2));
    }
    return finalize(std::move(f), amplitude);
}

Field preset_random_band(const GridSpec& grid, int j_lo, int j_hi, double amplitude,
                         std::uint64_t seed) {
    grid.validate();
    if (j_lo > j_hi)
        throw std::invalid_argument("preset_random_band: need j_lo <= j_hi");
    if (!(amplitude > 0.0))
        throw std::invalid_argument("preset_random_band: amplitude must be positive");

    const double lam_lo = std::exp2(j_lo);
    const double lam_hi = std::exp2(j_hi);
    std::mt19937_64 eng(seed);
    Spectrum s(grid);

    // Populate non-negative k rows in a fixed order (negative k follows from
    // conjugate symmetry), recording each mode's dyadic group.
    const int g_lo = static_cast<int>(std::floor(std::log2(lam_lo)));
    const int g_hi = static_cast<int>(std::floor(std::log2(lam_hi)));
    std::vector<int> group_of(s.coeffs.size(), -1);
    bool any = false;
    for (int k = 0; k <= grid.n1 / 2 - 1; ++k) {
        for (int m = 1; m <= grid.n2; ++m) {
            const double lam = eigenvalue(grid, k, m);
            if (lam < lam_lo || lam > lam_hi) continue;
            const double mag = 0.25 + 0.75 * next_unit(eng);
            const double ph = next_unit(eng);
            std::complex<double> c;
            if (k == 0) {
                c = {ph < 0.5 ? mag : -mag, 0.0};
            } else {
                c = std::polar(mag, 2.0 * kPi * ph);
            }
            s.at(k, m) = c;
            if (k != 0) s.at(-k, m) = std::conj(c);
            const int gidx = static_cast<int>(std::floor(std::log2(lam)));
            for (int kk : {k, -k}) {
                const int row = kk >= 0 ? kk : kk + grid.n1;
                group_of[static_cast<size_t>(row) * grid.n2 + (m - 1)] = gidx;
            }
            any = true;
        }
    }
    if (!any)
        throw std::invalid_argument(
            "preset_random_band: the grid resolves no eigenvalue in the band");

    // Flatten the shell profile in the norm the dyadic estimates actually
    // use: scale each group so its synthesized sup norm is one.  Equalizing
    // coefficient mass instead would under-weight crowded high shells, where
    // random-phase cancellation shrinks the sup by roughly sqrt(mode count).
    for (int gi = g_lo; gi <= g_hi; ++gi) {
        Spectrum part(grid);
        bool used = false;
        for (size_t idx = 0; idx < s.coeffs.size(); ++idx) {
            if (group_of[idx] != gi) continue;
            part.coeffs[idx] = s.coeffs[idx];
            used = true;
        }
        if (!used) continue;
        const double sup = linf_norm(inverse_transform(part));
        if (!(sup > 0.0)) continue;
        for (size_t idx = 0; idx < s.coeffs.size(); ++idx)
            if (group_of[idx] == gi) s.coeffs[idx] /= sup;
    }

    return finalize(inverse_transform(s), amplitude);
}

namespace {

// Reject misspelled parameters loudly; silently falling back to a default
// would hand the caller a very different field than the one they asked for.
void require_keys(const std::map<std::string, double>& params,
                  std::initializer_list<const char*> allowed,
                  const std::string& preset) {
    for (const auto& [key, value] : params) {
        (void)value;
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw std::invalid_argument("make_preset: unknown parameter '" + key +
                                        "' for preset '" + preset + "'");
    }
}

} // namespace

Field make_preset(const GridSpec& grid, const std::string& name,
                  const std::map<std::string, double>& params, std::uint64_t seed) {
    const double amplitude = param_or(params, "amplitude", 1.0);
    if (name == "single_mode") {
        require_keys(params, {"amplitude", "k", "m"}, name);
        const int k = static_cast<int>(std::lround(param_or(params, "k", 1.0)));
        const int m = static_cast<int>(std::lround(param_or(params, "m", 1.0)));
        return preset_single_mode(grid, k, m, amplitude);
    }
    if (name == "two_mode") {
        require_keys(params, {"amplitude"}, name);
        return preset_two_mode(grid, amplitude);
    }
    if (name == "boundary_bump") {
        require_keys(params, {"amplitude", "x0", "width"}, name);
        const double x0 = param_or(params, "x0", 0.5 * grid.L1);
        const double width = param_or(params, "width", 0.125 * grid.L2);
        return preset_boundary_bump(grid, x0, width, amplitude);
    }
    if (name == "interior_bump") {
        require_keys(params, {"amplitude"}, name);
        return preset_interior_bump(grid, amplitude);
    }
    if (name == "random_band") {
        require_keys(params, {"amplitude", "j_lo", "j_hi"}, name);
        const int j_lo = static_cast<int>(std::lround(param_or(params, "j_lo", 1.0)));
        const int j_hi = static_cast<int>(std::lround(param_or(params, "j_hi", 4.0)));
        return preset_random_band(grid, j_lo, j_hi, amplitude, seed);
    }
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
}

} // namespace sqg
