//==============================================================================
// fft_backend.cpp : FFTW plan cache
//==============================================================================
#include "fft_backend.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace sqg::detail {
namespace {

std::mutex g_planner_mutex; // FFTW planning is not thread-safe

struct Engine {
    int n1, n2;
    int N;     // n2 + 1, DST logical half-size
    int M;     // 2 n2 + 2, doubled rows
    int H;     // M/2 + 1, r2c half-spectrum rows

    double* r_in = nullptr;        // n1 x n2
    double* r_out = nullptr;       // n1 x n2
    fftw_complex* c_in = nullptr;  // n1 x n2
    fftw_complex* c_out = nullptr; // n1 x n2
    double* d_real = nullptr;      // n1 x M
    fftw_complex* d_cplx = nullptr;// n1 x H

    fftw_plan dst_many = nullptr;      // RODFT00 along j, all rows
    fftw_plan dft_fwd_many = nullptr;  // DFT along i, all columns
    fftw_plan dft_bwd_many = nullptr;
    fftw_plan r2c_2d = nullptr;
    fftw_plan c2r_2d = nullptr;

    std::mutex mutex; // guards the scratch buffers during execution

    explicit Engine(const GridSpec& g)
        : n1(g.n1), n2(g.n2), N(g.n2 + 1), M(g.doubled_n2()), H(g.doubled_n2() / 2 + 1) {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        r_in = fftw_alloc_real(static_cast<size_t>(n1) * n2);
        r_out = fftw_alloc_real(static_cast<size_t>(n1) * n2);
        c_in = fftw_alloc_complex(static_cast<size_t>(n1) * n2);
        c_out = fftw_alloc_complex(static_cast<size_t>(n1) * n2);
        d_real = fftw_alloc_real(static_cast<size_t>(n1) * M);
        d_cplx = fftw_alloc_complex(static_cast<size_t>(n1) * H);

        const fftw_r2r_kind kind = FFTW_RODFT00;
        dst_many = fftw_plan_many_r2r(1, &n2, n1,
                                      r_in, nullptr, 1, n2,
                                      r_out, nullptr, 1, n2,
                                      &kind, FFTW_ESTIMATE);
        dft_fwd_many = fftw_plan_many_dft(1, &n1, n2,
                                          c_in, nullptr, n2, 1,
                                          c_out, nullptr, n2, 1,
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        dft_bwd_many = fftw_plan_many_dft(1, &n1, n2,
                                          c_in, nullptr, n2, 1,
                                          c_out, nullptr, n2, 1,
                                          FFTW_BACKWARD, FFTW_ESTIMATE);
        r2c_2d = fftw_plan_dft_r2c_2d(n1, M, d_real, d_cplx, FFTW_ESTIMATE);
        c2r_2d = fftw_plan_dft_c2r_2d(n1, M, d_cplx, d_real, FFTW_ESTIMATE);
    }

    ~Engine() {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        fftw_destroy_plan(dst_many);
        fftw_destroy_plan(dft_fwd_many);
        fftw_destroy_plan(dft_bwd_many);
        fftw_destroy_plan(r2c_2d);
        fftw_destroy_plan(c2r_2d);
        fftw_free(r_in);
        fftw_free(r_out);
        fftw_free(c_in);
        fftw_free(c_out);
        fftw_free(d_real);
        fftw_free(d_cplx);
    }
};

Engine& engine_for(const GridSpec& g) {
    static std::mutex map_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<Engine>> engines;
    std::lock_guard<std::mutex> lock(map_mutex);
    auto key = std::make_pair(g.n1, g.n2);
    auto it = engines.find(key);
    if (it == engines.end())
        it = engines.emplace(key, std::make_unique<Engine>(g)).first;
    return *it->second;
}

} // namespace

void mixed_forward(const GridSpec& g, const double* f, std::complex<double>* c) {
    Engine& e = engine_for(g);
    std::lock_guard<std::mutex> lock(e.mutex);
    const size_t n = static_cast<size_t>(e.n1) * e.n2;

    // Sine-analyze each row: d(i,m) = 2 sum_j f(i,j) sin(pi j m / N).
    std::memcpy(e.r_in, f, n * sizeof(double));
    fftw_execute(e.dst_many);

    // Fourier-analyze each column: D(k,m) = sum_i d(i,m) e^{-2 pi i k i/n1}.
    for (size_t p = 0; p < n; ++p) {
        e.c_in[p][0] = e.r_out[p];
        e.c_in[p][1] = 0.0;
    }
    fftw_execute(e.dft_fwd_many);

    const double scale = 1.0 / (static_cast<double>(e.n1) * e.N);
    for (size_t p = 0; p < n; ++p)
        c[p] = std::complex<double>(e.c_out[p][0] * scale, e.c_out[p][1] * scale);
}

void mixed_inverse(const GridSpec& g, const std::complex<double>* c, double* f,
                   double* imag_residual) {
    Engine& e = engine_for(g);
    std::lock_guard<std::mutex> lock(e.mutex);
    const size_t n = static_cast<size_t>(e.n1) * e.n2;

    // Fourier-synthesize each column: G(i,m) = sum_k c(k,m) e^{+2 pi i k i/n1}.
    for (size_t p = 0; p < n; ++p) {
        e.c_in[p][0] = c[p].real();
        e.c_in[p][1] = c[p].imag();
    }
    fftw_execute(e.dft_bwd_many);

    double resid = 0.0;
    for (size_t p = 0; p < n; ++p) {
        e.r_in[p] = e.c_out[p][0];
        resid = std::max(resid, std::abs(e.c_out[p][1]));
    }
    if (imag_residual) *imag_residual = resid;

    // Sine-synthesize each row; RODFT00 returns twice the wanted sum.
    fftw_execute(e.dst_many);
    for (size_t p = 0; p < n; ++p)
        f[p] = 0.5 * e.r_out[p];
}

void doubled_forward(const GridSpec& g, const double* field, std::complex<double>* ghat) {
    Engine& e = engine_for(g);
    std::lock_guard<std::mutex> lock(e.mutex);
    std::memcpy(e.d_real, field, static_cast<size_t>(e.n1) * e.M * sizeof(double));
    fftw_execute(e.r2c_2d);
    const size_t h = static_cast<size_t>(e.n1) * e.H;
    for (size_t p = 0; p < h; ++p)
        ghat[p] = std::complex<double>(e.d_cplx[p][0], e.d_cplx[p][1]);
}

void doubled_inverse(const GridSpec& g, const std::complex<double>* ghat, double* field) {
    Engine& e = engine_for(g);
    std::lock_guard<std::mutex> lock(e.mutex);
    const size_t h = static_cast<size_t>(e.n1) * e.H;
    for (size_t p = 0; p < h; ++p) {
        e.d_cplx[p][0] = ghat[p].real();
        e.d_cplx[p][1] = ghat[p].imag();
    }
    // FFTW's unnormalized c2r is the plain synthesis sum, which is exactly
    // what amplitude coefficients call for — no rescaling here.
    fftw_execute(e.c2r_2d);
    std::memcpy(field, e.d_real, static_cast<size_t>(e.n1) * e.M * sizeof(double));
}

} // namespace sqg::detail
