#include "repsc/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace repsc::fft {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
// FFTW_ESTIMATE planning neither touches the buffers nor runs trials, so
// planning directly on the caller's buffer is safe and deterministic.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

void dft(cplx* data, int dim, int n0, int n1, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan = nullptr;
    {
        std::scoped_lock lock(planner_mutex());
        if (dim == 1)
            plan = fftw_plan_dft_1d(n0, raw, raw, sign, FFTW_ESTIMATE);
        else if (dim == 2)
            plan = fftw_plan_dft_2d(n0, n1, raw, raw, sign, FFTW_ESTIMATE);
        else
            throw std::invalid_argument("dft: dim must be 1 or 2");
    }
    if (!plan) throw std::runtime_error("dft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::scoped_lock lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// phases[d] = alpha * d^2 / 2 reduced mod 2pi
std::vector<double> half_square_phases(int count, long double alpha) {
    std::vector<double> out(count);
    for (int d = 0; d < count; ++d) {
        long double dl = d;
        out[d] = reduced_phase(0.5L * alpha * dl * dl);
    }
    return out;
}

} // namespace

double reduced_phase(long double x) {
    return static_cast<double>(std::fmod(x, kTwoPiL));
}

long double momentum_spacing_ld(int n, double physical_spacing) {
    return kTwoPiL / (static_cast<long double>(n) *
                      static_cast<long double>(physical_spacing));
}

std::vector<double> quadratic_phases(std::span<const double> coords, double c) {
    std::vector<double> out(coords.size());
    const long double cl = c;
    for (std::size_t j = 0; j < coords.size(); ++j) {
        long double x = coords[j];
        out[j] = reduced_phase(cl * x * x);
    }
    return out;
}

std::vector<cplx> czt_linear_phase(std::span<const cplx> a, int m, long double alpha) {
    const int n = static_cast<int>(a.size());
    // kj = (k^2 + j^2 - (k-j)^2) / 2 turns the kernel into a convolution.
    int conv_len = 1;
    while (conv_len < n + m - 1) conv_len <<= 1;

    const int max_idx = std::max(n, m);
    const std::vector<double> phases = half_square_phases(max_idx, alpha);

    std::vector<cplx> u(conv_len, cplx{0.0, 0.0});
    std::vector<cplx> v(conv_len, cplx{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        double ph = phases[k];
        u[k] = a[k] * cplx{std::cos(ph), std::sin(ph)};
    }
    // Kernel B_{j-k} = e^{-i alpha (j-k)^2 / 2} for j-k in (-(n-1) .. m-1).
    for (int d = -(n - 1); d <= m - 1; ++d) {
        double ph = phases[std::abs(d)];
        int idx = d >= 0 ? d : conv_len + d;
        v[idx] = cplx{std::cos(ph), -std::sin(ph)};
    }

    dft(u.data(), 1, conv_len, 0, -1);
    dft(v.data(), 1, conv_len, 0, -1);
    for (int i = 0; i < conv_len; ++i) u[i] *= v[i];
    dft(u.data(), 1, conv_len, 0, +1);

    std::vector<cplx> out(m);
    const double inv = 1.0 / conv_len;
    for (int j = 0; j < m; ++j) {
        double ph = phases[j];
        out[j] = u[j] * inv * cplx{std::cos(ph), std::sin(ph)};
    }
    return out;
}

} // namespace repsc::fft
