#pragma once

// Test-only oracles, independent of the spectral implementation they check:
// an implicit finite-difference propagator (no Fourier transforms anywhere)
// and direct quadrature of the exact free kernel.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

/// Crank-Nicolson for i d/dt psi = (-d^2/dx^2 + W(x)) psi on the same
/// half-offset lattice as the implementation (x_i = (i - N/2 + 1/2) h),
/// Dirichlet boundaries, Thomas solve per step. W includes the -x^2 term.
class CrankNicolson1D {
public:
    CrankNicolson1D(int n, double half_width, std::function<double(double)> w)
        : n_(n), h_(2.0 * half_width / n), w_(std::move(w)) {}

    double coord(int i) const { return (i - n_ / 2 + 0.5) * h_; }

    std::vector<cplx> evolve(std::vector<cplx> psi, double t_final, double dt) const {
        const int steps = static_cast<int>(std::round(std::abs(t_final) / dt));
        const double sdt = t_final >= 0 ? dt : -dt;
        for (int s = 0; s < steps; ++s) psi = step(psi, sdt);
        return psi;
    }

    std::vector<cplx> step(const std::vector<cplx>& psi, double dt) const {
        const cplx half{0.0, 0.5 * dt};
        const double inv_h2 = 1.0 / (h_ * h_);
        // (I + i dt/2 H) psi_next = (I - i dt/2 H) psi, H tridiagonal
        std::vector<cplx> diag(n_), rhs(n_);
        const cplx off = half * (-inv_h2);
        for (int i = 0; i < n_; ++i) {
            const double hi = 2.0 * inv_h2 + w_(coord(i));
            diag[i] = 1.0 + half * hi;
            cplx r = (1.0 - half * hi) * psi[i];
            if (i > 0) r += -off * psi[i - 1];
            if (i + 1 < n_) r += -off * psi[i + 1];
            rhs[i] = r;
        }
        // Thomas algorithm
        std::vector<cplx> c(n_), d(n_);
        c[0] = off / diag[0];
        d[0] = rhs[0] / diag[0];
        for (int i = 1; i < n_; ++i) {
            cplx m = diag[i] - off * c[i - 1];
            c[i] = off / m;
            d[i] = (rhs[i] - off * d[i - 1]) / m;
        }
        std::vector<cplx> out(n_);
        out[n_ - 1] = d[n_ - 1];
        for (int i = n_ - 2; i >= 0; --i) out[i] = d[i] - c[i] * out[i + 1];
        return out;
    }

private:
    int n_;
    double h_;
    std::function<double(double)> w_;
};

/// Direct Simpson quadrature of the exact repulsive free kernel
///   K_t(x,y) = (2 pi i sinh 2t)^{-1/2}
///              exp( i [ (x^2+y^2) cosh 2t - 2xy ] / (2 sinh 2t) )
/// against a given initial profile.
inline cplx mehler_kernel_apply(double x, double t, const std::function<cplx(double)>& psi0,
                                double y_max, int n_quad) {
    const double sh = std::sinh(2.0 * t);
    const double ch = std::cosh(2.0 * t);
    const cplx pref = std::pow(cplx{0.0, 2.0 * std::numbers::pi * sh}, -0.5);
    if (n_quad % 2 == 1) ++n_quad;
    const double h = 2.0 * y_max / n_quad;
    cplx acc{0.0, 0.0};
    for (int k = 0; k <= n_quad; ++k) {
        const double y = -y_max + k * h;
        const double w = (k == 0 || k == n_quad) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const double phase = ((x * x + y * y) * ch - 2.0 * x * y) / (2.0 * sh);
        acc += w * cplx{std::cos(phase), std::sin(phase)} * psi0(y);
    }
    return pref * acc * h / 3.0;
}

} // namespace oracles
