#include "repsc/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "repsc/fft.hpp"

namespace repsc {

namespace {

std::vector<cplx> unit_phases(const std::vector<double>& ph) {
    std::vector<cplx> out(ph.size());
    for (std::size_t j = 0; j < ph.size(); ++j)
        out[j] = cplx{std::cos(ph[j]), std::sin(ph[j])};
    return out;
}

void scale_rows_cols(std::vector<cplx>& v, const GridSpec& g,
                     const std::vector<cplx>& axis_phase) {
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) v[i] *= axis_phase[i];
    } else {
        for (int i0 = 0; i0 < g.points; ++i0)
            for (int i1 = 0; i1 < g.points; ++i1)
                v[flat_index(g, i0, i1)] *= axis_phase[i0] * axis_phase[i1];
    }
}

} // namespace

double WaveFunction::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s * grid.cell_volume());
}

void WaveFunction::normalize() {
    double n = norm();
    if (!(n > 0.0)) throw std::runtime_error("normalize: zero or non-finite norm");
    double inv = 1.0 / n;
    for (cplx& v : values) v *= inv;
}

WaveFunction fourier(const WaveFunction& psi, FourierDirection dir) {
    const GridSpec& g = psi.grid;
    const int n = g.points;
    const long double dx = g.physical_spacing();
    const long double x0 = g.physical_coord(0);
    // Dual-lattice ladder consistent with the DFT kernel: the mode spacing is
    // exactly 2pi/(n dx) in long double, not the independently rounded
    // GridSpec::momentum_spacing(); with phases above ~1e5 radians the ulp
    // mismatch would otherwise leak into every cross-grid comparison.
    const long double dxi = fft::momentum_spacing_ld(n, g.physical_spacing());
    const long double xi0 = -(n / 2 - 0.5L) * dxi;

    WaveFunction out;
    out.values = psi.values;

    // Centered DFT with half-offset lattices on both sides:
    //   forward:  psihat_k = c * e^{-i xi_k x0} DFT-[ psi_j e^{-i xi0 (x_j - x0)} ]_k
    //   inverse:  psi_j    = c'* e^{+i xi0 x_j} DFT+[ psihat_k e^{+i k dxi x0} ]_j
    const int sign = dir == FourierDirection::forward ? -1 : +1;
    std::vector<double> pre_ph(n), post_ph(n);
    for (int j = 0; j < n; ++j)
        pre_ph[j] = fft::reduced_phase(sign * xi0 * (j * dx));
    for (int k = 0; k < n; ++k)
        post_ph[k] = fft::reduced_phase(sign * (xi0 + k * dxi) * x0);
    auto pre = unit_phases(pre_ph);
    auto post = unit_phases(post_ph);

    scale_rows_cols(out.values, g, pre);
    fft::dft(out.values.data(), g.dim, n, n, sign);
    scale_rows_cols(out.values, g, post);
    double c = 1.0;
    for (int a = 0; a < g.dim; ++a)
        c *= static_cast<double>(dx) / std::sqrt(2.0 * std::numbers::pi);
    for (cplx& v : out.values) v *= c;
    out.grid = g.momentum_grid();
    return out;
}

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi) {
    if (!grids_compatible(phi.grid, psi.grid))
        throw std::invalid_argument("inner_product: grid mismatch");
    cplx s{0.0, 0.0};
    const std::size_t m = phi.values.size();
    for (std::size_t i = 0; i < m; ++i) s += std::conj(phi.values[i]) * psi.values[i];
    return s * phi.grid.cell_volume();
}

double observable_moment(const WaveFunction& psi, Observable which, int axis) {
    const GridSpec& g = psi.grid;
    if (axis < 0 || axis >= g.dim)
        throw std::invalid_argument("observable_moment: axis out of range");

    const bool momentum_space =
        (which == Observable::momentum || which == Observable::momentum_sq);
    const WaveFunction* w = &psi;
    WaveFunction hat;
    if (momentum_space) {
        hat = fourier(psi, FourierDirection::forward);
        w = &hat;
    }
    const GridSpec& wg = w->grid;
    auto lattice_value = [&](int i) {
        return momentum_space ? wg.physical_coord(i) : g.physical_coord(i);
    };
    const bool squared = (which == Observable::position_sq || which == Observable::momentum_sq);

    double acc = 0.0;
    if (wg.dim == 1) {
        for (int i = 0; i < wg.points; ++i) {
            double c = lattice_value(i);
            acc += (squared ? c * c : c) * std::norm(w->values[i]);
        }
    } else {
        for (int i0 = 0; i0 < wg.points; ++i0)
            for (int i1 = 0; i1 < wg.points; ++i1) {
                double c = lattice_value(axis == 0 ? i0 : i1);
                acc += (squared ? c * c : c) * std::norm(w->values[flat_index(wg, i0, i1)]);
            }
    }
    return acc * wg.cell_volume();
}

double h0_expectation(const WaveFunction& psi) {
    double s = 0.0;
    for (int a = 0; a < psi.grid.dim; ++a)
        s += observable_moment(psi, Observable::momentum_sq, a) -
             observable_moment(psi, Observable::position_sq, a);
    return s;
}

WaveFunction apply_momentum(const WaveFunction& psi, int axis) {
    if (axis < 0 || axis >= psi.grid.dim)
        throw std::invalid_argument("apply_momentum: axis out of range");
    WaveFunction hat = fourier(psi, FourierDirection::forward);
    const GridSpec& mg = hat.grid;
    if (mg.dim == 1) {
        for (int i = 0; i < mg.points; ++i) hat.values[i] *= mg.physical_coord(i);
    } else {
        for (int i0 = 0; i0 < mg.points; ++i0)
            for (int i1 = 0; i1 < mg.points; ++i1)
                hat.values[flat_index(mg, i0, i1)] *= mg.physical_coord(axis == 0 ? i0 : i1);
    }
    WaveFunction out = fourier(hat, FourierDirection::inverse);
    out.grid = psi.grid;
    return out;
}

WaveFunction boost(const WaveFunction& psi, std::span<const double> velocity) {
    const GridSpec& g = psi.grid;
    if (static_cast<int>(velocity.size()) != g.dim)
        throw std::invalid_argument("boost: velocity dimension mismatch");
    WaveFunction out = psi;
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) {
            double ph = velocity[0] * g.physical_coord(i);
            out.values[i] *= cplx{std::cos(ph), std::sin(ph)};
        }
    } else {
        for (int i0 = 0; i0 < g.points; ++i0)
            for (int i1 = 0; i1 < g.points; ++i1) {
                double ph = velocity[0] * g.physical_coord(i0) +
                            velocity[1] * g.physical_coord(i1);
                out.values[flat_index(g, i0, i1)] *= cplx{std::cos(ph), std::sin(ph)};
            }
    }
    return out;
}

double spectral_tail_mass(const WaveFunction& psi, double fraction) {
    WaveFunction hat = fourier(psi, FourierDirection::forward);
    const GridSpec& mg = hat.grid;
    const double cut = fraction * psi.grid.momentum_cutoff();
    double tail = 0.0, total = 0.0;
    if (mg.dim == 1) {
        for (int i = 0; i < mg.points; ++i) {
            double m = std::norm(hat.values[i]);
            total += m;
            if (std::abs(mg.physical_coord(i)) > cut) tail += m;
        }
    } else {
        for (int i0 = 0; i0 < mg.points; ++i0)
            for (int i1 = 0; i1 < mg.points; ++i1) {
                double m = std::norm(hat.values[flat_index(mg, i0, i1)]);
                total += m;
                if (std::abs(mg.physical_coord(i0)) > cut ||
                    std::abs(mg.physical_coord(i1)) > cut)
                    tail += m;
            }
    }
    return total > 0.0 ? tail / total : 0.0;
}

double edge_mass(const WaveFunction& psi, int cells) {
    const GridSpec& g = psi.grid;
    double tail = 0.0, total = 0.0;
    auto is_edge = [&](int i) { return i < cells || i >= g.points - cells; };
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) {
            double m = std::norm(psi.values[i]);
            total += m;
            if (is_edge(i)) tail += m;
        }
    } else {
        for (int i0 = 0; i0 < g.points; ++i0)
            for (int i1 = 0; i1 < g.points; ++i1) {
                double m = std::norm(psi.values[flat_index(g, i0, i1)]);
                total += m;
                if (is_edge(i0) || is_edge(i1)) tail += m;
            }
    }
    return total > 0.0 ? tail / total : 0.0;
}

WaveFunction resample_to(const WaveFunction& psi, const GridSpec& target) {
    const GridSpec& g = psi.grid;
    if (target.dim != g.dim)
        throw std::invalid_argument("resample_to: dimension mismatch");
    if (target == g) return psi;

    // Trigonometric interpolant through the source momentum coefficients:
    //   psi(x) = (2pi)^{-n/2} dxi^n sum_k psihat_k e^{i xi_k x}
    // evaluated on the target lattice axis by axis with a chirp-z transform.
    // The mode ladder matches the forward transform (long double, exactly
    // 2pi/(n dx)); the target lattice is rebuilt the same way.
    WaveFunction hat = fourier(psi, FourierDirection::forward);
    const int n = g.points;
    const int m = target.points;
    const long double dxi = fft::momentum_spacing_ld(n, g.physical_spacing());
    const long double xi0 = -(n / 2 - 0.5L) * dxi;
    const long double tx0 = target.physical_coord(0);
    const long double tdx = target.physical_spacing();
    const long double alpha = dxi * tdx;

    std::vector<double> pre_ph(n), post_ph(m);
    for (int k = 0; k < n; ++k) pre_ph[k] = fft::reduced_phase((k * dxi) * tx0);
    for (int j = 0; j < m; ++j)
        post_ph[j] = fft::reduced_phase(xi0 * (tx0 + j * tdx));
    auto axis_pass = [&](std::span<const cplx> in) {
        // in: coefficients along one axis; returns values at target points.
        std::vector<cplx> a(in.begin(), in.end());
        for (int k = 0; k < n; ++k)
            a[k] *= cplx{std::cos(pre_ph[k]), std::sin(pre_ph[k])};
        auto s = fft::czt_linear_phase(a, m, alpha);
        for (int j = 0; j < m; ++j)
            s[j] *= cplx{std::cos(post_ph[j]), std::sin(post_ph[j])};
        return s;
    };

    const double weight = static_cast<double>(dxi) / std::sqrt(2.0 * std::numbers::pi);
    WaveFunction out;
    out.grid = target;
    if (g.dim == 1) {
        auto s = axis_pass(hat.values);
        for (cplx& v : s) v *= weight;
        out.values = std::move(s);
    } else {
        // axis 1 pass (rows), then axis 0 pass (columns)
        std::vector<cplx> mid(static_cast<std::size_t>(n) * m);
        std::vector<cplx> row(n);
        for (int i0 = 0; i0 < n; ++i0) {
            std::copy_n(hat.values.begin() + static_cast<std::size_t>(i0) * n, n, row.begin());
            auto s = axis_pass(row);
            for (int j = 0; j < m; ++j) mid[static_cast<std::size_t>(i0) * m + j] = s[j] * weight;
        }
        out.values.assign(static_cast<std::size_t>(m) * m, cplx{});
        std::vector<cplx> col(n);
        for (int j = 0; j < m; ++j) {
            for (int i0 = 0; i0 < n; ++i0) col[i0] = mid[static_cast<std::size_t>(i0) * m + j];
            auto s = axis_pass(col);
            for (int i = 0; i < m; ++i)
                out.values[static_cast<std::size_t>(i) * m + j] = s[i] * weight;
        }
    }
    return out;
}

double l2_difference(const WaveFunction& a, const WaveFunction& b) {
    if (!grids_compatible(a.grid, b.grid))
        throw std::invalid_argument("l2_difference: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(s * a.grid.cell_volume());
}

} // namespace repsc
