#include "repsc/ewrecon.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include "repsc/errors.hpp"
#include "repsc/fft.hpp"
#include "repsc/quadrature.hpp"

namespace repsc {

namespace {

std::vector<double> scaled(std::span<const double> dir, double mag) {
    std::vector<double> v(dir.begin(), dir.end());
    for (double& c : v) c *= mag;
    return v;
}

void run_jobs(int count, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> fs;
    for (int w = 0; w < jobs; ++w)
        fs.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < count; i += jobs) fn(i);
        }));
    for (auto& f : fs) f.get();
}

} // namespace

cplx commutator_pairing(const GridSpec& grid, const PacketSpec& phi0, const PacketSpec& psi0,
                        int axis, std::span<const double> velocity, const Potential& V,
                        const ScatterConfig& cfg) {
    double vmag = 0.0;
    for (double c : velocity) vmag += c * c;
    vmag = std::sqrt(vmag);

    PacketSpec phi = phi0, psi = psi0;
    phi.velocity.assign(velocity.begin(), velocity.end());
    psi.velocity.assign(velocity.begin(), velocity.end());

    WaveFunction phi_v = make_packet(grid, phi);
    WaveFunction phi_w = make_momentum_weighted_packet(grid, phi, axis); // (p_j Phi_0)_v
    WaveFunction psi_v = make_packet(grid, psi);
    WaveFunction psi_w = make_momentum_weighted_packet(grid, psi, axis); // (p_j Psi_0)_v

    WaveFunction s_phi_w = scattering_apply(phi_w, V, cfg).outgoing;
    WaveFunction s_phi_v = scattering_apply(phi_v, V, cfg).outgoing;

    cplx bracket = inner_product(s_phi_w, psi_v) - inner_product(s_phi_v, psi_w);
    return cplx{0.0, -1.0} * vmag * bracket;
}

cplx theorem2_rhs_quadrature(const WaveFunction& phi0, const WaveFunction& psi0, int axis,
                             std::span<const double> vhat, const Potential& V, double tol) {
    const GridSpec& g = phi0.grid;
    if (!grids_compatible(g, psi0.grid))
        throw std::invalid_argument("theorem2_rhs_quadrature: packet grids differ");
    WaveFunction p_phi = apply_momentum(phi0, axis);
    WaveFunction p_psi = apply_momentum(psi0, axis);
    const double dV = g.cell_volume();

    auto integrand = [&](double t) -> cplx {
        cplx c_sing_1{0.0, 0.0}, c_sing_2{0.0, 0.0}, c_reg{0.0, 0.0};
        const bool sing = V.has_singular();
        const bool reg = V.has_regular();
        if (g.dim == 1) {
            for (int i = 0; i < g.points; ++i) {
                double x = g.physical_coord(i) + vhat[0] * t;
                std::span<const double> pt{&x, 1};
                if (sing) {
                    double vs = V.singular_value(pt);
                    if (vs != 0.0) {
                        c_sing_1 += vs * std::conj(p_phi.values[i]) * psi0.values[i];
                        c_sing_2 += vs * std::conj(phi0.values[i]) * p_psi.values[i];
                    }
                }
                if (reg)
                    c_reg += V.regular_gradient(pt, axis) * std::conj(phi0.values[i]) *
                             psi0.values[i];
            }
        } else {
            for (int i0 = 0; i0 < g.points; ++i0) {
                double x0 = g.physical_coord(i0) + vhat[0] * t;
                for (int i1 = 0; i1 < g.points; ++i1) {
                    double pt[2] = {x0, g.physical_coord(i1) + vhat[1] * t};
                    std::size_t k = flat_index(g, i0, i1);
                    if (sing) {
                        double vs = V.singular_value(pt);
                        if (vs != 0.0) {
                            c_sing_1 += vs * std::conj(p_phi.values[k]) * psi0.values[k];
                            c_sing_2 += vs * std::conj(phi0.values[k]) * p_psi.values[k];
                        }
                    }
                    if (reg)
                        c_reg += V.regular_gradient(pt, axis) * std::conj(phi0.values[k]) *
                                 psi0.values[k];
                }
            }
        }
        // (i A Phi, Psi) = -i (A Phi, Psi) in the first-slot-conjugate convention
        return (c_sing_1 - c_sing_2 - cplx{0.0, 1.0} * c_reg) * dV;
    };

    // t = sinh(u) compresses the power-law tail of the regular term.
    std::function<cplx(double)> f = [&](double u) -> cplx {
        return integrand(std::sinh(u)) * std::cosh(u);
    };
    const double U = 12.0;
    return 0.5 * adaptive_simpson<cplx>(f, -U, U, tol);
}

SweepResult velocity_sweep(const GridSpec& grid, const SweepConfig& cfg, const Potential& V,
                           int jobs) {
    const double cutoff = grid.momentum_cutoff();
    for (double v : cfg.v_mags)
        if (v > 0.8 * cutoff)
            throw AliasingError("velocity_sweep: |v| = " + std::to_string(v) +
                                " exceeds 0.8 x momentum cutoff " + std::to_string(cutoff));

    PacketSpec phi0 = cfg.phi0, psi0 = cfg.psi0;
    phi0.velocity.assign(grid.dim, 0.0);
    psi0.velocity.assign(grid.dim, 0.0);
    WaveFunction phi0_wf = make_packet(grid, phi0);
    WaveFunction psi0_wf = make_packet(grid, psi0);
    const cplx oracle =
        theorem2_rhs_quadrature(phi0_wf, psi0_wf, cfg.axis, cfg.vhat, V);

    SweepResult out;
    out.rows.resize(cfg.v_mags.size());
    run_jobs(static_cast<int>(cfg.v_mags.size()), jobs, [&](int i) {
        SweepRow row;
        row.v_mag = cfg.v_mags[i];
        row.vhat = cfg.vhat;
        row.axis = cfg.axis;
        row.center_phi = cfg.phi0.center;
        row.center_psi = cfg.psi0.center;
        row.pairing = commutator_pairing(grid, cfg.phi0, cfg.psi0, cfg.axis,
                                         scaled(cfg.vhat, row.v_mag), V, cfg.scatter);
        row.rhs_oracle = oracle;
        row.abs_error = std::abs(row.pairing - row.rhs_oracle);
        out.rows[i] = std::move(row);
    });
    std::sort(out.rows.begin(), out.rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.v_mag < b.v_mag; });
    return out;
}

XRaySampleSet extract_xray_samples(const Potential& V, std::span<const double> vhat,
                                   std::span<const double> offsets, double width,
                                   double v_mag, const GridSpec& grid,
                                   const ScatterConfig& cfg, bool deconvolve, int jobs) {
    if (grid.dim != 2)
        throw std::invalid_argument("extract_xray_samples: smooth reconstruction mode is n = 2");
    if (V.has_singular())
        throw std::invalid_argument(
            "extract_xray_samples: singular potentials are outside the smooth pathway");
    const double sigma_x = 1.0 / (std::numbers::sqrt2 * width);
    if (sigma_x > 0.75 * V.feature_scale())
        throw std::invalid_argument(
            "extract_xray_samples: packet width too large for the potential feature scale "
            "(sigma_x = " + std::to_string(sigma_x) + ", feature = " +
            std::to_string(V.feature_scale()) + ")");

    const double perp[2] = {-vhat[1], vhat[0]};
    const int axis = std::abs(perp[0]) >= std::abs(perp[1]) ? 0 : 1;
    const std::vector<double> velocity = scaled(vhat, v_mag);

    const int n = static_cast<int>(offsets.size());
    std::vector<cplx> pairings(n);
    run_jobs(n, jobs, [&](int i) {
        PacketSpec spec;
        spec.center = {offsets[i] * perp[0], offsets[i] * perp[1]};
        spec.velocity = {0.0, 0.0};
        spec.width = width;
        pairings[i] = commutator_pairing(grid, spec, spec, axis, velocity, V, cfg);
    });

    // pairing ~ -(i/2) e_j [dXV/drho (*) packet marginal](rho)
    XRaySampleSet set;
    set.vhat.assign(vhat.begin(), vhat.end());
    set.offsets.assign(offsets.begin(), offsets.end());
    set.width = width;
    std::vector<double> derivative(n);
    for (int i = 0; i < n; ++i) {
        cplx d = 2.0 * cplx{0.0, 1.0} * pairings[i] / perp[axis];
        derivative[i] = d.real();
        set.imag_residue = std::max(set.imag_residue, std::abs(d.imag()));
    }

    // accumulate along the transverse axis: XV(rho) = int_{-inf}^{rho} XV'
    set.values.assign(n, 0.0);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        double drho = i == 0 ? 0.0 : offsets[i] - offsets[i - 1];
        if (i > 0) acc += 0.5 * (derivative[i] + derivative[i - 1]) * drho;
        set.values[i] = acc;
    }

    if (deconvolve && n >= 8) {
        // divide out the gaussian transverse marginal, capped amplification
        const double drho = offsets[1] - offsets[0];
        const double sig2 = sigma_x * sigma_x;
        int P = 1;
        while (P < 4 * n) P <<= 1;
        std::vector<cplx> buf(P, cplx{0.0, 0.0});
        for (int i = 0; i < n; ++i) buf[i] = set.values[i];
        fft::dft(buf.data(), 1, P, 0, -1);
        const double cap = 10.0;
        for (int m = 0; m < P; ++m) {
            int s = m <= P / 2 ? m : m - P;
            double kappa = 2.0 * std::numbers::pi * s / (P * drho);
            double gain = std::exp(0.5 * sig2 * kappa * kappa);
            buf[m] *= std::min(gain, cap);
        }
        fft::dft(buf.data(), 1, P, 0, +1);
        for (int i = 0; i < n; ++i) set.values[i] = buf[i].real() / P;
    }
    return set;
}

} // namespace repsc
