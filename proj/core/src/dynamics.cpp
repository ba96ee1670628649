#include "repsc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "repsc/errors.hpp"
#include "repsc/fft.hpp"

namespace repsc {

FrameMoments frame_moments(const WaveFunction& phi, double t) {
    const int dim = phi.grid.dim;
    const double ch = std::cosh(2.0 * t);
    const double sh = std::sinh(2.0 * t);
    const double th = std::tanh(2.0 * t);

    FrameMoments m;
    m.norm = phi.norm();
    m.x.resize(dim);
    m.p.resize(dim);
    for (int a = 0; a < dim; ++a) {
        const double xa = observable_moment(phi, Observable::position, a);
        const double pa = observable_moment(phi, Observable::momentum, a);
        const double xxa = observable_moment(phi, Observable::position_sq, a);
        const double ppa = observable_moment(phi, Observable::momentum_sq, a);

        // <x_j p_j + p_j x_j> = 2 Re (x_j phi, p_j phi)
        WaveFunction xphi = phi;
        const GridSpec& g = phi.grid;
        if (g.dim == 1) {
            for (int i = 0; i < g.points; ++i) xphi.values[i] *= g.physical_coord(i);
        } else {
            for (int i0 = 0; i0 < g.points; ++i0)
                for (int i1 = 0; i1 < g.points; ++i1)
                    xphi.values[flat_index(g, i0, i1)] *=
                        g.physical_coord(a == 0 ? i0 : i1);
        }
        WaveFunction pphi = apply_momentum(phi, a);
        const double cross = 2.0 * inner_product(xphi, pphi).real();

        // G(t) = chirp(tanh(2t)/2) o dilate(cosh 2t):
        //   <x> -> ch <x>,  <p> -> <p>/ch + sh <x>
        //   <x^2> -> ch^2 <x^2>,  <p^2> -> <p^2>/ch^2 + th <xp+px> + sh^2 <x^2>
        m.x[a] = ch * xa;
        m.p[a] = pa / ch + sh * xa;
        m.x_sq += ch * ch * xxa;
        m.p_sq += ppa / (ch * ch) + th * cross + sh * sh * xxa;
    }
    m.h0 = m.p_sq - m.x_sq;
    return m;
}

ComovingEvolver::ComovingEvolver(GridSpec base, const Potential& V, const EvolveConfig& cfg)
    : base_(base), potential_(&V), cfg_(cfg) {
    validate_grid(base);
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
}

void ComovingEvolver::potential_half(WaveFunction& phi, double t_quad, double weight) const {
    const GridSpec& g = phi.grid;
    const double ch = std::cosh(2.0 * t_quad);
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) {
            double x = ch * g.physical_coord(i);
            double ph = -weight * potential_->value(std::span<const double>{&x, 1});
            phi.values[i] *= cplx{std::cos(ph), std::sin(ph)};
        }
    } else {
        for (int i0 = 0; i0 < g.points; ++i0) {
            double x0 = ch * g.physical_coord(i0);
            for (int i1 = 0; i1 < g.points; ++i1) {
                double pt[2] = {x0, ch * g.physical_coord(i1)};
                double ph = -weight * potential_->value(pt);
                phi.values[flat_index(g, i0, i1)] *= cplx{std::cos(ph), std::sin(ph)};
            }
        }
    }
}

void ComovingEvolver::kinetic_exact(WaveFunction& phi, double dtau) const {
    if (dtau == 0.0) return;
    WaveFunction hat = fourier(phi, FourierDirection::forward);
    const GridSpec& mg = hat.grid;
    // e^{-i dtau |xi|^2}, separable across axes, reduced phase accumulation
    std::vector<double> coords(mg.points);
    for (int i = 0; i < mg.points; ++i) coords[i] = mg.physical_coord(i);
    const std::vector<double> ph = fft::quadratic_phases(coords, -dtau);
    std::vector<cplx> axis(mg.points);
    for (int i = 0; i < mg.points; ++i) axis[i] = cplx{std::cos(ph[i]), std::sin(ph[i])};
    if (mg.dim == 1) {
        for (int i = 0; i < mg.points; ++i) hat.values[i] *= axis[i];
    } else {
        for (int i0 = 0; i0 < mg.points; ++i0)
            for (int i1 = 0; i1 < mg.points; ++i1)
                hat.values[flat_index(mg, i0, i1)] *= axis[i0] * axis[i1];
    }
    WaveFunction out = fourier(hat, FourierDirection::inverse);
    phi.values = std::move(out.values);
}

void ComovingEvolver::strang_step(WaveFunction& phi, double a, double b) const {
    const double h = b - a;
    if (potential_->has_regular() || potential_->has_singular()) {
        potential_half(phi, a + 0.25 * h, 0.5 * h);
        kinetic_exact(phi, comoving_tau(b) - comoving_tau(a));
        potential_half(phi, b - 0.25 * h, 0.5 * h);
    } else {
        kinetic_exact(phi, comoving_tau(b) - comoving_tau(a));
    }
}

void ComovingEvolver::integrate(WaveFunction& phi, double t0, double t1,
                                const std::function<void(double, const WaveFunction&)>& on_step) const {
    if (t0 == t1) return;
    const double span = t1 - t0;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / cfg_.dt)));
    const double h = span / steps;
    double t = t0;
    for (int k = 0; k < steps; ++k) {
        double next = (k == steps - 1) ? t1 : t0 + (k + 1) * h;
        strang_step(phi, t, next);
        t = next;
        if (cfg_.edge_check_interval > 0 && (k + 1) % cfg_.edge_check_interval == 0 &&
            edge_mass(phi) > cfg_.edge_budget)
            throw GridOverflowError("evolve: state reached the box edge (t = " +
                                    std::to_string(t) + ")");
        if (on_step) on_step(t, phi);
    }
}

WaveFunction full_step(const WaveFunction& psi, double dt, const Potential& V) {
    if (dt == 0.0) return psi;
    EvolveConfig cfg;
    cfg.dt = std::abs(dt);
    cfg.edge_check_interval = 0;
    ComovingEvolver ev(psi.grid, V, cfg);
    WaveFunction phi = psi;
    ev.integrate(phi, 0.0, dt);
    return materialize_frame(phi, dt);
}

WaveFunction evolve(const WaveFunction& psi, double T, const Potential& V,
                    const EvolveConfig& cfg, std::vector<TrajectorySample>* log) {
    if (std::cosh(2.0 * T) > cfg.max_scale)
        throw GridOverflowError("evolve: horizon exceeds max scale factor (cosh(2T) = " +
                                std::to_string(std::cosh(2.0 * T)) + ")");
    ComovingEvolver ev(psi.grid, V, cfg);
    WaveFunction phi = psi;
    if (log) {
        FrameMoments m0 = frame_moments(phi, 0.0);
        log->push_back({0.0, m0.norm, m0.x, m0.p, m0.h0, psi.grid.scale});
    }
    auto logger = [&](double t, const WaveFunction& state) {
        if (!log) return;
        FrameMoments m = frame_moments(state, t);
        log->push_back({t, m.norm, m.x, m.p, m.h0, psi.grid.scale * std::cosh(2.0 * t)});
    };
    ev.integrate(phi, 0.0, T, log ? logger : std::function<void(double, const WaveFunction&)>{});
    WaveFunction out = materialize_frame(phi, T);
    if (cfg.materialize_budget > 0.0 && spectral_tail_mass(out) > cfg.materialize_budget)
        throw AliasingError("evolve: aliasing budget exceeded on the materialized state "
                            "(grid too small for this horizon)");
    return out;
}

} // namespace repsc
