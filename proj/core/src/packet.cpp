#include "repsc/packet.hpp"

#include <cmath>
#include <stdexcept>

#include "repsc/errors.hpp"

namespace repsc {

namespace {

double profile(const PacketSpec& spec, double r) {
    if (spec.kind == PacketKind::gaussian_bump)
        return std::exp(-r * r / (2.0 * spec.width * spec.width));
    const double a = spec.support_factor * spec.width;
    const double y = r / a;
    if (y >= 1.0) return 0.0;
    return std::exp(-1.0 / std::pow(1.0 - y * y, spec.bump_sharpness));
}

void check_spec(const GridSpec& grid, const PacketSpec& spec) {
    if (static_cast<int>(spec.center.size()) != grid.dim ||
        static_cast<int>(spec.velocity.size()) != grid.dim)
        throw std::invalid_argument("packet: center/velocity dimension mismatch");
    if (!(spec.width > 0.0)) throw std::invalid_argument("packet: width must be positive");

    double v2 = 0.0;
    for (double v : spec.velocity) v2 += v * v;
    const double cutoff = grid.momentum_cutoff();
    if (std::sqrt(v2) > 0.8 * cutoff)
        throw AliasingError("packet: |v| exceeds 0.8 x momentum cutoff");
    // Momentum tail past 0.8 cutoff (relative to the boosted profile center).
    const double band = 0.8 * cutoff;
    double worst = 0.0;
    for (double v : spec.velocity) worst = std::max(worst, std::abs(v));
    const double margin = band - worst;
    double tail = profile(spec, margin);
    if (tail * tail > spec.aliasing_budget)
        throw AliasingError("packet: momentum profile tail exceeds aliasing budget");
}

// Build in momentum space: amp(xi) = profile(|xi - v|) e^{-i (xi - v).x0},
// then one inverse transform. This realizes Phi_v = e^{i v.x} phi_w(x - x0).
WaveFunction build(const GridSpec& grid, const PacketSpec& spec, int weight_axis) {
    check_spec(grid, spec);
    GridSpec mg = grid.momentum_grid();
    WaveFunction hat{mg, std::vector<cplx>(mg.size())};
    const int n = mg.points;

    auto amplitude = [&](std::span<const double> xi) {
        double r2 = 0.0, phase = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            double d = xi[a] - spec.velocity[a];
            r2 += d * d;
            phase -= d * spec.center[a];
        }
        cplx val = profile(spec, std::sqrt(r2)) * cplx{std::cos(phase), std::sin(phase)};
        if (weight_axis >= 0) val *= xi[weight_axis] - spec.velocity[weight_axis];
        return val;
    };

    if (grid.dim == 1) {
        for (int i = 0; i < n; ++i) {
            double xi = mg.physical_coord(i);
            hat.values[i] = amplitude(std::span<const double>{&xi, 1});
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1) {
                double xi[2] = {mg.physical_coord(i0), mg.physical_coord(i1)};
                hat.values[flat_index(mg, i0, i1)] = amplitude(xi);
            }
    }

    WaveFunction psi = fourier(hat, FourierDirection::inverse);
    psi.grid = grid;
    return psi;
}

} // namespace

WaveFunction make_packet(const GridSpec& grid, const PacketSpec& spec) {
    WaveFunction psi = build(grid, spec, -1);
    psi.normalize();
    if (edge_mass(psi) > 1e-10)
        throw GridOverflowError("packet: position tail does not fit the grid");
    if (spectral_tail_mass(psi) > spec.aliasing_budget)
        throw AliasingError("packet: spectral tail exceeds aliasing budget");
    return psi;
}

WaveFunction make_momentum_weighted_packet(const GridSpec& grid, const PacketSpec& spec,
                                           int axis) {
    if (axis < 0 || axis >= grid.dim)
        throw std::invalid_argument("packet: weight axis out of range");
    // Normalize relative to the plain packet so the pair (Phi_v, (p_j Phi_0)_v)
    // shares one overall constant.
    WaveFunction base = build(grid, spec, -1);
    const double c = 1.0 / base.norm();
    WaveFunction w = build(grid, spec, axis);
    for (cplx& v : w.values) v *= c;
    return w;
}

} // namespace repsc
