#pragma once

#include <cmath>
#include <random>

#include "repsc/wavefunction.hpp"

namespace repsc {

/// Random normalized superposition of gaussian wave packets with controlled
/// position support and momentum band. Centers stay inside center_radius and
/// |velocity| <= max_velocity, so the comoving drift 2 tau p (|tau| <= 1/2)
/// keeps the state inside the box for every propagation time; a box-filling
/// spectrum would not. Deterministic per (grid, rng state).
struct RandomStateParams {
    int n_packets = 6;
    double center_radius = 0.0; // default 0.4 * box extent
    double max_velocity = 0.0;  // default 0.9 * (extent - center_radius) - 4 widths
    double width = 1.0;
};

inline WaveFunction random_bandlimited_state(const GridSpec& grid, std::mt19937_64& rng,
                                             RandomStateParams params = {}) {
    const double extent = grid.scale * grid.half_width;
    if (params.center_radius <= 0.0) params.center_radius = 0.2 * extent;
    if (params.max_velocity <= 0.0) {
        // budget: center + tanh(3)(|v| + 7 sigma_p) + 7 sigma_x inside the box,
        // so the comoving drift 2 tau p never pushes gaussian mass past ~7
        // sigma at the edge (amplitude ~1e-14) for any propagation time;
        // sigma_x ~ 0.89/width and sigma_p ~ 0.85*width over the width jitter
        params.max_velocity = 0.97 * extent - params.center_radius -
                              6.2 / params.width - 5.9 * params.width;
        params.max_velocity =
            std::min(params.max_velocity, 0.7 * grid.momentum_cutoff());
        if (params.max_velocity <= 0.25) params.max_velocity = 0.25;
    }

    std::uniform_real_distribution<double> ucenter(-params.center_radius,
                                                   params.center_radius);
    std::uniform_real_distribution<double> uvel(-params.max_velocity, params.max_velocity);
    std::uniform_real_distribution<double> uamp(0.2, 1.0);
    std::uniform_real_distribution<double> uphase(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> uwidth(0.8 * params.width, 1.2 * params.width);

    WaveFunction psi{grid, std::vector<cplx>(grid.size(), cplx{})};
    for (int k = 0; k < params.n_packets; ++k) {
        double c0 = ucenter(rng), c1 = grid.dim > 1 ? ucenter(rng) : 0.0;
        double v0 = uvel(rng), v1 = grid.dim > 1 ? uvel(rng) : 0.0;
        double amp = uamp(rng), ph = uphase(rng), w = uwidth(rng);
        cplx a = amp * cplx{std::cos(ph), std::sin(ph)};
        const double inv2w2 = 0.5 * w * w; // position-space gaussian ~ e^{-w^2 x^2 / 2}
        if (grid.dim == 1) {
            for (int i = 0; i < grid.points; ++i) {
                double x = grid.physical_coord(i) - c0;
                double arg = v0 * grid.physical_coord(i);
                psi.values[i] += a * std::exp(-inv2w2 * x * x) *
                                 cplx{std::cos(arg), std::sin(arg)};
            }
        } else {
            for (int i0 = 0; i0 < grid.points; ++i0)
                for (int i1 = 0; i1 < grid.points; ++i1) {
                    double x = grid.physical_coord(i0) - c0;
                    double y = grid.physical_coord(i1) - c1;
                    double arg = v0 * grid.physical_coord(i0) + v1 * grid.physical_coord(i1);
                    psi.values[flat_index(grid, i0, i1)] +=
                        a * std::exp(-inv2w2 * (x * x + y * y)) *
                        cplx{std::cos(arg), std::sin(arg)};
                }
        }
    }
    psi.normalize();
    return psi;
}

} // namespace repsc
