#pragma once

#include <span>
#include <vector>

#include "repsc/wavefunction.hpp"

namespace repsc {

enum class PacketKind { gaussian_bump, compact_bump };

/// Wave packet Phi_v = e^{i v.x} Phi_0 with Phi_0 centered at `center`.
/// The momentum profile of Phi_0 is radial with scale `width` w:
///   gaussian_bump:  F Phi_0(xi) ~ exp(-xi^2 / (2 w^2))
///   compact_bump:   F Phi_0(xi) ~ exp(-1 / (1 - (|xi|/a)^2)^sharpness),
///                   |xi| < a = support_factor * w  (exactly compact support)
struct PacketSpec {
    std::vector<double> center;   // x0, physical units
    std::vector<double> velocity; // v, momentum units
    double width = 1.0;           // momentum-profile width w
    PacketKind kind = PacketKind::gaussian_bump;
    double bump_sharpness = 1.0;  // compact bump exponent, config-exposed
    double support_factor = 3.0;  // compact bump support radius in units of w
    double aliasing_budget = 1e-10;
};

/// Normalized packet on the grid. Throws AliasingError when |v| exceeds
/// 0.8 x momentum cutoff or the momentum profile does not fit the band,
/// GridOverflowError when the position tail does not fit the box.
WaveFunction make_packet(const GridSpec& grid, const PacketSpec& spec);

/// (p_j Phi_0)_v = e^{i v.x} p_j Phi_0, i.e. the momentum profile multiplied
/// by (xi - v)_j before boosting. NOT normalized: the amplitude is fixed so
/// that it equals apply_momentum(Phi_0) boosted, given the same spec.
WaveFunction make_momentum_weighted_packet(const GridSpec& grid, const PacketSpec& spec,
                                           int axis);

} // namespace repsc
