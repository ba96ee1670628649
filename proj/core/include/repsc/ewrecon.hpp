#pragma once

#include <span>
#include <vector>

#include "repsc/packet.hpp"
#include "repsc/potential.hpp"
#include "repsc/scatter.hpp"

namespace repsc {

/// One sweep row of the high-velocity pairing against its quadrature oracle.
struct SweepRow {
    double v_mag = 0.0;
    std::vector<double> vhat;
    int axis = 0;
    std::vector<double> center_phi, center_psi;
    cplx pairing{};
    cplx rhs_oracle{};
    double abs_error = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows; // sorted by |v|
};

/// |v| (i [S, p_j] Phi_v, Psi_v), assembled from two scattering runs on
/// Phi_v and (p_j Phi_0)_v -- the boost-linear terms cancel exactly, so no
/// large-velocity cancellation enters:
///   = -i |v| [ (S (p_j Phi_0)_v, Psi_v) - (S Phi_v, (p_j Psi_0)_v) ]
/// with the scalar product conjugate-linear in the first slot.
cplx commutator_pairing(const GridSpec& grid, const PacketSpec& phi0, const PacketSpec& psi0,
                        int axis, std::span<const double> velocity, const Potential& V,
                        const ScatterConfig& cfg);

/// Independent oracle for the high-velocity limit (no propagators):
///   (1/2) int { (V_sing(x + vhat t) p_j Phi_0, Psi_0)
///             - (V_sing(x + vhat t) Phi_0, p_j Psi_0)
///             + (i (d_j V_reg)(x + vhat t) Phi_0, Psi_0) } dt
/// by adaptive quadrature of grid inner products; the algebraic t-tail is
/// compressed with t = sinh(u).
cplx theorem2_rhs_quadrature(const WaveFunction& phi0, const WaveFunction& psi0, int axis,
                             std::span<const double> vhat, const Potential& V,
                             double tol = 1e-8);

struct SweepConfig {
    std::vector<double> v_mags;
    std::vector<double> vhat; // unit vector
    int axis = 0;
    PacketSpec phi0, psi0; // velocity field ignored; set per row as |v| vhat
    ScatterConfig scatter;
    double tolerance = 0.05; // final relative error target
};

SweepResult velocity_sweep(const GridSpec& grid, const SweepConfig& cfg, const Potential& V,
                           int jobs = 1);

/// X-ray transform samples harvested from the measured high-velocity limit
/// (smooth-potential pathway, n = 2).
struct XRaySampleSet {
    std::vector<double> vhat;
    std::vector<double> offsets;  // transverse lattice along vhat-perp
    std::vector<double> values;   // estimate of XV(vhat, offset)
    double width = 0.0;           // packet width used
    double imag_residue = 0.0;    // max |Im| of the underlying samples
};

/// For packets centered at offset*vhat_perp the regular term of the measured
/// limit approximates the transverse derivative of XV smeared by the packet
/// density; samples are accumulated along the transverse axis and optionally
/// deconvolution-corrected for the (gaussian) smear.
XRaySampleSet extract_xray_samples(const Potential& V, std::span<const double> vhat,
                                   std::span<const double> offsets, double width,
                                   double v_mag, const GridSpec& grid,
                                   const ScatterConfig& cfg, bool deconvolve = true,
                                   int jobs = 1);

} // namespace repsc
