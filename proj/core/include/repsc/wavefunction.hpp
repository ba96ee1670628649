#pragma once

#include <span>
#include <vector>

#include "repsc/grid.hpp"

namespace repsc {

/// Complex amplitudes sampled at the grid's physical coordinates.
/// L2 norm uses the physical cell volume: ||psi||^2 = sum |v|^2 * dV.
struct WaveFunction {
    GridSpec grid;
    std::vector<cplx> values;

    double norm() const;
    void normalize(); // post: ||psi|| = 1 within 1e-12
};

enum class FourierDirection { forward, inverse };

/// Unitary continuum Fourier transform on the lattice
/// (F psi)(xi) = (2pi)^{-n/2} int e^{-i xi.x} psi(x) dx, discretized on the
/// half-offset momentum lattice. Plancherel holds to roundoff and
/// inverse(forward(psi)) = psi.
WaveFunction fourier(const WaveFunction& psi, FourierDirection dir);

/// L2 scalar product, conjugate-linear in the FIRST slot:
/// (phi, psi) = int conj(phi) psi dx. Throws on grid mismatch.
cplx inner_product(const WaveFunction& phi, const WaveFunction& psi);

enum class Observable { position, momentum, position_sq, momentum_sq };

/// <psi, A psi> for A in {x_j, p_j, x_j^2, p_j^2}; input need not be
/// normalized (the raw quadratic form is returned).
double observable_moment(const WaveFunction& psi, Observable which, int axis);

/// sum over axes of <p_j^2> - <x_j^2>.
double h0_expectation(const WaveFunction& psi);

/// p_j psi via the momentum-space multiplier xi_j.
WaveFunction apply_momentum(const WaveFunction& psi, int axis);

/// e^{i v.x} psi at physical coordinates.
WaveFunction boost(const WaveFunction& psi, std::span<const double> velocity);

/// Relative spectral mass with any |xi_axis| > fraction * momentum cutoff.
double spectral_tail_mass(const WaveFunction& psi, double fraction = 0.8);

/// Relative mass in the outermost shell (width `cells` points) of the box.
double edge_mass(const WaveFunction& psi, int cells = 4);

/// Band-limited (trigonometric) resampling onto another grid covering a
/// comparable physical region. Exact for states resolved on both lattices.
WaveFunction resample_to(const WaveFunction& psi, const GridSpec& target);

/// ||a - b|| over a common grid; throws on mismatch.
double l2_difference(const WaveFunction& a, const WaveFunction& b);

} // namespace repsc
