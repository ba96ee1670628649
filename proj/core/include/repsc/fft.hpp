#pragma once

#include <span>
#include <vector>

#include "repsc/grid.hpp"

namespace repsc::fft {

/// Unnormalized DFT, in place. sign = -1 forward (e^{-2pi i jk/N}), +1 inverse.
/// dim 1: length n0. dim 2: n0 x n1 row-major.
void dft(cplx* data, int dim, int n0, int n1, int sign);

/// S_j = sum_k a[k] e^{i alpha k j}, j = 0..m-1 (Bluestein chirp-z).
/// Exact up to roundoff for any real alpha; cost O((n+m) log(n+m)).
std::vector<cplx> czt_linear_phase(std::span<const cplx> a, int m, long double alpha);

/// Reduce a long-double phase into [0, 2pi); grid phases reach 1e7+ radians,
/// so arguments are assembled in long double before reduction.
double reduced_phase(long double x);

/// The momentum-mode spacing consistent with the DFT kernel for a lattice of
/// n points with the given physical spacing: exactly 2pi/(n dx) in long
/// double. The double-rounded GridSpec::momentum_spacing() differs at ulp
/// level, which matters once phases reach ~1e5 radians.
long double momentum_spacing_ld(int n, double physical_spacing);

/// phases[j] = c * coords[j]^2 reduced mod 2pi, built from the exact
/// coordinate doubles the grid hands out (coordinate consistency across
/// pipelines beats re-deriving x0 + j*h).
std::vector<double> quadratic_phases(std::span<const double> coords, double c);

} // namespace repsc::fft
