#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace repsc {

using cplx = std::complex<double>;

/// Uniform Cartesian lattice, identical along every axis.
///
/// Lattice coordinates are offset by half a spacing so no point hits the
/// origin: u_i = (i - N/2 + 1/2) * (2L/N). Physical coordinate = scale * u.
/// The momentum lattice uses the same half-offset layout with spacing
/// pi/(scale*L); cutoff (largest representable |xi|) is pi*N/(2*scale*L).
struct GridSpec {
    int dim = 1;             // n, 1 or 2 at runtime
    int points = 0;          // N per axis, power of two, >= 8
    double half_width = 0.0; // L > 0, lattice units
    double scale = 1.0;      // s, physical coordinate = s * lattice coordinate

    double spacing() const { return 2.0 * half_width / points; }
    double physical_spacing() const { return scale * spacing(); }
    double coord(int i) const { return (i - points / 2 + 0.5) * spacing(); }
    double physical_coord(int i) const { return scale * coord(i); }

    double momentum_spacing() const;
    double momentum_cutoff() const;
    double momentum(int i) const { return (i - points / 2 + 0.5) * momentum_spacing(); }

    std::size_t size() const;
    double cell_volume() const; // physical_spacing()^dim

    /// Grid the unitary Fourier transform maps onto: half_width = momentum
    /// cutoff, scale = 1, same point count.
    GridSpec momentum_grid() const;

    bool operator==(const GridSpec&) const = default;
};

/// Validated constructor used by the public surface; scale starts at 1.
/// Rejects N not a power of two or < 8, L <= 0, dim outside {1, 2}.
GridSpec make_grid(int dim, int points, double half_width);

/// Same checks as make_grid but on an existing spec (scale must be > 0;
/// internal propagation grids are exempt from the s >= 1 construction rule).
void validate_grid(const GridSpec& g);

/// True when two grids sample the same physical lattice (same dim, N,
/// physical spacing and offset), regardless of how half_width and scale
/// split the extent. Fourier round trips land on compatible, not
/// metadata-identical, grids.
bool grids_compatible(const GridSpec& a, const GridSpec& b);

bool is_power_of_two(int n);

/// Row-major flat index helpers (axis 0 slowest).
inline std::size_t flat_index(const GridSpec& g, int i0, int i1 = 0) {
    return g.dim == 1 ? static_cast<std::size_t>(i0)
                      : static_cast<std::size_t>(i0) * g.points + i1;
}

/// Real scalar field sampled on a grid (potentials, reconstructions).
struct RealField {
    GridSpec grid;
    std::vector<double> values;

    double l2_norm() const;
};

} // namespace repsc
