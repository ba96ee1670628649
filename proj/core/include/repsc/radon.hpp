#pragma once

#include <span>
#include <vector>

#include "repsc/grid.hpp"

namespace repsc {

/// X-ray transform samples: values[a * offsets.size() + o] = XV(theta_a, rho_o).
struct Sinogram {
    std::vector<double> angles;  // radians, in [0, pi)
    std::vector<double> offsets; // uniform transverse lattice
    std::vector<double> values;

    double at(std::size_t a, std::size_t o) const { return values[a * offsets.size() + o]; }
};

/// Line-integral quadrature int V(rho e_perp + t vhat) dt with bilinear
/// sampling (zero outside the grid), vhat = (cos theta, sin theta).
Sinogram xray_forward(const RealField& V, std::span<const double> angles,
                      std::span<const double> offsets);

/// Filtered back-projection: ramp filter |kappa| apodized with a raised
/// cosine at 0.9 x Nyquist, angle sum V(x) = (1/2pi) sum Q_theta(<x, e_perp>) dtheta.
/// Requires >= 32 angles (default tolerance regime).
RealField fbp_invert(const Sinogram& sino, const GridSpec& target, int min_angles = 32);

/// Relative residual of the discrete Plancherel identity
///   ||V||^2 = (1/2pi) int_0^pi || |kappa|^{1/2} F p_theta ||^2 dtheta.
double radon_plancherel_residual(const RealField& V, const Sinogram& sino);

} // namespace repsc
