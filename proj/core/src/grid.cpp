#include "repsc/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace repsc {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double GridSpec::momentum_spacing() const {
    return std::numbers::pi / (scale * half_width);
}

double GridSpec::momentum_cutoff() const {
    return std::numbers::pi * points / (2.0 * scale * half_width);
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(points);
    return s;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= physical_spacing();
    return v;
}

GridSpec GridSpec::momentum_grid() const {
    return GridSpec{dim, points, momentum_cutoff(), 1.0};
}

GridSpec make_grid(int dim, int points, double half_width) {
    GridSpec g{dim, points, half_width, 1.0};
    validate_grid(g);
    return g;
}

void validate_grid(const GridSpec& g) {
    if (g.dim != 1 && g.dim != 2)
        throw std::invalid_argument("grid: dim must be 1 or 2, got " + std::to_string(g.dim));
    if (g.points < 8 || !is_power_of_two(g.points))
        throw std::invalid_argument("grid: N must be a power of two >= 8, got " +
                                    std::to_string(g.points));
    if (!(g.half_width > 0.0))
        throw std::invalid_argument("grid: L must be positive");
    if (!(g.scale != 0.0) || !std::isfinite(g.scale) || g.scale < 0.0)
        throw std::invalid_argument("grid: scale factor must be positive and finite");
}

bool grids_compatible(const GridSpec& a, const GridSpec& b) {
    if (a.dim != b.dim || a.points != b.points) return false;
    const double ps = a.physical_spacing();
    const double tol = 1e-12 * std::max(1.0, std::abs(ps));
    return std::abs(ps - b.physical_spacing()) <= tol &&
           std::abs(a.physical_coord(0) - b.physical_coord(0)) <=
               tol * std::max(1.0, std::abs(a.physical_coord(0)));
}

double RealField::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * grid.cell_volume());
}

} // namespace repsc
