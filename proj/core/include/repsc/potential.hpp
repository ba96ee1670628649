#pragma once

#include <functional>
#include <span>
#include <vector>

#include "repsc/grid.hpp"

namespace repsc {

enum class RegularKind { none, power_decay, gaussian };
enum class SingularKind { none, coulomb_like, cutoff_bump };

/// V = V_sing + V_reg.
///   regular power_decay: c <x>^{-eps},  <x> = sqrt(1 + |x|^2), eps > 0
///   regular gaussian:    c exp(-|x|^2 / sigma^2)
///   singular coulomb_like: c |x|^{-n/2 + eps_tilde} for |x| <= R, else 0
///   singular cutoff_bump:  c exp(1 - 1/(1 - (|x|/R)^2)) for |x| < R, else 0
/// Gradients of the regular part are analytic (the reconstruction oracle must
/// not inherit differencing error).
struct RegularPart {
    RegularKind kind = RegularKind::none;
    double strength = 0.0;
    double decay = 1.0; // eps
    double sigma = 1.0; // gaussian width
};

struct SingularPart {
    SingularKind kind = SingularKind::none;
    double strength = 0.0;
    double exponent = 0.25;      // eps_tilde
    double support_radius = 1.0; // R
};

struct PotentialSpec {
    RegularPart regular;
    SingularPart singular;
    double mollify_radius = 0.0; // optional radial clamp for sensitivity studies
};

class Potential {
public:
    Potential() = default;
    Potential(PotentialSpec spec, int dim);

    double value(std::span<const double> x) const;
    double regular_value(std::span<const double> x) const;
    double singular_value(std::span<const double> x) const;
    double regular_gradient(std::span<const double> x, int axis) const;

    bool has_regular() const { return spec_.regular.kind != RegularKind::none; }
    bool has_singular() const { return spec_.singular.kind != SingularKind::none; }
    double singular_support_radius() const { return spec_.singular.support_radius; }
    int dim() const { return dim_; }
    const PotentialSpec& spec() const { return spec_; }

    /// Decay scale of the dominant regular feature (used to vet packet widths
    /// in the reconstruction pathway).
    double feature_scale() const;

private:
    double radial_regular(double r) const;
    double radial_singular(double r) const;

    PotentialSpec spec_;
    int dim_ = 1;
};

/// Required integrability exponent q of the singular class:
/// q = 2 (n <= 3), any q > 2 (n = 4; 3 is returned), q = n/2 (n >= 5).
/// Verifies the configured singular part lies in L^q: analytic membership
/// plus discrete L^q norms converging under grid refinement (Cauchy test).
/// Throws std::domain_error when membership fails.
double classify_q(const PotentialSpec& spec, int n);

struct LqRefinementReport {
    double q = 0.0;
    std::vector<int> grid_sizes;
    std::vector<double> norms;        // discrete ||V_sing||_q per refinement
    std::vector<double> cauchy_diffs; // relative successive differences
    bool converged = false;           // diffs shrink and last < tolerance
    double tolerance = 0.01;
};

/// Discrete L^q norms of the singular part on a refinement ladder over the
/// support box; the Cauchy column mirrors the radial integral test of the
/// coulomb-like class (finite iff eps_tilde > 0).
LqRefinementReport lq_refinement_report(const PotentialSpec& spec, int n,
                                        std::span<const int> grid_sizes,
                                        double tolerance = 0.01);

struct DecayReport {
    double declared_eps = 0.0;
    double fitted_value_slope = 0.0;    // log|V| vs log r slope
    double fitted_gradient_slope = 0.0; // log|grad V| vs log r slope
    double fit_tolerance = 0.1;
    bool ok = false; // slopes <= -eps + tol and <= -(eps+1) + tol
};

/// Fit decay exponents of a radial profile and its gradient magnitude against
/// the declared eps; generic version for adversarial inputs, wrapper for a
/// configured potential's regular part.
DecayReport validate_regular_decay(const std::function<double(double)>& value,
                                   const std::function<double(double)>& gradient_magnitude,
                                   double declared_eps, std::span<const double> radii,
                                   double fit_tolerance = 0.1);
DecayReport validate_regular_decay(const Potential& V, std::span<const double> radii,
                                   double fit_tolerance = 0.1);

} // namespace repsc
