#pragma once

#include <span>

#include "repsc/dynamics.hpp"
#include "repsc/potential.hpp"
#include "repsc/wavefunction.hpp"

namespace repsc {

struct ScatterConfig {
    double t_max = 3.0;       // truncation time
    double cook_tol = 1e-6;   // delta_cook
    double dt = 0.01;
    double cauchy_back = 0.5; // second truncation T - cauchy_back for the Cauchy test
    EvolveConfig evolve;      // step/guards for the interacting legs (dt copied in)
};

struct ScatterResult {
    WaveFunction outgoing; // S Phi on the incoming grid (frame-free)
    double cook_tail_past = 0.0;
    double cook_tail_future = 0.0;
    double t_used = 0.0;
    double unitarity_defect = 0.0; // | ||S Phi|| / ||Phi|| - 1 |
};

/// ||V(x) e^{-itH0} phi||, evaluated in frame: ||V(cosh(2t) x) e^{-i tau p^2} phi||.
double cook_integrand(const WaveFunction& phi, double t, const Potential& V);

/// Propagation-estimate integrands for boosted packets Phi_v = e^{iv.x} Phi_0,
/// using the exact boost covariance of e^{-itH0}:
///   ||W(x) e^{-itH0} Phi_v|| = ||W(cosh(2t) x + sinh(2t) v) e^{-i tau p^2} Phi_0||
/// so the lattice never has to resolve the velocity.
enum class PotentialPart { total, singular, regular, regular_minus_drift };
double propagation_integrand(const WaveFunction& phi0, std::span<const double> velocity,
                             double t, const Potential& V, PotentialPart part);

/// integral over |t| >= T of a log-linear extrapolation of the Cook integrand
/// (one-sided: direction +1 future, -1 past). Returns +inf when the fitted
/// slope is not decaying.
double cook_tail_estimate(const WaveFunction& phi, const Potential& V, double T,
                          int direction);

struct WaveOpDiagnostics {
    double t_used = 0.0;
    double cauchy_difference = 0.0;
    double cook_tail = 0.0;
};

/// W+- phi at the accepted truncation (sign +1 or -1):
///   W- phi ~ e^{-iTH} e^{+iTH0} phi,  W+ phi ~ e^{+iTH} e^{-iTH0} phi,
/// both computed in the comoving frame (output lives on the incoming grid).
/// Throws ConvergenceError when the extrapolated Cook tail at t_max exceeds
/// cook_tol or the successive-truncation Cauchy difference fails.
WaveFunction wave_operator_apply(const WaveFunction& phi, int sign, const Potential& V,
                                 const ScatterConfig& cfg,
                                 WaveOpDiagnostics* diag = nullptr);

/// S Phi = (W+)* W- Phi realized as e^{iTH0} e^{-2iTH} e^{iTH0} with matched
/// truncations; in frame the three stages collapse to
///   e^{+i tau(T) p^2} . [comoving -T -> +T] . e^{+i tau(T) p^2}.
ScatterResult scattering_apply(const WaveFunction& phi, const Potential& V,
                               const ScatterConfig& cfg);

/// Graf-type modifier eta(t) = int_0^t V_reg(sinh(2 s) v) ds; the modified
/// free dynamics is U_v(t) = e^{-itH0} e^{-i eta(t)}.
class ModifierPhase {
public:
    ModifierPhase(std::vector<double> velocity, const Potential& V);
    double operator()(double t) const;  // eta(t)
    double total_abs_phase() const;     // int_{-inf}^{inf} |V_reg(sinh(2t) v)| dt

private:
    std::vector<double> v_;
    const Potential* potential_;
};

ModifierPhase modifier_phase(std::span<const double> velocity, const Potential& V);

/// Omega_v^{+-} phi = (W^{+-} phi) * e^{-i eta(-+T)}: the scalar modifier
/// commutes with everything and folds into a global phase.
WaveFunction modified_wave_operator_apply(const WaveFunction& phi, int sign,
                                          std::span<const double> velocity,
                                          const Potential& V, const ScatterConfig& cfg,
                                          WaveOpDiagnostics* diag = nullptr);

} // namespace repsc
