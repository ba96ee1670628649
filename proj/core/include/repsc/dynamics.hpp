#pragma once

#include <functional>
#include <vector>

#include "repsc/mehler.hpp"
#include "repsc/potential.hpp"
#include "repsc/wavefunction.hpp"

namespace repsc {

struct EvolveConfig {
    double dt = 0.01;
    enum class Splitting { strang } splitting = Splitting::strang;
    double max_scale = 250.0;        // horizon guard: cosh(2T) must stay below
    double aliasing_budget = 1e-10;  // construction-time packet budget
    double materialize_budget = 1e-8; // spectral guard on materialized output
    double edge_budget = 1e-6;       // in-flight box-overflow guard
    int edge_check_interval = 25;
    double horizon = 1.0;            // T
};

/// Physical-state moments of G(t) phi recovered from frame values (exact,
/// no materialization).
struct FrameMoments {
    std::vector<double> x;  // <x_j>
    std::vector<double> p;  // <p_j>
    double x_sq = 0.0;      // sum_j <x_j^2>
    double p_sq = 0.0;      // sum_j <p_j^2>
    double h0 = 0.0;        // <p^2> - <x^2>
    double norm = 0.0;
};
FrameMoments frame_moments(const WaveFunction& phi, double t);

struct TrajectorySample {
    double t = 0.0;
    double norm = 0.0;
    std::vector<double> x, p;
    double h0 = 0.0;
    double scale = 0.0;
};

/// Strang integrator for the comoving equation
///   i d/dt phi = sech^2(2t) p^2 phi + V(cosh(2t) x) phi,
/// which is e^{-i(t1-t0)H} expressed in the G-frame (see mehler.hpp). The
/// kinetic sub-flow is exact (Fourier multiplier with the increment of
/// tau = tanh(2t)/2); the potential phase uses the half-interval midpoints.
/// For V = 0 the composition telescopes to the one-shot Mehler propagator.
class ComovingEvolver {
public:
    ComovingEvolver(GridSpec base, const Potential& V, const EvolveConfig& cfg);

    /// Integrate frame values from t0 to t1 (either direction); the optional
    /// callback sees (t, phi) after every accepted step.
    void integrate(WaveFunction& phi, double t0, double t1,
                   const std::function<void(double, const WaveFunction&)>& on_step = {}) const;

    const GridSpec& base_grid() const { return base_; }

private:
    void strang_step(WaveFunction& phi, double a, double b) const;
    void potential_half(WaveFunction& phi, double t_quad, double weight) const;
    void kinetic_exact(WaveFunction& phi, double dtau) const;

    GridSpec base_;
    const Potential* potential_;
    EvolveConfig cfg_;
};

/// One self-contained Strang step recentered at t = 0; output materialized on
/// the cosh(2 dt)-dilated grid. V = 0 degenerates to free_propagate(dt).
WaveFunction full_step(const WaveFunction& psi, double dt, const Potential& V);

/// e^{-iTH} psi via the comoving frame carried across [0, T] (T may be
/// negative); output materialized with the spectral guard applied. Optional
/// trajectory log of in-frame moments.
WaveFunction evolve(const WaveFunction& psi, double T, const Potential& V,
                    const EvolveConfig& cfg, std::vector<TrajectorySample>* log = nullptr);

} // namespace repsc
