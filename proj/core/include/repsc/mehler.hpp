#pragma once

#include <functional>
#include <span>
#include <vector>

#include "repsc/wavefunction.hpp"

namespace repsc {

/// Hyperbolic coefficients of both factorizations of e^{-itH0}, H0 = p^2 - x^2:
///   factored:  M(tanh(2t)/2) D(sinh(2t)/2) F M(tanh(2t)/2)
///   kinetic:   i^{n/2} M(coth(2t)/2) D(cosh(2t)/2) e^{-i tanh(2t) p^2 / 2}
/// with M(t)f(x) = e^{i x^2/(4t)} f(x), D(t)f(x) = (2it)^{-n/2} f(x/(2t)).
struct MehlerFactors {
    double time = 0.0;
    double chirp1 = 0.0;           // tanh(2t)/2
    double dilation = 0.0;         // sinh(2t)/2
    double chirp2 = 0.0;           // tanh(2t)/2
    double chirp_kinetic = 0.0;    // coth(2t)/2
    double dilation_kinetic = 0.0; // cosh(2t)/2
    double kinetic_time = 0.0;     // tanh(2t)/2

    static MehlerFactors at(double t); // t != 0
    /// max residual of cosh^2-sinh^2=1 and tanh*coth=1 (should be ~1e-16)
    double hyperbolic_residual() const;
};

/// M(t_param): pointwise phase e^{i x^2 / (4 t_param)} at physical x.
/// Unit modulus, norm preserving. t_param = 0 is rejected.
WaveFunction chirp_apply(const WaveFunction& psi, double t_param);

/// D(t_param): lazy dilation. Grid scale is multiplied by |2 t_param|, values
/// get the principal-branch prefactor (2 i t_param)^{-n/2}; a negative
/// argument additionally reflects the (symmetric, half-offset) lattice.
WaveFunction dilate(const WaveFunction& psi, double t_param);

/// e^{-i tau p^2} as the exact Fourier multiplier e^{-i tau |xi|^2}.
WaveFunction kinetic_propagate(const WaveFunction& psi, double tau);

/// e^{-itH0} via the two factorizations. t = 0 returns the identity by
/// convention (both factor chains are singular there, the limit is not).
/// Outputs are materialized: the quadratic phase lives in the values and the
/// cosh/sinh expansion in the grid scale, so the result is only faithful
/// while the chirp stays inside the band; the spectral guard throws
/// GridOverflowError past it.
WaveFunction free_propagate_factored(const WaveFunction& psi, double t,
                                     double guard_budget = 1e-8);
WaveFunction free_propagate_kinetic_form(const WaveFunction& psi, double t,
                                         double guard_budget = 1e-8);
/// Default route (kinetic form: one multiplier, one lazy dilation, one chirp).
WaveFunction free_propagate(const WaveFunction& psi, double t,
                            double guard_budget = 1e-8);

/// Agreement of the two factorizations on one state. The factored chain's
/// output lattice (sinh(2t) x momentum lattice) cannot *represent* the
/// quadratic phase for |t| beyond a fraction, but its sample values are exact
/// (every intermediate is band-limited); the kinetic-form output is
/// representable, so its interpolant is evaluated at the factored sample
/// points inside the kinetic box and the L2 difference of exact samples is
/// formed there.
struct FormsAgreement {
    double l2_difference = 0.0;
    double compared_mass = 0.0; // fraction of the factored mass inside the window
};
FormsAgreement mehler_forms_agreement(const WaveFunction& psi, double t);

// --- comoving representation -------------------------------------------------
//
// e^{-itH0} = G(t) e^{-i tau(t) p^2} with tau(t) = tanh(2t)/2 and
//   G(t) f(x) = cosh(2t)^{-n/2} e^{i tanh(2t) x^2 / 2} f(x / cosh(2t)),
// which is regular at t = 0 (G(0) = 1). Interacting evolution keeps states in
// the G-frame where the dynamics is band-limited for all times; G is applied
// only when a state must be materialized on its expanded grid.

double comoving_tau(double t); // tanh(2t)/2

/// Frame values of e^{-itH0} psi: e^{-i tau(t) p^2} psi on the original grid.
WaveFunction comoving_free(const WaveFunction& psi, double t);

/// Apply G(t): multiply the chirp into the values and fold cosh(2t) into the
/// grid scale. Inverse of `dematerialize` at the same t.
WaveFunction materialize_frame(const WaveFunction& phi, double t);
WaveFunction dematerialize_frame(const WaveFunction& psi, double t);

/// <x_j> of e^{-itH0} psi, computed in frame (exact at any t):
/// cosh(2t) * <x_j> of comoving_free(psi, t).
double heisenberg_position(const WaveFunction& psi, double t, int axis);

// --- scaling-law norms -------------------------------------------------------

struct SobolevNorms {
    double l2 = 0.0;    // ||m||
    double h2dot = 0.0; // || |xi|^2 F m ||
};

/// L2 and homogeneous-H2 norms of a real field; rejects fields that do not
/// decay inside the grid (relative edge mass > 1e-8).
SobolevNorms sobolev_norms(const RealField& m);

struct CarlsonBeurlingRow {
    double lambda = 0.0;
    double bl_infty_estimate = 0.0; // ||F^{-1} m(lambda .)||_{L^1}
    double ratio_to_bound = 0.0;    // estimate / (||m||^{1-n/4} ||m||_{H2dot}^{n/4})
};

struct CarlsonBeurlingReport {
    std::vector<CarlsonBeurlingRow> rows;
    double l2 = 0.0;
    double h2dot = 0.0;
    double fitted_constant = 0.0; // max ratio: single C covering all lambda
    double spread = 0.0;          // (max-min)/min of the estimates
};

/// Scale-uniformity check of the B(L^infty) bound: the operator norm of
/// m(lambda p) is estimated from above by the L1 norm of the convolution
/// kernel F^{-1}[m(lambda .)], each lambda on a grid adapted to its scale.
CarlsonBeurlingReport carlson_beurling_check(const std::function<double(double)>& m_radial,
                                             int dim, std::span<const double> lambdas,
                                             const GridSpec& reference_grid);

} // namespace repsc
