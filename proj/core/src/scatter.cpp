#include "repsc/scatter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "repsc/errors.hpp"
#include "repsc/quadrature.hpp"

namespace repsc {

namespace {

double weighted_norm(const WaveFunction& chi, const std::function<double(std::span<const double>)>& w) {
    const GridSpec& g = chi.grid;
    double acc = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) {
            double x = g.physical_coord(i);
            double c = w(std::span<const double>{&x, 1});
            acc += c * c * std::norm(chi.values[i]);
        }
    } else {
        for (int i0 = 0; i0 < g.points; ++i0) {
            double x0 = g.physical_coord(i0);
            for (int i1 = 0; i1 < g.points; ++i1) {
                double pt[2] = {x0, g.physical_coord(i1)};
                double c = w(pt);
                acc += c * c * std::norm(chi.values[flat_index(g, i0, i1)]);
            }
        }
    }
    return std::sqrt(acc * g.cell_volume());
}

EvolveConfig evolve_config(const ScatterConfig& cfg) {
    EvolveConfig e = cfg.evolve;
    e.dt = cfg.dt;
    return e;
}

} // namespace

double cook_integrand(const WaveFunction& phi, double t, const Potential& V) {
    WaveFunction chi = comoving_free(phi, t);
    const double ch = std::cosh(2.0 * t);
    return weighted_norm(chi, [&](std::span<const double> x) {
        double pt[2] = {ch * x[0], x.size() > 1 ? ch * x[1] : 0.0};
        return V.value(std::span<const double>{pt, x.size()});
    });
}

double propagation_integrand(const WaveFunction& phi0, std::span<const double> velocity,
                             double t, const Potential& V, PotentialPart part) {
    WaveFunction chi = comoving_free(phi0, t);
    const double ch = std::cosh(2.0 * t);
    const double sh = std::sinh(2.0 * t);
    const int dim = phi0.grid.dim;
    if (static_cast<int>(velocity.size()) != dim)
        throw std::invalid_argument("propagation_integrand: velocity dimension mismatch");

    double drift = 0.0;
    if (part == PotentialPart::regular_minus_drift) {
        double pt[2] = {sh * velocity[0], dim > 1 ? sh * velocity[1] : 0.0};
        drift = V.regular_value(std::span<const double>{pt, static_cast<std::size_t>(dim)});
    }
    return weighted_norm(chi, [&](std::span<const double> x) {
        double pt[2] = {ch * x[0] + sh * velocity[0],
                        x.size() > 1 ? ch * x[1] + sh * velocity[1] : 0.0};
        std::span<const double> p{pt, x.size()};
        switch (part) {
        case PotentialPart::total: return V.value(p);
        case PotentialPart::singular: return V.singular_value(p);
        case PotentialPart::regular: return V.regular_value(p);
        case PotentialPart::regular_minus_drift: return V.regular_value(p) - drift;
        }
        return 0.0;
    });
}

double cook_tail_estimate(const WaveFunction& phi, const Potential& V, double T,
                          int direction) {
    // log-linear fit over the last window before the truncation
    constexpr int kSamples = 6;
    constexpr double kWindow = 0.6;
    std::vector<double> ts, ls;
    double largest = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        double t = T - kWindow + kWindow * i / (kSamples - 1);
        double g = cook_integrand(phi, direction > 0 ? t : -t, V);
        largest = std::max(largest, g);
        if (g <= 0.0) g = std::numeric_limits<double>::min();
        ts.push_back(t);
        ls.push_back(std::log(g));
    }
    if (largest < 1e-30) return 0.0; // V acts trivially on this state
    LinearFit fit = linear_fit(ts, ls);
    const double gT = std::exp(fit.intercept + fit.slope * T);
    if (fit.slope >= -1e-3) return std::numeric_limits<double>::infinity();
    return gT / (-fit.slope);
}

namespace {

// Frame values of e^{+-iTH0} phi at frame time -+T, then integrate to 0.
WaveFunction wave_operator_at(const WaveFunction& phi, int sign, const Potential& V,
                              const ScatterConfig& cfg, double T) {
    ComovingEvolver ev(phi.grid, V, evolve_config(cfg));
    const double t_in = (sign < 0) ? -T : T;
    WaveFunction f = kinetic_propagate(phi, comoving_tau(t_in));
    ev.integrate(f, t_in, 0.0);
    return f;
}

} // namespace

WaveFunction wave_operator_apply(const WaveFunction& phi, int sign, const Potential& V,
                                 const ScatterConfig& cfg, WaveOpDiagnostics* diag) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("wave_operator_apply: sign must be +1 or -1");
    const double T = cfg.t_max;
    const double tail = cook_tail_estimate(phi, V, T, sign > 0 ? 1 : -1);
    if (tail > cfg.cook_tol)
        throw ConvergenceError("wave operator: extrapolated Cook tail above tolerance at t_max",
                               tail);
    WaveFunction full = wave_operator_at(phi, sign, V, cfg, T);
    double cauchy = 0.0;
    if (cfg.cauchy_back > 0.0) {
        WaveFunction shorter = wave_operator_at(phi, sign, V, cfg, T - cfg.cauchy_back);
        cauchy = l2_difference(full, shorter);
    }
    if (diag) {
        diag->t_used = T;
        diag->cauchy_difference = cauchy;
        diag->cook_tail = tail;
    }
    return full;
}

ScatterResult scattering_apply(const WaveFunction& phi, const Potential& V,
                               const ScatterConfig& cfg) {
    const double T = cfg.t_max;
    ScatterResult res;
    res.t_used = T;
    res.cook_tail_past = cook_tail_estimate(phi, V, T, -1);
    res.cook_tail_future = cook_tail_estimate(phi, V, T, +1);
    if (res.cook_tail_past > cfg.cook_tol || res.cook_tail_future > cfg.cook_tol)
        throw ConvergenceError("scattering: extrapolated Cook tail above tolerance at t_max",
                               std::max(res.cook_tail_past, res.cook_tail_future));

    ComovingEvolver ev(phi.grid, V, evolve_config(cfg));
    const double tau = comoving_tau(T);
    WaveFunction f = kinetic_propagate(phi, -tau); // frame of e^{iTH0} phi at t = -T
    ev.integrate(f, -T, T);                        // e^{-2iTH}
    WaveFunction out = kinetic_propagate(f, -tau); // e^{iTH0}: frames cancel exactly
    res.unitarity_defect = std::abs(out.norm() / phi.norm() - 1.0);
    res.outgoing = std::move(out);
    return res;
}

ModifierPhase::ModifierPhase(std::vector<double> velocity, const Potential& V)
    : v_(std::move(velocity)), potential_(&V) {}

double ModifierPhase::operator()(double t) const {
    if (t == 0.0 || !potential_->has_regular()) return 0.0;
    auto f = [this](double s) {
        const double sh = std::sinh(2.0 * s);
        double pt[2] = {sh * v_[0], v_.size() > 1 ? sh * v_[1] : 0.0};
        return potential_->regular_value(std::span<const double>{pt, v_.size()});
    };
    return adaptive_simpson_real(f, 0.0, t, 1e-10);
}

double ModifierPhase::total_abs_phase() const {
    if (!potential_->has_regular()) return 0.0;
    auto f = [this](double s) {
        const double sh = std::sinh(2.0 * s);
        double pt[2] = {sh * v_[0], v_.size() > 1 ? sh * v_[1] : 0.0};
        return std::abs(potential_->regular_value(std::span<const double>{pt, v_.size()}));
    };
    // sinh(2t) reaches ~10^5 |v| by t = 6; the integrand tail is negligible
    // for every eps > 0 decay in the regular class.
    return adaptive_simpson_real(f, -6.0, 6.0, 1e-10);
}

ModifierPhase modifier_phase(std::span<const double> velocity, const Potential& V) {
    return ModifierPhase(std::vector<double>(velocity.begin(), velocity.end()), V);
}

WaveFunction modified_wave_operator_apply(const WaveFunction& phi, int sign,
                                          std::span<const double> velocity,
                                          const Potential& V, const ScatterConfig& cfg,
                                          WaveOpDiagnostics* diag) {
    WaveFunction out = wave_operator_apply(phi, sign, V, cfg, diag);
    ModifierPhase eta = modifier_phase(velocity, V);
    const double ph = -eta(sign < 0 ? -cfg.t_max : cfg.t_max);
    cplx factor{std::cos(ph), std::sin(ph)};
    for (cplx& v : out.values) v *= factor;
    return out;
}

} // namespace repsc
