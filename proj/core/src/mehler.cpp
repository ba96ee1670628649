#include "repsc/mehler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "repsc/errors.hpp"
#include "repsc/fft.hpp"

namespace repsc {

namespace {

void check_guard(const WaveFunction& out, double budget, const char* what) {
    if (budget > 0.0 && spectral_tail_mass(out) > budget)
        throw GridOverflowError(std::string(what) +
                                ": materialized state exceeds the spectral band "
                                "(grid too small for this time)");
}

void reflect_axes(WaveFunction& psi) {
    const GridSpec& g = psi.grid;
    const int n = g.points;
    if (g.dim == 1) {
        std::reverse(psi.values.begin(), psi.values.end());
    } else {
        std::vector<cplx> out(psi.values.size());
        for (int i0 = 0; i0 < n; ++i0)
            for (int i1 = 0; i1 < n; ++i1)
                out[flat_index(g, i0, i1)] =
                    psi.values[flat_index(g, n - 1 - i0, n - 1 - i1)];
        psi.values = std::move(out);
    }
}

// Pointwise multiply by e^{i c * |x|^2} at physical coordinates; separable,
// built from the grid coordinate doubles (chirps reach 1e9 radians, so the
// phase argument must match the coordinates other pipelines see).
void quadratic_phase(WaveFunction& psi, double c) {
    const GridSpec& g = psi.grid;
    std::vector<double> coords(g.points);
    for (int i = 0; i < g.points; ++i) coords[i] = g.physical_coord(i);
    const std::vector<double> ph = fft::quadratic_phases(coords, c);
    std::vector<cplx> axis(g.points);
    for (int i = 0; i < g.points; ++i) axis[i] = cplx{std::cos(ph[i]), std::sin(ph[i])};
    if (g.dim == 1) {
        for (int i = 0; i < g.points; ++i) psi.values[i] *= axis[i];
    } else {
        for (int i0 = 0; i0 < g.points; ++i0)
            for (int i1 = 0; i1 < g.points; ++i1)
                psi.values[flat_index(g, i0, i1)] *= axis[i0] * axis[i1];
    }
}

} // namespace

MehlerFactors MehlerFactors::at(double t) {
    if (t == 0.0) throw std::invalid_argument("MehlerFactors: t must be nonzero");
    MehlerFactors f;
    f.time = t;
    f.chirp1 = f.chirp2 = std::tanh(2.0 * t) / 2.0;
    f.dilation = std::sinh(2.0 * t) / 2.0;
    f.chirp_kinetic = 1.0 / (2.0 * std::tanh(2.0 * t));
    f.dilation_kinetic = std::cosh(2.0 * t) / 2.0;
    f.kinetic_time = std::tanh(2.0 * t) / 2.0;
    return f;
}

double MehlerFactors::hyperbolic_residual() const {
    const double c = 2.0 * dilation_kinetic;  // cosh(2t)
    const double s = 2.0 * dilation;          // sinh(2t)
    // pair the non-cancelling combination with the small exponential:
    // c + s = e^{2t} cancels for t < 0, c - s = e^{-2t} for t > 0
    const double r1 = time >= 0.0 ? std::abs((c + s) * std::exp(-2.0 * time) - 1.0)
                                  : std::abs((c - s) * std::exp(2.0 * time) - 1.0);
    const double r2 = std::abs((2.0 * chirp1) * (2.0 * chirp_kinetic) - 1.0);
    return std::max(r1, r2);
}

WaveFunction chirp_apply(const WaveFunction& psi, double t_param) {
    if (t_param == 0.0) throw std::invalid_argument("chirp_apply: t must be nonzero");
    WaveFunction out = psi;
    quadratic_phase(out, 1.0 / (4.0 * t_param));
    return out;
}

WaveFunction dilate(const WaveFunction& psi, double t_param) {
    if (t_param == 0.0) throw std::invalid_argument("dilate: t must be nonzero");
    WaveFunction out = psi;
    out.grid.scale *= std::abs(2.0 * t_param);
    // principal branch of (2it)^{-n/2}; 2it is purely imaginary, never on the cut
    cplx pref = std::pow(cplx{0.0, 2.0 * t_param}, -0.5 * psi.grid.dim);
    for (cplx& v : out.values) v *= pref;
    if (t_param < 0.0) reflect_axes(out);
    return out;
}

WaveFunction kinetic_propagate(const WaveFunction& psi, double tau) {
    if (tau == 0.0) return psi;
    WaveFunction hat = fourier(psi, FourierDirection::forward);
    quadratic_phase(hat, -tau);
    WaveFunction out = fourier(hat, FourierDirection::inverse);
    out.grid = psi.grid;
    return out;
}

WaveFunction free_propagate_factored(const WaveFunction& psi, double t, double guard_budget) {
    if (t == 0.0) return psi;
    MehlerFactors f = MehlerFactors::at(t);
    WaveFunction s1 = chirp_apply(psi, f.chirp1);
    WaveFunction s2 = fourier(s1, FourierDirection::forward);
    WaveFunction s3 = dilate(s2, f.dilation);
    WaveFunction out = chirp_apply(s3, f.chirp2);
    check_guard(out, guard_budget, "free_propagate_factored");
    return out;
}

WaveFunction free_propagate_kinetic_form(const WaveFunction& psi, double t,
                                         double guard_budget) {
    if (t == 0.0) return psi;
    MehlerFactors f = MehlerFactors::at(t);
    WaveFunction s1 = kinetic_propagate(psi, f.kinetic_time);
    WaveFunction s2 = dilate(s1, f.dilation_kinetic);
    WaveFunction out = chirp_apply(s2, f.chirp_kinetic);
    // global i^{n/2}; combined with the dilation prefactor this is real
    cplx phase = std::pow(cplx{0.0, 1.0}, 0.5 * psi.grid.dim);
    for (cplx& v : out.values) v *= phase;
    check_guard(out, guard_budget, "free_propagate_kinetic_form");
    return out;
}

WaveFunction free_propagate(const WaveFunction& psi, double t, double guard_budget) {
    return free_propagate_kinetic_form(psi, t, guard_budget);
}

namespace {

// Direct evaluation of the trigonometric interpolant sum_k hat_k e^{i xi_k x}
// at arbitrary points: incremental rotations reseeded from an exact reduced
// phase every block, so the error stays near ||hat||_1 * sqrt(N) * eps. The
// chirp-z route loses ~1e-9 here because a chirped spectrum resonates with
// the Bluestein kernel.
std::vector<cplx> interpolant_axis_eval(std::span<const cplx> coeff, long double xi0,
                                        long double dxi, std::span<const double> targets) {
    // rotation drift enters weighted by ||coeff||_1 (~1e3 for a fully chirped
    // spectrum), so the reseed block must stay small
    constexpr int kBlock = 64;
    const int n = static_cast<int>(coeff.size());
    std::vector<cplx> out(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        const long double x = targets[j];
        const double step_ph = fft::reduced_phase(dxi * x);
        const cplx w{std::cos(step_ph), std::sin(step_ph)};
        cplx acc{0.0, 0.0};
        cplx p{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            if (k % kBlock == 0) {
                double ph = fft::reduced_phase((xi0 + k * dxi) * x);
                p = cplx{std::cos(ph), std::sin(ph)};
            }
            acc += coeff[k] * p;
            p *= w;
        }
        out[j] = acc;
    }
    return out;
}

} // namespace

FormsAgreement mehler_forms_agreement(const WaveFunction& psi, double t) {
    WaveFunction kin = free_propagate_kinetic_form(psi, t);
    WaveFunction fac = free_propagate_factored(psi, t, 0.0);
    WaveFunction hat = fourier(kin, FourierDirection::forward);
    const GridSpec& mg = hat.grid;
    const long double dxi = fft::momentum_spacing_ld(kin.grid.points, kin.grid.physical_spacing());
    const long double xi0 = -(kin.grid.points / 2 - 0.5L) * dxi;
    double weight = 1.0;
    for (int a = 0; a < mg.dim; ++a)
        weight *= static_cast<double>(dxi) / std::sqrt(2.0 * std::numbers::pi);

    const GridSpec& fg = fac.grid;
    const double window = 0.999 * kin.grid.scale * kin.grid.half_width;
    std::vector<int> idx;
    std::vector<double> targets;
    for (int i = 0; i < fg.points; ++i)
        if (std::abs(fg.physical_coord(i)) <= window) {
            idx.push_back(i);
            targets.push_back(fg.physical_coord(i));
        }

    double diff2 = 0.0, inside = 0.0, total = 0.0;
    for (const cplx& v : fac.values) total += std::norm(v);

    if (fg.dim == 1) {
        auto vals = interpolant_axis_eval(hat.values, xi0, dxi, targets);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            double m = std::norm(fac.values[idx[j]]);
            inside += m;
            diff2 += std::norm(fac.values[idx[j]] - weight * vals[j]);
        }
    } else {
        // separable passes: axis 1 per source row, then axis 0 per target column
        const int n = mg.points;
        const int m = static_cast<int>(idx.size());
        std::vector<cplx> mid(static_cast<std::size_t>(n) * m);
        std::vector<cplx> row(n);
        for (int k0 = 0; k0 < n; ++k0) {
            std::copy_n(hat.values.begin() + static_cast<std::size_t>(k0) * n, n, row.begin());
            auto vals = interpolant_axis_eval(row, xi0, dxi, targets);
            for (int j = 0; j < m; ++j) mid[static_cast<std::size_t>(k0) * m + j] = vals[j];
        }
        std::vector<cplx> col(n);
        for (int j1 = 0; j1 < m; ++j1) {
            for (int k0 = 0; k0 < n; ++k0) col[k0] = mid[static_cast<std::size_t>(k0) * m + j1];
            auto vals = interpolant_axis_eval(col, xi0, dxi, targets);
            for (int j0 = 0; j0 < m; ++j0) {
                std::size_t k = flat_index(fg, idx[j0], idx[j1]);
                double mass = std::norm(fac.values[k]);
                inside += mass;
                diff2 += std::norm(fac.values[k] - weight * vals[j0]);
            }
        }
    }
    FormsAgreement out;
    out.l2_difference = std::sqrt(diff2 * fg.cell_volume());
    out.compared_mass = total > 0.0 ? inside / total : 0.0;
    return out;
}

double comoving_tau(double t) { return std::tanh(2.0 * t) / 2.0; }

WaveFunction comoving_free(const WaveFunction& psi, double t) {
    return kinetic_propagate(psi, comoving_tau(t));
}

WaveFunction materialize_frame(const WaveFunction& phi, double t) {
    if (t == 0.0) return phi;
    const double ch = std::cosh(2.0 * t);
    WaveFunction out = phi;
    out.grid.scale *= ch;
    quadratic_phase(out, std::tanh(2.0 * t) / 2.0);
    const double pref = std::pow(ch, -0.5 * phi.grid.dim);
    for (cplx& v : out.values) v *= pref;
    return out;
}

WaveFunction dematerialize_frame(const WaveFunction& psi, double t) {
    if (t == 0.0) return psi;
    const double ch = std::cosh(2.0 * t);
    WaveFunction out = psi;
    quadratic_phase(out, -std::tanh(2.0 * t) / 2.0);
    out.grid.scale /= ch;
    const double pref = std::pow(ch, 0.5 * psi.grid.dim);
    for (cplx& v : out.values) v *= pref;
    return out;
}

double heisenberg_position(const WaveFunction& psi, double t, int axis) {
    WaveFunction phi = comoving_free(psi, t);
    return std::cosh(2.0 * t) * observable_moment(phi, Observable::position, axis);
}

SobolevNorms sobolev_norms(const RealField& m) {
    const GridSpec& g = m.grid;
    // decay precondition: relative mass in the outermost shell
    WaveFunction w{g, std::vector<cplx>(m.values.size())};
    for (std::size_t i = 0; i < m.values.size(); ++i) w.values[i] = cplx{m.values[i], 0.0};
    if (edge_mass(w, 2) > 1e-8)
        throw std::invalid_argument("sobolev_norms: field does not decay inside the grid");

    SobolevNorms out;
    out.l2 = w.norm();
    WaveFunction hat = fourier(w, FourierDirection::forward);
    const GridSpec& mg = hat.grid;
    double acc = 0.0;
    if (mg.dim == 1) {
        for (int i = 0; i < mg.points; ++i) {
            double xi = mg.physical_coord(i);
            acc += xi * xi * xi * xi * std::norm(hat.values[i]);
        }
    } else {
        for (int i0 = 0; i0 < mg.points; ++i0)
            for (int i1 = 0; i1 < mg.points; ++i1) {
                double a = mg.physical_coord(i0), b = mg.physical_coord(i1);
                double xi2 = a * a + b * b;
                acc += xi2 * xi2 * std::norm(hat.values[flat_index(mg, i0, i1)]);
            }
    }
    out.h2dot = std::sqrt(acc * mg.cell_volume());
    return out;
}

CarlsonBeurlingReport carlson_beurlin_impl(const std::function<double(double)>& m_radial,
                                           int dim, std::span<const double> lambdas,
                                           const GridSpec& reference_grid) {
    auto sample = [&](const GridSpec& g, double lambda) {
        RealField f{g, std::vector<double>(g.size())};
        if (g.dim == 1) {
            for (int i = 0; i < g.points; ++i)
                f.values[i] = m_radial(std::abs(lambda * g.physical_coord(i)));
        } else {
            for (int i0 = 0; i0 < g.points; ++i0)
                for (int i1 = 0; i1 < g.points; ++i1) {
                    double a = g.physical_coord(i0), b = g.physical_coord(i1);
                    f.values[flat_index(g, i0, i1)] = m_radial(lambda * std::hypot(a, b));
                }
        }
        return f;
    };

    CarlsonBeurlingReport rep;
    SobolevNorms base = sobolev_norms(sample(reference_grid, 1.0));
    rep.l2 = base.l2;
    rep.h2dot = base.h2dot;
    const double denom = std::pow(base.l2, 1.0 - dim / 4.0) * std::pow(base.h2dot, dim / 4.0);

    double emin = 0.0, emax = 0.0;
    for (double lambda : lambdas) {
        // grid adapted to the dilated profile: same relative sampling per lambda
        GridSpec g = reference_grid;
        g.half_width = reference_grid.half_width / lambda;
        RealField f = sample(g, lambda);
        WaveFunction w{g, std::vector<cplx>(f.values.size())};
        for (std::size_t i = 0; i < f.values.size(); ++i) w.values[i] = cplx{f.values[i], 0.0};
        WaveFunction kernel = fourier(w, FourierDirection::inverse);
        double l1 = 0.0;
        for (const cplx& v : kernel.values) l1 += std::abs(v);
        l1 *= kernel.grid.cell_volume();

        CarlsonBeurlingRow row;
        row.lambda = lambda;
        row.bl_infty_estimate = l1;
        row.ratio_to_bound = l1 / denom;
        rep.rows.push_back(row);
        emin = rep.rows.size() == 1 ? l1 : std::min(emin, l1);
        emax = std::max(emax, l1);
        rep.fitted_constant = std::max(rep.fitted_constant, row.ratio_to_bound);
    }
    rep.spread = emin > 0.0 ? (emax - emin) / emin : 0.0;
    return rep;
}

CarlsonBeurlingReport carlson_beurling_check(const std::function<double(double)>& m_radial,
                                             int dim, std::span<const double> lambdas,
                                             const GridSpec& reference_grid) {
    return carlson_beurlin_impl(m_radial, dim, lambdas, reference_grid);
}

} // namespace repsc
