#include "repsc/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace repsc {

namespace {

double radius(std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::sqrt(r2);
}

// least-squares slope of log|y| vs log x, skipping zeros
double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0) || !(xs[i] > 0.0)) continue;
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("decay fit: need at least two usable samples");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace

Potential::Potential(PotentialSpec spec, int dim) : spec_(spec), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("potential: dim must be >= 1");
    if (spec.regular.kind == RegularKind::power_decay && !(spec.regular.decay > 0.0))
        throw std::invalid_argument("potential: power decay requires eps > 0");
    if (spec.regular.kind == RegularKind::gaussian && !(spec.regular.sigma > 0.0))
        throw std::invalid_argument("potential: gaussian requires sigma > 0");
    if (spec.singular.kind != SingularKind::none && !(spec.singular.support_radius > 0.0))
        throw std::invalid_argument("potential: singular part requires R > 0");
}

double Potential::radial_regular(double r) const {
    switch (spec_.regular.kind) {
    case RegularKind::none: return 0.0;
    case RegularKind::power_decay:
        return spec_.regular.strength *
               std::pow(1.0 + r * r, -0.5 * spec_.regular.decay);
    case RegularKind::gaussian: {
        double y = r / spec_.regular.sigma;
        return spec_.regular.strength * std::exp(-y * y);
    }
    }
    return 0.0;
}

double Potential::radial_singular(double r) const {
    const auto& s = spec_.singular;
    if (s.kind == SingularKind::none) return 0.0;
    const double R = s.support_radius;
    if (spec_.mollify_radius > 0.0 && r < spec_.mollify_radius) r = spec_.mollify_radius;
    switch (s.kind) {
    case SingularKind::coulomb_like: {
        if (r > R) return 0.0;
        if (r == 0.0)
            throw std::domain_error("potential: evaluation exactly at the singularity");
        return s.strength * std::pow(r, -0.5 * dim_ + s.exponent);
    }
    case SingularKind::cutoff_bump: {
        double y = r / R;
        if (y >= 1.0) return 0.0;
        return s.strength * std::exp(1.0 - 1.0 / (1.0 - y * y));
    }
    case SingularKind::none: break;
    }
    return 0.0;
}

double Potential::value(std::span<const double> x) const {
    double r = radius(x);
    return radial_regular(r) + radial_singular(r);
}

double Potential::regular_value(std::span<const double> x) const {
    return radial_regular(radius(x));
}

double Potential::singular_value(std::span<const double> x) const {
    return radial_singular(radius(x));
}

double Potential::regular_gradient(std::span<const double> x, int axis) const {
    if (axis < 0 || axis >= dim_)
        throw std::invalid_argument("potential: gradient axis out of range");
    const double xj = x[axis];
    const double r = radius(x);
    switch (spec_.regular.kind) {
    case RegularKind::none: return 0.0;
    case RegularKind::power_decay: {
        // d/dx_j c (1+r^2)^{-eps/2} = -c eps x_j (1+r^2)^{-eps/2-1}
        double e = spec_.regular.decay;
        return -spec_.regular.strength * e * xj *
               std::pow(1.0 + r * r, -0.5 * e - 1.0);
    }
    case RegularKind::gaussian: {
        double s2 = spec_.regular.sigma * spec_.regular.sigma;
        double y = r * r / s2;
        return spec_.regular.strength * std::exp(-y) * (-2.0 * xj / s2);
    }
    }
    return 0.0;
}

double Potential::feature_scale() const {
    switch (spec_.regular.kind) {
    case RegularKind::gaussian: return spec_.regular.sigma;
    case RegularKind::power_decay: return 1.0; // <x> turns over at r ~ 1
    case RegularKind::none: break;
    }
    return spec_.singular.kind != SingularKind::none ? spec_.singular.support_radius : 1.0;
}

double classify_q(const PotentialSpec& spec, int n) {
    if (n < 1) throw std::invalid_argument("classify_q: n must be >= 1");
    double q;
    if (n <= 3) q = 2.0;
    else if (n == 4) q = 3.0; // class requires q > 2; a representative value
    else q = n / 2.0;

    const auto& s = spec.singular;
    if (s.kind == SingularKind::none || s.kind == SingularKind::cutoff_bump) return q;

    // coulomb-like: |x|^{(-n/2+eps~)q} integrable over the support ball iff
    // q(n/2 - eps~) < n; for the class values above this reduces to eps~ > 0
    // (n <= 3) and holds identically for n >= 5 when eps~ > 0.
    if (!(s.exponent > 0.0))
        throw std::domain_error("classify_q: coulomb-like part with eps~ <= 0 is not in L^q");
    if (q * (0.5 * n - s.exponent) >= n)
        throw std::domain_error("classify_q: coulomb-like part not in L^" + std::to_string(q));

    // discrete verification on a default refinement ladder (runtime dims only)
    if (n <= 2) {
        std::vector<int> ladder = n == 1 ? std::vector<int>{2048, 4096, 8192, 16384}
                                         : std::vector<int>{256, 512, 1024, 2048};
        auto rep = lq_refinement_report(spec, n, ladder);
        if (!rep.converged)
            throw std::domain_error(
                "classify_q: discrete L^q norm fails to converge under refinement");
    }
    return q;
}

LqRefinementReport lq_refinement_report(const PotentialSpec& spec, int n,
                                        std::span<const int> grid_sizes, double tolerance) {
    if (n != 1 && n != 2)
        throw std::invalid_argument("lq_refinement_report: discrete scan supports n in {1,2}");
    LqRefinementReport rep;
    rep.tolerance = tolerance;
    if (n <= 3) rep.q = 2.0;
    else if (n == 4) rep.q = 3.0;
    else rep.q = n / 2.0;

    Potential V(spec, n);
    const double R = spec.singular.support_radius;
    const double box = 1.5 * R;

    for (int N : grid_sizes) {
        rep.grid_sizes.push_back(N);
        const double h = 2.0 * box / N;
        double acc = 0.0;
        if (n == 1) {
            for (int i = 0; i < N; ++i) {
                double x = (i - N / 2 + 0.5) * h;
                double v = std::abs(V.singular_value(std::span<const double>{&x, 1}));
                acc += std::pow(v, rep.q) * h;
            }
        } else {
            for (int i0 = 0; i0 < N; ++i0) {
                double x0 = (i0 - N / 2 + 0.5) * h;
                for (int i1 = 0; i1 < N; ++i1) {
                    double x1 = (i1 - N / 2 + 0.5) * h;
                    double pt[2] = {x0, x1};
                    acc += std::pow(std::abs(V.singular_value(pt)), rep.q) * h * h;
                }
            }
        }
        rep.norms.push_back(std::pow(acc, 1.0 / rep.q));
    }
    for (std::size_t i = 1; i < rep.norms.size(); ++i) {
        double denom = std::max(rep.norms[i], 1e-300);
        rep.cauchy_diffs.push_back(std::abs(rep.norms[i] - rep.norms[i - 1]) / denom);
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < rep.cauchy_diffs.size(); ++i)
        shrinking = shrinking && rep.cauchy_diffs[i] <= rep.cauchy_diffs[i - 1] * 1.05;
    rep.converged = !rep.cauchy_diffs.empty() && shrinking &&
                    rep.cauchy_diffs.back() < tolerance;
    return rep;
}

DecayReport validate_regular_decay(const std::function<double(double)>& value,
                                   const std::function<double(double)>& gradient_magnitude,
                                   double declared_eps, std::span<const double> radii,
                                   double fit_tolerance) {
    std::vector<double> vs, gs, rs(radii.begin(), radii.end());
    vs.reserve(rs.size());
    gs.reserve(rs.size());
    for (double r : rs) {
        vs.push_back(std::abs(value(r)));
        gs.push_back(std::abs(gradient_magnitude(r)));
    }
    DecayReport rep;
    rep.declared_eps = declared_eps;
    rep.fit_tolerance = fit_tolerance;
    rep.fitted_value_slope = loglog_slope(rs, vs);
    rep.fitted_gradient_slope = loglog_slope(rs, gs);
    rep.ok = rep.fitted_value_slope <= -declared_eps + fit_tolerance &&
             rep.fitted_gradient_slope <= -(declared_eps + 1.0) + fit_tolerance;
    return rep;
}

DecayReport validate_regular_decay(const Potential& V, std::span<const double> radii,
                                   double fit_tolerance) {
    if (!V.has_regular())
        throw std::invalid_argument("validate_regular_decay: no regular part configured");
    auto value = [&V](double r) {
        double x = r;
        return V.regular_value(std::span<const double>{&x, 1});
    };
    auto grad = [&V](double r) {
        double x = r;
        return std::abs(V.regular_gradient(std::span<const double>{&x, 1}, 0));
    };
    return validate_regular_decay(value, grad, V.spec().regular.decay, radii, fit_tolerance);
}

} // namespace repsc
