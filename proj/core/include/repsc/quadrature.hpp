#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>

namespace repsc {

/// Adaptive Simpson on [a, b]; deterministic recursion, absolute tolerance.
template <typename T>
T adaptive_simpson(const std::function<T(double)>& f, double a, double b, double tol,
                   int max_depth = 22) {
    auto simpson = [](double lo, double hi, const T& flo, const T& fmid, const T& fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    struct Rec {
        static T go(const std::function<T(double)>& f, double lo, double hi, const T& flo,
                    const T& fmid, const T& fhi, const T& whole, double tol, int depth,
                    decltype(simpson) S) {
            double mid = 0.5 * (lo + hi);
            T fl = f(0.5 * (lo + mid));
            T fr = f(0.5 * (mid + hi));
            T left = S(lo, mid, flo, fl, fmid);
            T right = S(mid, hi, fmid, fr, fhi);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return go(f, lo, mid, flo, fl, fmid, left, tol / 2.0, depth - 1, S) +
                   go(f, mid, hi, fmid, fr, fhi, right, tol / 2.0, depth - 1, S);
        }
    };
    T fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    T whole = simpson(a, b, fa, fm, fb);
    return Rec::go(f, a, b, fa, fm, fb, whole, tol, max_depth, simpson);
}

inline double adaptive_simpson_real(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_depth = 22) {
    return adaptive_simpson<double>(f, a, b, tol, max_depth);
}

/// Least-squares line y = slope*x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(xs.size());
    for (int i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    LinearFit f;
    f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / m;
    return f;
}

} // namespace repsc
