#pragma once
// Scalar optimization and extrapolation helpers shared by the exponent code:
// grid-seeded golden-section maximization, bisection root finding, Richardson
// central differences, and limit/slope extraction on geometric grids via a
// Neville elimination tableau.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exponentia {

struct MaxResult {
    double arg = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

class optimization_error : public std::runtime_error {
public:
    optimization_error(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " (bracket [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "])") {}
};

// Maximize f on [lo, hi]: evaluate a uniform seed grid (endpoints included), then
// refine around the best grid point by golden section. The returned candidate is
// the best point ever evaluated, so maxima attained exactly at lo or hi are kept
// exactly; interior maxima are located to arg_tol.
template <class F>
MaxResult golden_max(F&& f, double lo, double hi, double arg_tol = 1e-10,
                     int seed_points = 33) {
    if (!(hi >= lo))
        throw std::invalid_argument("golden_max: hi < lo");
    if (seed_points < 3)
        throw std::invalid_argument("golden_max: need at least 3 seed points");

    MaxResult best;
    auto consider = [&](double x, double v) {
        if (v > best.value) {
            best.arg = x;
            best.value = v;
        }
    };
    if (hi == lo) {
        consider(lo, f(lo));
        return best;
    }

    int ibest = 0;
    std::vector<double> xs(seed_points);
    for (int k = 0; k < seed_points; ++k) {
        xs[k] = lo + (hi - lo) * k / (seed_points - 1);
        const double v = f(xs[k]);
        if (v > best.value)
            ibest = k;
        consider(xs[k], v);
    }

    double a = xs[std::max(ibest - 1, 0)];
    double b = xs[std::min(ibest + 1, seed_points - 1)];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    consider(c, fc);
    consider(d, fd);

    int iter = 0;
    const int max_iter = 400;
    while (b - a > arg_tol) {
        if (++iter > max_iter)
            throw optimization_error("golden_max: no convergence", a, b);
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
            consider(d, fd);
        }
    }
    const double xm = 0.5 * (a + b);
    consider(xm, f(xm));
    return best;
}

// Root of f on [lo, hi]; requires a sign change. Returns the bracket midpoint
// once the bracket is narrower than arg_tol.
template <class F>
double bisect_root(F&& f, double lo, double hi, double arg_tol = 1e-12) {
    if (!(hi > lo))
        throw std::invalid_argument("bisect_root: hi <= lo");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect_root: no sign change over bracket");
    while (hi - lo > arg_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
double central_difference(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// One Richardson level on the central difference: cancels the O(h^2) term.
template <class F>
double richardson_derivative(F&& f, double x, double h) {
    const double d1 = central_difference(f, x, h);
    const double d2 = central_difference(f, x, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

struct GridFit {
    double limit = 0.0;
    double slope = 0.0;
    int order_used = 0;
};

namespace detail {

// Neville tableau on a geometric grid x_i = x_0 * ratio^i: assuming
// y(x) = L + c1 x + c2 x^2 + ..., column k eliminates the x^k term, and the
// deepest entry is the extrapolation to x = 0.
inline double neville_to_zero(const std::vector<double>& y, double ratio, int order) {
    const int n = static_cast<int>(y.size());
    std::vector<double> t = y;
    const int m = std::min(order, n - 1);
    for (int k = 1; k <= m; ++k) {
        const double rk = std::pow(ratio, k);
        for (int i = n - 1; i >= k; --i)
            t[i] = (t[i] - rk * t[i - 1]) / (1.0 - rk);
    }
    return t[n - 1];
}

} // namespace detail

// samples: (x_i, y_i) on a descending geometric grid (x_{i+1} = ratio * x_i,
// 0 < ratio < 1). Extrapolates the limit y(0) and the slope dy/dx at 0 by
// Richardson elimination; at least 4 samples required.
inline GridFit fit_limit_and_slope(const std::vector<std::pair<double, double>>& samples,
                                   int order = 3) {
    const int n = static_cast<int>(samples.size());
    if (n < 4)
        throw std::invalid_argument("fit_limit_and_slope: need at least 4 samples");
    const double ratio = samples[1].first / samples[0].first;
    if (!(ratio > 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("fit_limit_and_slope: grid must be descending geometric");
    for (int i = 1; i < n; ++i) {
        if (!(samples[i].first > 0.0))
            throw std::invalid_argument("fit_limit_and_slope: grid values must be positive");
        const double r = samples[i].first / samples[i - 1].first;
        if (std::abs(r - ratio) > 1e-9 * ratio)
            throw std::invalid_argument("fit_limit_and_slope: grid is not geometric");
    }

    std::vector<double> y(n);
    for (int i = 0; i < n; ++i)
        y[i] = samples[i].second;
    GridFit fit;
    fit.order_used = std::min(order, n - 1);
    fit.limit = detail::neville_to_zero(y, ratio, order);

    std::vector<double> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = (samples[i].second - fit.limit) / samples[i].first;
    fit.slope = detail::neville_to_zero(s, ratio, order);
    return fit;
}

// Geometric grid from start down to stop (inclusive within rounding slack).
inline std::vector<double> geometric_grid(double start, double stop, double ratio) {
    if (!(start > 0.0) || !(stop > 0.0) || !(stop <= start))
        throw std::invalid_argument("geometric_grid: need 0 < stop <= start");
    if (!(ratio > 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("geometric_grid: need ratio in (0, 1)");
    std::vector<double> grid;
    for (double v = start; v >= stop * (1.0 - 1e-9); v *= ratio)
        grid.push_back(v);
    return grid;
}

} // namespace exponentia
