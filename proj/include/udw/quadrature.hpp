#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <type_traits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace udw::quad {

template <class R>
struct Result {
    R value{};
    double error = 0.0;      ///< accumulated embedded error estimate (absolute)
    std::size_t panels = 0;  ///< accepted Gauss-Kronrod panels
    bool converged = true;  ///< error <= abs_tol within the panel budget
};

/// Kronrod-15 on [a, b], refined as the sum over both halves. The error
/// estimate is the change under that refinement (an estimate for the coarse
/// rule, hence conservative for the returned value), floored at 50 eps times
/// the L1 norm. |K15 - G7| tracks the error of the 7-point rule and
/// overstates the Kronrod error by orders of magnitude on smooth integrands.
template <class F>
auto gk15(F&& f, double a, double b, double* error) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double mid = 0.5 * (a + b);
    double unused = 0.0;
    double l1_left = 0.0;
    double l1_right = 0.0;
    const auto whole = Rule::integrate(f, a, b, 0, 0.0, &unused);
    const auto left = Rule::integrate(f, a, mid, 0, 0.0, &unused, &l1_left);
    const auto right = Rule::integrate(f, mid, b, 0, 0.0, &unused, &l1_right);
    const auto refined = left + right;
    using std::abs;
    *error = std::max(static_cast<double>(abs(whole - refined)),
                      50.0 * std::numeric_limits<double>::epsilon() * (l1_left + l1_right));
    return refined;
}

/// Recursive bisection until each piece meets its share of abs_tol. A split
/// that fails to halve the error estimate means rounding noise dominates;
/// the children are then accepted as they are.
template <class F, class R>
void bisect(F& f, double a, double b, R value, double err, double abs_tol, int depth_left, Result<R>& acc) {
    if (err <= abs_tol || depth_left == 0) {
        acc.value += value;
        acc.error += err;
        ++acc.panels;
        return;
    }
    const double mid = 0.5 * (a + b);
    double el = 0.0;
    double er = 0.0;
    R vl = gk15(f, a, mid, &el);
    R vr = gk15(f, mid, b, &er);
    if (el + er >= 0.5 * err) {
        acc.value += vl + vr;
        acc.error += el + er;
        acc.panels += 2;
        return;
    }
    bisect(f, a, mid, vl, el, 0.5 * abs_tol, depth_left - 1, acc);
    bisect(f, mid, b, vr, er, 0.5 * abs_tol, depth_left - 1, acc);
}

struct PanelOptions {
    double abs_tol = 1e-10;
    int max_depth = 20;
    std::size_t max_panels = 20'000'000;
};

/// Composite adaptive integration over [a, b]. `make_panel(t0)` returns the
/// integrand for the panel starting at t0 as a function of the offset
/// u = t - t0, so node positions do not carry the rounding of t0.
/// `panel_cap(t)` bounds the length of the panel starting at t; the
/// tolerance is shared out in proportion to panel length. Panel boundaries
/// depend only on the inputs, so results are bitwise reproducible.
template <class Make, class Cap, class R = std::invoke_result_t<std::invoke_result_t<Make&, double>&, double>>
Result<R> integrate_panels_local(Make make_panel, double a, double b, Cap panel_cap, const PanelOptions& opt) {
    Result<R> acc;
    if (!(b > a)) return acc;
    const double span = b - a;
    double t = a;
    std::size_t started = 0;
    while (t < b) {
        if (++started > opt.max_panels) {
            acc.converged = false;
            break;
        }
        const double h = panel_cap(t);
        const double end = (h >= b - t) ? b : t + h;
        auto f = make_panel(t);
        double err = 0.0;
        const double len = end - t;
        R value = gk15(f, 0.0, len, &err);
        bisect(f, 0.0, len, value, err, opt.abs_tol * (end - t) / span, opt.max_depth, acc);
        t = end;
    }
    if (acc.error > opt.abs_tol) acc.converged = false;
    return acc;
}

template <class F, class Cap, class R = std::invoke_result_t<F&, double>>
Result<R> integrate_panels(F f, double a, double b, Cap panel_cap, const PanelOptions& opt) {
    return integrate_panels_local([&f](double t0) { return [&f, t0](double u) { return f(t0 + u); }; }, a, b, panel_cap,
                                  opt);
}

}  // namespace udw::quad
