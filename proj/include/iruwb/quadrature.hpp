#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace iruwb {

struct QuadratureSpec {
    double relative_tolerance = 1e-8;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 4000;
    double series_rel_cutoff = 1e-6;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Columns: abscissa, Gauss weight, Kronrod weight.
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g = kGK15[0][1] * y0;
    double k = kGK15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g += kGK15[i][1] * yi;
        k += kGK15[i][2] * yi;
    }
    g *= half;
    k *= half;
    const double err = std::pow(200.0 * std::abs(g - k), 1.5);
    return {k, err};
}

}  // namespace detail

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Adaptive Gauss-Kronrod on [a, b].
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) return {0.0, 0.0, true};
    struct Interval {
        double a, b, value, error;
    };
    auto [v0, e0] = detail::gk15(f, a, b);
    std::vector<Interval> heap{{a, b, v0, e0}};
    auto cmp = [](const Interval& x, const Interval& y) { return x.error < y.error; };
    double total = v0, err = e0;
    int splits = 0;
    while (err > std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(total))) {
        if (splits >= spec.max_subdivisions) {
            return {total, err, false};
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const Interval top = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) {  // interval exhausted at double precision
            return {total, err, false};
        }
        auto [vl, el] = detail::gk15(f, top.a, mid);
        auto [vr, er] = detail::gk15(f, mid, top.b);
        total += vl + vr - top.value;
        err += el + er - top.error;
        heap.push_back({top.a, mid, vl, el});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({mid, top.b, vr, er});
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++splits;
    }
    return {total, err, true};
}

// Adaptive integration with forced splits at known kinks of the integrand
// (piecewise-defined kernels, support edges of a tabulated function).
template <class F>
QuadratureResult integrate_segmented(const F& f, double a, double b,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& spec = {}) {
    if (a == b) return {0.0, 0.0, true};
    std::vector<double> knots{a};
    for (double x : breakpoints) {
        if (x > a && x < b) knots.push_back(x);
    }
    knots.push_back(b);
    std::sort(knots.begin(), knots.end());
    QuadratureResult out;
    QuadratureSpec per = spec;
    per.absolute_tolerance = spec.absolute_tolerance / static_cast<double>(knots.size());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const QuadratureResult r = integrate(f, knots[i], knots[i + 1], per);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.converged = out.converged && r.converged;
    }
    return out;
}

}  // namespace iruwb
