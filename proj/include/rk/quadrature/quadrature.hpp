#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "rk/core/scalar.hpp"

namespace rk::quad {

/// Outcome of a numerical integration.
template <class V>
struct Result {
    V value{};
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae (positive half) and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
double magnitude(const V& v) {
    return std::abs(v);
}

}  // namespace detail

/// One 15-point Kronrod panel on [a, b]; error is |K15 - G7|.
template <class V, class F>
std::pair<V, double> gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V fc = f(c);
    V k = fc * detail::kWgk[7];
    V g = fc * detail::kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * detail::kXgk[static_cast<std::size_t>(j)];
        V f1 = f(c - dx), f2 = f(c + dx);
        k += (f1 + f2) * detail::kWgk[static_cast<std::size_t>(j)];
        if (j % 2 == 1) g += (f1 + f2) * detail::kWg[static_cast<std::size_t>(j / 2)];
    }
    return {k * h, detail::magnitude<V>((k - g) * h)};
}

/// Globally adaptive Gauss-Kronrod on a finite interval. Bisects the panel with the largest error
/// until the summed error is below max(abs_tol, rel_tol*|I|) or the evaluation budget is spent.
template <class V, class F>
Result<V> integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                    long max_evals = 400000) {
    struct Panel {
        double a, b;
        V value;
        double err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    if (b < a) {
        auto r = integrate<V>(f, b, a, abs_tol, rel_tol, max_evals);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    auto [v0, e0] = gk15<V>(f, a, b);
    heap.push({a, b, v0, e0});
    V total = v0;
    double err = e0;
    long evals = 15;
    while (err > std::max(abs_tol, rel_tol * detail::magnitude<V>(total))) {
        if (evals + 30 > max_evals) return {total, err, evals, false};
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) return {total, err, evals, false};
        auto [v1, e1] = gk15<V>(f, p.a, m);
        auto [v2, e2] = gk15<V>(f, m, p.b);
        evals += 30;
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        heap.push({p.a, m, v1, e1});
        heap.push({m, p.b, v2, e2});
    }
    // Re-sum the panels to shed accumulated roundoff from the running updates.
    V sum{};
    double esum = 0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().err;
        heap.pop();
    }
    return {sum, esum, evals, true};
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
        x[lo] = -z;
        x[hi] = z;
        w[lo] = w[hi] = 2.0 / ((1 - z * z) * dp * dp);
    }
    return {x, w};
}

/// Fixed Gauss-Legendre rule on [a, b].
template <class V, class F>
V gauss_legendre_integrate(F&& f, double a, double b, int n) {
    auto [x, w] = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += f(c + h * x[i]) * w[i];
    return s * h;
}

/// Uniform trapezoid rule for a 2*pi-periodic integrand over one period.
template <class V, class F>
V periodic_trapezoid(F&& f, int n) {
    V s{};
    const double h = 2 * kPi / n;
    for (int j = 0; j < n; ++j) s += f(h * j);
    return s * h;
}

}  // namespace rk::quad
