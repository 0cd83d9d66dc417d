#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "rk/residue/contour.hpp"

namespace rk {

/// A catalog integral: the residue-calculus closed form and an independent numerical value.
struct ClassicalIntegral {
    std::string name;
    double closed_form = 0.0;
    QuadratureResult numeric;
    double tolerance = 1e-6;

    bool agrees() const { return std::abs(numeric.value - Complex(closed_form, 0.0)) <= tolerance; }
};

namespace detail {

// Half-line integral of an oscillating integrand by windows of length h. The partial sums over
// windows are smoothed by repeated averaging of neighbours, which cancels the alternating remainder.
template <class F>
QuadratureResult oscillatory_half_line(F&& g, double h, int windows = 160, int levels = 12) {
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(windows));
    double s = 0;
    long evals = 0;
    for (int j = 0; j < windows; ++j) {
        auto r = quad::integrate<double>(g, j * h, (j + 1) * h, 1e-15, 1e-14);
        s += r.value;
        evals += r.evaluations;
        partial.push_back(s);
    }
    std::vector<double> level(partial.end() - levels - 1, partial.end());
    double prev = level.back();
    for (int l = 0; l < levels; ++l) {
        std::vector<double> next;
        for (std::size_t i = 0; i + 1 < level.size(); ++i) next.push_back(0.5 * (level[i] + level[i + 1]));
        prev = level.back();
        level = std::move(next);
    }
    return {Complex(level.back(), 0.0), std::abs(level.back() - prev), evals};
}

inline QuadratureResult real_line(const std::function<double(double)>& g, double lo, double hi) {
    auto r = quad::integrate<double>(g, lo, hi, 1e-13, 1e-13);
    if (!r.converged) throw NumericFailure("catalog quadrature did not converge", r.value, r.error);
    return {Complex(r.value, 0.0), r.error, r.evaluations};
}

}  // namespace detail

/// Names accepted by classical_integral.
inline const std::vector<std::string>& classical_catalog() {
    static const std::vector<std::string> names = {"trig_rational", "fourier_quadratic", "dirichlet",
                                                   "keyhole_power", "cuberoot"};
    return names;
}

/// Evaluates a catalog integral in closed form and numerically.
///   trig_rational      int_0^{2pi} dt/(a + b cos t) = 2pi/sqrt(a^2-b^2),  a > |b| > 0
///   fourier_quadratic  int_R cos(kx)/(x^2+a^2) dx = (pi/a) e^{-a|k|},    a > 0
///   dirichlet          int_0^inf sin(x)/x dx = pi/2
///   keyhole_power      int_0^inf x^{alpha-1}/(1+x) dx = pi/sin(pi alpha), 0 < alpha < 1
///   cuberoot           int_0^inf x^{1/3}/(1+x^2) dx = pi/sqrt(3)
inline ClassicalIntegral classical_integral(const std::string& name, const std::map<std::string, double>& params = {}) {
    auto get = [&](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    ClassicalIntegral out;
    out.name = name;
    if (name == "trig_rational") {
        const double a = get("a", 2.0), b = get("b", 1.0);
        if (!(a > std::abs(b) && std::abs(b) > 0)) throw DomainError("trig_rational requires a > |b| > 0");
        out.closed_form = 2 * kPi / std::sqrt(a * a - b * b);
        auto g = [a, b](double t) { return 1.0 / (a + b * std::cos(t)); };
        double prev = quad::periodic_trapezoid<double>(g, 8);
        long evals = 8;
        for (int n = 16;; n *= 2) {
            const double cur = quad::periodic_trapezoid<double>(g, n);
            evals += n;
            if (std::abs(cur - prev) <= 1e-14 * std::abs(cur) || n >= (1 << 20)) {
                out.numeric = {Complex(cur, 0.0), std::abs(cur - prev), evals};
                break;
            }
            prev = cur;
        }
    } else if (name == "fourier_quadratic") {
        const double a = get("a", 1.0), k = get("k", 1.0);
        if (!(a > 0)) throw DomainError("fourier_quadratic requires a > 0");
        out.closed_form = kPi / a * std::exp(-a * std::abs(k));
        if (k == 0) {
            out.numeric = detail::real_line([a](double) { return 1.0 / a; }, -kPi / 2, kPi / 2);
        } else {
            auto g = [a, k](double x) { return std::cos(k * x) / (x * x + a * a); };
            auto r = detail::oscillatory_half_line(g, kPi / std::abs(k));
            r.value *= 2.0;
            r.error_estimate *= 2.0;
            out.numeric = r;
        }
    } else if (name == "dirichlet") {
        out.closed_form = kPi / 2;
        out.tolerance = 1e-3;
        out.numeric = detail::oscillatory_half_line([](double x) { return x == 0 ? 1.0 : std::sin(x) / x; }, kPi);
    } else if (name == "keyhole_power") {
        const double alpha = get("alpha", 1.0 / 3.0);
        if (!(alpha > 0 && alpha < 1)) throw DomainError("keyhole_power requires 0 < alpha < 1");
        out.closed_form = kPi / std::sin(kPi * alpha);
        // x = e^u turns the half-line into the real line with exponentially decaying tails.
        const double lo = std::log(1e-16 * alpha) / alpha, hi = -std::log(1e-16 * (1 - alpha)) / (1 - alpha);
        out.numeric = detail::real_line([alpha](double u) { return std::exp(alpha * u) / (1 + std::exp(u)); }, lo, hi);
    } else if (name == "cuberoot") {
        out.closed_form = kPi / std::sqrt(3.0);
        const double lo = 0.75 * std::log(1e-16 * 4.0 / 3.0), hi = -1.5 * std::log(1e-16 * 2.0 / 3.0);
        out.numeric = detail::real_line(
            [](double u) { return std::exp(4.0 * u / 3.0) / (1 + std::exp(2 * u)); }, lo, hi);
    } else {
        throw DomainError("unknown catalog integral '" + name + "'");
    }
    return out;
}

}  // namespace rk
