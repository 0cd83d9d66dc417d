#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "rk/quadrature/quadrature.hpp"

namespace rk {

/// a0 + sum_n (a_n cos n t + b_n sin n t), n = 1..N.
struct TrigPolynomial {
    double a0 = 0.0;
    std::vector<double> a, b;

    double mean() const { return a0; }
    int degree() const { return static_cast<int>(std::max(a.size(), b.size())); }
    double cos_coeff(int n) const { return n >= 1 && n <= static_cast<int>(a.size()) ? a[static_cast<std::size_t>(n - 1)] : 0.0; }
    double sin_coeff(int n) const { return n >= 1 && n <= static_cast<int>(b.size()) ? b[static_cast<std::size_t>(n - 1)] : 0.0; }

    double operator()(double t) const {
        double s = a0;
        for (int n = 1; n <= degree(); ++n) s += cos_coeff(n) * std::cos(n * t) + sin_coeff(n) * std::sin(n * t);
        return s;
    }
    /// Derivative in t.
    TrigPolynomial derivative() const {
        TrigPolynomial d;
        d.a.assign(static_cast<std::size_t>(degree()), 0.0);
        d.b.assign(static_cast<std::size_t>(degree()), 0.0);
        for (int n = 1; n <= degree(); ++n) {
            d.a[static_cast<std::size_t>(n - 1)] = n * sin_coeff(n);
            d.b[static_cast<std::size_t>(n - 1)] = -n * cos_coeff(n);
        }
        return d;
    }

    static TrigPolynomial cosine(int n, double c = 1.0) {
        TrigPolynomial p;
        if (n == 0) p.a0 = c;
        else p.a.assign(static_cast<std::size_t>(n), 0.0), p.a.back() = c;
        return p;
    }
    static TrigPolynomial sine(int n, double c = 1.0) {
        if (n < 1) throw DomainError("sine mode needs n >= 1");
        TrigPolynomial p;
        p.b.assign(static_cast<std::size_t>(n), 0.0);
        p.b.back() = c;
        return p;
    }
};

/// int_0^{2 pi} f^2 dt.
inline double l2_norm_squared(const TrigPolynomial& f) {
    double s = 2 * kPi * f.a0 * f.a0;
    for (int n = 1; n <= f.degree(); ++n) s += kPi * (f.cos_coeff(n) * f.cos_coeff(n) + f.sin_coeff(n) * f.sin_coeff(n));
    return s;
}

/// int_0^{2 pi} |u'|^2 dt.
inline double circle_energy(const TrigPolynomial& u) { return l2_norm_squared(u.derivative()); }

/// P_r(psi) = (1 - r^2) / (1 - 2 r cos psi + r^2).
inline double poisson_kernel_disk(double r, double psi) {
    if (!(r >= 0 && r < 1)) throw DomainError("Poisson kernel needs 0 <= r < 1");
    return (1 - r * r) / (1 - 2 * r * std::cos(psi) + r * r);
}

/// a0 + sum r^n (a_n cos n theta + b_n sin n theta).
inline double poisson_extend_trig(const TrigPolynomial& f, double r, double theta) {
    if (!(r >= 0 && r < 1)) throw DomainError("Poisson extension needs 0 <= r < 1");
    double s = f.a0, rn = 1;
    for (int n = 1; n <= f.degree(); ++n) {
        rn *= r;
        s += rn * (f.cos_coeff(n) * std::cos(n * theta) + f.sin_coeff(n) * std::sin(n * theta));
    }
    return s;
}

/// (1/2 pi) int P_r(theta - phi) f(phi) dphi. Without breakpoints: periodic trapezoid on `nodes` points.
/// With breakpoints (jumps of f, in radians): adaptive Gauss-Kronrod on each smooth arc.
inline double poisson_extend_quadrature(const std::function<double(double)>& f, double r, double theta, int nodes = 512,
                                        std::vector<double> breakpoints = {}, double tol = 1e-12) {
    if (!(r >= 0 && r <= 0.99)) throw DomainError("quadrature Poisson extension needs 0 <= r <= 0.99");
    if (breakpoints.empty() && nodes < 1) throw DomainError("node count must be positive");
    auto g = [&](double phi) { return poisson_kernel_disk(r, theta - phi) * f(phi); };
    if (breakpoints.empty()) return quad::periodic_trapezoid<double>(g, nodes) / (2 * kPi);
    for (double& b : breakpoints) b = b - 2 * kPi * std::floor(b / (2 * kPi));
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.push_back(breakpoints.front() + 2 * kPi);
    double s = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] - breakpoints[i] <= 0) continue;
        auto res = quad::integrate<double>(g, breakpoints[i], breakpoints[i + 1], tol, tol);
        if (!res.converged) throw NumericFailure("Poisson arc quadrature did not converge", res.value, res.error);
        s += res.value;
    }
    return s / (2 * kPi);
}

struct HalfPlaneResult {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// (1/pi) int y/((x-t)^2 + y^2) f(t) dt over the window |t - x| <= window. The substitution t = x + y tan(phi)
/// turns the kernel into dphi/pi. The neglected kernel mass is (2/pi) atan(y/window); f_bound bounds |f| (or its
/// even part about x) outside the window.
inline HalfPlaneResult poisson_halfplane(double x, double y, const std::function<double(double)>& f, double window = 1e9,
                                         double tol = 1e-8, double f_bound = 1.0) {
    if (!(y > 0)) throw DomainError("half-plane point needs y > 0");
    if (!(window > 0)) throw DomainError("window must be positive");
    const double tail = 2 / kPi * std::atan(y / window) * f_bound;
    if (tail > tol) throw NumericFailure("half-plane window too small for the requested tolerance", 0.0, tail);
    const double Phi = std::atan(window / y);
    // Panels graded toward the window ends, where t moves fastest; the two sides are paired node by node.
    const int panels = 40;
    auto g = [&](double phi) { return f(x + y * std::tan(phi)) + f(x - y * std::tan(phi)); };
    double s = 0;
    for (int k = 0; k < panels; ++k) {
        const double u0 = 1 - std::pow(0.5, k), u1 = k + 1 == panels ? 1.0 : 1 - std::pow(0.5, k + 1);
        auto r = quad::integrate<double>(g, u0 * Phi, u1 * Phi, 0.1 * tol / panels, 1e-13);
        if (!r.converged) throw NumericFailure("half-plane quadrature did not converge", r.value, r.error);
        s += r.value;
    }
    return {s / kPi, tail};
}

/// Solves -u'' = f with mean-zero u.
inline TrigPolynomial laplace_circle(const TrigPolynomial& f) {
    if (f.a0 != 0) throw DomainError("compatibility: right-hand side must have zero mean");
    TrigPolynomial u;
    u.a.resize(f.a.size());
    u.b.resize(f.b.size());
    for (std::size_t i = 0; i < f.a.size(); ++i) u.a[i] = f.a[i] / double((i + 1) * (i + 1));
    for (std::size_t i = 0; i < f.b.size(); ++i) u.b[i] = f.b[i] / double((i + 1) * (i + 1));
    return u;
}

enum class Parity { Cos, Sin };

/// Mode cs(2 pi m x) cs(2 pi n y) on R^2/Z^2.
struct TorusMode {
    int m = 0, n = 0;
    Parity px = Parity::Cos, py = Parity::Cos;

    friend bool operator<(const TorusMode& a, const TorusMode& b) {
        return std::tie(a.m, a.n, a.px, a.py) < std::tie(b.m, b.n, b.px, b.py);
    }
    friend bool operator==(const TorusMode& a, const TorusMode& b) {
        return std::tie(a.m, a.n, a.px, a.py) == std::tie(b.m, b.n, b.px, b.py);
    }
    double operator()(double x, double y) const {
        const double cx = px == Parity::Cos ? std::cos(2 * kPi * m * x) : std::sin(2 * kPi * m * x);
        const double cy = py == Parity::Cos ? std::cos(2 * kPi * n * y) : std::sin(2 * kPi * n * y);
        return cx * cy;
    }
};

using TorusModes = std::map<TorusMode, double>;

/// Solves -Delta u = f on R^2/Z^2 mode by mode: coefficient / (4 pi^2 (m^2 + n^2)).
inline TorusModes laplace_torus(const TorusModes& f) {
    TorusModes u;
    for (const auto& [k, c] : f) {
        if (k.m < 0 || k.n < 0) throw DomainError("torus mode indices must be nonnegative");
        if (k.m == 0 && k.n == 0) {
            if (c != 0) throw DomainError("compatibility: right-hand side must have zero mean");
            continue;
        }
        u[k] = c / (4 * kPi * kPi * (k.m * k.m + k.n * k.n));
    }
    return u;
}

/// int over the unit torus of |grad u|^2, by orthogonality of the modes.
inline double torus_energy(const TorusModes& u) {
    double s = 0;
    for (const auto& [k, c] : u) {
        if ((k.px == Parity::Sin && k.m == 0) || (k.py == Parity::Sin && k.n == 0)) continue;
        const double norm = (k.m == 0 ? 1.0 : 0.5) * (k.n == 0 ? 1.0 : 0.5);
        s += c * c * 4 * kPi * kPi * (k.m * k.m + k.n * k.n) * norm;
    }
    return s;
}

/// Solution of Delta u = c z on the unit sphere, with Delta z = 2 z.
inline double laplace_sphere_l1(double c) { return c / 2; }

/// |u(center) - average of u over the circle of radius rho|, by the periodic trapezoid rule.
inline double mean_value_check(const std::function<double(Complex)>& u, Complex center, double rho, int nodes = 256) {
    if (!(rho > 0) || nodes < 1) throw DomainError("radius and node count must be positive");
    const double avg = quad::periodic_trapezoid<double>([&](double t) { return u(center + std::polar(rho, t)); }, nodes) / (2 * kPi);
    return std::abs(u(center) - avg);
}

}  // namespace rk
