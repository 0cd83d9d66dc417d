#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "rk/core/scalar.hpp"

namespace rk {

/// A complex function of one complex variable.
using ComplexFn = std::function<Complex(Complex)>;

/// Radius of convergence 1/limsup |a_n|^{1/n}, estimated from a finite window.
///
/// The limsup estimate is the largest root r_n = |a_n|^{1/n} over the last half of the window. When
/// those roots keep shrinking like a power of n (least-squares slope of log r_n against log n below
/// -1/2, as for coefficients of entire functions of finite order) the result is +infinity; an all-zero
/// window also gives +infinity.
inline double radius_from_coeffs(const std::vector<Complex>& a) {
    const std::size_t len = a.size();
    if (len < 8) throw DomainError("radius estimate needs at least 8 coefficients");
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t start = std::max<std::size_t>(1, len / 2);

    double est = 0;
    std::vector<double> xs, ys;
    for (std::size_t n = start; n < len; ++n) {
        const double m = std::abs(a[n]);
        if (!(m > 0)) continue;
        const double r = std::exp(std::log(m) / static_cast<double>(n));
        est = std::max(est, r);
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(r));
    }
    if (est == 0 || !std::isfinite(1.0 / est)) return inf;

    if (xs.size() >= 3) {
        const double k = static_cast<double>(xs.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double det = k * sxx - sx * sx;
        if (det > 0 && (k * sxy - sx * sy) / det < -0.5) return inf;
    }
    return 1.0 / est;
}

inline double radius_from_coeffs(const std::vector<double>& a) {
    return radius_from_coeffs(std::vector<Complex>(a.begin(), a.end()));
}

/// Taylor coefficients f^{(k)}(center)/k!, k = 0..count-1, from the Cauchy integral on the circle
/// |z - center| = rho with the uniform trapezoid rule (max(4*count, 64) nodes).
inline std::vector<Complex> taylor_coeffs_numeric(const ComplexFn& f, Complex center, double rho, int count) {
    if (!(rho > 0)) throw DomainError("Cauchy circle radius must be positive");
    if (count < 1) throw DomainError("coefficient count must be at least 1");
    const int n = std::max(4 * count, 64);
    std::vector<Complex> samples(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) samples[static_cast<std::size_t>(j)] = f(center + std::polar(rho, 2 * kPi * j / n));
    std::vector<Complex> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Complex s{};
        for (int j = 0; j < n; ++j) s += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2 * kPi * j * k / n);
        out[static_cast<std::size_t>(k)] = s / (static_cast<double>(n) * std::pow(rho, k));
    }
    return out;
}

}  // namespace rk
