#pragma once

#include <cmath>
#include <utility>

#include "rk/core/series.hpp"
#include "rk/quadrature/quadrature.hpp"

namespace rk {

/// Area integral over the unit disk of an integrand with an integrable singularity at z.
///
/// Polar coordinates are centred on the singular point, w = z + rho e^{i phi}, so the area element
/// rho drho dphi absorbs a 1/|w - z| singularity. Each ray runs to the unit circle; rays are sampled
/// with the periodic trapezoid rule and the radial integral with Gauss-Legendre.
inline Complex disk_area_integral(const ComplexFn& f, Complex z, int angular = 256, int radial = 48) {
    if (!(std::abs(z) < 1)) throw DomainError("singular point must lie inside the unit disk");
    auto [x, w] = quad::gauss_legendre(radial);
    return quad::periodic_trapezoid<Complex>(
        [&](double phi) {
            const Complex dir = std::polar(1.0, phi);
            const double b = (std::conj(z) * dir).real();
            const double rmax = -b + std::sqrt(b * b + 1 - std::norm(z));
            Complex s{};
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double rho = 0.5 * rmax * (x[i] + 1);
                s += f(z + rho * dir) * rho * w[i];
            }
            return s * (0.5 * rmax);
        },
        angular);
}

/// Area integral of 1/(w - z) over the unit disk, numerically and by the closed form -pi conj(z).
inline std::pair<Complex, Complex> cauchy_green_disk(Complex z) {
    if (!(std::abs(z) < 0.95)) throw DomainError("cauchy_green_disk needs |z| < 0.95");
    const Complex numeric = disk_area_integral([z](Complex w) { return 1.0 / (w - z); }, z);
    return {numeric, -kPi * std::conj(z)};
}

}  // namespace rk
