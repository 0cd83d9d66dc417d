#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "rk/quadrature/quadrature.hpp"

namespace rk {

/// Unit sphere in (theta, phi), phi the polar angle, or the torus ((R + r cos phi) cos theta, (R + r cos phi) sin theta, r sin phi).
struct SurfaceSpec {
    enum class Kind { UnitSphere, Torus };
    Kind kind = Kind::UnitSphere;
    double R = 0.0, r = 0.0;

    static SurfaceSpec sphere() { return {}; }
    static SurfaceSpec torus(double R, double r) {
        if (!(r > 0 && R > r) || !std::isfinite(R)) throw DomainError("torus radii must satisfy R > r > 0");
        return {Kind::Torus, R, r};
    }
    /// Parameter range of phi.
    double phi_max() const { return kind == Kind::UnitSphere ? kPi : 2 * kPi; }
};

struct FundamentalForm {
    double E = 0, F = 0, G = 0, dA = 0;
};

inline FundamentalForm first_fundamental(const SurfaceSpec& s, double /*theta*/, double phi) {
    if (s.kind == SurfaceSpec::Kind::UnitSphere) {
        const double sp = std::sin(phi);
        return {sp * sp, 0.0, 1.0, std::abs(sp)};
    }
    const double w = s.R + s.r * std::cos(phi);
    return {w * w, 0.0, s.r * s.r, s.r * w};
}

inline double gauss_curvature(const SurfaceSpec& s, double /*theta*/, double phi) {
    if (s.kind == SurfaceSpec::Kind::UnitSphere) return 1.0;
    return std::cos(phi) / (s.r * (s.R + s.r * std::cos(phi)));
}

namespace detail {

/// Trapezoid in theta times Gauss-Legendre (sphere) or trapezoid (torus) in phi.
template <class F>
double surface_integral(const SurfaceSpec& s, int grid, F integrand) {
    if (grid < 16) throw DomainError("surface grid must be at least 16");
    auto inner = [&](double theta) {
        if (s.kind == SurfaceSpec::Kind::UnitSphere)
            return quad::gauss_legendre_integrate<double>([&](double phi) { return integrand(theta, phi); }, 0.0, kPi, grid);
        return quad::periodic_trapezoid<double>([&](double phi) { return integrand(theta, phi); }, grid);
    };
    return quad::periodic_trapezoid<double>(inner, grid);
}

}  // namespace detail

/// Integral of K dA.
inline double total_curvature(const SurfaceSpec& s, int grid = 64) {
    return detail::surface_integral(s, grid, [&](double t, double p) {
        return gauss_curvature(s, t, p) * first_fundamental(s, t, p).dA;
    });
}

inline double surface_area(const SurfaceSpec& s, int grid = 64) {
    return detail::surface_integral(s, grid, [&](double t, double p) { return first_fundamental(s, t, p).dA; });
}

/// CSV with columns u,v,K,dA on a uniform grid x grid sample of the parameter domain.
inline std::string surface_grid_csv(const SurfaceSpec& s, int grid) {
    if (grid < 1) throw DomainError("grid must be positive");
    std::ostringstream os;
    os.precision(17);
    os << "u,v,K,dA\n";
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double u = 2 * kPi * i / grid;
            const double v = s.kind == SurfaceSpec::Kind::UnitSphere ? kPi * (j + 0.5) / grid : 2 * kPi * j / grid;
            os << u << ',' << v << ',' << gauss_curvature(s, u, v) << ',' << first_fundamental(s, u, v).dA << '\n';
        }
    return os.str();
}

}  // namespace rk
