#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "rk/quadrature/quadrature.hpp"
#include "rk/residue/contour.hpp"
#include "rk/theta/theta.hpp"

namespace rk {

/// Lattice Z omega1 + Z omega2 with Im(omega2/omega1) > 0.
struct PeriodPair {
    Complex omega1, omega2;

    PeriodPair(Complex w1, Complex w2) : omega1(w1), omega2(w2) {
        if (!is_finite(w1) || !is_finite(w2) || w1 == Complex{} || w2 == Complex{})
            throw DomainError("periods must be finite and nonzero");
        if (!((w2 / w1).imag() > 0)) throw DomainError("periods must satisfy Im(omega2/omega1) > 0");
    }

    Complex tau() const { return omega2 / omega1; }
    PeriodPair scaled(Complex lambda) const { return {lambda * omega1, lambda * omega2}; }
};

struct EllipticInvariants {
    Complex g2{}, g3{};
    std::optional<Complex> eta1;
    int truncation = 20;
};

inline constexpr int kLatticeMinTruncation = 20;

/// Real coordinates (a, b) with z = a omega1 + b omega2.
inline std::pair<double, double> lattice_coordinates(Complex z, const PeriodPair& L) {
    const double det = (std::conj(L.omega1) * L.omega2).imag();
    const double a = (std::conj(z) * L.omega2).imag() / det;
    const double b = (std::conj(L.omega1) * z).imag() / det;
    return {a, b};
}

/// Distance from z to the nearest lattice point.
inline double lattice_distance(Complex z, const PeriodPair& L) {
    auto [a, b] = lattice_coordinates(z, L);
    double best = std::numeric_limits<double>::infinity();
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            const Complex w = (std::floor(a) + i) * L.omega1 + (std::floor(b) + j) * L.omega2;
            best = std::min(best, std::abs(z - w));
        }
    return best;
}

namespace detail {

/// Nonzero lattice points in the largest disk contained in the box |m|, |n| <= N, grouped by shell max(|m|, |n|).
/// The disk is invariant under every rotation preserving the lattice.
template <class F>
std::complex<long double> lattice_sum(const PeriodPair& L, int N, F term) {
    const double area = std::abs((std::conj(L.omega1) * L.omega2).imag());
    const double R = N * area / std::max(std::abs(L.omega1), std::abs(L.omega2));
    std::complex<long double> total = 0;
    for (int k = 1; k <= N; ++k) {
        std::complex<long double> shell = 0;
        auto visit = [&](int m, int n) {
            const Complex w = static_cast<double>(m) * L.omega1 + static_cast<double>(n) * L.omega2;
            if (std::abs(w) <= R) shell += term(w);
        };
        for (int m = -k; m <= k; ++m) {
            visit(m, k);
            visit(m, -k);
        }
        for (int n = -k + 1; n <= k - 1; ++n) {
            visit(k, n);
            visit(-k, n);
        }
        total += shell;
    }
    return total;
}

inline Complex to_complex(std::complex<long double> v) {
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

inline void check_truncation(int N) {
    if (N < kLatticeMinTruncation) throw DomainError("lattice truncation must be at least 20");
}

inline void check_off_lattice(Complex z, const PeriodPair& L) {
    if (lattice_distance(z, L) <= 1e-8 * std::abs(L.omega1)) throw DomainError("z lies on the lattice: pole of wp");
}

}  // namespace detail

/// wp(z) = 1/z^2 + sum (1/(z-w)^2 - 1/w^2) over the truncated lattice. The tail is O(1/N).
inline Complex wp_lattice(Complex z, const PeriodPair& L, int N = 200) {
    detail::check_truncation(N);
    detail::check_off_lattice(z, L);
    const std::complex<long double> lz(z);
    auto s = detail::lattice_sum(L, N, [&](Complex w) {
        const std::complex<long double> lw(w), d = lz - lw;
        return 1.0L / (d * d) - 1.0L / (lw * lw);
    });
    return detail::to_complex(1.0L / (lz * lz) + s);
}

/// wp'(z) = -2 sum 1/(z-w)^3 over the same truncated lattice.
inline Complex wp_prime_lattice(Complex z, const PeriodPair& L, int N = 200) {
    detail::check_truncation(N);
    detail::check_off_lattice(z, L);
    const std::complex<long double> lz(z);
    auto s = detail::lattice_sum(L, N, [&](Complex w) {
        const std::complex<long double> d = lz - std::complex<long double>(w);
        return 1.0L / (d * d * d);
    });
    return detail::to_complex(-2.0L * (1.0L / (lz * lz * lz) + s));
}

/// g2 = 60 sum w^-4, g3 = 140 sum w^-6 over the truncated lattice.
inline EllipticInvariants eisenstein(const PeriodPair& L, int N = 200) {
    detail::check_truncation(N);
    auto s4 = detail::lattice_sum(L, N, [](Complex w) {
        const std::complex<long double> lw(w), w2 = lw * lw;
        return 1.0L / (w2 * w2);
    });
    auto s6 = detail::lattice_sum(L, N, [](Complex w) {
        const std::complex<long double> lw(w), w2 = lw * lw;
        return 1.0L / (w2 * w2 * w2);
    });
    return {detail::to_complex(60.0L * s4), detail::to_complex(140.0L * s6), std::nullopt, N};
}

inline constexpr double kEtaStep = 0.05;
inline constexpr int kEtaLattice = 200;

namespace detail {

/// (log theta_1)''(u) in u.
inline Complex log_theta1_second(Complex u, const TauValue& tau) {
    auto d = theta_char_derivatives(ThetaCharacteristic::jacobi(1), u, tau, 1e-16, 2);
    const Complex r = d[1] / d[0];
    return d[2] / d[0] - r * r;
}

}  // namespace detail

/// eta1/omega1 from the limit of -[wp_lattice(z) + d^2/dz^2 log theta_1(z/omega1 | tau)] at z = omega1 * {0.05, 0.025},
/// combined by one Richardson step.
inline Complex eta1_ratio(const PeriodPair& L, double tol = 1e-8) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const TauValue tau(L.tau());
    auto K = [&](double h) {
        const Complex z = h * L.omega1;
        return wp_lattice(z, L, kEtaLattice) + detail::log_theta1_second(Complex(h, 0), tau) / (L.omega1 * L.omega1);
    };
    const Complex k1 = K(kEtaStep), k2 = K(kEtaStep / 2);
    const Complex k0 = (4.0 * k2 - k1) / 3.0;
    const double err = std::abs(k2 - k1) / 3.0;
    if (err > 10 * tol) throw NumericFailure("eta1 extrapolation did not settle", -k0, err);
    return -k0;
}

/// Weierstrass functions of one lattice through theta_1, with eta1/omega1 and theta_1'(0) computed once.
class ThetaWeierstrass {
public:
    explicit ThetaWeierstrass(const PeriodPair& L, double tol = 1e-8)
        : L_(L), tau_(L.tau()), ratio_(rk::eta1_ratio(L, tol)) {
        auto d0 = theta_char_derivatives(ThetaCharacteristic::jacobi(1), 0.0, tau_, 1e-16, 1);
        if (std::abs(d0[0]) > 1e-12) throw ConsistencyError("theta_1(0) is not zero");
        if (std::abs(d0[1]) < 1e-300) throw ConsistencyError("theta_1'(0) vanishes");
        theta1_prime0_ = d0[1];
    }

    const PeriodPair& lattice() const { return L_; }
    Complex eta1_ratio() const { return ratio_; }
    Complex eta1() const { return ratio_ * L_.omega1; }
    Complex theta1_prime0() const { return theta1_prime0_; }

    /// wp(z) = -d^2/dz^2 log theta_1(z/omega1) - eta1/omega1.
    Complex wp(Complex z) const {
        auto d = derivs(z);
        const Complex r = d[1] / d[0];
        return -(d[2] / d[0] - r * r) / (L_.omega1 * L_.omega1) - ratio_;
    }

    Complex wp_prime(Complex z) const {
        auto d = derivs(z);
        const Complex r = d[1] / d[0];
        const Complex w = L_.omega1;
        return -(d[3] / d[0] - 3.0 * d[2] / d[0] * r + 2.0 * r * r * r) / (w * w * w);
    }

    /// zeta(z) = (log sigma)'(z).
    Complex zeta(Complex z) const {
        auto d = derivs(z);
        return ratio_ * z + d[1] / d[0] / L_.omega1;
    }

    /// sigma(z) = (omega1/theta_1'(0)) exp(eta1 z^2 / (2 omega1)) theta_1(z/omega1).
    Complex sigma(Complex z) const {
        const Complex t = jacobi_theta(1, z / L_.omega1, tau_, 1e-16);
        return L_.omega1 / theta1_prime0_ * std::exp(0.5 * ratio_ * z * z) * t;
    }

private:
    std::array<Complex, 4> derivs(Complex z) const {
        auto d = theta_char_derivatives(ThetaCharacteristic::jacobi(1), z / L_.omega1, tau_, 1e-16, 3);
        if (std::abs(d[0]) < 1e-300) throw DomainError("z lies on the lattice: pole of wp");
        return d;
    }

    PeriodPair L_;
    TauValue tau_;
    Complex ratio_;
    Complex theta1_prime0_;
};

inline Complex wp_via_theta(Complex z, const PeriodPair& L, double tol = 1e-8) { return ThetaWeierstrass(L, tol).wp(z); }

inline Complex sigma(Complex z, const PeriodPair& L, double tol = 1e-8) { return ThetaWeierstrass(L, tol).sigma(z); }

/// |wp'^2 - 4 wp^3 + g2 wp + g3| / (1 + |wp|^3) with theta-based wp, wp' and lattice-sum g2, g3.
inline double ode_residual(Complex z, const PeriodPair& L, int N = 200) {
    const ThetaWeierstrass W(L);
    const auto inv = eisenstein(L, N);
    const Complex p = W.wp(z), dp = W.wp_prime(z);
    return std::abs(dp * dp - 4.0 * p * p * p + inv.g2 * p + inv.g3) / (1 + std::pow(std::abs(p), 3));
}

/// (1/2 pi i) times the integral of f around the parallelogram base, base+omega1, base+omega1+omega2, base+omega2.
inline Complex parallelogram_residue_sum(const ComplexFn& f, const PeriodPair& L, Complex base, double tol = 1e-10) {
    const Complex a = base, b = base + L.omega1, c = b + L.omega2, d = base + L.omega2;
    const double scale = std::abs(L.omega1) + std::abs(L.omega2);
    for (Complex p : {a, b, c, d})
        if (lattice_distance(p, L) < 1e-6 * scale) throw DomainError("parallelogram corner lies on the lattice");
    auto r = contour_integral(f, Contour(Polyline{{a, b, c, d, a}}), tol);
    return r.value / (2 * kPi * kI);
}

/// Periods of y^2 = 4(x-e1)(x-e2)(x-e3), e1 > e2 > e3:
/// omega1 = 2 int_{e3}^{e2} dx/sqrt|...| (real oval), omega2 = 2i int_{e2}^{e1} dx/sqrt|...|.
/// x = e3 + (e2-e3) sin^2 t and x = e2 + (e1-e2) sin^2 t remove the endpoint singularities.
/// wp of the returned lattice takes the values e_i - (e1+e2+e3)/3 at the half periods.
inline PeriodPair periods_real_cubic(double e1, double e2, double e3, double tol = 1e-13) {
    if (!std::isfinite(e1) || !std::isfinite(e2) || !std::isfinite(e3)) throw DomainError("roots must be finite");
    if (!(e1 > e2 && e2 > e3)) throw DomainError("roots must satisfy e1 > e2 > e3");
    // On [e3, e2]: (x-e3)(e2-x) = (e2-e3)^2 sin^2 t cos^2 t, leaving 1/sqrt(e1 - x).
    auto real = quad::integrate<double>(
        [&](double t) {
            const double s = std::sin(t);
            return 1.0 / std::sqrt(e1 - e3 - (e2 - e3) * s * s);
        },
        0.0, kPi / 2, tol, tol);
    // On [e2, e1]: leaves 1/sqrt(x - e3).
    auto imag = quad::integrate<double>(
        [&](double t) {
            const double s = std::sin(t);
            return 1.0 / std::sqrt(e2 - e3 + (e1 - e2) * s * s);
        },
        0.0, kPi / 2, tol, tol);
    if (!real.converged || !imag.converged) throw NumericFailure("period quadrature did not converge");
    return {Complex(2 * real.value, 0), Complex(0, 2 * imag.value)};
}

}  // namespace rk
