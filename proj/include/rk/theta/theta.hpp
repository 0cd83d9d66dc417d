#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "rk/core/scalar.hpp"

namespace rk {

/// Point of the upper half plane.
struct TauValue {
    Complex tau;

    TauValue(Complex t) : tau(t) {
        if (!is_finite(t) || !(t.imag() > 0)) throw DomainError("tau must lie in the upper half plane");
    }
};

/// Symmetric g x g matrix with positive definite imaginary part.
class RiemannPeriodMatrix {
public:
    explicit RiemannPeriodMatrix(Eigen::MatrixXcd omega) : omega_(std::move(omega)) {
        if (omega_.rows() == 0 || omega_.rows() != omega_.cols()) throw DomainError("period matrix must be square");
        if (!omega_.allFinite()) throw DomainError("period matrix has non-finite entries");
        const double norm = omega_.norm();
        if ((omega_ - omega_.transpose()).norm() > 1e-12 * norm) throw DomainError("period matrix is not symmetric");
        const Eigen::MatrixXd y = omega_.imag();
        Eigen::LLT<Eigen::MatrixXd> llt(y);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(y, Eigen::EigenvaluesOnly);
        c_ = eig.eigenvalues().minCoeff();
        if (llt.info() != Eigen::Success || !(c_ > 1e-14 * std::max(1.0, y.norm())))
            throw DomainError("imaginary part of the period matrix is not positive definite");
    }

    int genus() const { return static_cast<int>(omega_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return omega_; }
    /// Smallest eigenvalue of Im Omega.
    double min_eigenvalue() const { return c_; }

private:
    Eigen::MatrixXcd omega_;
    double c_ = 0.0;
};

/// Characteristic [eps; delta] with entries in {0, 1/2}, stored as 0 or 1 halves.
struct ThetaCharacteristic {
    int eps2 = 0, delta2 = 0;

    ThetaCharacteristic(int e2, int d2) : eps2(e2), delta2(d2) {
        if ((e2 != 0 && e2 != 1) || (d2 != 0 && d2 != 1)) throw DomainError("theta characteristic entries must be 0 or 1/2");
    }
    static ThetaCharacteristic jacobi(int index) {
        switch (index) {
            case 1: return {1, 1};
            case 2: return {1, 0};
            case 3: return {0, 0};
            case 4: return {0, 1};
        }
        throw DomainError("Jacobi theta index must be 1, 2, 3 or 4");
    }
};

struct ThetaResult {
    Complex value;
    double tail_bound = 0.0;
    int N = 0;
};

inline constexpr int kThetaMaxGenus = 4;
inline constexpr int kThetaMaxBox = 10000;

namespace detail {

/// Sum over shells k > N of count(k) * (2 pi r)^p * max_{r in [lo(k), hi(k)]} exp(-pi c r^2 + 2 pi M r).
template <class Count, class Lo, class Hi>
double theta_tail(int N, double c, double M, int p, Count count, Lo lo, Hi hi) {
    // Past the peak successive ratios decrease, so the remainder is at most term * rho / (1 - rho).
    const double peak = M / c;
    double sum = 0.0, prev = 0.0;
    for (long k = N + 1;; ++k) {
        const double a = lo(k), b = hi(k);
        const double r = std::clamp(peak, a, b);
        const double term = count(k) * std::pow(2 * kPi * b, p) * std::exp(-kPi * c * r * r + 2 * kPi * M * r);
        sum += term;
        if (term == 0 && a > peak) return sum;
        if (a > peak + 1 && prev > 0) {
            const double rho = term / prev;
            if (rho < 1) {
                const double rest = term * rho / (1 - rho);
                if (rest <= 1e-3 * sum) return sum + rest;
            }
        }
        prev = term;
        if (k > N + 4L * kThetaMaxBox) return std::numeric_limits<double>::infinity();
    }
}

/// Smallest N whose tail bound is at most tol. The bound decreases in N, so bisection applies.
template <class Tail>
std::pair<int, double> theta_box(double tol, Tail tail) {
    if (!(tail(kThetaMaxBox) <= tol)) throw NumericFailure("theta summation box exceeds 10^4 per axis");
    int lo = -1, hi = kThetaMaxBox;
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (tail(mid) <= tol ? hi : lo) = mid;
    }
    return {hi, tail(hi)};
}

using LComplex = std::complex<long double>;

/// cos(a + j pi/2) for integer j.
inline LComplex cos_quarter(LComplex a, int j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return std::cos(a);
        case 1: return -std::sin(a);
        case 2: return -std::cos(a);
        default: return std::sin(a);
    }
}

}  // namespace detail

/// Riemann theta summed over the box |n|_inf <= N. The tail bound covers everything outside the box.
inline ThetaResult riemann_theta_box(const Eigen::VectorXcd& z, const RiemannPeriodMatrix& Omega, int N) {
    const int g = Omega.genus();
    if (g > kThetaMaxGenus) throw DomainError("riemann_theta supports genus at most 4");
    if (z.size() != g) throw DomainError("argument length does not match the genus");
    if (N < 0) throw DomainError("box size must be nonnegative");
    const double c = Omega.min_eigenvalue(), M = z.imag().norm();
    const double tail = detail::theta_tail(
        N, c, M, 0, [g](long k) { return std::pow(2.0 * k + 1, g) - std::pow(2.0 * k - 1, g); },
        [](long k) { return static_cast<double>(k); }, [g](long k) { return k * std::sqrt(static_cast<double>(g)); });

    // Terms n and -n are paired: 2 exp(pi i n.Omega.n) cos(2 pi n.z). Only the half with first nonzero entry > 0 is visited.
    const auto& W = Omega.matrix();
    std::vector<int> n(static_cast<std::size_t>(g), -N);
    detail::LComplex sum = 1;
    while (true) {
        int first = 0;
        for (int v : n)
            if (v != 0) {
                first = v;
                break;
            }
        if (first > 0) {
            detail::LComplex q = 0, lin = 0;
            for (int i = 0; i < g; ++i) {
                lin += static_cast<long double>(n[static_cast<std::size_t>(i)]) * detail::LComplex(z[i]);
                for (int j = 0; j < g; ++j)
                    q += static_cast<long double>(n[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(j)]) *
                         detail::LComplex(W(i, j));
            }
            const long double pi = kPi;
            sum += 2.0L * std::exp(detail::LComplex(0, pi) * q) * std::cos(2.0L * pi * lin);
        }
        int i = g - 1;
        while (i >= 0 && n[static_cast<std::size_t>(i)] == N) n[static_cast<std::size_t>(i--)] = -N;
        if (i < 0) break;
        ++n[static_cast<std::size_t>(i)];
    }
    return {Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag())), tail, N};
}

/// theta(z | Omega) = sum over n in Z^g of exp(pi i n.Omega.n + 2 pi i n.z), truncated so the tail bound is below tol.
inline ThetaResult riemann_theta(const Eigen::VectorXcd& z, const RiemannPeriodMatrix& Omega, double tol = 1e-12) {
    const int g = Omega.genus();
    if (g > kThetaMaxGenus) throw DomainError("riemann_theta supports genus at most 4");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    if (z.size() != g) throw DomainError("argument length does not match the genus");
    const double c = Omega.min_eigenvalue(), M = z.imag().norm();
    auto [N, t] = detail::theta_box(tol, [&](int n) {
        return detail::theta_tail(
            n, c, M, 0, [g](long k) { return std::pow(2.0 * k + 1, g) - std::pow(2.0 * k - 1, g); },
            [](long k) { return static_cast<double>(k); },
            [g](long k) { return k * std::sqrt(static_cast<double>(g)); });
    });
    (void)t;
    return riemann_theta_box(z, Omega, N);
}

/// Derivatives of order 0..3 of theta[eps; delta](z | tau) in z, by termwise differentiation.
inline std::array<Complex, 4> theta_char_derivatives(const ThetaCharacteristic& ch, Complex z, const TauValue& tau,
                                                     double tol = 1e-14, int max_order = 3) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    const double c = tau.tau.imag(), M = std::abs(z.imag());
    const double e = 0.5 * ch.eps2;
    auto [N, t] = detail::theta_box(tol, [&](int n) {
        return detail::theta_tail(
            n, c, M, max_order, [](long) { return 2.0; }, [e](long k) { return k + e; },
            [e](long k) { return k + e; });
    });
    (void)t;
    // Terms r and -r combine into 2 exp(pi i r^2 tau) cos(2 pi r z + 2 pi r delta), r = n + eps >= 0.
    // The phase 2 pi r delta is an integer number of quarter turns.
    const long double pi = kPi;
    const detail::LComplex lz(z), ltau(tau.tau);
    std::array<detail::LComplex, 4> s{};
    for (int n = 0; n <= N; ++n) {
        const long double r = n + static_cast<long double>(e);
        const long double w = (ch.eps2 == 0 && n == 0) ? 1.0L : 2.0L;
        const int quarter = ch.delta2 * (2 * n + ch.eps2);
        const detail::LComplex base = w * std::exp(detail::LComplex(0, pi) * r * r * ltau);
        const detail::LComplex a = 2.0L * pi * r * lz;
        long double scale = 1;
        for (int k = 0; k <= max_order; ++k) {
            s[static_cast<std::size_t>(k)] += base * scale * detail::cos_quarter(a, quarter + k);
            scale *= 2.0L * pi * r;
        }
    }
    std::array<Complex, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = Complex(static_cast<double>(s[k].real()), static_cast<double>(s[k].imag()));
    return out;
}

/// Jacobi theta_index(z | tau) with theta_1 = [1/2; 1/2], theta_2 = [1/2; 0], theta_3 = [0; 0], theta_4 = [0; 1/2].
inline Complex jacobi_theta(int index, Complex z, const TauValue& tau, double tol = 1e-14, int derivative = 0) {
    if (derivative < 0 || derivative > 3) throw DomainError("derivative order must be 0..3");
    return theta_char_derivatives(ThetaCharacteristic::jacobi(index), z, tau, tol, derivative)[static_cast<std::size_t>(derivative)];
}

/// |theta(z + m + n tau) - exp(-pi i n^2 tau - 2 pi i n z) theta(z)|, relative to 1 + |theta(z + m + n tau)|,
/// for theta = theta_3.
inline double quasi_period_residual(Complex z, const TauValue& tau, int m, int n, double tol = 1e-15) {
    const Complex t0 = jacobi_theta(3, z, tau, tol);
    const Complex t1 = jacobi_theta(3, z + static_cast<double>(m) + static_cast<double>(n) * tau.tau, tau, tol);
    const double nn = n;
    const Complex factor = std::exp(-kPi * kI * nn * nn * tau.tau - 2 * kPi * kI * nn * z);
    return std::abs(t1 - factor * t0) / (1 + std::abs(t1));
}

}  // namespace rk
