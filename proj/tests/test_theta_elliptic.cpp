#include <random>

#include <gtest/gtest.h>

#include "rk/theta/weierstrass.hpp"

using namespace rk;

namespace {

const PeriodPair kSquare(1.0, Complex(0, 1));
const PeriodPair kGeneric(1.0, Complex(0.5, 1.2));

RiemannPeriodMatrix diag(std::initializer_list<Complex> d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (Complex v : d) m(i, i) = v, ++i;
    return RiemannPeriodMatrix(m);
}

double agm(double a, double b) {
    while (std::abs(a - b) > 1e-15 * a) {
        const double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return a;
}

Eigen::VectorXcd vec(std::initializer_list<Complex> v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (Complex x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST(RiemannTheta, GenusOneValues) {
    // theta_3(0, i) = pi^(1/4) / Gamma(3/4)
    const double exact = std::pow(kPi, 0.25) / std::tgamma(0.75);
    auto r = riemann_theta(vec({0.0}), diag({kI}), 1e-14);
    EXPECT_NEAR(r.value.real(), 1.0864, 1e-4);
    EXPECT_NEAR(std::abs(r.value - exact), 0.0, 1e-13);
    EXPECT_LE(r.tail_bound, 1e-14);

    auto h = riemann_theta(vec({0.5}), diag({kI}));
    auto h1 = riemann_theta(vec({1.5}), diag({kI}));
    EXPECT_LT(std::abs(h.value - h1.value), 1e-12);
    EXPECT_LT(std::abs(h.value - jacobi_theta(4, 0.0, TauValue(kI))), 1e-12);

    for (Complex z : {Complex(0.2, 0.3), Complex(-0.7, 0.05)})
        EXPECT_LT(std::abs(riemann_theta(vec({z}), diag({Complex(0.3, 1.1)})).value -
                           jacobi_theta(3, z, TauValue(Complex(0.3, 1.1)))),
                  1e-12);
}

TEST(RiemannTheta, DiagonalFactorization) {
    auto two = riemann_theta(vec({0.0, 0.0}), diag({kI, 2.0 * kI}));
    auto a = riemann_theta(vec({0.0}), diag({kI})), b = riemann_theta(vec({0.0}), diag({2.0 * kI}));
    EXPECT_LT(std::abs(two.value - a.value * b.value), 1e-10);

    const Complex z1(0.1, 0.2), z2(-0.3, 0.05);
    auto c = riemann_theta(vec({z1, z2}), diag({Complex(0.2, 1.0), Complex(-0.1, 1.5)}));
    auto c1 = riemann_theta(vec({z1}), diag({Complex(0.2, 1.0)}));
    auto c2 = riemann_theta(vec({z2}), diag({Complex(-0.1, 1.5)}));
    EXPECT_LT(std::abs(c.value - c1.value * c2.value), 1e-10);
}

TEST(RiemannTheta, TailCertification) {
    Eigen::MatrixXcd m(2, 2);
    m << Complex(0.1, 1.0), Complex(0.2, 0.3), Complex(0.2, 0.3), Complex(-0.4, 0.9);
    const RiemannPeriodMatrix om(m);
    Eigen::MatrixXcd m3 = Eigen::MatrixXcd::Identity(3, 3) * Complex(0, 0.8);
    m3(0, 1) = m3(1, 0) = Complex(0.1, 0.2);
    const RiemannPeriodMatrix om3(m3);
    const std::vector<std::pair<const RiemannPeriodMatrix*, Eigen::VectorXcd>> cases = {
        {&om, vec({0.0, 0.0})}, {&om, vec({Complex(0.3, 0.4), Complex(-0.2, -0.6)})},
        {&om3, vec({0.1, Complex(0, 0.3), 0.2})}};
    for (double tol : {1e-4, 1e-8, 1e-12})
        for (const auto& [o, z] : cases) {
            auto r = riemann_theta(z, *o, tol);
            EXPECT_LE(r.tail_bound, tol);
            auto wider = riemann_theta_box(z, *o, r.N + 2);
            EXPECT_LE(std::abs(wider.value - r.value), r.tail_bound + 1e-15);
        }
}

TEST(RiemannTheta, Errors) {
    Eigen::MatrixXcd nonsym(2, 2);
    nonsym << kI, 0.5, 0.1, kI;
    EXPECT_THROW(RiemannPeriodMatrix{nonsym}, DomainError);
    EXPECT_THROW(diag({Complex(0, -1)}), DomainError);
    EXPECT_THROW(diag({Complex(1, 0)}), DomainError);
    auto big = RiemannPeriodMatrix(Eigen::MatrixXcd::Identity(5, 5) * kI);
    EXPECT_THROW(riemann_theta(Eigen::VectorXcd::Zero(5), big), DomainError);
    EXPECT_THROW(riemann_theta(vec({0.0}), diag({Complex(0, 1e-10)}), 1e-12), NumericFailure);
    EXPECT_THROW(riemann_theta(vec({0.0, 0.0}), diag({kI})), DomainError);
}

TEST(JacobiTheta, ValuesAndParity) {
    EXPECT_NEAR(jacobi_theta(3, 0.0, TauValue(kI)).real(), 1.0864, 1e-4);
    for (Complex t : {kI, 2.0 * kI, Complex(0.5, 1)}) {
        const TauValue tau(t);
        EXPECT_LT(std::abs(jacobi_theta(1, 0.0, tau)), 1e-12);
        // Jacobi's derivative identity |theta_1'(0)| = pi |theta_2 theta_3 theta_4|(0)
        const Complex d = jacobi_theta(1, 0.0, tau, 1e-15, 1);
        const Complex p = kPi * jacobi_theta(2, 0.0, tau) * jacobi_theta(3, 0.0, tau) * jacobi_theta(4, 0.0, tau);
        EXPECT_GT(std::abs(d), 0.1);
        EXPECT_NEAR(std::abs(d), std::abs(p), 1e-12);
    }
    const Complex z(0.3, 0.1);
    const TauValue tau(kI);
    EXPECT_LE(std::abs(jacobi_theta(1, -z, tau) + jacobi_theta(1, z, tau)), 1e-12);
    EXPECT_THROW(jacobi_theta(5, z, tau), DomainError);
    EXPECT_THROW(TauValue(Complex(1, 0)), DomainError);
}

TEST(JacobiTheta, DerivativesMatchDifferences) {
    const TauValue tau(Complex(0.2, 0.9));
    const Complex z(0.17, -0.08);
    const double h = 1e-4;
    for (int idx = 1; idx <= 4; ++idx)
        for (int k = 1; k <= 3; ++k) {
            auto f = [&](Complex w) { return jacobi_theta(idx, w, tau, 1e-15, k - 1); };
            const Complex fd = (f(z + h) - f(z - h)) / (2 * h);
            const Complex exact = jacobi_theta(idx, z, tau, 1e-15, k);
            EXPECT_LT(std::abs(fd - exact), 1e-6 * (1 + std::abs(exact))) << idx << " " << k;
        }
}

TEST(JacobiTheta, QuasiPeriodicity) {
    const Complex z(0.2, 0.3);
    const TauValue tau(kI);
    EXPECT_LE(quasi_period_residual(z, tau, 1, 0), 1e-12);
    EXPECT_LE(quasi_period_residual(z, tau, 0, 1), 1e-12);
    EXPECT_EQ(quasi_period_residual(z, tau, 0, 0), 0.0);
    EXPECT_LE(quasi_period_residual(z, TauValue(Complex(0.4, 1.3)), 2, -1), 1e-11);
}

TEST(Lattice, WpBasics) {
    const Complex z(0.23, 0.11);
    EXPECT_LE(std::abs(wp_lattice(-z, kSquare) - wp_lattice(z, kSquare)), 1e-10);
    EXPECT_THROW(wp_lattice(Complex(1, 1), kSquare), DomainError);
    EXPECT_THROW(wp_lattice(z, kSquare, 10), DomainError);

    // Laurent check: the z^6 remainder shrinks by 64 when z is halved
    const auto inv = eisenstein(kGeneric, 60);
    auto rem = [&](Complex w) {
        return wp_lattice(w, kGeneric, 60) - 1.0 / (w * w) - inv.g2 / 20.0 * w * w - inv.g3 / 28.0 * std::pow(w, 4);
    };
    const Complex w(0.08, 0.04);
    EXPECT_NEAR(std::abs(rem(w) / rem(w / 2.0)), 64.0, 1.0);

    auto res = contour_integral([](Complex w) { return wp_lattice(w, kSquare, 40); }, Contour(Circle{0.0, 0.1}), 1e-11);
    EXPECT_LE(std::abs(res.value), 1e-8);
}

TEST(Lattice, Eisenstein) {
    auto sq = eisenstein(kSquare);
    EXPECT_LE(std::abs(sq.g3), 1e-10);
    // lemniscatic lattice: g2 = Gamma(1/4)^8 / (16 pi^2)
    EXPECT_NEAR(sq.g2.real(), std::pow(std::tgamma(0.25), 8) / (16 * kPi * kPi), 1e-4);
    EXPECT_FALSE(sq.eta1.has_value());

    EXPECT_LE(std::abs(eisenstein(PeriodPair(1.0, std::polar(1.0, kPi / 3)), 20).g2), 1e-8);

    const Complex lambda(0.7, 0.4);
    auto a = eisenstein(kGeneric, 30), b = eisenstein(kGeneric.scaled(lambda), 30);
    EXPECT_LE(std::abs(b.g2 - std::pow(lambda, -4) * a.g2), 1e-9 * std::abs(b.g2));
    EXPECT_THROW(eisenstein(kSquare, 5), DomainError);
}

TEST(Weierstrass, ThetaAgreesWithLattice) {
    const Complex z(0.31, 0.17);
    EXPECT_LE(std::abs(wp_via_theta(z, kSquare) - wp_lattice(z, kSquare, 200)), 1e-5);

    const ThetaWeierstrass W(kGeneric);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const Complex w = (0.1 + 0.2 * i) * kGeneric.omega1 + (0.1 + 0.2 * j) * kGeneric.omega2;
            EXPECT_LE(std::abs(W.wp(w) - wp_lattice(w, kGeneric, 200)), 1e-5) << w;
            EXPECT_LE(std::abs(W.wp_prime(w) - wp_prime_lattice(w, kGeneric, 200)), 1e-5) << w;
        }
}

TEST(Weierstrass, PoleAndPeriodicity) {
    const ThetaWeierstrass W(kSquare);
    for (double t : {0.1, 0.05, 0.025}) {
        const Complex z = t * Complex(1, 1);
        EXPECT_NEAR(std::abs(z * z * W.wp(z) - 1.0), 0.0, 3 * t * t * 4);
    }
    const Complex z(0.37, 0.21);
    EXPECT_LE(std::abs(W.wp(z + 1.0) - W.wp(z)), 1e-10);
    EXPECT_LE(std::abs(W.wp(z + kI) - W.wp(z)), 1e-9);
    EXPECT_THROW(W.wp(0.0), DomainError);
}

TEST(Weierstrass, EvenOddRandom) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (const PeriodPair& L : {kSquare, kGeneric}) {
        const ThetaWeierstrass W(L);
        for (int k = 0; k < 20; ++k) {
            const Complex z = u(rng) * L.omega1 + u(rng) * L.omega2;
            EXPECT_LE(std::abs(W.wp(-z) - W.wp(z)), 1e-9 * (1 + std::abs(W.wp(z))));
            EXPECT_LE(std::abs(W.wp_prime(-z) + W.wp_prime(z)), 1e-9 * (1 + std::abs(W.wp_prime(z))));
        }
    }
}

TEST(Weierstrass, Eta1Ratio) {
    // Legendre's relation on the square lattice forces eta1 = pi
    const Complex r = eta1_ratio(kSquare);
    EXPECT_NEAR(r.real(), kPi, 1e-7);
    EXPECT_LE(std::abs(r.imag()), 1e-8);

    const Complex lambda(1.3, -0.6);
    const Complex a = eta1_ratio(kGeneric), b = eta1_ratio(kGeneric.scaled(lambda));
    EXPECT_LE(std::abs(b - a / (lambda * lambda)), 1e-6 * std::abs(b));

    // Legendre relation eta1 omega2 - eta2 omega1 = 2 pi i, with eta2 from the quasi-period of zeta
    const ThetaWeierstrass W(kGeneric);
    const Complex z(0.21, 0.13);
    const Complex eta2 = W.zeta(z + kGeneric.omega2) - W.zeta(z);
    const Complex eta1 = W.zeta(z + kGeneric.omega1) - W.zeta(z);
    EXPECT_LE(std::abs(eta1 - W.eta1()), 1e-8);
    EXPECT_LE(std::abs(eta1 * kGeneric.omega2 - eta2 * kGeneric.omega1 - 2 * kPi * kI), 1e-7);
}

TEST(Weierstrass, Sigma) {
    const ThetaWeierstrass W(kGeneric);
    const Complex small = 1e-3 * kGeneric.omega1;
    EXPECT_LE(std::abs(W.sigma(small) / small - 1.0), 1e-5);
    EXPECT_LE(std::abs(sigma(small, kGeneric) / small - 1.0), 1e-5);
    const Complex z(0.3, 0.2);
    EXPECT_LE(std::abs(W.sigma(-z) + W.sigma(z)), 1e-10);
    const Complex eta1 = kGeneric.omega1 * W.eta1_ratio();
    const Complex ratio = W.sigma(z + kGeneric.omega1) / W.sigma(z);
    const Complex expect = -std::exp(eta1 * (z + kGeneric.omega1 / 2.0));
    EXPECT_LE(std::abs(ratio - expect), 1e-6 * std::abs(expect));
    EXPECT_LT(std::abs(W.sigma(kGeneric.omega2)), 1e-10);
}

TEST(Weierstrass, DifferentialEquation) {
    EXPECT_LE(ode_residual(Complex(0.3, 0.2), kSquare, 200), 1e-4);
    EXPECT_LE(ode_residual(Complex(0.25, 0.4), kGeneric, 200), 1e-4);
    const ThetaWeierstrass W(kSquare);
    EXPECT_LE(std::abs(W.wp_prime(kSquare.omega1 / 2.0)), 1e-6);
    EXPECT_LE(std::abs(W.wp_prime((kSquare.omega1 + kSquare.omega2) / 2.0)), 1e-6);
}

TEST(Weierstrass, ParallelogramResidues) {
    const ThetaWeierstrass W(kGeneric);
    const Complex base = -0.43 * kGeneric.omega1 - 0.47 * kGeneric.omega2;
    EXPECT_LE(std::abs(parallelogram_residue_sum([&](Complex z) { return W.wp(z); }, kGeneric, base)), 1e-8);
    EXPECT_LE(std::abs(parallelogram_residue_sum([&](Complex z) { return W.wp_prime(z); }, kGeneric, base)), 1e-8);
    EXPECT_LE(std::abs(parallelogram_residue_sum(
                  [&](Complex z) {
                      const Complex p = W.wp(z);
                      return p * p;
                  },
                  kGeneric, base)),
              1e-6);
    // zeta is not elliptic: the residue at the lattice point is 1
    auto zsum = parallelogram_residue_sum([&](Complex z) { return 1.0 / (z - 0.1); }, kGeneric, base);
    EXPECT_NEAR(std::abs(zsum - 1.0), 0.0, 1e-9);
    EXPECT_THROW(parallelogram_residue_sum([](Complex z) { return z; }, kGeneric, 0.0), DomainError);
}

TEST(Periods, RealCubic) {
    const double e1 = 2, e2 = -0.5, e3 = -1.5;
    const PeriodPair L = periods_real_cubic(e1, e2, e3);
    EXPECT_GT(L.omega1.real(), 0);
    EXPECT_EQ(L.omega1.imag(), 0);
    EXPECT_EQ(L.omega2.real(), 0);
    EXPECT_GT((L.omega2 / L.omega1).imag(), 0);
    // periods from the arithmetic-geometric mean
    EXPECT_NEAR(L.omega1.real(), kPi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2)), 1e-12);
    EXPECT_NEAR(L.omega2.imag(), kPi / agm(std::sqrt(e1 - e3), std::sqrt(e2 - e3)), 1e-12);

    const ThetaWeierstrass W(L);
    EXPECT_LE(std::abs(W.wp(L.omega1 / 2.0) - e1), 1e-4);
    EXPECT_LE(std::abs(W.wp(L.omega2 / 2.0) - e3), 1e-4);
    EXPECT_LE(std::abs(W.wp((L.omega1 + L.omega2) / 2.0) - e2), 1e-4);

    const auto inv = eisenstein(L);
    for (double e : {e1, e2, e3}) EXPECT_LE(std::abs(4.0 * e * e * e - inv.g2 * e - inv.g3), 1e-4);

    const PeriodPair S = periods_real_cubic(1, 0, -1);
    EXPECT_LE(std::abs(S.omega2 / S.omega1 - kI), 1e-6);

    EXPECT_THROW(periods_real_cubic(0, 1, -1), DomainError);
    EXPECT_THROW(periods_real_cubic(1, 1, -1), DomainError);
}

TEST(Periods, PeriodPairValidation) {
    EXPECT_THROW(PeriodPair(1.0, Complex(0, -1)), DomainError);
    EXPECT_THROW(PeriodPair(0.0, Complex(0, 1)), DomainError);
    EXPECT_THROW(PeriodPair(1.0, 2.0), DomainError);
}
