#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rk/core/laurent.hpp"
#include "rk/core/roots.hpp"
#include "rk/core/series.hpp"

using namespace rk;

namespace {

using PC = Polynomial<Complex>;
using PQ = Polynomial<BigRational>;

PC from_roots(const std::vector<Complex>& roots) {
    PC p = PC::constant(1.0);
    for (Complex r : roots) p = p * PC::linear_factor(r);
    return p;
}

bool has_root(const std::vector<Root>& rs, Complex z, int mult, double tol = 1e-9) {
    for (const auto& r : rs)
        if (std::abs(r.value - z) < tol && r.multiplicity == mult) return true;
    return false;
}

}  // namespace

TEST(PolyRoots, ConjugatePair) {
    auto rs = poly_roots(PC{1.0, 0.0, 1.0});
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_TRUE(has_root(rs, kI, 1));
    EXPECT_TRUE(has_root(rs, -kI, 1));
}

TEST(PolyRoots, CubicWithZeroRoot) {
    auto rs = poly_roots(PC{0.0, -1.0, 0.0, 1.0});
    ASSERT_EQ(rs.size(), 3u);
    EXPECT_TRUE(has_root(rs, 0.0, 1));
    EXPECT_TRUE(has_root(rs, 1.0, 1));
    EXPECT_TRUE(has_root(rs, -1.0, 1));
}

TEST(PolyRoots, RoucheQuarticInsideRadiusTwo) {
    PC p{1.0, 4.0, 0.0, 0.0, 1.0};
    auto rs = poly_roots(p);
    int total = 0;
    for (const auto& r : rs) {
        total += r.multiplicity;
        EXPECT_LT(std::abs(r.value), 2.0);
        EXPECT_LT(std::abs(p.eval_complex(r.value)), 1e-12 * p.abs_eval(std::abs(r.value)) * 100);
    }
    EXPECT_EQ(total, 4);
}

TEST(PolyRoots, MultipleRootsAreClustered) {
    auto rs = poly_roots(from_roots({1.0, 1.0, 1.0, -2.0, Complex(0.5, 0.5), Complex(0.5, 0.5)}));
    EXPECT_EQ(rs.size(), 3u);
    EXPECT_TRUE(has_root(rs, 1.0, 3, 1e-6));
    EXPECT_TRUE(has_root(rs, -2.0, 1));
    EXPECT_TRUE(has_root(rs, Complex(0.5, 0.5), 2, 1e-6));
}

TEST(PolyRoots, CloseButDistinctRootsStaySeparate) {
    auto rs = poly_roots(from_roots({1.0, 1.001, 3.0}));
    EXPECT_EQ(rs.size(), 3u);
}

TEST(PolyRoots, ExactMultiplicities) {
    // (z-1)^3 (z^2+1)^2 z
    PQ p = PQ{-1, 1}.pow(3) * PQ{1, 0, 1}.pow(2) * PQ{0, 1};
    auto rs = poly_roots_exact(p);
    int total = 0;
    for (const auto& r : rs) total += r.multiplicity;
    EXPECT_EQ(total, 8);
    EXPECT_TRUE(has_root(rs, 1.0, 3));
    EXPECT_TRUE(has_root(rs, kI, 2));
    EXPECT_TRUE(has_root(rs, -kI, 2));
    EXPECT_TRUE(has_root(rs, 0.0, 1));
}

TEST(PolyRoots, DegreeZeroIsRejected) { EXPECT_THROW(poly_roots(PC{3.0}), DomainError); }

TEST(PolyRoots, RandomPolynomialsMultiplicitiesSumToDegree) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 12;
        std::vector<Complex> c;
        for (int k = 0; k <= n; ++k) c.emplace_back(u(rng), u(rng));
        PC p(c);
        auto rs = poly_roots(p);
        int total = 0;
        for (const auto& r : rs) {
            total += r.multiplicity;
            EXPECT_LT(std::abs(p.eval_complex(r.value)), 1e-10 * p.abs_eval(std::abs(r.value)));
        }
        EXPECT_EQ(total, p.degree());
    }
}

TEST(OrdAt, WorkedExercise) {
    RationalFunction<BigRational> f(PQ{-1, 0, 1}, PQ{0, 0, 0, 1});
    EXPECT_EQ(ord_at(f, P1Point<BigRational>::finite(0)), -3);
    EXPECT_EQ(ord_at(f, P1Point<BigRational>::infinity()), 1);
    EXPECT_EQ(ord_at(f, P1Point<BigRational>::finite(1)), 1);
    auto fc = f.to_complex();
    EXPECT_EQ(ord_at(fc, P1Point<Complex>::finite(0.0)), -3);
    EXPECT_EQ(ord_at(fc, P1Point<Complex>::finite(-1.0)), 1);
    EXPECT_EQ(ord_at(fc, P1Point<Complex>::infinity()), 1);
}

TEST(OrdAt, ConstantAndZero) {
    RationalFunction<Complex> c(PC{Complex(2.5, -1)});
    EXPECT_EQ(ord_at(c, P1Point<Complex>::finite(Complex(0.3, 7))), 0);
    EXPECT_EQ(ord_at(c, P1Point<Complex>::infinity()), 0);
    EXPECT_THROW(ord_at(RationalFunction<Complex>(), P1Point<Complex>::finite(0.0)), DomainError);
}

TEST(OrdAt, PrincipalDivisorDegreeZeroProperty) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        auto rand_poly = [&](int deg) {
            std::vector<BigRational> c;
            for (int k = 0; k < deg; ++k) c.emplace_back(coef(rng));
            int lead = coef(rng);
            c.emplace_back(lead == 0 ? 1 : lead);
            return PQ(c);
        };
        RationalFunction<BigRational> f(rand_poly(trial % 5 + 1), rand_poly((trial / 5) % 5 + 1));
        if (f.is_zero()) continue;
        auto fc = f.to_complex();
        int total = ord_at(fc, P1Point<Complex>::infinity());
        for (const auto* p : {&f.num(), &f.den()}) {
            if (p->degree() < 1) continue;
            for (const auto& r : poly_roots_exact(*p)) total += ord_at(fc, P1Point<Complex>::finite(r.value));
        }
        EXPECT_EQ(total, 0) << "trial " << trial;
    }
}

TEST(Laurent, RationalWithZeroAndPoles) {
    // (z+1)/(z^3 (z-1)) = -z^-3 - 2 z^-2 - 2 z^-1 - ...
    RationalFunction<BigRational> f(PQ{1, 1}, PQ{0, 0, 0, -1, 1});
    auto seg = laurent_expand(f, BigRational(0), -1);
    EXPECT_EQ(seg.n_min(), -3);
    ASSERT_EQ(seg.coeffs().size(), 3u);
    EXPECT_EQ(seg.coeffs()[0], -1);
    EXPECT_EQ(seg.coeffs()[1], -2);
    EXPECT_EQ(seg.coeffs()[2], -2);
    EXPECT_EQ(seg.residue(), -2);
    EXPECT_EQ(laurent_expand(f, BigRational(1), -1).residue(), 2);
}

TEST(Laurent, GeometricSeries) {
    RationalFunction<Complex> f(PC{1.0}, PC{1.0, -1.0});
    auto seg = laurent_expand(f, Complex{}, 3);
    EXPECT_EQ(seg.n_min(), 0);
    for (Complex c : seg.coeffs()) EXPECT_EQ(c, Complex(1.0));
    EXPECT_EQ(seg.residue(), Complex{});
}

TEST(Laurent, SimplePoleAtOrigin) {
    RationalFunction<Complex> f(PC{1.0}, PC{0.0, 1.0});
    auto seg = laurent_expand(f, Complex{}, -1);
    EXPECT_EQ(seg.n_min(), -1);
    ASSERT_EQ(seg.coeffs().size(), 1u);
    EXPECT_EQ(seg.residue(), Complex(1.0));
}

TEST(Laurent, EmptyWindowIsAnError) {
    RationalFunction<Complex> f(PC{1.0}, PC{0.0, 0.0, 1.0});
    EXPECT_THROW(laurent_expand(f, Complex{}, -3), DomainError);
}

TEST(Laurent, ResidueMatchesDerivativeFormula) {
    // Res_p N/((z-p)^k E) = (N/E)^{(k-1)}(p) / (k-1)!, with the derivatives taken exactly.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + trial % 4;
        const BigRational p(coef(rng), 1 + trial % 3);
        PQ num{coef(rng), coef(rng), 1};
        PQ e{BigRational(coef(rng)) + 9, 1};
        RationalFunction<BigRational> f(num, PQ::linear_factor(p).pow(k) * e);
        if (num(p) == 0) continue;
        RationalFunction<BigRational> g(num, e);
        BigRational fact = 1;
        for (int j = 1; j < k; ++j) {
            g = g.derivative();
            fact *= j;
        }
        const BigRational oracle = g.num()(p) / g.den()(p) / fact;
        EXPECT_EQ(laurent_expand(f, p, -1).residue(), oracle) << "trial " << trial;
    }
}

TEST(Radius, Examples) {
    EXPECT_NEAR(radius_from_coeffs(std::vector<double>(30, 1.0)), 1.0, 1e-12);
    std::vector<double> fact(30), third(30);
    double f = 1;
    for (int n = 0; n < 30; ++n) {
        if (n > 0) f /= n;
        fact[static_cast<std::size_t>(n)] = f;
        third[static_cast<std::size_t>(n)] = std::pow(3.0, -n);
    }
    EXPECT_TRUE(std::isinf(radius_from_coeffs(fact)));
    EXPECT_NEAR(radius_from_coeffs(third), 3.0, 1e-9);
    EXPECT_TRUE(std::isinf(radius_from_coeffs(std::vector<double>(10, 0.0))));
    EXPECT_THROW(radius_from_coeffs(std::vector<double>(7, 1.0)), DomainError);
}

TEST(Radius, ScaleEquivariance) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> lam(0.2, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> a(40), b(40);
        const double l = lam(rng);
        for (int n = 0; n < 40; ++n) {
            a[static_cast<std::size_t>(n)] = (n + 1.0) * std::pow(0.5, n);
            b[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n)] * std::pow(l, n);
        }
        const double ra = radius_from_coeffs(a), rb = radius_from_coeffs(b);
        EXPECT_NEAR(rb, ra / l, 0.02 * ra / l);
    }
}

TEST(TaylorNumeric, Exponential) {
    auto c = taylor_coeffs_numeric([](Complex z) { return std::exp(z); }, 0.0, 1.0, 6);
    const double expect[] = {1, 1, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120};
    for (int k = 0; k < 6; ++k) EXPECT_NEAR(std::abs(c[static_cast<std::size_t>(k)] - expect[k]), 0.0, 1e-10);
}

TEST(TaylorNumeric, ConstantAndGeometric) {
    auto c = taylor_coeffs_numeric([](Complex) { return Complex(2, -1); }, Complex(0.4, 0.1), 0.7, 5);
    EXPECT_NEAR(std::abs(c[0] - Complex(2, -1)), 0, 1e-14);
    for (int k = 1; k < 5; ++k) EXPECT_NEAR(std::abs(c[static_cast<std::size_t>(k)]), 0, 1e-13);
    auto g = taylor_coeffs_numeric([](Complex z) { return 1.0 / (1.0 - z); }, 0.0, 0.5, 12);
    for (Complex v : g) EXPECT_NEAR(std::abs(v - 1.0), 0, 1e-8);
}

TEST(TaylorNumeric, CauchyBound) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const Complex c(u(rng), u(rng));
        const double rho = 0.3 + 0.5 * std::abs(u(rng));
        auto f = [](Complex z) { return std::exp(z) * std::sin(2.0 * z); };
        auto a = taylor_coeffs_numeric(f, c, rho, 10);
        double m = 0;
        for (int j = 0; j < 4096; ++j) m = std::max(m, std::abs(f(c + std::polar(rho, 2 * kPi * j / 4096))));
        for (int k = 0; k < 10; ++k)
            EXPECT_LE(std::abs(a[static_cast<std::size_t>(k)]), m / std::pow(rho, k) + 1e-9);
    }
}

TEST(ComplexValue, RejectsNonFinite) {
    EXPECT_THROW(make_complex(std::nan(""), 0), DomainError);
    EXPECT_THROW(make_complex(0, INFINITY), DomainError);
    EXPECT_EQ(make_complex(1, 2), Complex(1, 2));
}

TEST(PolyRoots, RandomMultipleRootsRecovered) {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-3, 3);
    std::uniform_int_distribution<int> mult(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Complex> pts;
        std::vector<int> ms;
        while (static_cast<int>(pts.size()) < 1 + trial % 4) {
            const Complex z(u(rng), u(rng));
            if (std::all_of(pts.begin(), pts.end(), [z](Complex q) { return std::abs(q - z) > 0.3; })) {
                pts.push_back(z);
                ms.push_back(mult(rng));
            }
        }
        PC p = PC::constant(1.0);
        for (std::size_t i = 0; i < pts.size(); ++i) p = p * PC::linear_factor(pts[i]).pow(ms[i]);
        auto rs = poly_roots(p);
        ASSERT_EQ(rs.size(), pts.size()) << trial;
        for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_TRUE(has_root(rs, pts[i], ms[i], 1e-6)) << trial;
    }
}
