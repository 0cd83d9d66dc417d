#include <random>

#include <gtest/gtest.h>

#include "rk/curves/divisor.hpp"

using namespace rk;

namespace {

using PC = Polynomial<Complex>;
using PQ = Polynomial<BigRational>;
using RQ = RationalFunction<BigRational>;

PQ random_poly(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> coef(-5, 5);
    std::vector<BigRational> c;
    for (int k = 0; k < deg; ++k) c.emplace_back(coef(rng));
    int lead = coef(rng);
    c.emplace_back(lead == 0 ? 2 : lead);
    return PQ(c);
}

}  // namespace

TEST(PrincipalDivisor, Examples) {
    Divisor d = principal_divisor(RQ(PQ{-1, 0, 1}, PQ{0, 0, 0, 1}));
    EXPECT_EQ(d, (Divisor{{at(1.0), 1}, {at(-1.0), 1}, {at(0.0), -3}, {at_infinity(), 1}}));
    EXPECT_EQ(d.degree(), 0);

    Divisor p = principal_divisor(RQ(PQ{0, 0, -1, 1}));
    EXPECT_EQ(p, (Divisor{{at(0.0), 2}, {at(1.0), 1}, {at_infinity(), -3}}));

    const Complex a(0.5, 2.0), b(-1.0, 0.25);
    Divisor h = principal_divisor(RationalFunction<Complex>(PC::linear_factor(a), PC::linear_factor(b)));
    EXPECT_EQ(h, (Divisor{{at(a), 1}, {at(b), -1}}));
    EXPECT_EQ(h.coeff(at_infinity()), 0);
    EXPECT_THROW(principal_divisor(RQ()), DomainError);
}

TEST(PrincipalDivisor, RandomDegreeZero) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        RQ f(random_poly(rng, trial % 6), random_poly(rng, (trial / 6) % 6));
        Divisor d = principal_divisor(f);
        EXPECT_EQ(d.degree(), 0) << trial;
        EXPECT_EQ(d.coeff(at_infinity()), f.den().degree() - f.num().degree());
    }
}

TEST(FormDivisor, Examples) {
    EXPECT_EQ(form_divisor(RQ(PQ{1}, PQ{0, 1})), (Divisor{{at(0.0), -1}, {at_infinity(), -1}}));
    EXPECT_EQ(form_divisor(RQ(PQ{1})), Divisor::point(at_infinity(), -2));
    EXPECT_EQ(form_divisor(RQ(PQ{0, 0, 1})), (Divisor{{at(0.0), 2}, {at_infinity(), -4}}));
    std::mt19937 rng(2);
    for (int trial = 0; trial < 30; ++trial)
        EXPECT_EQ(form_divisor(RQ(random_poly(rng, trial % 4), random_poly(rng, trial % 3))).degree(), -2);
}

TEST(Sections, H0) {
    auto s = h0_Om(2);
    EXPECT_EQ(s.dimension, 3);
    EXPECT_EQ(s.exponents, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(h0_Om(-1).dimension, 0);
    EXPECT_TRUE(h0_Om(-1).exponents.empty());
    EXPECT_EQ(h0_Om(0).dimension, 1);
}

TEST(Sections, SectionDivisor) {
    EXPECT_EQ(section_divisor_Om(2, PQ{0, 1}), (Divisor{{at(0.0), 1}, {at_infinity(), 1}}));
    EXPECT_EQ(section_divisor_Om(3, PQ{1, -2, 1}), (Divisor{{at(1.0), 2}, {at_infinity(), 1}}));
    EXPECT_EQ(section_divisor_Om(1, PQ{1}), Divisor::point(at_infinity(), 1));
    EXPECT_THROW(section_divisor_Om(1, PQ{0, 0, 1}), DomainError);
    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = trial % 7, d = trial % (m + 1);
        EXPECT_EQ(section_divisor_Om(m, random_poly(rng, d)).degree(), m);
    }
}

TEST(RiemannRoch, EllP1Examples) {
    auto l = ell_P1(Divisor::point(at_infinity(), 3));
    EXPECT_EQ(l.dimension, 4);
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(l.basis[static_cast<std::size_t>(k)].num().degree(), k);
        EXPECT_EQ(l.basis[static_cast<std::size_t>(k)].den().degree(), 0);
    }
    Divisor d{{at(0.0), 1}, {at(1.0), -1}};
    auto m = ell_P1(d);
    ASSERT_EQ(m.dimension, 1);
    // the basis element is (z - 1)/z
    for (Complex z : {Complex(2, 1), Complex(-0.5, 3)})
        EXPECT_LT(std::abs(m.basis[0](z) - (z - 1.0) / z), 1e-12);
    EXPECT_EQ(ell_P1(Divisor::point(at(0.0), -1)).dimension, 0);
}

TEST(RiemannRoch, EllP1BasisValidity) {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> pt(-3, 3), mult(-2, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Divisor D;
        for (int j = 0; j < 3; ++j) D.add(at(Complex(pt(rng), pt(rng) * 0.5)), mult(rng));
        D.add(at_infinity(), mult(rng));
        auto l = ell_P1(D);
        EXPECT_EQ(l.dimension, std::max(D.degree() + 1, 0));
        for (const auto& f : l.basis) EXPECT_TRUE((principal_divisor(f) + D).is_effective()) << D;
    }
}

TEST(RiemannRoch, Verify) {
    EXPECT_TRUE(rr_verify(0, 3, 4, 0));
    EXPECT_TRUE(rr_verify(0, -3, 0, 2));
    EXPECT_TRUE(rr_verify(1, 0, 1, 1));
    EXPECT_FALSE(rr_verify(0, 3, 3, 0));
    for (int n = -4; n <= 6; ++n) {
        const int kd = ell_P1(Divisor::point(at_infinity(), -2 - n)).dimension;
        EXPECT_EQ(kd, std::max(-n - 1, 0));
        EXPECT_TRUE(rr_verify(0, n, std::max(n + 1, 0), kd));
    }
}

TEST(RiemannRoch, Elliptic) {
    EXPECT_EQ(ell_elliptic(1), 1);
    EXPECT_EQ(ell_elliptic(5), 5);
    EXPECT_TRUE(rr_verify(1, 5, ell_elliptic(5), 0));
    EXPECT_THROW(ell_elliptic(0), DomainError);
}

TEST(DoubleCover, BranchValues) {
    auto b = branch_values(DoubleCoverSpec<BigRational>{PQ{0, 1}});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_TRUE(same_point(b[0], at(0.0)));
    EXPECT_TRUE(b[1].infinite);
    auto c = branch_values(DoubleCoverSpec<BigRational>{PQ{0, 2, -3, 1}});
    ASSERT_EQ(c.size(), 4u);
    for (double r : {0.0, 1.0, 2.0})
        EXPECT_TRUE(std::any_of(c.begin(), c.end(), [r](const SpherePoint& p) { return same_point(p, at(r)); }));
    auto e = branch_values(DoubleCoverSpec<BigRational>{PQ{0, -1, 0, 1}});
    EXPECT_EQ(e.size(), 4u);
    EXPECT_THROW(branch_values(DoubleCoverSpec<BigRational>{PQ{0, 0, 1}}), DomainError);
    EXPECT_THROW(branch_values(DoubleCoverSpec<BigRational>{PQ{3}}), DomainError);
}

TEST(DoubleCover, Genus) {
    EXPECT_EQ(genus_double_cover(DoubleCoverSpec<BigRational>{PQ{0, 1}}), 0);
    EXPECT_EQ(genus_double_cover(DoubleCoverSpec<BigRational>{PQ{0, 2, -3, 1}}), 1);
    std::mt19937 rng(1);
    for (int d = 1; d <= 10; ++d) {
        PQ f{1};
        std::vector<int> used;
        std::uniform_int_distribution<int> pick(-20, 20);
        while (static_cast<int>(used.size()) < d) {
            int r = pick(rng);
            if (std::find(used.begin(), used.end(), r) != used.end()) continue;
            used.push_back(r);
            f = f * PQ::linear_factor(BigRational(r, 4));
        }
        EXPECT_EQ(genus_double_cover(DoubleCoverSpec<BigRational>{f}), (d + 1) / 2 - 1) << d;
    }
    EXPECT_EQ(genus_double_cover(DoubleCoverSpec<Complex>{PC{-1.0, 0, 0, 0, 0, 0, 1.0}}), 2);
}

TEST(Kummer, RamificationIndex) {
    EXPECT_EQ(kummer_ram_index(6, 4), 3);
    EXPECT_EQ(kummer_ram_index(2, 1), 2);
    EXPECT_EQ(kummer_ram_index(5, 5), 1);
    EXPECT_EQ(kummer_ram_index(6, -4), 3);
    EXPECT_EQ(kummer_ram_index(1, 7), 1);
    EXPECT_THROW(kummer_ram_index(0, 1), DomainError);
}

TEST(FundamentalTheorem, Verify) {
    EXPECT_TRUE(fta_verify(PQ{0, 0, -1, 1}));
    EXPECT_TRUE(fta_verify(PQ{1, 0, 1}));
    std::mt19937 rng(30);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<Complex> c;
        for (int k = 0; k <= 7; ++k) c.emplace_back(u(rng), u(rng));
        EXPECT_TRUE(fta_verify(PC(c)));
    }
}

TEST(DivisorType, Arithmetic) {
    Divisor a{{at(1.0), 2}, {at_infinity(), -1}};
    Divisor b{{at(1.0 + 1e-12), -2}, {at(2.0), 1}};
    EXPECT_EQ((a + b), (Divisor{{at(2.0), 1}, {at_infinity(), -1}}));
    EXPECT_EQ((2 * a).degree(), 2);
    EXPECT_TRUE((Divisor{{at(0.0), 0}}).empty());
    EXPECT_FALSE(a.is_effective());
    EXPECT_THROW(Divisor::point(at(Complex(NAN, 0))), DomainError);
}
