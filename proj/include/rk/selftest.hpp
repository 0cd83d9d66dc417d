#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rk/curves/divisor.hpp"
#include "rk/harmonic/geometry.hpp"
#include "rk/harmonic/harmonic.hpp"
#include "rk/intersection/plane_curves.hpp"
#include "rk/intersection/surfaces.hpp"
#include "rk/residue/cauchy_green.hpp"
#include "rk/residue/classical.hpp"
#include "rk/residue/gamma.hpp"
#include "rk/residue/residues.hpp"
#include "rk/theta/weierstrass.hpp"

namespace rk::selftest {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string name;
    std::function<Outcome()> run;
};

namespace detail {

/// Collects checks; the detail string lists every failed check, or a short summary when all pass.
class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++count_;
        if (ok) return;
        out_.pass = false;
        out_.detail += (out_.detail.empty() ? "" : "; ") + what;
    }
    template <class A, class B>
    void equal(const A& got, const B& want, const std::string& what) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want;
        expect(got == want, os.str());
    }
    void near(double err, double tol, const std::string& what) {
        std::ostringstream os;
        os.precision(3);
        os << what << ": error " << err << " > " << tol;
        expect(err <= tol, os.str());
        worst_ = std::max(worst_, tol > 0 ? err / tol : 0.0);
    }
    Outcome done() const {
        if (!out_.pass) return out_;
        std::ostringstream os;
        os.precision(2);
        os << count_ << " checks";
        if (worst_ > 0) os << ", worst error/tol " << worst_;
        return {true, os.str()};
    }

private:
    Outcome out_;
    int count_ = 0;
    double worst_ = 0.0;
};

using PQ = Polynomial<BigRational>;
using RQ = RationalFunction<BigRational>;
using B2 = BivariatePolynomialQ;
using T3 = TrivariatePolynomialQ;

inline B2 mono2(long long c, int i, int j) { return B2::monomial({i, j}, BigRational(c)); }
inline T3 mono3(long long c, int i, int j, int k) { return T3::monomial({i, j, k}, BigRational(c)); }

inline std::string str(const BigRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline Outcome exact_residues() {
    Tally t;
    const RQ f(PQ{1, 1}, PQ{0, 0, 0, -1, 1});
    t.equal(str(residue_rational(f, BigRational(0))), "-2", "Res_0 (z+1)/(z^3(z-1))");
    t.equal(str(residue_rational(f, BigRational(1))), "2", "Res_1 (z+1)/(z^3(z-1))");
    const RQ g(PQ{-2, 5}, PQ{0, -1, 1});
    t.equal(str(residue_rational(g, BigRational(0))), "2", "Res_0 (5z-2)/(z(z-1))");
    t.equal(str(residue_rational(g, BigRational(1))), "3", "Res_1 (5z-2)/(z(z-1))");
    return t.done();
}

inline Outcome residue_vs_quadrature() {
    Tally t;
    const RQ f(PQ{1}, PQ{0, 0, 1} * PQ{-2, 1}.pow(4));
    const auto r = integrate_by_residues_checked(f, Circle{2.0, 1.0}, 1e-12);
    const Complex want = -kPi * kI / 4.0;
    t.near(std::abs(r.value - want), 1e-10, "residue sum vs -pi i/4");
    t.near(std::abs(r.quadrature.value - want), 1e-10, "quadrature vs -pi i/4");
    t.near(std::abs(r.quadrature.value - r.value), 1e-10, "residue sum vs quadrature");
    return t.done();
}

inline Outcome classical_integrals() {
    Tally t;
    struct Row {
        std::string name;
        std::map<std::string, double> params;
        double closed, agreement;
    };
    const std::vector<Row> rows = {
        {"trig_rational", {{"a", 2}, {"b", 1}}, 2 * kPi / std::sqrt(3.0), 1e-6},
        {"fourier_quadratic", {{"a", 1}, {"k", 1}}, kPi / std::exp(1.0), 1e-6},
        {"keyhole_power", {{"alpha", 1.0 / 3}}, 2 * kPi / std::sqrt(3.0), 1e-6},
        {"cuberoot", {}, kPi / std::sqrt(3.0), 1e-6},
        {"dirichlet", {}, kPi / 2, 1e-3},
    };
    for (const auto& row : rows) {
        const auto c = classical_integral(row.name, row.params);
        t.near(std::abs(c.closed_form - row.closed), 1e-12, row.name + " closed form");
        t.near(std::abs(c.numeric.value - Complex(row.closed, 0.0)), row.agreement, row.name + " quadrature");
    }
    return t.done();
}

inline Outcome zero_counts() {
    Tally t;
    struct Row {
        Polynomial<Complex> p;
        double radius;
        int want;
        std::string name;
    };
    const std::vector<Row> rows = {{{1.0, 4.0, 0.0, 0.0, 1.0}, 2.0, 4, "z^4+4z+1 in |z|<2"},
                                   {{-3.0, 10.0, 0.0, 0.0, 0.0, 1.0}, 1.0, 1, "z^5+10z-3 in |z|<1"},
                                   {{1.0, -8.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}, 1.0, 1, "z^7-8z+1 in |z|<1"}};
    for (const auto& row : rows) {
        const auto dp = row.p.derivative();
        const Contour c(Circle{0.0, row.radius});
        const Complex raw = count_zeros_raw([&](Complex z) { return row.p(z); }, [&](Complex z) { return dp(z); }, c);
        t.near(std::abs(raw - Complex(row.want, 0.0)), 1e-6, row.name + " raw count");
        t.equal(count_zeros_argument([&](Complex z) { return row.p(z); }, [&](Complex z) { return dp(z); }, c), row.want,
                row.name);
    }
    return t.done();
}

inline Outcome divisors() {
    Tally t;
    const Divisor d = principal_divisor(RQ(PQ{-1, 0, 1}, PQ{0, 0, 0, 1}));
    const Divisor want{{at(1.0), 1}, {at(-1.0), 1}, {at(0.0), -3}, {at_infinity(), 1}};
    std::ostringstream os;
    os << d;
    t.expect(d == want, "div((z^2-1)/z^3) = " + os.str());
    std::mt19937 rng(20);
    std::uniform_int_distribution<int> coef(-6, 6), deg(0, 6);
    auto poly = [&] {
        const int n = deg(rng);
        std::vector<BigRational> c;
        for (int k = 0; k < n; ++k) c.emplace_back(coef(rng));
        const int lead = coef(rng);
        c.emplace_back(lead == 0 ? 1 : lead);
        return PQ(c);
    };
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial)
        if (principal_divisor(RQ(poly(), poly())).degree() != 0) ++bad;
    t.equal(bad, 0, "random functions with nonzero divisor degree");
    return t.done();
}

inline Outcome riemann_roch() {
    Tally t;
    const int want[] = {0, 0, 1, 2, 3, 4};
    for (int m = -2; m <= 3; ++m) t.equal(h0_Om(m).dimension, want[m + 2], "h0(O(" + std::to_string(m) + "))");
    for (int n = -4; n <= 6; ++n) {
        const int ell = ell_P1(Divisor::point(at(0.5), n)).dimension;
        const int ellK = ell_P1(Divisor::point(at(0.5), -2 - n)).dimension;
        t.expect(rr_verify(0, n, ell, ellK), "genus 0 Riemann-Roch at n = " + std::to_string(n));
    }
    for (int d = 1; d <= 5; ++d)
        t.expect(rr_verify(1, d, ell_elliptic(d), 0), "genus 1 Riemann-Roch at deg " + std::to_string(d));
    t.expect(rr_verify(1, 0, 1, 1), "genus 1 Riemann-Roch for D = 0");
    return t.done();
}

inline Outcome cover_genus() {
    Tally t;
    auto genus = [](const PQ& f) { return genus_double_cover(DoubleCoverSpec<BigRational>{f}); };
    t.equal(genus(PQ{0, 1}), 0, "y^2 = x");
    t.equal(genus(PQ{0, 1} * PQ{-1, 1} * PQ{-2, 1}), 1, "y^2 = x(x-1)(x-2)");
    t.equal(genus(PQ{0, -1, 0, 1}), 1, "y^2 = x^3 - x");
    for (int g = 0; g <= 4; ++g) {
        PQ f{1};
        for (int k = 0; k < 2 * g + 2; ++k) f = f * PQ::linear_factor(BigRational(k - g));
        t.equal(genus(f), g, "degree " + std::to_string(2 * g + 2) + " squarefree");
    }
    return t.done();
}

inline Outcome multiplicities() {
    Tally t;
    struct Row {
        B2 f;
        PQ h;
        B2 g;
        int want;
        std::string name;
    };
    const B2 y = mono2(1, 0, 1), x = mono2(1, 1, 0);
    const std::vector<Row> rows = {
        {x, PQ{}, y, 1, "(y, x)"},
        {y - mono2(1, 2, 0), PQ{}, y, 2, "(y - x^2, y)"},
        {mono2(1, 0, 2) - mono2(1, 3, 0), PQ{}, y, 3, "(y^2 - x^3, y)"},
        {y - mono2(1, 2, 0), PQ{0, 0, 0, 1}, y - mono2(1, 3, 0), 2, "(y - x^2, y - x^3)"},
        {mono2(1, 0, 2) - mono2(1, 2, 0) - mono2(1, 3, 0), PQ{}, y, 2, "(y^2 - x^2 - x^3, y)"},
    };
    for (const auto& row : rows) {
        const int graph = mult_origin_graph(row.f, row.h);
        t.equal(graph, row.want, row.name + " graph");
        t.equal(local_multiplicity(row.f, row.g), row.want, row.name + " resultant");
    }
    return t.done();
}

inline Outcome bezout() {
    Tally t;
    const T3 z = mono3(1, 0, 0, 1);
    const auto conic = bezout_verify(mono3(1, 1, 0, 1) - mono3(1, 0, 2, 0), z);
    t.equal(conic.total, 2, "conic and line total");
    t.expect(conic.points.size() == 1 && conic.points[0].point == std::array<BigRational, 3>{1, 0, 0},
             "conic and line meet only at [1:0:0]");
    const auto cubic = bezout_verify(mono3(1, 0, 2, 1) - mono3(1, 3, 0, 0) - mono3(1, 1, 0, 2), z);
    t.equal(cubic.total, 3, "cubic and line at infinity total");
    t.equal(cubic.expected, 3, "cubic degree product");
    return t.done();
}

inline Outcome surfaces() {
    Tally t;
    for (long long d = 0; d <= 5; ++d) t.equal(surface_chi(SurfaceModel::p2(), {d}), (d + 1) * (d + 2) / 2, "P2 chi");
    for (long long a = 0; a < 5; ++a)
        for (long long b = 0; b < 5; ++b) t.equal(surface_chi(SurfaceModel::p1xp1(), {a, b}), (a + 1) * (b + 1), "P1xP1 chi");
    for (int n = 0; n <= 4; ++n)
        for (long long a = -3; a <= 3; ++a)
            for (long long b = -3; b <= 3; ++b)
                t.equal(surface_chi(SurfaceModel::hirzebruch(n), {a, b}),
                        1 + (-n * a * a + 2 * a * b + (2 - n) * a + 2 * b) / 2, "F" + std::to_string(n) + " chi");
    for (long long a = -3; a <= 5; ++a)
        for (long long b = -3; b <= 5; ++b)
            t.equal(surface_chi(SurfaceModel::blowup_p2(), {a, -b}), 1 + (a * a - b * b + 3 * a - b) / 2, "blow-up chi");
    for (long long d = 1; d <= 6; ++d)
        t.equal(adjunction_genus(SurfaceModel::p2(), {d}), (d - 1) * (d - 2) / 2, "plane curve genus");
    for (long long a = 1; a <= 4; ++a)
        for (long long b = 1; b <= 4; ++b)
            t.equal(adjunction_genus(SurfaceModel::p1xp1(), {a, b}), (a - 1) * (b - 1), "P1xP1 curve genus");
    return t.done();
}

inline Eigen::VectorXcd vec(std::initializer_list<Complex> v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (Complex x : v) out(i++) = x;
    return out;
}

inline RiemannPeriodMatrix diagonal(std::initializer_list<Complex> d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (Complex v : d) m(i, i) = v, ++i;
    return RiemannPeriodMatrix(m);
}

inline Outcome theta() {
    Tally t;
    t.near(std::abs(jacobi_theta(3, 0.0, TauValue(kI)) - 1.0864), 1e-4, "theta3(0|i)");
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    double worst = 0;
    for (Complex tau : {kI, 2.0 * kI, Complex(0.5, 1.0)})
        for (int k = 0; k < 10; ++k) {
            const Complex z(u(rng), u(rng));
            worst = std::max({worst, quasi_period_residual(z, TauValue(tau), 1, 0), quasi_period_residual(z, TauValue(tau), 0, 1)});
        }
    t.near(worst, 1e-12, "quasi-periodicity");
    const Complex z1(0.1, 0.2), z2(-0.3, 0.05), t1(0.2, 1.0), t2(-0.1, 1.5);
    const Complex two = riemann_theta(vec({z1, z2}), diagonal({t1, t2})).value;
    const Complex prod = riemann_theta(vec({z1}), diagonal({t1})).value * riemann_theta(vec({z2}), diagonal({t2})).value;
    t.near(std::abs(two - prod), 1e-10, "genus 2 diagonal factorization");
    return t.done();
}

inline Outcome weierstrass() {
    Tally t;
    const PeriodPair square(1.0, kI), generic(1.0, Complex(0.5, 1.2));
    t.near(ode_residual(Complex(0.3, 0.2), square, 200), 1e-4, "ODE residual, square lattice");
    t.near(ode_residual(Complex(0.25, 0.4), generic, 200), 1e-4, "ODE residual, generic lattice");
    const ThetaWeierstrass W(generic);
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Complex w = (0.15 + 0.3 * i) * generic.omega1 + (0.15 + 0.3 * j) * generic.omega2;
            worst = std::max(worst, std::abs(W.wp(w) - wp_lattice(w, generic, 200)));
        }
    t.near(worst, 1e-5, "theta vs lattice wp");
    const auto inv = eisenstein(generic, 60);
    auto rem = [&](Complex w) {
        return wp_lattice(w, generic, 60) - 1.0 / (w * w) - inv.g2 / 20.0 * w * w - inv.g3 / 28.0 * std::pow(w, 4);
    };
    const Complex w(0.08, 0.04);
    const double ratio = std::abs(rem(w) / rem(w / 2.0));
    std::ostringstream os;
    os << "Laurent remainder ratio " << ratio << " outside [48, 80]";
    t.expect(ratio >= 48 && ratio <= 80, os.str());
    const Complex base = -0.43 * generic.omega1 - 0.47 * generic.omega2;
    t.near(std::abs(parallelogram_residue_sum([&](Complex z) { return W.wp(z); }, generic, base)), 1e-6, "sum of residues of wp");
    t.near(std::abs(parallelogram_residue_sum([&](Complex z) { return W.wp_prime(z); }, generic, base)), 1e-6,
           "sum of residues of wp'");
    return t.done();
}

inline Outcome periods() {
    Tally t;
    const PeriodPair L = periods_real_cubic(1, 0, -1);
    t.near(std::abs(L.omega2 / L.omega1 - kI), 1e-6, "omega2/omega1 = i");
    const ThetaWeierstrass W(L);
    t.near(std::abs(W.wp(L.omega1 / 2.0) - 1.0), 1e-4, "wp(omega1/2) = 1");
    t.near(std::abs(W.wp((L.omega1 + L.omega2) / 2.0) - 0.0), 1e-4, "wp((omega1+omega2)/2) = 0");
    t.near(std::abs(W.wp(L.omega2 / 2.0) + 1.0), 1e-4, "wp(omega2/2) = -1");
    return t.done();
}

inline Outcome harmonic() {
    Tally t;
    const double r = 0.7, theta = 0.4;
    const double mass = quad::periodic_trapezoid<double>([&](double p) { return poisson_kernel_disk(r, p); }, 256) / (2 * kPi);
    t.near(std::abs(mass - 1.0), 1e-10, "Poisson kernel normalization");
    const auto f = TrigPolynomial::cosine(3);
    const double closed = r * r * r * std::cos(3 * theta);
    t.near(std::abs(poisson_extend_trig(f, r, theta) - closed), 1e-10, "cos 3phi extension, closed form");
    t.near(std::abs(poisson_extend_quadrature([](double p) { return std::cos(3 * p); }, r, theta) - closed), 1e-8,
           "cos 3phi extension, quadrature");
    const auto s = TrigPolynomial::sine(3);
    const auto u = laplace_circle(s);
    t.near(std::abs(circle_energy(u) - kPi / 9), 1e-12, "circle energy of u");
    t.near(std::abs(l2_norm_squared(s) - kPi), 1e-12, "circle L2 norm of f");
    const TorusMode cc{1, 1, Parity::Cos, Parity::Cos};
    const auto sol = laplace_torus({{cc, 1.0}});
    t.near(std::abs(sol.at(cc) - 1 / (8 * kPi * kPi)), 1e-15, "torus coefficient 1/(8 pi^2)");
    t.near(std::abs(torus_energy(sol) - 1 / (64 * kPi * kPi)), 1e-15, "torus energy 1/(64 pi^2)");
    return t.done();
}

inline Outcome gauss_bonnet() {
    Tally t;
    const auto torus = SurfaceSpec::torus(2.0, 0.5);
    t.near(std::abs(total_curvature(SurfaceSpec::sphere()) - 4 * kPi), 1e-6, "sphere total curvature");
    t.near(std::abs(total_curvature(torus)), 1e-8, "torus total curvature");
    t.near(std::abs(surface_area(torus) - 4 * kPi * kPi * 0.5 * 2.0), 1e-6, "torus area");
    return t.done();
}

inline Outcome gamma_function() {
    Tally t;
    t.near(std::abs(rk::gamma(0.5) - std::sqrt(kPi)), 1e-8, "Gamma(1/2)");
    t.near(std::abs(rk::gamma(5.0) - 24.0) / 24.0, 1e-9, "Gamma(5) relative");
    double refl = 0, dup = 0;
    for (Complex s : {Complex(0.3, 0.2), Complex(0.7, -0.4), Complex(1.6, 0.9)}) {
        refl = std::max(refl, std::abs(rk::gamma(s) * rk::gamma(1.0 - s) - kPi / std::sin(kPi * s)));
        const Complex rhs = std::pow(2.0, 1.0 - 2.0 * s) * std::sqrt(kPi) * rk::gamma(2.0 * s);
        dup = std::max(dup, std::abs(rk::gamma(s) * rk::gamma(s + 0.5) - rhs));
    }
    t.near(refl, 1e-7, "reflection residual");
    t.near(dup, 1e-7, "duplication residual");
    t.equal(str(gamma_residue(3)), "-1/6", "Res_{-3} Gamma");
    return t.done();
}

inline Outcome cauchy_green() {
    Tally t;
    for (Complex z : {Complex(0.3, 0.2), Complex(0.5, 0.0)}) {
        const auto [numeric, exact] = cauchy_green_disk(z);
        t.near(std::abs(exact + kPi * std::conj(z)), 1e-15, "closed form -pi conj z");
        t.near(std::abs(numeric - exact), 1e-3, "disk integral");
    }
    return t.done();
}

}  // namespace detail

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {1, "exact residues", detail::exact_residues},
        {2, "residue theorem vs quadrature", detail::residue_vs_quadrature},
        {3, "classical integrals", detail::classical_integrals},
        {4, "zero counts", detail::zero_counts},
        {5, "divisors", detail::divisors},
        {6, "Riemann-Roch on curves", detail::riemann_roch},
        {7, "double cover genus", detail::cover_genus},
        {8, "intersection multiplicities", detail::multiplicities},
        {9, "Bezout", detail::bezout},
        {10, "surface chi and adjunction", detail::surfaces},
        {11, "theta functions", detail::theta},
        {12, "Weierstrass functions", detail::weierstrass},
        {13, "periods round trip", detail::periods},
        {14, "harmonic", detail::harmonic},
        {15, "Gauss-Bonnet", detail::gauss_bonnet},
        {16, "Gamma", detail::gamma_function},
        {17, "Cauchy-Green", detail::cauchy_green},
    };
    return table;
}

/// Runs one criterion; an exception counts as a failure.
inline Outcome run(const Criterion& c) {
    try {
        return c.run();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

}  // namespace rk::selftest
