#pragma once

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rk/core/roots.hpp"
#include "rk/intersection/sparse_polynomial.hpp"

namespace rk {

/// The two curves share a component, so the intersection is not isolated.
class CommonComponentError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Extra common zeros on the line x = 0; translate or shear the coordinates first.
class PreconditionViolation : public DomainError {
public:
    using DomainError::DomainError;
};

/// An intersection configuration the exact chartwise method cannot resolve.
class UnsupportedConfiguration : public DomainError {
public:
    using DomainError::DomainError;
};

/// Determinant of a square matrix over Q[x] by fraction-free Bareiss elimination.
inline PolynomialQ bareiss_determinant(std::vector<std::vector<PolynomialQ>> m) {
    const std::size_t n = m.size();
    if (n == 0) return PolynomialQ::constant(1);
    PolynomialQ prev = PolynomialQ::constant(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return PolynomialQ();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : PolynomialQ() - m[n - 1][n - 1];
}

/// Sylvester resultant of f and g with respect to y, a polynomial in x.
inline PolynomialQ resultant_y(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    if (f.is_zero() || g.is_zero()) return PolynomialQ();
    const auto a = y_coefficients(f), b = y_coefficients(g);
    const int m = f.degree_in(1), n = g.degree_in(1);
    const auto size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<PolynomialQ>> s(size, std::vector<PolynomialQ>(size));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = a[static_cast<std::size_t>(m - k)];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = b[static_cast<std::size_t>(n - k)];
    return bareiss_determinant(std::move(s));
}

/// Monic gcd of the y-coefficients of f (its content in Q[x][y]).
inline PolynomialQ content_y(const BivariatePolynomialQ& f) {
    PolynomialQ c;
    for (const auto& cj : y_coefficients(f))
        if (!cj.is_zero()) c = c.is_zero() ? cj.monic() : gcd(c, cj);
    return c;
}

/// True when f and g have a nonconstant common factor.
inline bool share_component(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    if (f.is_zero() || g.is_zero()) return true;
    if (gcd(content_y(f), content_y(g)).degree() > 0) return true;
    return resultant_y(f, g).is_zero();
}

/// Multiplicity m_0 of the curve f = 0 at the origin: the lowest total degree of f.
inline int multiplicity_point(const BivariatePolynomialQ& f) {
    if (f.is_zero()) throw DomainError("multiplicity of the zero polynomial");
    return f.lowest_degree();
}

/// I_0(f, y - h(x)) = ord_{x=0} f(x, h(x)).
inline int mult_origin_graph(const BivariatePolynomialQ& f, const PolynomialQ& h) {
    if (f.is_zero()) throw DomainError("zero polynomial");
    if (!h.is_zero() && h[0] != 0) throw DomainError("graph must pass through the origin (h(0) = 0)");
    if (f.coeff({0, 0}) != 0) throw DomainError("curve does not pass through the origin");
    PolynomialQ s;
    for (const auto& [e, c] : f.terms())
        s = s + PolynomialQ::monomial(e[0], c) * (e[1] == 0 ? PolynomialQ::constant(1) : h.pow(e[1]));
    if (s.is_zero()) throw CommonComponentError("the graph is a component of the curve");
    return s.lowest_order();
}

namespace detail {

inline bool vanishes_at_origin(const BivariatePolynomialQ& f) { return f.coeff({0, 0}) == 0; }

// Empty string when the resultant order at x = 0 equals the local multiplicity at the origin.
inline std::string line_condition(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    const PolynomialQ h = gcd(restrict_x(f, 0), restrict_x(g, 0));
    if (h.lowest_order() != h.degree()) return "f and g have common zeros on x = 0 away from the origin";
    const auto a = y_coefficients(f), b = y_coefficients(g);
    if (a.back()[0] == 0 && b.back()[0] == 0)
        return "f and g meet at the point at infinity of the line x = 0";
    return {};
}

}  // namespace detail

/// I_0(f, g) as the order at x = 0 of Res_y(f, g).
inline int mult_origin_resultant(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("zero polynomial");
    if (!detail::vanishes_at_origin(f) || !detail::vanishes_at_origin(g))
        throw DomainError("both curves must pass through the origin");
    if (share_component(f, g)) throw CommonComponentError("f and g share a common component");
    const std::string why = detail::line_condition(f, g);
    if (!why.empty()) throw PreconditionViolation(why + "; apply a coordinate shear x -> x + c*y first");
    return resultant_y(f, g).lowest_order();
}

/// I_0(f, g) for any isolated intersection at the origin, shearing x -> x + c y until the resultant
/// preconditions hold (the local multiplicity is invariant under linear coordinate changes).
inline int local_multiplicity(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    if (!detail::vanishes_at_origin(f) || !detail::vanishes_at_origin(g)) return 0;
    if (share_component(f, g)) throw CommonComponentError("f and g share a common component");
    for (int k = 0; k <= 60; ++k) {
        const BigRational c = k % 2 == 0 ? BigRational(k / 2) : BigRational(-(k + 1) / 2);
        const auto fs = shear(f, c), gs = shear(g, c);
        if (detail::line_condition(fs, gs).empty()) return resultant_y(fs, gs).lowest_order();
    }
    throw UnsupportedConfiguration("no shear separates the intersection at the origin");
}

/// Tangent-cone comparison at the origin.
struct TangentConeCheck {
    int bound = 0;
    int multiplicity = 0;
    bool equality = false;
};

namespace detail {

// Binary forms a, b (homogeneous in x, y) have no common linear factor.
inline bool forms_coprime(const BivariatePolynomialQ& a, const BivariatePolynomialQ& b) {
    const int da = a.total_degree(), db = b.total_degree();
    if (a.coeff({0, da}) == 0 && b.coeff({0, db}) == 0) return false;  // x divides both
    std::vector<BigRational> ca(static_cast<std::size_t>(da) + 1, BigRational(0)),
        cb(static_cast<std::size_t>(db) + 1, BigRational(0));
    for (const auto& [e, c] : a.terms()) ca[static_cast<std::size_t>(e[1])] = c;
    for (const auto& [e, c] : b.terms()) cb[static_cast<std::size_t>(e[1])] = c;
    return gcd(PolynomialQ(ca), PolynomialQ(cb)).degree() == 0;
}

}  // namespace detail

inline TangentConeCheck tangent_cone_check(const BivariatePolynomialQ& f, const BivariatePolynomialQ& g) {
    TangentConeCheck out;
    const int mf = multiplicity_point(f), mg = multiplicity_point(g);
    out.bound = mf * mg;
    out.multiplicity = mult_origin_resultant(f, g);
    out.equality = detail::forms_coprime(f.homogeneous_part(mf), g.homogeneous_part(mg));
    if (out.multiplicity < out.bound) throw ConsistencyError("intersection multiplicity below the tangent-cone bound");
    if (out.equality != (out.multiplicity == out.bound))
        throw ConsistencyError("tangent-cone equality criterion disagrees with the multiplicity");
    return out;
}

/// Distinct rational roots of p with their multiplicities. Candidates come from floating roots of each
/// square-free factor, rationalised by continued fractions and confirmed by exact evaluation.
inline std::vector<std::pair<BigRational, int>> rational_roots(const PolynomialQ& p) {
    std::vector<std::pair<BigRational, int>> out;
    if (p.degree() < 1) return out;
    const int k0 = p.lowest_order();
    if (k0 > 0) out.emplace_back(BigRational(0), k0);
    std::vector<BigRational> rest(p.coeffs().begin() + k0, p.coeffs().end());
    const auto factors = squarefree_decomposition(PolynomialQ(std::move(rest)));
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const PolynomialQ& fk = factors[k];
        if (fk.degree() < 1) continue;
        BigInt den = 1;
        for (const auto& c : fk.coeffs()) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
        const BigInt lc = boost::multiprecision::abs(boost::multiprecision::numerator(fk.leading() * BigRational(den)));
        const long long max_den = lc > BigInt(1000000000000LL) ? 1000000000000LL : lc.convert_to<long long>();
        std::vector<Complex> approx;
        try {
            approx = detail::aberth(fk.to_complex_poly());
        } catch (const NumericFailure&) {
            throw UnsupportedConfiguration("root isolation failed for a resultant factor");
        }
        for (Complex z : approx) {
            if (std::abs(z.imag()) > 1e-6 * (1 + std::abs(z))) continue;
            const BigRational r = rationalize(z.real(), max_den);
            if (fk(r) != 0) continue;
            if (std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.first == r; })) continue;
            out.emplace_back(r, static_cast<int>(k) + 1);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// An intersection point in projective coordinates with its local multiplicity.
struct BezoutPoint {
    std::array<BigRational, 3> point;
    int multiplicity = 0;
};

/// Intersection points with irrational coordinates, reported only through their summed multiplicity.
/// In the working chart they lie over the roots of `factor` (a polynomial in the chart coordinate).
struct BezoutCluster {
    std::string location;
    PolynomialQ factor;
    int multiplicity = 0;
};

struct BezoutResult {
    std::vector<BezoutPoint> points;
    std::vector<BezoutCluster> clusters;
    int total = 0;
    int expected = 0;
    /// Working coordinates: X = X' + a Y', Y = Y', Z = Z' + b Y'.
    BigRational shear_a, shear_b;
};

namespace detail {

inline std::array<BigRational, 3> normalize_projective(std::array<BigRational, 3> p) {
    const std::size_t order[3] = {2, 0, 1};
    for (std::size_t i : order)
        if (p[i] != 0) {
            const BigRational s = p[i];
            for (auto& c : p) c /= s;
            return p;
        }
    throw ConsistencyError("zero projective point");
}

// Common points of two bivariate curves on the line where the second coordinate is zero, found as the
// rational roots of gcd(u(t, 0), v(t, 0)). Returns the rational points with local multiplicities and the
// leftover factor carrying any irrational roots.
inline std::pair<std::vector<std::pair<BigRational, int>>, PolynomialQ> points_on_line(
    const BivariatePolynomialQ& u, const BivariatePolynomialQ& v, int line_var) {
    using P = BivariatePolynomialQ;
    auto restrict_line = [line_var](const P& f) {
        std::vector<BigRational> c;
        for (const auto& [e, a] : f.terms()) {
            if (e[static_cast<std::size_t>(line_var)] != 0) continue;
            const auto k = static_cast<std::size_t>(e[static_cast<std::size_t>(1 - line_var)]);
            if (c.size() <= k) c.resize(k + 1, BigRational(0));
            c[k] += a;
        }
        return PolynomialQ(std::move(c));
    };
    PolynomialQ h = gcd(restrict_line(u), restrict_line(v));
    std::vector<std::pair<BigRational, int>> pts;
    PolynomialQ leftover = h;
    for (const auto& [t0, mult] : rational_roots(h)) {
        std::array<BigRational, 2> shift{};
        shift[static_cast<std::size_t>(1 - line_var)] = t0;
        const P us = translate(u, shift[0], shift[1]), vs = translate(v, shift[0], shift[1]);
        pts.emplace_back(t0, local_multiplicity(us, vs));
        leftover = exact_div(leftover, PolynomialQ::linear_factor(t0).pow(mult));
    }
    return {pts, leftover};
}

}  // namespace detail

/// Intersections of two projective plane curves with multiplicities, checked against deg F * deg G.
inline BezoutResult bezout_verify(const TrivariatePolynomialQ& F, const TrivariatePolynomialQ& G) {
    using T3 = TrivariatePolynomialQ;
    using P = BivariatePolynomialQ;
    if (F.is_zero() || G.is_zero()) throw DomainError("zero polynomial");
    if (!F.is_homogeneous() || !G.is_homogeneous()) throw DomainError("Bezout needs homogeneous F and G");
    const int d = F.total_degree(), e = G.total_degree();
    if (d < 1 || e < 1) throw DomainError("Bezout needs curves of positive degree");

    BezoutResult out;
    out.expected = d * e;
    // Move [0:1:0] off both curves.
    bool found = false;
    for (int s = 0; s <= 10 && !found; ++s)
        for (int a = -s; a <= s && !found; ++a)
            for (int b = -s; b <= s && !found; ++b) {
                if (std::max(std::abs(a), std::abs(b)) != s) continue;
                if (F({BigRational(a), 1, BigRational(b)}) != 0 && G({BigRational(a), 1, BigRational(b)}) != 0) {
                    out.shear_a = a;
                    out.shear_b = b;
                    found = true;
                }
            }
    if (!found) throw UnsupportedConfiguration("no coordinate shear moves [0:1:0] off both curves");
    const std::array<T3, 3> to_original{T3::variable(0) + out.shear_a * T3::variable(1), T3::variable(1),
                                        T3::variable(2) + out.shear_b * T3::variable(1)};
    const T3 Fw = F.substitute<3>(to_original), Gw = G.substitute<3>(to_original);
    auto original_point = [&](const BigRational& x, const BigRational& y, const BigRational& z) {
        return detail::normalize_projective({x + out.shear_a * y, y, z + out.shear_b * y});
    };

    if (Fw.homogeneous_part(d) == T3() || Gw.homogeneous_part(e) == T3())
        throw ConsistencyError("coordinate change lost homogeneity");
    auto chart = [](const T3& H, int fixed) {
        // Sets the variable `fixed` to 1; the remaining two keep their order.
        std::array<P, 3> sub;
        int next = 0;
        for (int i = 0; i < 3; ++i) sub[static_cast<std::size_t>(i)] = i == fixed ? P::constant(1) : P::variable(next++);
        return H.substitute<2>(sub);
    };

    // Common component along Z' = 0.
    const P fz = chart(Fw, 0), gz = chart(Gw, 0);  // (y, z) with X' = 1
    const P f = chart(Fw, 2), g = chart(Gw, 2);    // (x, y) with Z' = 1
    if (share_component(f, g)) throw CommonComponentError("F and G share a common component");
    {
        bool z_divides_f = true, z_divides_g = true;
        for (const auto& [ex, c] : Fw.terms()) z_divides_f = z_divides_f && ex[2] > 0;
        for (const auto& [ex, c] : Gw.terms()) z_divides_g = z_divides_g && ex[2] > 0;
        if (z_divides_f && z_divides_g) throw CommonComponentError("F and G share the line Z = 0");
    }

    const PolynomialQ R = resultant_y(f, g);
    int affine = 0;
    if (R.degree() >= 1) {
        const auto factors = squarefree_decomposition(R);
        for (const auto& [x0, k] : rational_roots(R)) {
            const P fs = translate(f, x0, 0), gs = translate(g, x0, 0);
            auto [pts, leftover] = detail::points_on_line(fs, gs, 0);
            int s = 0;
            for (const auto& [y0, m] : pts) {
                out.points.push_back({original_point(x0, y0, 1), m});
                s += m;
            }
            if (s > k) throw ConsistencyError("local multiplicities exceed the resultant order");
            if (s < k) {
                if (leftover.degree() < 1)
                    throw ConsistencyError("resultant order not accounted for by intersection points");
                std::ostringstream loc;
                loc << "x' = " << x0 << ", y' a root of the factor";
                out.clusters.push_back({loc.str(), leftover, k - s});
            }
            affine += k;
        }
        // Irrational x' values, summed per square-free factor.
        for (std::size_t k = 0; k < factors.size(); ++k) {
            PolynomialQ fk = factors[k];
            for (const auto& [r, mult] : rational_roots(fk)) fk = exact_div(fk, PolynomialQ::linear_factor(r));
            if (fk.degree() < 1) continue;
            const int m = static_cast<int>(k + 1) * fk.degree();
            out.clusters.push_back({"Z' = 1, x' a root of the factor", fk, m});
            affine += m;
        }
    }
    if (affine != std::max(R.degree(), 0)) throw ConsistencyError("resultant roots not fully accounted for");

    // Points on Z' = 0 all have X' != 0 because [0:1:0] is on neither curve.
    const int at_infinity = d * e - std::max(R.degree(), 0);
    if (at_infinity > 0) {
        auto [pts, leftover] = detail::points_on_line(fz, gz, 1);
        int s = 0;
        for (const auto& [y0, m] : pts) {
            out.points.push_back({original_point(1, y0, 0), m});
            s += m;
        }
        if (s > at_infinity) throw ConsistencyError("multiplicities at infinity exceed the resultant defect");
        if (s < at_infinity) {
            if (leftover.degree() < 1) throw ConsistencyError("intersection at infinity not accounted for");
            out.clusters.push_back({"Z' = 0, X' = 1, y' a root of the factor", leftover, at_infinity - s});
        }
    }

    out.total = 0;
    for (const auto& p : out.points) out.total += p.multiplicity;
    for (const auto& c : out.clusters) out.total += c.multiplicity;
    if (out.total != out.expected) throw ConsistencyError("Bezout total differs from deg F * deg G");
    return out;
}

}  // namespace rk
