#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "rk/core/laurent.hpp"

namespace rk {

using SpherePoint = P1Point<Complex>;

/// Absolute-plus-relative tolerance for identifying two finite points of a divisor.
inline constexpr double kPointTol = 1e-9;

inline bool same_point(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return std::abs(a.value - b.value) <= kPointTol * (1 + std::max(std::abs(a.value), std::abs(b.value)));
}

/// Finite formal sum of points of the Riemann sphere with integer coefficients.
/// Entries are kept sorted (finite points by real then imaginary part, infinity last) and nonzero.
class Divisor {
public:
    using Entry = std::pair<SpherePoint, int>;

    Divisor() = default;
    Divisor(std::initializer_list<Entry> entries) {
        for (const auto& e : entries) add(e.first, e.second);
    }

    static Divisor point(const SpherePoint& p, int n = 1) {
        Divisor d;
        d.add(p, n);
        return d;
    }

    void add(const SpherePoint& p, int n) {
        if (!p.infinite && !is_finite(p.value)) throw DomainError("divisor point must be finite or infinity");
        auto it = std::find_if(e_.begin(), e_.end(), [&](const Entry& e) { return same_point(e.first, p); });
        if (it != e_.end()) {
            it->second += n;
            if (it->second == 0) e_.erase(it);
            return;
        }
        if (n == 0) return;
        e_.emplace_back(p, n);
        std::sort(e_.begin(), e_.end(), [](const Entry& a, const Entry& b) {
            if (a.first.infinite != b.first.infinite) return b.first.infinite;
            if (a.first.value.real() != b.first.value.real()) return a.first.value.real() < b.first.value.real();
            return a.first.value.imag() < b.first.value.imag();
        });
    }

    const std::vector<Entry>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }

    int degree() const {
        return std::accumulate(e_.begin(), e_.end(), 0, [](int s, const Entry& e) { return s + e.second; });
    }

    int coeff(const SpherePoint& p) const {
        for (const auto& e : e_)
            if (same_point(e.first, p)) return e.second;
        return 0;
    }

    bool is_effective() const {
        return std::all_of(e_.begin(), e_.end(), [](const Entry& e) { return e.second >= 0; });
    }

    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (const auto& e : b.e_) a.add(e.first, e.second);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (const auto& e : b.e_) a.add(e.first, -e.second);
        return a;
    }
    friend Divisor operator*(int k, const Divisor& d) {
        Divisor out;
        for (const auto& e : d.e_) out.add(e.first, k * e.second);
        return out;
    }
    friend bool operator==(const Divisor& a, const Divisor& b) { return (a - b).empty(); }

    friend std::ostream& operator<<(std::ostream& os, const Divisor& d) {
        if (d.e_.empty()) return os << "0";
        bool first = true;
        for (const auto& [p, n] : d.e_) {
            os << (first ? (n < 0 ? "-" : "") : (n < 0 ? " - " : " + "));
            if (std::abs(n) != 1) os << std::abs(n);
            if (p.infinite)
                os << "[inf]";
            else
                os << "[" << p.value.real() << (p.value.imag() < 0 ? "" : "+") << p.value.imag() << "i]";
            first = false;
        }
        return os;
    }

private:
    std::vector<Entry> e_;
};

inline SpherePoint at(Complex z) { return SpherePoint::finite(z); }
inline SpherePoint at_infinity() { return SpherePoint::infinity(); }

/// Zeros minus poles of f on the sphere, infinity included.
template <Field T>
Divisor principal_divisor(const RationalFunction<T>& f) {
    if (f.is_zero()) throw DomainError("the zero function has no divisor");
    Divisor d;
    if (f.num().degree() > 0)
        for (const auto& r : roots_of(f.num())) d.add(at(r.value), r.multiplicity);
    if (f.den().degree() > 0)
        for (const auto& r : roots_of(f.den())) d.add(at(r.value), -r.multiplicity);
    d.add(at_infinity(), ord_at(f, P1Point<T>::infinity()));
    if (d.degree() != 0) throw ConsistencyError("principal divisor does not have degree zero");
    return d;
}

/// Divisor of the meromorphic 1-form f(z) dz. With z = 1/w, dz = -w^{-2} dw lowers the order at
/// infinity by two.
template <Field T>
Divisor form_divisor(const RationalFunction<T>& f) {
    Divisor d = principal_divisor(f);
    d.add(at_infinity(), -2);
    if (d.degree() != -2) throw ConsistencyError("canonical divisor on the sphere must have degree -2");
    return d;
}

/// Global sections of O(m) on the sphere, as the exponents k of the monomials z^k.
struct SectionSpace {
    int dimension = 0;
    std::vector<int> exponents;
};

inline SectionSpace h0_Om(int m) {
    SectionSpace s;
    if (m < 0) return s;
    s.dimension = m + 1;
    for (int k = 0; k <= m; ++k) s.exponents.push_back(k);
    return s;
}

/// Divisor of the section of O(m) with affine part s0 of degree d: its zeros plus (m - d)[inf].
template <Field T>
Divisor section_divisor_Om(int m, const Polynomial<T>& s0) {
    if (s0.is_zero()) throw DomainError("zero section has no divisor");
    const int d = s0.degree();
    if (m < 0 || d > m) throw DomainError("section of O(m) needs 0 <= deg s0 <= m");
    Divisor out;
    if (d > 0)
        for (const auto& r : roots_of(s0)) out.add(at(r.value), r.multiplicity);
    out.add(at_infinity(), m - d);
    if (out.degree() != m) throw ConsistencyError("section divisor degree differs from m");
    return out;
}

/// Riemann-Roch space L(D) = { f : (f) + D >= 0 } on the sphere.
struct RiemannRochSpace {
    int dimension = 0;
    std::vector<RationalFunction<Complex>> basis;
};

/// L(D) through the multiplier h = prod (z - p)^{n_p} over the finite part of D: multiplication by
/// 1/h identifies L(deg D [inf]) with L(D), so the basis is z^k / h for 0 <= k <= deg D.
inline RiemannRochSpace ell_P1(const Divisor& D) {
    RiemannRochSpace out;
    const int deg = D.degree();
    if (deg < 0) return out;
    Polynomial<Complex> top = Polynomial<Complex>::constant(1.0), bottom = top;
    for (const auto& [p, n] : D.entries()) {
        if (p.infinite) continue;
        auto& side = n > 0 ? bottom : top;
        side = side * Polynomial<Complex>::linear_factor(p.value).pow(std::abs(n));
    }
    for (int k = 0; k <= deg; ++k) {
        RationalFunction<Complex> f(Polynomial<Complex>::monomial(k, 1.0) * top, bottom);
        if (!(principal_divisor(f) + D).is_effective())
            throw ConsistencyError("Riemann-Roch basis element violates (f) + D >= 0");
        out.basis.push_back(std::move(f));
    }
    out.dimension = deg + 1;
    return out;
}

/// l(D) - l(K - D) == 1 - g + deg D.
inline bool rr_verify(int g, int degD, int ellD, int ellKD) {
    if (g < 0) throw DomainError("genus must be nonnegative");
    return ellD - ellKD == 1 - g + degD;
}

/// l(D) on a genus one curve for deg D > 0.
inline int ell_elliptic(int degD) {
    if (degD <= 0) throw DomainError("ell_elliptic covers deg D > 0 only");
    return degD;
}

/// The double cover y^2 = f(x) of the sphere.
template <Field T>
struct DoubleCoverSpec {
    Polynomial<T> f;
};

/// Branch values of x on y^2 = f(x): the roots of f, and infinity when deg f is odd.
template <Field T>
std::vector<SpherePoint> branch_values(const DoubleCoverSpec<T>& spec) {
    if (spec.f.degree() < 1) throw DomainError("double cover needs deg f >= 1");
    std::vector<SpherePoint> out;
    for (const auto& r : roots_of(spec.f)) {
        if (r.multiplicity != 1) throw DomainError("f is not squarefree");
        out.push_back(at(r.value));
    }
    if (spec.f.degree() % 2 == 1) out.push_back(at_infinity());
    return out;
}

/// Genus (B - 2)/2 of y^2 = f(x), B the number of branch values.
template <Field T>
int genus_double_cover(const DoubleCoverSpec<T>& spec) {
    const int b = static_cast<int>(branch_values(spec).size());
    if (b % 2 != 0) throw ConsistencyError("odd number of branch values");
    return (b - 2) / 2;
}

/// Ramification index n / gcd(n, m) of y^n = prod (x - a_j)^{m_j} over a_j.
inline int kummer_ram_index(int n, int m) {
    if (n < 1) throw DomainError("kummer_ram_index needs n >= 1");
    const int r = ((m % n) + n) % n;
    return n / std::gcd(n, r);
}

/// Root count with multiplicity, degree and pole order at infinity of a polynomial all agree.
template <Field T>
bool fta_verify(const Polynomial<T>& p) {
    if (p.degree() < 1) throw DomainError("fta_verify needs deg p >= 1");
    int count = 0;
    for (const auto& r : roots_of(p)) count += r.multiplicity;
    const int pole = -ord_at(RationalFunction<T>(p), P1Point<T>::infinity());
    return count == p.degree() && pole == p.degree();
}

}  // namespace rk
