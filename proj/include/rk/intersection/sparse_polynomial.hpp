#pragma once

#include <array>
#include <map>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "rk/core/polynomial.hpp"

namespace rk {

/// Polynomial in N variables over Q, stored as exponent vector -> nonzero coefficient.
template <int N>
class SparsePolynomial {
public:
    using Exponent = std::array<int, N>;
    using Terms = std::map<Exponent, BigRational>;

    SparsePolynomial() = default;
    explicit SparsePolynomial(Terms terms) {
        for (auto& [e, c] : terms) add_term(e, c);
    }

    static SparsePolynomial constant(const BigRational& c) {
        SparsePolynomial p;
        p.add_term(Exponent{}, c);
        return p;
    }
    static SparsePolynomial variable(int i) {
        Exponent e{};
        e[static_cast<std::size_t>(i)] = 1;
        SparsePolynomial p;
        p.add_term(e, 1);
        return p;
    }
    static SparsePolynomial monomial(const Exponent& e, const BigRational& c = 1) {
        SparsePolynomial p;
        p.add_term(e, c);
        return p;
    }

    void add_term(const Exponent& e, const BigRational& c) {
        for (int k : e)
            if (k < 0) throw DomainError("negative exponent in polynomial");
        if (c == 0) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    BigRational coeff(const Exponent& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? BigRational(0) : it->second;
    }

    static int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

    /// Largest total degree; -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, total(e));
        return d;
    }
    /// Smallest total degree among the monomials; -1 for the zero polynomial.
    int lowest_degree() const {
        int d = -1;
        for (const auto& [e, c] : t_) d = d < 0 ? total(e) : std::min(d, total(e));
        return d;
    }
    int degree_in(int i) const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e[static_cast<std::size_t>(i)]);
        return d;
    }
    bool is_homogeneous() const {
        for (const auto& [e, c] : t_)
            if (total(e) != total_degree()) return false;
        return true;
    }
    SparsePolynomial homogeneous_part(int d) const {
        SparsePolynomial p;
        for (const auto& [e, c] : t_)
            if (total(e) == d) p.t_.emplace(e, c);
        return p;
    }

    BigRational operator()(const std::array<BigRational, N>& x) const {
        BigRational s = 0;
        for (const auto& [e, c] : t_) {
            BigRational m = c;
            for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            s += m;
        }
        return s;
    }

    /// Replaces variable i by subs[i].
    template <int M>
    SparsePolynomial<M> substitute(const std::array<SparsePolynomial<M>, N>& subs) const {
        SparsePolynomial<M> out;
        for (const auto& [e, c] : t_) {
            SparsePolynomial<M> m = SparsePolynomial<M>::constant(c);
            for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) m = m * subs[i].pow(e[i]);
            out = out + m;
        }
        return out;
    }

    SparsePolynomial pow(int k) const {
        if (k < 0) throw DomainError("negative power of a polynomial");
        SparsePolynomial r = constant(1), b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) {
        for (const auto& [e, c] : b.t_) a.add_term(e, c);
        return a;
    }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) {
        for (const auto& [e, c] : b.t_) a.add_term(e, -c);
        return a;
    }
    friend SparsePolynomial operator-(const SparsePolynomial& a) { return SparsePolynomial() - a; }
    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
        SparsePolynomial p;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Exponent e;
                for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) e[i] = ea[i] + eb[i];
                p.add_term(e, ca * cb);
            }
        return p;
    }
    friend SparsePolynomial operator*(const BigRational& s, const SparsePolynomial& a) {
        return constant(s) * a;
    }
    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) { return a.t_ == b.t_; }

    friend std::ostream& operator<<(std::ostream& os, const SparsePolynomial& p) {
        static const char* names = N <= 3 ? "xyz" : "abcdefgh";
        if (p.t_.empty()) return os << "0";
        bool first = true;
        for (auto it = p.t_.rbegin(); it != p.t_.rend(); ++it) {
            const auto& [e, c] = *it;
            BigRational a = c;
            if (!first) {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            const bool unit = total(e) > 0 && (a == 1 || a == -1);
            if (unit && a == -1) os << "-";
            if (!unit) os << a;
            bool need_star = !unit;
            for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
                if (e[i] == 0) continue;
                if (need_star) os << "*";
                os << names[i];
                if (e[i] > 1) os << "^" << e[i];
                need_star = true;
            }
        }
        return os;
    }

private:
    Terms t_;
};

using BivariatePolynomialQ = SparsePolynomial<2>;
using TrivariatePolynomialQ = SparsePolynomial<3>;
using PolynomialQ = Polynomial<BigRational>;

/// Coefficients of f as a polynomial in y: entry j is the coefficient of y^j, a polynomial in x.
inline std::vector<PolynomialQ> y_coefficients(const BivariatePolynomialQ& f) {
    std::vector<std::vector<BigRational>> raw(static_cast<std::size_t>(std::max(f.degree_in(1), -1) + 1));
    for (const auto& [e, c] : f.terms()) {
        auto& v = raw[static_cast<std::size_t>(e[1])];
        if (v.size() <= static_cast<std::size_t>(e[0])) v.resize(static_cast<std::size_t>(e[0]) + 1, BigRational(0));
        v[static_cast<std::size_t>(e[0])] = c;
    }
    std::vector<PolynomialQ> out;
    for (auto& v : raw) out.emplace_back(std::move(v));
    return out;
}

inline BivariatePolynomialQ from_x_polynomial(const PolynomialQ& p, int y_power = 0) {
    BivariatePolynomialQ out;
    for (int k = 0; k <= p.degree(); ++k) out.add_term({k, y_power}, p[k]);
    return out;
}

/// f(x0, y) as a polynomial in y.
inline PolynomialQ restrict_x(const BivariatePolynomialQ& f, const BigRational& x0) {
    std::vector<BigRational> c;
    for (const auto& cj : y_coefficients(f)) c.push_back(cj.is_zero() ? BigRational(0) : cj(x0));
    return PolynomialQ(std::move(c));
}

/// f(x + a, y + b).
inline BivariatePolynomialQ translate(const BivariatePolynomialQ& f, const BigRational& a, const BigRational& b) {
    using P = BivariatePolynomialQ;
    return f.substitute<2>({P::variable(0) + P::constant(a), P::variable(1) + P::constant(b)});
}

/// f(x + c y, y).
inline BivariatePolynomialQ shear(const BivariatePolynomialQ& f, const BigRational& c) {
    using P = BivariatePolynomialQ;
    return f.substitute<2>({P::variable(0) + c * P::variable(1), P::variable(1)});
}

}  // namespace rk
