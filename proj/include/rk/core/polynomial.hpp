#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "rk/core/scalar.hpp"

namespace rk {

/// Dense univariate polynomial, coefficient of z^k at index k. The zero polynomial has no coefficients.
template <Field T>
class Polynomial {
public:
    using scalar_type = T;

    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }
    static Polynomial monomial(int k, const T& c = T(1)) {
        std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
        v.back() = c;
        return Polynomial(std::move(v));
    }
    /// (z - a)
    static Polynomial linear_factor(const T& a) { return Polynomial({T(0) - a, T(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& leading() const { return c_.back(); }

    T operator[](int k) const {
        if (k < 0 || k > degree()) return T(0);
        return c_[static_cast<std::size_t>(k)];
    }

    T operator()(const T& z) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Complex eval_complex(Complex z) const {
        Complex acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + to_complex(*it);
        return acc;
    }

    /// Sum of |a_k| |z|^k, the natural scale for roundoff in evaluating at z.
    double abs_eval(double r) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + ScalarTraits<T>::magnitude(*it);
        return acc;
    }

    /// Order of vanishing at z = 0 (exact zero test). Zero polynomial has no order.
    int lowest_order() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!rk::is_zero(c_[k])) return static_cast<int>(k);
        throw DomainError("zero polynomial has no order of vanishing");
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long long>(k));
        return Polynomial(std::move(d));
    }

    /// p(z + a), computed by repeated synthetic division.
    Polynomial shifted(const T& a) const {
        std::vector<T> v = c_;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t k = n - 1; k > i; --k) v[k - 1] = v[k - 1] + a * v[k];
        return Polynomial(std::move(v));
    }

    /// z^n p(1/z) for n = degree.
    Polynomial reversed() const {
        std::vector<T> v(c_.rbegin(), c_.rend());
        return Polynomial(std::move(v));
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        T lc = leading();
        std::vector<T> v(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] / lc;
        return Polynomial(std::move(v));
    }

    Polynomial<Complex> to_complex_poly() const {
        std::vector<Complex> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(to_complex(x));
        return Polynomial<Complex>(std::move(v));
    }

    Polynomial pow(int e) const {
        Polynomial r = constant(T(1)), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] = v[k] + a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] = v[k] + b.c_[k];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<T> v(a.c_.size());
        for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] = T(0) - a.c_[k];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) { return constant(s) * p; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division: a = q b + r with deg r < deg b.
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<T> r = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {Polynomial{}, a};
        std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T(0));
        const T lc = b.leading();
        for (int k = a.degree(); k >= db; --k) {
            T f = r[static_cast<std::size_t>(k)] / lc;
            q[static_cast<std::size_t>(k - db)] = f;
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(k - db + j)] =
                    r[static_cast<std::size_t>(k - db + j)] - f * b.c_[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(k)] = T(0);
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

private:
    void trim() {
        while (!c_.empty() && rk::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

/// Monic gcd by the Euclidean algorithm. Only meaningful over exact fields.
template <Field T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
    static_assert(ScalarTraits<T>::exact, "exact gcd requires an exact coefficient field");
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Exact quotient; throws if b does not divide a.
template <Field T>
Polynomial<T> exact_div(const Polynomial<T>& a, const Polynomial<T>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ConsistencyError("polynomial division is not exact");
    return q;
}

/// Yun's square-free decomposition: p = lc * prod_k f_k^k with each f_k square-free and pairwise coprime.
/// Entry k-1 of the result is f_k (possibly constant 1).
template <Field T>
std::vector<Polynomial<T>> squarefree_decomposition(const Polynomial<T>& p) {
    static_assert(ScalarTraits<T>::exact);
    if (p.degree() < 1) return {};
    std::vector<Polynomial<T>> out;
    Polynomial<T> dp = p.derivative();
    Polynomial<T> a = gcd(p, dp);
    Polynomial<T> b = exact_div(p, a);
    Polynomial<T> c = exact_div(dp, a);
    Polynomial<T> d = c - b.derivative();
    while (b.degree() >= 1) {
        Polynomial<T> g = gcd(b, d);
        out.push_back(g);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() < 1) out.pop_back();
    return out;
}

template <Field T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const T c = p[k];
        if (is_zero(c)) continue;
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k >= 1) os << "*z";
        if (k >= 2) os << "^" << k;
    }
    return os;
}

}  // namespace rk
