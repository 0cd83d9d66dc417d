#pragma once

#include <cmath>
#include <vector>

#include "rk/core/rational_function.hpp"

namespace rk {

/// Point of the Riemann sphere: a finite value or infinity.
template <Field T = Complex>
struct P1Point {
    bool infinite = false;
    T value{};

    static P1Point finite(T v) { return {false, std::move(v)}; }
    static P1Point infinity() { return {true, T{}}; }
};

/// Relative threshold below which a floating Taylor coefficient counts as zero.
inline constexpr double kVanishTol = 1e-9;

namespace detail {

// Order of vanishing at c: exact for exact fields, tolerance-based for floating coefficients
// (coefficient j is compared with the same coefficient of the absolute-value polynomial).
template <Field T>
int vanishing_order(const Polynomial<T>& p, const T& c, Polynomial<T>* shifted_out = nullptr) {
    Polynomial<T> s = p.shifted(c);
    if (shifted_out) *shifted_out = s;
    if constexpr (ScalarTraits<T>::exact) {
        return s.lowest_order();
    } else {
        std::vector<Complex> abs_coeffs;
        for (const auto& a : p.coeffs()) abs_coeffs.emplace_back(std::abs(a), 0.0);
        Polynomial<Complex> sa = Polynomial<Complex>(abs_coeffs).shifted(Complex(std::abs(c), 0.0));
        for (int j = 0; j <= s.degree(); ++j)
            if (std::abs(s[j]) > kVanishTol * sa[j].real()) return j;
        return s.degree();
    }
}

}  // namespace detail

/// Order of f at a point: k such that f = (z-p)^k * unit; at infinity the order of f(1/w) at w = 0.
template <Field T>
int ord_at(const RationalFunction<T>& f, const P1Point<T>& p) {
    if (f.is_zero()) throw DomainError("order of the zero function is undefined");
    if (p.infinite) return f.den().degree() - f.num().degree();
    return detail::vanishing_order(f.num(), p.value) - detail::vanishing_order(f.den(), p.value);
}

/// Truncated Laurent expansion sum_{n=n_min}^{n_max} a_n (z - center)^n.
template <Field T>
class LaurentSegment {
public:
    LaurentSegment(T center, int n_min, std::vector<T> coeffs)
        : center_(std::move(center)), n_min_(n_min), c_(std::move(coeffs)) {}

    const T& center() const { return center_; }
    int n_min() const { return n_min_; }
    int n_max() const { return n_min_ + static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }

    T coeff(int n) const {
        if (n < n_min_ || n > n_max()) return T(0);
        return c_[static_cast<std::size_t>(n - n_min_)];
    }
    T residue() const { return coeff(-1); }

private:
    T center_;
    int n_min_;
    std::vector<T> c_;
};

/// Laurent coefficients of f about center for exponents ord_at(f, center)..n_max, by series division
/// after factoring out the leading powers of (z - center).
template <Field T>
LaurentSegment<T> laurent_expand(const RationalFunction<T>& f, const T& center, int n_max) {
    if (f.is_zero()) throw DomainError("Laurent expansion of the zero function");
    Polynomial<T> ns, ds;
    const int on = detail::vanishing_order(f.num(), center, &ns);
    const int od = detail::vanishing_order(f.den(), center, &ds);
    const int k = on - od;
    if (n_max < k) throw DomainError("empty Laurent window: n_max is below the order at the center");
    const int m = n_max - k;
    std::vector<T> q(static_cast<std::size_t>(m) + 1, T(0));
    const T b0 = ds[od];
    for (int i = 0; i <= m; ++i) {
        T acc = ns[on + i];
        for (int j = 1; j <= i; ++j) acc = acc - ds[od + j] * q[static_cast<std::size_t>(i - j)];
        q[static_cast<std::size_t>(i)] = acc / b0;
    }
    return {center, k, std::move(q)};
}

}  // namespace rk
