#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "rk/core/error.hpp"

namespace rk {

using Complex = std::complex<double>;

/// Exact rational with arbitrary-precision numerator and positive denominator, always reduced.
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr Complex kI{0.0, 1.0};

/// Builds a complex value, rejecting NaN and infinite components.
inline Complex make_complex(double re, double im = 0.0) {
    if (!std::isfinite(re) || !std::isfinite(im))
        throw DomainError("complex value must have finite components");
    return {re, im};
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

/// Element of Q(i). Used for exact parsing of expressions that contain the imaginary unit.
struct GaussianRational {
    BigRational re{0};
    BigRational im{0};

    GaussianRational() = default;
    GaussianRational(BigRational r, BigRational i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long long r) : re(r) {}

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        BigRational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw DomainError("division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    bool is_real() const { return im == 0; }
    GaussianRational conj() const { return {re, -im}; }
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
    if (g.im == 0) return os << g.re;
    if (g.re == 0) return os << g.im << "i";
    return os << "(" << g.re << (g.im < 0 ? "" : "+") << g.im << "i)";
}

/// Uniform interface over the three coefficient fields the library works in.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static bool is_zero(const Complex& x) { return x == Complex{}; }
    static Complex to_complex(const Complex& x) { return x; }
    static double magnitude(const Complex& x) { return std::abs(x); }
};

template <>
struct ScalarTraits<BigRational> {
    static constexpr bool exact = true;
    static bool is_zero(const BigRational& x) { return x == 0; }
    static Complex to_complex(const BigRational& x) { return {to_double(x), 0.0}; }
    static double magnitude(const BigRational& x) { return std::abs(to_double(x)); }
};

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static bool is_zero(const GaussianRational& x) { return x.re == 0 && x.im == 0; }
    static Complex to_complex(const GaussianRational& x) { return {to_double(x.re), to_double(x.im)}; }
    static double magnitude(const GaussianRational& x) { return std::abs(to_complex(x)); }
};

/// Coefficient field: exact (Q, Q(i)) or floating complex.
template <class T>
concept Field = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { ScalarTraits<T>::is_zero(a) } -> std::convertible_to<bool>;
    { ScalarTraits<T>::to_complex(a) } -> std::convertible_to<Complex>;
};

template <Field T>
bool is_zero(const T& x) { return ScalarTraits<T>::is_zero(x); }

template <Field T>
Complex to_complex(const T& x) { return ScalarTraits<T>::to_complex(x); }

/// Rational approximation of a double by continued fractions, denominators up to max_den.
inline BigRational rationalize(double x, long long max_den = 1000000) {
    if (!std::isfinite(x)) throw DomainError("cannot rationalize a non-finite value");
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 9e15) break;
        auto ai = static_cast<long long>(a);
        long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den || k2 <= 0) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = r - a;
        if (frac < 1e-14) break;
        r = 1.0 / frac;
    }
    if (k1 == 0) return BigRational(static_cast<long long>(std::llround(x)));
    return BigRational(h1, k1);
}

}  // namespace rk
