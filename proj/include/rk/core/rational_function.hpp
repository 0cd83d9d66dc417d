#pragma once

#include <ostream>
#include <utility>
#include <vector>

#include "rk/core/polynomial.hpp"
#include "rk/core/roots.hpp"

namespace rk {

/// Quotient of polynomials kept in lowest terms with a monic denominator.
/// Exact fields reduce by polynomial gcd; floating coefficients cancel roots closer than 1e-10.
template <Field T>
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial<T>::constant(T(1))) {}
    RationalFunction(Polynomial<T> p)  // NOLINT(google-explicit-constructor): polynomials are rational functions
        : num_(std::move(p)), den_(Polynomial<T>::constant(T(1))) {}
    RationalFunction(Polynomial<T> num, Polynomial<T> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        reduce();
    }

    const Polynomial<T>& num() const { return num_; }
    const Polynomial<T>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    Complex operator()(Complex z) const { return num_.eval_complex(z) / den_.eval_complex(z); }

    RationalFunction derivative() const {
        return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
    }

    RationalFunction<Complex> to_complex() const {
        return {num_.to_complex_poly(), den_.to_complex_poly()};
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial<T>::constant(T(1));
            return;
        }
        if constexpr (ScalarTraits<T>::exact) {
            Polynomial<T> g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        } else {
            cancel_common_roots();
        }
        const T lc = den_.leading();
        num_ = Polynomial<T>::constant(T(1) / lc) * num_;
        den_ = den_.monic();
    }

    void cancel_common_roots() {
        if (num_.degree() < 1 || den_.degree() < 1) return;
        auto nr = poly_roots(num_);
        auto dr = poly_roots(den_);
        bool changed = false;
        for (auto& a : nr)
            for (auto& b : dr) {
                if (a.multiplicity == 0 || b.multiplicity == 0) continue;
                if (std::abs(a.value - b.value) < 1e-10 * (1 + std::abs(a.value))) {
                    int k = std::min(a.multiplicity, b.multiplicity);
                    a.multiplicity -= k;
                    b.multiplicity -= k;
                    changed = true;
                }
            }
        if (!changed) return;
        auto rebuild = [](Complex lc, const std::vector<Root>& rs) {
            Polynomial<Complex> p = Polynomial<Complex>::constant(lc);
            for (const auto& r : rs)
                for (int k = 0; k < r.multiplicity; ++k) p = p * Polynomial<Complex>::linear_factor(r.value);
            return p;
        };
        num_ = rebuild(num_.leading(), nr);
        den_ = rebuild(den_.leading(), dr);
    }

    Polynomial<T> num_;
    Polynomial<T> den_;
};

template <Field T>
std::ostream& operator<<(std::ostream& os, const RationalFunction<T>& f) {
    os << "(" << f.num() << ")";
    if (!f.is_polynomial()) os << "/(" << f.den() << ")";
    return os;
}

}  // namespace rk
