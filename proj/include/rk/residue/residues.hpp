#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rk/core/laurent.hpp"
#include "rk/residue/contour.hpp"

namespace rk {

/// Coefficient of (z - pole)^{-1} in the Laurent expansion of f at a pole of finite order.
template <Field T>
T residue_rational(const RationalFunction<T>& f, const T& pole) {
    const int k = ord_at(f, P1Point<T>::finite(pole));
    if (k >= 0)
        throw DomainError("point is not a pole (order " + std::to_string(k) + ")");
    return laurent_expand(f, pole, -1).residue();
}

/// Residue of 1/h at a simple zero z0 of h: 1/h'(z0).
inline Complex residue_reciprocal(const ComplexFn& h, const ComplexFn& h_prime, Complex z0, double tol = 1e-10) {
    const Complex hv = h(z0);
    const Complex dv = h_prime(z0);
    if (std::abs(hv) >= tol * std::max(1.0, std::abs(dv)))
        throw DomainError("h does not vanish at the given point");
    if (std::abs(dv) < tol) throw DomainError("degenerate zero: h' vanishes at the given point");
    return 1.0 / dv;
}

/// A pole with its order and residue.
struct PoleResidue {
    Complex pole;
    int order;
    Complex residue;
};

/// All finite poles of f with their residues.
template <Field T>
std::vector<PoleResidue> poles_and_residues(const RationalFunction<T>& f) {
    std::vector<PoleResidue> out;
    if (f.den().degree() < 1) return out;
    const RationalFunction<Complex> fc = f.to_complex();
    for (const auto& r : roots_of(f.den())) {
        Complex res = laurent_expand(fc, r.value, -1).residue();
        out.push_back({r.value, r.multiplicity, res});
    }
    return out;
}

/// Value of the contour integral of f over a circle computed by residues, together with the
/// independent quadrature value it was checked against.
struct ResidueIntegral {
    Complex value;
    QuadratureResult quadrature;
};

/// 2 pi i times the sum of residues at poles strictly inside the circle, cross-checked against
/// contour quadrature. Throws when a pole sits on the circle or the two routes disagree.
template <Field T>
ResidueIntegral integrate_by_residues_checked(const RationalFunction<T>& f, const Circle& c, double tol = 1e-10) {
    Complex sum{};
    for (const auto& pr : poles_and_residues(f)) {
        const double d = std::abs(pr.pole - c.center);
        if (std::abs(d - c.radius) <= 1e-9 * c.radius) throw DomainError("pole lies on the contour");
        if (d < c.radius) sum += pr.residue;
    }
    const Complex value = static_cast<double>(c.orientation) * 2.0 * kPi * kI * sum;
    const RationalFunction<Complex> fc = f.to_complex();
    QuadratureResult q = contour_integral([&](Complex z) { return fc(z); }, Contour(c), tol);
    const double allowed = std::max(1e3 * tol, 10 * q.error_estimate) * std::max(1.0, std::abs(value));
    if (std::abs(q.value - value) > allowed)
        throw ConsistencyError("residue sum and contour quadrature disagree");
    return {value, q};
}

template <Field T>
Complex integrate_by_residues(const RationalFunction<T>& f, const Circle& c, double tol = 1e-10) {
    return integrate_by_residues_checked(f, c, tol).value;
}

}  // namespace rk
