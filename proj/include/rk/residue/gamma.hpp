#pragma once

#include <cmath>

#include "rk/core/scalar.hpp"
#include "rk/quadrature/quadrature.hpp"

namespace rk {

/// Euler's Gamma function.
///
/// For Re s >= 1/2 the defining integral is evaluated directly, split at t = 1: the head with t = v^2
/// (removing the t^{s-1} singularity), the tail with u = e^{-t} (mapping [1, inf) onto (0, 1/e]).
/// Elsewhere the reflection formula Gamma(s) Gamma(1-s) = pi / sin(pi s) is applied to 1 - s.
inline Complex gamma(Complex s) {
    if (!is_finite(s)) throw DomainError("gamma argument must be finite");
    if (s.imag() == 0 && s.real() <= 0 && s.real() == std::round(s.real()))
        throw DomainError("gamma has a pole at nonpositive integers; use gamma_residue");
    if (s.real() < 0.5) {
        return kPi / (std::sin(kPi * s) * gamma(1.0 - s));
    }
    const Complex e = 2.0 * s - 1.0;
    auto head = quad::integrate<Complex>(
        [e](double v) { return v == 0 ? Complex{} : 2.0 * std::exp(e * std::log(v)) * std::exp(-v * v); },
        0.0, 1.0, 1e-15, 1e-14, 2000000);
    const Complex p = s - 1.0;
    auto tail = quad::integrate<Complex>(
        [p](double u) { return u == 0 ? Complex{} : std::exp(p * std::log(-std::log(u))); }, 0.0,
        std::exp(-1.0), 1e-15, 1e-14, 2000000);
    if (!head.converged || !tail.converged)
        throw NumericFailure("gamma quadrature did not converge", head.value + tail.value, head.error + tail.error);
    return head.value + tail.value;
}

/// Residue of Gamma at s = -n: (-1)^n / n!.
inline BigRational gamma_residue(int n) {
    if (n < 0) throw DomainError("gamma_residue needs n >= 0");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return BigRational(n % 2 == 0 ? 1 : -1, f);
}

}  // namespace rk
