#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "rk/core/polynomial.hpp"

namespace rk {

struct Root {
    Complex value;
    int multiplicity = 1;
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Aberth-Ehrlich simultaneous iteration for a polynomial with p(0) != 0.
inline std::vector<Complex> aberth(const Polynomial<Complex>& p, int max_iter = 1000) {
    const int n = p.degree();
    std::vector<Complex> z(static_cast<std::size_t>(n));
    if (n == 1) {
        z[0] = -p[0] / p[1];
        return z;
    }
    const double r0 = std::pow(std::abs(p[0] / p.leading()), 1.0 / n);
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(r0, 2 * kPi * k / n + 0.4);

    const Polynomial<Complex> dp = p.derivative();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            const Complex pv = p.eval_complex(z[i]);
            const double bound = 8 * kEps * p.abs_eval(std::abs(z[i]));
            if (std::abs(pv) <= bound) {
                done[i] = true;
                continue;
            }
            all = false;
            const Complex ratio = pv / dp.eval_complex(z[i]);
            Complex sum{};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            Complex w = ratio / (1.0 - ratio * sum);
            if (!is_finite(w)) w = ratio;
            z[i] -= w;
            if (std::abs(w) <= 4 * kEps * std::abs(z[i])) done[i] = true;
        }
        if (all) return z;
    }
    for (std::size_t i = 0; i < z.size(); ++i)
        if (!done[i]) throw NumericFailure("polynomial root iteration did not converge", z[i]);
    return z;
}

// Taylor coefficient p^{(m)}(c)/m!.
inline Complex taylor_coeff(const Polynomial<Complex>& p, Complex c, int m) { return p.shifted(c)[m]; }

// Newton on p^{(m-1)}, which has a simple root where p has a root of multiplicity m.
inline Complex polish_multiple(const Polynomial<Complex>& p, Complex c, int m, double limit) {
    Polynomial<Complex> f = p;
    for (int k = 1; k < m; ++k) f = f.derivative();
    const Polynomial<Complex> df = f.derivative();
    for (int k = 0; k < 8; ++k) {
        const Complex d = df.eval_complex(c);
        if (d == Complex{}) break;
        const Complex step = f.eval_complex(c) / d;
        if (!is_finite(step) || std::abs(step) > limit) break;
        c -= step;
        if (std::abs(step) <= 4 * kEps * (1 + std::abs(c))) break;
    }
    return c;
}

// Largest |p^{(k)}(c)/k!| for k < m relative to the same coefficient of the absolute-value polynomial.
inline double multiple_root_residual(const Polynomial<Complex>& p, Complex c, int m) {
    const Polynomial<Complex> s = p.shifted(c);
    std::vector<Complex> abs_coeffs;
    for (const auto& a : p.coeffs()) abs_coeffs.emplace_back(std::abs(a), 0.0);
    const Polynomial<Complex> sa = Polynomial<Complex>(abs_coeffs).shifted(Complex(std::abs(c), 0.0));
    double worst = 0;
    for (int k = 0; k < m; ++k) worst = std::max(worst, std::abs(s[k]) / sa[k].real());
    return worst;
}

inline constexpr double kClusterResidual = 1e-10;

// Groups approximate roots into clusters. A candidate union of m roots is accepted when its spread is
// within what coefficient roundoff can produce for an m-fold root and the first m Taylor coefficients
// vanish (to roundoff) at the polished centre.
inline std::vector<Root> cluster_roots(const Polynomial<Complex>& p, const std::vector<Complex>& z) {
    std::vector<std::vector<Complex>> groups;
    for (Complex r : z) groups.push_back({r});

    auto centroid = [](const std::vector<Complex>& g) {
        Complex s{};
        for (Complex r : g) s += r;
        return s / static_cast<double>(g.size());
    };
    auto spread = [](const std::vector<Complex>& g, Complex c) {
        double m = 0;
        for (Complex r : g) m = std::max(m, std::abs(r - c));
        return m;
    };
    auto acceptable = [&](const std::vector<Complex>& u) {
        const Complex c = centroid(u);
        const double sp = spread(u, c);
        const int m = static_cast<int>(u.size());
        if (sp <= 1e-8 * (1 + std::abs(c))) return true;
        const double tm = std::abs(taylor_coeff(p, c, m));
        if (!(tm > 0)) return false;
        const double kappa = p.abs_eval(std::abs(c)) / tm;
        if (sp > 10 * std::pow(kEps * kappa, 1.0 / m)) return false;
        const Complex cs = polish_multiple(p, c, m, 4 * sp);
        return multiple_root_residual(p, cs, m) <= kClusterResidual;
    };

    bool merged = true;
    while (merged && groups.size() > 1) {
        merged = false;
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j)
                pairs.emplace_back(std::abs(centroid(groups[i]) - centroid(groups[j])), i, j);
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [d, i, j] : pairs) {
            std::vector<Complex> u = groups[i];
            u.insert(u.end(), groups[j].begin(), groups[j].end());
            if (!acceptable(u)) continue;
            groups[i] = std::move(u);
            groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
            merged = true;
            break;
        }
    }

    std::vector<Root> out;
    for (const auto& g : groups) {
        const Complex c = centroid(g);
        const int m = static_cast<int>(g.size());
        out.push_back({polish_multiple(p, c, m, std::max(4 * spread(g, c), 1e-6 * (1 + std::abs(c)))), m});
    }
    return out;
}

inline void sort_roots(std::vector<Root>& roots) {
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        if (std::abs(a.value.real() - b.value.real()) > 1e-12) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
}

}  // namespace detail

/// Roots of a floating complex polynomial with multiplicities. Multiplicities sum to the degree.
/// Roots at exactly zero (trailing zero coefficients) are reported exactly.
inline std::vector<Root> poly_roots(const Polynomial<Complex>& p) {
    if (p.degree() < 1) throw DomainError("poly_roots needs degree >= 1");
    std::vector<Root> out;
    const int k0 = p.lowest_order();
    std::vector<Complex> stripped(p.coeffs().begin() + k0, p.coeffs().end());
    Polynomial<Complex> q(std::move(stripped));
    if (k0 > 0) out.push_back({Complex{}, k0});
    if (q.degree() >= 1) {
        auto z = detail::aberth(q);
        auto c = detail::cluster_roots(q, z);
        out.insert(out.end(), c.begin(), c.end());
    }
    detail::sort_roots(out);
    return out;
}

/// Roots of an exact polynomial. Multiplicities come from an exact square-free decomposition, so they
/// are exact; the root locations are floating approximations.
template <Field T>
    requires(ScalarTraits<T>::exact)
std::vector<Root> poly_roots_exact(const Polynomial<T>& p) {
    if (p.degree() < 1) throw DomainError("poly_roots needs degree >= 1");
    std::vector<Root> out;
    const int k0 = p.lowest_order();
    std::vector<T> stripped(p.coeffs().begin() + k0, p.coeffs().end());
    Polynomial<T> q(std::move(stripped));
    if (k0 > 0) out.push_back({Complex{}, k0});
    auto factors = squarefree_decomposition(q);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() < 1) continue;
        for (Complex r : detail::aberth(factors[k].to_complex_poly()))
            out.push_back({r, static_cast<int>(k) + 1});
    }
    detail::sort_roots(out);
    return out;
}

template <Field T>
std::vector<Root> roots_of(const Polynomial<T>& p) {
    if constexpr (ScalarTraits<T>::exact)
        return poly_roots_exact(p);
    else
        return poly_roots(p);
}

}  // namespace rk
