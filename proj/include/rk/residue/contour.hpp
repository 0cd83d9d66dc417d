#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <complex>
#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "rk/core/series.hpp"
#include "rk/quadrature/quadrature.hpp"

namespace rk {

struct QuadratureResult {
    Complex value{};
    double error_estimate = 0.0;
    long evaluations = 0;
};

struct Contour;

/// Full circle, counterclockwise for orientation +1.
struct Circle {
    Complex center{};
    double radius = 1.0;
    int orientation = 1;
};
/// Straight path from a to b.
struct Segment {
    Complex a{}, b{};
};
/// Circular arc center + radius*e^{it}, t from t0 to t1 (t1 < t0 runs clockwise).
struct Arc {
    Complex center{};
    double radius = 1.0;
    double t0 = 0.0, t1 = 2 * kPi;
};
/// Broken line through the vertices in order.
struct Polyline {
    std::vector<Complex> vertices;
};
/// Concatenation of contours.
struct Composite {
    std::vector<Contour> pieces;
};
/// Keyhole around the origin: out along the upper edge of a slit at angle `direction`, counterclockwise
/// around |z| = outer, back along the lower edge, clockwise around |z| = inner.
struct Keyhole {
    double inner = 0.01, outer = 100.0;
    double direction = 0.0;
};

/// Angular half-width of the keyhole slit.
inline constexpr double kKeyholeGap = 1e-10;

struct Contour {
    std::variant<Circle, Segment, Arc, Polyline, Composite, Keyhole> shape;

    Contour(Circle c) : shape(c) {
        if (!(c.radius > 0)) throw DomainError("circle radius must be positive");
        if (c.orientation != 1 && c.orientation != -1) throw DomainError("circle orientation must be +1 or -1");
    }
    Contour(Segment s) : shape(s) {}
    Contour(Arc a) : shape(a) {
        if (!(a.radius > 0)) throw DomainError("arc radius must be positive");
    }
    Contour(Polyline p) : shape(std::move(p)) {
        if (std::get<Polyline>(shape).vertices.size() < 2) throw DomainError("polyline needs two vertices");
    }
    Contour(Composite c) : shape(std::move(c)) {
        if (std::get<Composite>(shape).pieces.empty()) throw DomainError("empty composite contour");
    }
    Contour(Keyhole k) : shape(k) {
        if (!(k.inner > 0 && k.inner < k.outer)) throw DomainError("keyhole needs 0 < inner < outer");
    }
};

namespace detail {

inline Complex start_point(const Contour& c);
inline Complex end_point(const Contour& c);

inline std::vector<Contour> keyhole_pieces(const Keyhole& k) {
    const double up = k.direction + kKeyholeGap, down = k.direction + 2 * kPi - kKeyholeGap;
    return {Segment{std::polar(k.inner, up), std::polar(k.outer, up)},
            Arc{{}, k.outer, up, down},
            Segment{std::polar(k.outer, down), std::polar(k.inner, down)},
            Arc{{}, k.inner, down, up}};
}

inline Complex start_point(const Contour& c) {
    return std::visit(
        [](const auto& s) -> Complex {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle>) return s.center + s.radius;
            else if constexpr (std::is_same_v<S, Segment>) return s.a;
            else if constexpr (std::is_same_v<S, Arc>) return s.center + std::polar(s.radius, s.t0);
            else if constexpr (std::is_same_v<S, Polyline>) return s.vertices.front();
            else if constexpr (std::is_same_v<S, Composite>) return start_point(s.pieces.front());
            else return start_point(keyhole_pieces(s).front());
        },
        c.shape);
}

inline Complex end_point(const Contour& c) {
    return std::visit(
        [](const auto& s) -> Complex {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle>) return s.center + s.radius;
            else if constexpr (std::is_same_v<S, Segment>) return s.b;
            else if constexpr (std::is_same_v<S, Arc>) return s.center + std::polar(s.radius, s.t1);
            else if constexpr (std::is_same_v<S, Polyline>) return s.vertices.back();
            else if constexpr (std::is_same_v<S, Composite>) return end_point(s.pieces.back());
            else return end_point(keyhole_pieces(s).back());
        },
        c.shape);
}

inline double scale_of(const Contour& c) {
    return std::visit(
        [](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle> || std::is_same_v<S, Arc>) return s.radius;
            else if constexpr (std::is_same_v<S, Segment>) return std::abs(s.b - s.a);
            else if constexpr (std::is_same_v<S, Polyline>) {
                double m = 0;
                for (std::size_t i = 1; i < s.vertices.size(); ++i)
                    m = std::max(m, std::abs(s.vertices[i] - s.vertices[i - 1]));
                return m;
            } else if constexpr (std::is_same_v<S, Composite>) {
                double m = 0;
                for (const auto& p : s.pieces) m = std::max(m, scale_of(p));
                return m;
            } else return s.outer;
        },
        c.shape);
}

inline double segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

inline double arc_distance(Complex p, const Arc& a) {
    const Complex q = p - a.center;
    const double lo = std::min(a.t0, a.t1), hi = std::max(a.t0, a.t1);
    double t = std::arg(q);
    while (t < lo) t += 2 * kPi;
    while (t > lo + 2 * kPi) t -= 2 * kPi;
    if (t <= hi) return std::abs(std::abs(q) - a.radius);
    return std::min(std::abs(p - (a.center + std::polar(a.radius, a.t0))),
                    std::abs(p - (a.center + std::polar(a.radius, a.t1))));
}

}  // namespace detail

/// Smallest distance from p to the path.
inline double distance_to(const Contour& c, Complex p) {
    return std::visit(
        [p](const auto& s) -> double {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle>) return std::abs(std::abs(p - s.center) - s.radius);
            else if constexpr (std::is_same_v<S, Segment>) return detail::segment_distance(p, s.a, s.b);
            else if constexpr (std::is_same_v<S, Arc>) return detail::arc_distance(p, s);
            else if constexpr (std::is_same_v<S, Polyline>) {
                double m = std::numeric_limits<double>::infinity();
                for (std::size_t i = 1; i < s.vertices.size(); ++i)
                    m = std::min(m, detail::segment_distance(p, s.vertices[i - 1], s.vertices[i]));
                return m;
            } else if constexpr (std::is_same_v<S, Composite>) {
                double m = std::numeric_limits<double>::infinity();
                for (const auto& q : s.pieces) m = std::min(m, distance_to(q, p));
                return m;
            } else {
                double m = std::numeric_limits<double>::infinity();
                for (const auto& q : detail::keyhole_pieces(s)) m = std::min(m, distance_to(q, p));
                return m;
            }
        },
        c.shape);
}

/// True when the path returns to its start. A composite is closed when its open pieces chain
/// end-to-start (within 1e-12 of the contour scale) and close up; closed pieces may appear anywhere.
inline bool is_closed(const Contour& c) {
    const double tol = 1e-12 * std::max(1.0, detail::scale_of(c));
    return std::visit(
        [&](const auto& s) -> bool {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle> || std::is_same_v<S, Keyhole>) return true;
            else if constexpr (std::is_same_v<S, Composite>) {
                std::vector<const Contour*> open;
                for (const auto& p : s.pieces)
                    if (!is_closed(p)) open.push_back(&p);
                for (std::size_t i = 0; i < open.size(); ++i) {
                    const Contour* next = open[(i + 1) % open.size()];
                    if (std::abs(detail::end_point(*open[i]) - detail::start_point(*next)) > tol) return false;
                }
                return true;
            } else return std::abs(detail::end_point(c) - detail::start_point(c)) <= tol;
        },
        c.shape);
}

namespace detail {

inline constexpr long kCircleMaxNodes = 1L << 20;

inline QuadratureResult circle_integral(const ComplexFn& f, const Circle& c, double tol) {
    // Trapezoid on z = center + r e^{it}: dz = i (z - center) dt. Nodes double until two estimates agree.
    auto g = [&](double t) {
        const Complex w = std::polar(c.radius, t);
        return f(c.center + w) * kI * w;
    };
    long n = 16;
    Complex sum{};
    for (long j = 0; j < n; ++j) sum += g(2 * kPi * static_cast<double>(j) / static_cast<double>(n));
    Complex prev = sum * (2 * kPi / static_cast<double>(n));
    long evals = n;
    while (true) {
        for (long j = 0; j < n; ++j) sum += g(2 * kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        evals += n;
        n *= 2;
        const Complex cur = sum * (2 * kPi / static_cast<double>(n));
        const double err = std::abs(cur - prev);
        const Complex signed_cur = static_cast<double>(c.orientation) * cur;
        if (!is_finite(cur)) throw NumericFailure("non-finite integrand on the circle", prev, err);
        if (err <= tol * std::max(1.0, std::abs(cur))) return {signed_cur, err, evals};
        if (n >= kCircleMaxNodes)
            throw NumericFailure("circle quadrature did not reach tolerance", signed_cur, err);
        prev = cur;
    }
}

inline QuadratureResult param_integral(const ComplexFn& f, double t0, double t1, double tol,
                                       const std::function<Complex(double)>& z,
                                       const std::function<Complex(double)>& dz) {
    auto r = quad::integrate<Complex>([&](double t) { return f(z(t)) * dz(t); }, t0, t1, tol, tol);
    if (!r.converged || !is_finite(r.value))
        throw NumericFailure("adaptive path quadrature did not reach tolerance", r.value, r.error);
    return {r.value, r.error, r.evaluations};
}

}  // namespace detail

/// Integral of f along the contour. Circles use the uniform trapezoid rule with node doubling;
/// segments and arcs use adaptive Gauss-Kronrod on the parameter.
inline QuadratureResult contour_integral(const ComplexFn& f, const Contour& c, double tol = 1e-10) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    return std::visit(
        [&](const auto& s) -> QuadratureResult {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Circle>) {
                return detail::circle_integral(f, s, tol);
            } else if constexpr (std::is_same_v<S, Segment>) {
                const Complex d = s.b - s.a;
                return detail::param_integral(
                    f, 0.0, 1.0, tol, [&](double t) { return s.a + t * d; }, [&](double) { return d; });
            } else if constexpr (std::is_same_v<S, Arc>) {
                return detail::param_integral(
                    f, s.t0, s.t1, tol, [&](double t) { return s.center + std::polar(s.radius, t); },
                    [&](double t) { return kI * std::polar(s.radius, t); });
            } else {
                std::vector<Contour> pieces;
                if constexpr (std::is_same_v<S, Polyline>) {
                    for (std::size_t i = 1; i < s.vertices.size(); ++i)
                        pieces.emplace_back(Segment{s.vertices[i - 1], s.vertices[i]});
                } else if constexpr (std::is_same_v<S, Composite>) {
                    pieces = s.pieces;
                } else {
                    pieces = detail::keyhole_pieces(s);
                }
                QuadratureResult total;
                const double piece_tol = tol / static_cast<double>(pieces.size());
                for (const auto& p : pieces) {
                    auto r = contour_integral(f, p, piece_tol);
                    total.value += r.value;
                    total.error_estimate += r.error_estimate;
                    total.evaluations += r.evaluations;
                }
                return total;
            }
        },
        c.shape);
}

/// (1/2 pi i) of the integral of dz/(z - p) around a closed contour, before rounding.
inline Complex winding_number_raw(const Contour& c, Complex p, double tol = 1e-10) {
    if (!is_closed(c)) throw DomainError("winding number needs a closed contour");
    if (distance_to(c, p) <= 1e-9 * std::max(1.0, detail::scale_of(c)))
        throw DomainError("point lies on the contour");
    auto r = contour_integral([p](Complex z) { return 1.0 / (z - p); }, c, tol);
    return r.value / (2 * kPi * kI);
}

namespace detail {

inline int round_to_integer(Complex raw, const char* what) {
    const double n = std::round(raw.real());
    if (std::abs(raw - Complex(n, 0.0)) > 1e-3)
        throw NumericFailure(std::string(what) + ": contour value is not close to an integer", raw,
                             std::abs(raw - Complex(n, 0.0)));
    return static_cast<int>(n);
}

}  // namespace detail

/// Signed number of turns of the closed contour around p.
inline int winding_number(const Contour& c, Complex p, double tol = 1e-10) {
    return detail::round_to_integer(winding_number_raw(c, p, tol), "winding number");
}

/// (1/2 pi i) of the integral of f'/f around the contour, before rounding.
inline Complex count_zeros_raw(const ComplexFn& f, const ComplexFn& f_prime, const Contour& c, double tol = 1e-10) {
    if (!is_closed(c)) throw DomainError("argument principle needs a closed contour");
    auto r = contour_integral([&](Complex z) { return f_prime(z) / f(z); }, c, tol);
    return r.value / (2 * kPi * kI);
}

/// Zeros (with multiplicity) of a holomorphic f inside the contour, by the argument principle.
inline int count_zeros_argument(const ComplexFn& f, const ComplexFn& f_prime, const Contour& c, double tol = 1e-10) {
    return detail::round_to_integer(count_zeros_raw(f, f_prime, c, tol), "zero count");
}

}  // namespace rk
