#pragma once

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rk/core/rational_function.hpp"
#include "rk/intersection/sparse_polynomial.hpp"

namespace rk::io {

/// Expression tree of the shared text grammar: variables x, y, z; the unit i; p/q rationals and
/// decimals; + - * / ^; juxtaposition as multiplication; function calls for the numeric backend.
struct Expr {
    enum class Kind { Number, Var, Const, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind = Kind::Number;
    GaussianRational number;
    char var = 0;
    std::string name;
    std::shared_ptr<const Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

inline const std::vector<std::string>& function_names() {
    static const std::vector<std::string> names = {"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"};
    return names;
}

inline ExprPtr make(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

class Parser {
public:
    explicit Parser(std::string s) : s_(std::move(s)) {}

    ExprPtr parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        ExprPtr e = sum();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.';
    }

    ExprPtr sum() {
        ExprPtr e = product();
        while (true) {
            if (eat('+')) e = make(Expr::Kind::Add, e, product());
            else if (eat('-')) e = make(Expr::Kind::Sub, e, product());
            else return e;
        }
    }
    ExprPtr product() {
        ExprPtr e = unary();
        while (true) {
            if (eat('*')) e = make(Expr::Kind::Mul, e, unary());
            else if (eat('/')) e = make(Expr::Kind::Div, e, unary());
            else if (starts_primary()) e = make(Expr::Kind::Mul, e, power());
            else return e;
        }
    }
    ExprPtr unary() {
        if (eat('-')) return make(Expr::Kind::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    ExprPtr power() {
        ExprPtr base = primary();
        if (eat('^')) return make(Expr::Kind::Pow, base, unary());
        return base;
    }
    ExprPtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
            const std::string word = s_.substr(pos_, end - pos_);
            for (const auto& f : function_names())
                if (word == f) {
                    pos_ = end;
                    if (!eat('(')) fail("function " + word + " needs '('");
                    auto e = std::make_shared<Expr>();
                    e->kind = Expr::Kind::Call;
                    e->name = word;
                    e->lhs = sum();
                    if (!eat(')')) fail("missing ')'");
                    return e;
                }
            if (word == "pi") {
                pos_ = end;
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Const;
                e->name = word;
                return e;
            }
            // single letters; "xy" reads as x*y by juxtaposition
            ++pos_;
            if (c == 'i') {
                auto e = std::make_shared<Expr>();
                e->number = GaussianRational(0, 1);
                return e;
            }
            if (c == 'x' || c == 'y' || c == 'z') {
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Var;
                e->var = c;
                return e;
            }
            --pos_;
            fail("unknown identifier '" + word + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }
    ExprPtr number() {
        const std::size_t start = pos_;
        BigInt digits = 0, scale = 1;
        bool dot = false, any = false;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            if (s_[pos_] == '.') {
                if (dot) fail("malformed number");
                dot = true;
            } else {
                digits = digits * 10 + (s_[pos_] - '0');
                if (dot) scale *= 10;
                any = true;
            }
            ++pos_;
        }
        if (!any) {
            pos_ = start;
            fail("malformed number");
        }
        BigRational v(digits, scale);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
            (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
            ++pos_;
            int sign = 1;
            if (s_[pos_] == '-' || s_[pos_] == '+') sign = s_[pos_++] == '-' ? -1 : 1;
            int ex = 0;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("malformed exponent");
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ex = ex * 10 + (s_[pos_++] - '0');
            BigRational p = 1;
            for (int k = 0; k < ex; ++k) p *= 10;
            v = sign > 0 ? BigRational(v * p) : BigRational(v / p);
        }
        auto e = std::make_shared<Expr>();
        e->number = GaussianRational(v);
        return e;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

/// Exact integer value of a constant subexpression, used for exponents.
inline long long exact_integer(const Expr& e);

}  // namespace detail

inline ExprPtr parse_expression(const std::string& text) { return detail::Parser(text).parse(); }

/// Variables that occur in the expression.
inline std::string variables_of(const Expr& e) {
    std::string out;
    auto add = [&](const std::string& s) {
        for (char c : s)
            if (out.find(c) == std::string::npos) out += c;
    };
    if (e.kind == Expr::Kind::Var) add(std::string(1, e.var));
    if (e.lhs) add(variables_of(*e.lhs));
    if (e.rhs) add(variables_of(*e.rhs));
    return out;
}

namespace detail {

/// Evaluates with values in a field V built from Gaussian-rational constants and one leaf per variable.
template <class V, class Leaf, class FromNumber>
V eval_exact(const Expr& e, Leaf&& leaf, FromNumber&& from_number) {
    auto rec = [&](const ExprPtr& p) { return eval_exact<V>(*p, leaf, from_number); };
    switch (e.kind) {
        case Expr::Kind::Number: return from_number(e.number);
        case Expr::Kind::Var: return leaf(e.var);
        case Expr::Kind::Neg: return V() - rec(e.lhs);
        case Expr::Kind::Add: return rec(e.lhs) + rec(e.rhs);
        case Expr::Kind::Sub: return rec(e.lhs) - rec(e.rhs);
        case Expr::Kind::Mul: return rec(e.lhs) * rec(e.rhs);
        case Expr::Kind::Div: return rec(e.lhs) / rec(e.rhs);
        case Expr::Kind::Pow: {
            const long long k = exact_integer(*e.rhs);
            if (k > 1000 || k < -1000) throw ParseError("exponent too large");
            V base = rec(e.lhs), r = from_number(GaussianRational(1));
            for (long long j = 0; j < (k < 0 ? -k : k); ++j) r = r * base;
            return k < 0 ? from_number(GaussianRational(1)) / r : r;
        }
        case Expr::Kind::Const:
        case Expr::Kind::Call: throw ParseError("'" + e.name + "' is not allowed in an exact expression");
    }
    throw ParseError("bad expression");
}

struct GaussianValue {
    GaussianRational v;
    friend GaussianValue operator+(const GaussianValue& a, const GaussianValue& b) { return {a.v + b.v}; }
    friend GaussianValue operator-(const GaussianValue& a, const GaussianValue& b) { return {a.v - b.v}; }
    friend GaussianValue operator*(const GaussianValue& a, const GaussianValue& b) { return {a.v * b.v}; }
    friend GaussianValue operator/(const GaussianValue& a, const GaussianValue& b) { return {a.v / b.v}; }
};

inline long long exact_integer(const Expr& e) {
    auto v = eval_exact<GaussianValue>(
        e, [](char c) -> GaussianValue { throw ParseError(std::string("exponent depends on ") + c); },
        [](const GaussianRational& g) { return GaussianValue{g}; });
    if (v.v.im != 0 || boost::multiprecision::denominator(v.v.re) != 1) throw ParseError("exponent must be an integer");
    return boost::multiprecision::numerator(v.v.re).convert_to<long long>();
}

inline bool mentions_i(const Expr& e) {
    if (e.kind == Expr::Kind::Number && e.number.im != 0) return true;
    return (e.lhs && mentions_i(*e.lhs)) || (e.rhs && mentions_i(*e.rhs));
}

inline char single_variable(const Expr& e, char preferred) {
    const std::string vars = variables_of(e);
    if (vars.size() > 1) throw ParseError("expected one variable, found \"" + vars + "\"");
    return vars.empty() ? preferred : vars[0];
}

}  // namespace detail

/// Rational function in its single variable (any of x, y, z) over Q(i).
inline RationalFunction<GaussianRational> to_rational_function_gaussian(const Expr& e) {
    using RF = RationalFunction<GaussianRational>;
    using P = Polynomial<GaussianRational>;
    const char v = detail::single_variable(e, 'z');
    return detail::eval_exact<RF>(
        e,
        [v](char c) {
            if (c != v) throw ParseError("unexpected variable");
            return RF(P{GaussianRational(0), GaussianRational(1)});
        },
        [](const GaussianRational& g) { return RF(P::constant(g)); });
}

/// Rational function over Q; rejects the unit i.
inline RationalFunction<BigRational> to_rational_function(const Expr& e) {
    using RF = RationalFunction<BigRational>;
    using P = Polynomial<BigRational>;
    if (detail::mentions_i(e)) throw ParseError("expression has complex coefficients");
    const char v = detail::single_variable(e, 'z');
    return detail::eval_exact<RF>(
        e,
        [v](char c) {
            if (c != v) throw ParseError("unexpected variable");
            return RF(P{BigRational(0), BigRational(1)});
        },
        [](const GaussianRational& g) { return RF(P::constant(g.re)); });
}

inline bool is_real_expression(const Expr& e) { return !detail::mentions_i(e); }

/// Polynomial over Q in the variables x, y, z (indices 0, 1, 2; only the first N are allowed).
namespace detail {

template <int N>
struct SparseValue {
    SparsePolynomial<N> p;
    friend SparseValue operator+(const SparseValue& a, const SparseValue& b) { return {a.p + b.p}; }
    friend SparseValue operator-(const SparseValue& a, const SparseValue& b) { return {a.p - b.p}; }
    friend SparseValue operator*(const SparseValue& a, const SparseValue& b) { return {a.p * b.p}; }
    friend SparseValue operator/(const SparseValue& a, const SparseValue& b) {
        if (b.p.total_degree() != 0) throw ParseError("polynomial division must be by a nonzero constant");
        return {BigRational(1) / b.p.coeff({}) * a.p};
    }
};

}  // namespace detail

template <int N>
SparsePolynomial<N> to_sparse_polynomial(const Expr& e) {
    using P = SparsePolynomial<N>;
    using V = detail::SparseValue<N>;
    if (detail::mentions_i(e)) throw ParseError("polynomial must have rational coefficients");
    auto v = detail::eval_exact<V>(
        e,
        [](char c) {
            const int idx = c - 'x';
            if (idx >= N) throw ParseError(std::string("variable ") + c + " not allowed here");
            return V{P::variable(idx)};
        },
        [](const GaussianRational& g) { return V{P::constant(g.re)}; });
    return v.p;
}

/// Value and first derivative of a complex expression in one variable.
struct Dual {
    Complex v, d;
};

inline Dual eval_dual(const Expr& e, Complex z) {
    auto rec = [&](const ExprPtr& p) { return eval_dual(*p, z); };
    switch (e.kind) {
        case Expr::Kind::Number: return {ScalarTraits<GaussianRational>::to_complex(e.number), 0.0};
        case Expr::Kind::Var: return {z, 1.0};
        case Expr::Kind::Const: return {kPi, 0.0};
        case Expr::Kind::Neg: {
            auto a = rec(e.lhs);
            return {-a.v, -a.d};
        }
        case Expr::Kind::Add: {
            auto a = rec(e.lhs), b = rec(e.rhs);
            return {a.v + b.v, a.d + b.d};
        }
        case Expr::Kind::Sub: {
            auto a = rec(e.lhs), b = rec(e.rhs);
            return {a.v - b.v, a.d - b.d};
        }
        case Expr::Kind::Mul: {
            auto a = rec(e.lhs), b = rec(e.rhs);
            return {a.v * b.v, a.d * b.v + a.v * b.d};
        }
        case Expr::Kind::Div: {
            auto a = rec(e.lhs), b = rec(e.rhs);
            return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
        }
        case Expr::Kind::Pow: {
            auto a = rec(e.lhs);
            if (variables_of(*e.rhs).empty()) {
                const Complex k = rec(e.rhs).v;
                if (k.imag() == 0 && k.real() == std::round(k.real()) && std::abs(k.real()) <= 1000) {
                    const int n = static_cast<int>(k.real());
                    if (n == 0) return {1.0, 0.0};
                    const Complex p = std::pow(a.v, n - 1);
                    return {p * a.v, static_cast<double>(n) * p * a.d};
                }
                const Complex v = std::pow(a.v, k);
                return {v, k * v / a.v * a.d};
            }
            auto b = rec(e.rhs);
            const Complex v = std::exp(b.v * std::log(a.v));
            return {v, v * (b.d * std::log(a.v) + b.v * a.d / a.v)};
        }
        case Expr::Kind::Call: {
            auto a = rec(e.lhs);
            const Complex u = a.v;
            Complex v, dv;
            if (e.name == "sin") v = std::sin(u), dv = std::cos(u);
            else if (e.name == "cos") v = std::cos(u), dv = -std::sin(u);
            else if (e.name == "tan") v = std::tan(u), dv = 1.0 / (std::cos(u) * std::cos(u));
            else if (e.name == "exp") v = dv = std::exp(u);
            else if (e.name == "log") v = std::log(u), dv = 1.0 / u;
            else if (e.name == "sqrt") v = std::sqrt(u), dv = 0.5 / std::sqrt(u);
            else if (e.name == "sinh") v = std::sinh(u), dv = std::cosh(u);
            else if (e.name == "cosh") v = std::cosh(u), dv = std::sinh(u);
            else throw ParseError("unknown function " + e.name);
            return {v, dv * a.d};
        }
    }
    throw ParseError("bad expression");
}

/// Parses "a", "a+bi", "(a, b)" style complex literals through the shared grammar.
inline Complex parse_complex(const std::string& text) {
    auto e = parse_expression(text);
    if (!variables_of(*e).empty()) throw ParseError("expected a number, got \"" + text + "\"");
    const Complex v = eval_dual(*e, 0.0).v;
    if (!is_finite(v)) throw ParseError("number is not finite: \"" + text + "\"");
    return v;
}

}  // namespace rk::io
