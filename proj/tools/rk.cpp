#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rk/io/parse.hpp"
#include "rk/selftest.hpp"

using json = nlohmann::json;
using namespace rk;

namespace {

constexpr int kExitOk = 0, kExitInput = 2, kExitNumeric = 3;

struct Globals {
    bool json = false;
    double tol = 1e-8;
    int grid = 64;
    int trunc = 200;
    bool grid_given = false;
};

struct Output {
    json inputs = json::object();
    json result = json::object();
    json diagnostics = json::object();
    int status = kExitOk;
};

template <class T>
std::string show(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const SpherePoint& p) { return p.infinite ? json("inf") : cjson(p.value); }

json divisor_json(const Divisor& d) {
    json out = json::array();
    for (const auto& [p, n] : d.entries()) out.push_back({{"point", point_json(p)}, {"coeff", n}});
    return out;
}

Complex json_complex(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(what + " must be a number or [re, im]");
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + " is not valid JSON: " + e.what());
    }
}

/// Divisor from [{"point": "inf" | [re, im], "coeff": n}, ...].
Divisor divisor_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("divisor must be a JSON list of {point, coeff}");
    Divisor d;
    for (const auto& e : j) {
        if (!e.is_object() || !e.contains("point") || !e.contains("coeff") || !e["coeff"].is_number_integer())
            throw ParseError("divisor entries need \"point\" and an integer \"coeff\"");
        const auto& p = e["point"];
        if (p.is_string()) {
            if (p.get<std::string>() != "inf") throw ParseError("divisor point must be \"inf\" or [re, im]");
            d.add(at_infinity(), e["coeff"].get<int>());
        } else {
            d.add(at(json_complex(p, "divisor point")), e["coeff"].get<int>());
        }
    }
    return d;
}

PeriodPair lattice_from_json(const json& j) {
    if (!j.is_object() || !j.contains("omega1") || !j.contains("omega2"))
        throw ParseError("lattice must be {\"omega1\": [re, im], \"omega2\": [re, im]}");
    return PeriodPair(json_complex(j["omega1"], "omega1"), json_complex(j["omega2"], "omega2"));
}

/// An exact constant of the expression grammar.
GaussianRational exact_constant(const std::string& text) {
    const auto e = io::parse_expression(text);
    if (!io::variables_of(*e).empty()) throw ParseError("expected a constant, got \"" + text + "\"");
    const auto f = io::to_rational_function_gaussian(*e);
    if (f.num().degree() > 0 || f.den().degree() > 0) throw ParseError("expected a constant, got \"" + text + "\"");
    return f.num()[0] / f.den()[0];
}

ComplexFn numeric_function(const io::ExprPtr& e) {
    io::detail::single_variable(*e, 'z');
    return [e](Complex z) { return io::eval_dual(*e, z).v; };
}

ComplexFn numeric_derivative(const io::ExprPtr& e) {
    return [e](Complex z) { return io::eval_dual(*e, z).d; };
}

std::function<double(double)> real_function(const std::string& text) {
    const auto e = io::parse_expression(text);
    io::detail::single_variable(*e, 'x');
    return [e](double t) {
        const Complex v = io::eval_dual(*e, Complex(t, 0.0)).v;
        if (std::abs(v.imag()) > 1e-12 * (1 + std::abs(v.real()))) throw DomainError("boundary function is not real");
        return v.real();
    };
}

bool is_rational(const io::Expr& e) {
    try {
        io::to_rational_function_gaussian(e);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

SurfaceModel surface_model(const std::string& name) {
    if (name == "P2") return SurfaceModel::p2();
    if (name == "P1xP1") return SurfaceModel::p1xp1();
    if (name == "BlP2") return SurfaceModel::blowup_p2();
    if (name.size() > 1 && name[0] == 'F') {
        try {
            std::size_t used = 0;
            const int n = std::stoi(name.substr(1), &used);
            if (used + 1 == name.size()) return SurfaceModel::hirzebruch(n);
        } catch (const std::logic_error&) {
        }
    }
    throw ParseError("unknown surface \"" + name + "\" (P2, P1xP1, F<n>, BlP2)");
}

ClassVector class_vector(const std::string& text) {
    ClassVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ParseError("class must be a comma-separated list of integers, got \"" + text + "\"");
        }
    }
    if (out.empty()) throw ParseError("empty class vector");
    return out;
}

void print_text(const std::string& command, const Output& out) {
    if (command == "surface" && out.result.contains("csv") && out.result["csv"].is_string()) {
        std::cout << out.result["csv"].get<std::string>();
        return;
    }
    for (const auto& [k, v] : out.result.items()) {
        if (v.is_array() && !v.empty() && v[0].is_object()) {
            std::cout << k << ":\n";
            for (const auto& row : v) std::cout << "  " << row.dump() << '\n';
        } else {
            std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    Globals g;
    if (const char* env = std::getenv("RK_DEFAULT_TOL")) {
        try {
            std::size_t used = 0;
            g.tol = std::stod(env, &used);
            if (used != std::string(env).size() || !(g.tol > 0)) throw std::invalid_argument(env);
        } catch (const std::logic_error&) {
            std::cerr << "rk: RK_DEFAULT_TOL must be a positive number, got \"" << env << "\"\n";
            return kExitInput;
        }
    }

    CLI::App app{"Residues, divisors, intersections, theta functions and harmonic analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g.json, "Emit a JSON envelope");
    app.add_option("--tol", g.tol, "Tolerance (default 1e-8 or RK_DEFAULT_TOL)");
    auto* grid_opt = app.add_option("--grid", g.grid, "Grid size for surface integrals and quadrature nodes");
    app.add_option("--trunc", g.trunc, "Lattice truncation N");

    std::string command;
    Output out;
    std::map<std::string, std::function<void()>> actions;
    auto sub = [&](const std::string& name, const std::string& help) {
        return app.add_subcommand(name, help);
    };

    // residue
    std::string f_text, g_text, at_text, center_text = "0", s_text;
    double radius = 1.0;
    auto* residue = sub("residue", "Residue of a rational function at a pole, or all poles with residues");
    residue->add_option("--f", f_text, "Rational function of z")->required();
    residue->add_option("--at", at_text, "Pole (exact constant)");
    actions[residue->get_name()] = [&] {
            out.inputs = {{"f", f_text}};
            const auto f = io::to_rational_function_gaussian(*io::parse_expression(f_text));
            if (!at_text.empty()) {
                out.inputs["at"] = at_text;
                const GaussianRational p = exact_constant(at_text);
                const GaussianRational r = residue_rational(f, p);
                out.result = {{"residue", show(r)}, {"value", cjson(ScalarTraits<GaussianRational>::to_complex(r))}};
                return;
            }
            json poles = json::array();
            for (const auto& pr : poles_and_residues(f))
                poles.push_back({{"pole", cjson(pr.pole)}, {"order", pr.order}, {"residue", cjson(pr.residue)}});
            out.result = {{"poles", poles}};
    };

    // contour
    auto* contour = sub("contour", "Integral of f over the circle |z - center| = radius");
    contour->add_option("--f", f_text, "Function of z")->required();
    contour->add_option("--center", center_text, "Circle center");
    contour->add_option("--radius", radius, "Circle radius");
    actions[contour->get_name()] = [&] {
            out.inputs = {{"f", f_text}, {"center", center_text}, {"radius", radius}};
            const auto e = io::parse_expression(f_text);
            const Circle c{io::parse_complex(center_text), radius};
            if (is_rational(*e)) {
                const auto r = integrate_by_residues_checked(io::to_rational_function_gaussian(*e), c, g.tol);
                out.result = {{"value", cjson(r.value)}, {"quadrature", cjson(r.quadrature.value)}, {"method", "residues"}};
                out.diagnostics = {{"error_estimate", r.quadrature.error_estimate}, {"evaluations", r.quadrature.evaluations}};
                return;
            }
            const auto q = contour_integral(numeric_function(e), Contour(c), g.tol);
            out.result = {{"value", cjson(q.value)}, {"method", "quadrature"}};
            out.diagnostics = {{"error_estimate", q.error_estimate}, {"evaluations", q.evaluations}};
    };

    // zeros
    auto* zeros = sub("zeros", "Number of zeros inside |z - center| < radius by the argument principle");
    zeros->add_option("--f", f_text, "Holomorphic function of z")->required();
    zeros->add_option("--center", center_text, "Disk center");
    zeros->add_option("--radius", radius, "Disk radius");
    actions[zeros->get_name()] = [&] {
            out.inputs = {{"f", f_text}, {"center", center_text}, {"radius", radius}};
            const auto e = io::parse_expression(f_text);
            const Contour c(Circle{io::parse_complex(center_text), radius});
            const Complex raw = count_zeros_raw(numeric_function(e), numeric_derivative(e), c, g.tol);
            const int n = count_zeros_argument(numeric_function(e), numeric_derivative(e), c, g.tol);
            out.result = {{"count", n}, {"raw", cjson(raw)}};
    };

    // integral
    std::string integral_name;
    std::vector<std::string> params;
    auto* integral = sub("integral", "Catalog integral in closed form and by quadrature");
    integral->add_option("name", integral_name, "trig_rational, fourier_quadratic, dirichlet, keyhole_power, cuberoot")->required();
    integral->add_option("--param", params, "Parameter as key=value (repeatable)");
    actions[integral->get_name()] = [&] {
            std::map<std::string, double> p;
            for (const auto& kv : params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw ParseError("parameter must be key=value, got \"" + kv + "\"");
                const Complex v = io::parse_complex(kv.substr(eq + 1));
                if (v.imag() != 0) throw ParseError("parameter must be real");
                p[kv.substr(0, eq)] = v.real();
            }
            out.inputs = {{"name", integral_name}, {"params", p}};
            const auto& names = classical_catalog();
            if (std::find(names.begin(), names.end(), integral_name) == names.end())
                throw ParseError("unknown integral \"" + integral_name + "\"");
            const auto c = classical_integral(integral_name, p);
            out.result = {{"closed_form", c.closed_form},
                          {"quadrature", c.numeric.value.real()},
                          {"agrees", c.agrees()},
                          {"tolerance", c.tolerance}};
            out.diagnostics = {{"error_estimate", c.numeric.error_estimate}, {"evaluations", c.numeric.evaluations}};
            if (!c.agrees()) out.status = kExitNumeric;
    };

    // gamma
    int residue_n = -1;
    auto* gamma_cmd = sub("gamma", "Euler Gamma at s, or its residue at -n");
    gamma_cmd->add_option("--s", s_text, "Complex argument");
    gamma_cmd->add_option("--residue", residue_n, "Residue at s = -n")->check(CLI::NonNegativeNumber);
    actions[gamma_cmd->get_name()] = [&] {
            if (residue_n >= 0) {
                out.inputs = {{"residue", residue_n}};
                const BigRational r = gamma_residue(residue_n);
                out.result = {{"residue", show(r)}, {"value", to_double(r)}};
                return;
            }
            if (s_text.empty()) throw ParseError("gamma needs --s or --residue");
            out.inputs = {{"s", s_text}};
            out.result = {{"value", cjson(rk::gamma(io::parse_complex(s_text)))}};
    };

    // divisor
    bool form = false;
    auto* divisor = sub("divisor", "Principal divisor of f, or the divisor of f dz");
    divisor->add_option("--f", f_text, "Rational function of z")->required();
    divisor->add_flag("--form", form, "Divisor of the 1-form f dz");
    actions[divisor->get_name()] = [&] {
            out.inputs = {{"f", f_text}, {"form", form}};
            const auto f = io::to_rational_function_gaussian(*io::parse_expression(f_text));
            const Divisor d = form ? form_divisor(f) : principal_divisor(f);
            out.result = {{"entries", divisor_json(d)}, {"degree", d.degree()}};
    };

    // sections
    int m = 0;
    std::string s0_text;
    auto* sections = sub("sections", "Global sections of O(m) on the sphere");
    sections->add_option("--m", m, "Degree m")->required();
    sections->add_option("--s0", s0_text, "Affine part of a section; prints its divisor");
    actions[sections->get_name()] = [&] {
            out.inputs = {{"m", m}};
            const auto s = h0_Om(m);
            out.result = {{"dimension", s.dimension}, {"exponents", s.exponents}};
            if (!s0_text.empty()) {
                out.inputs["s0"] = s0_text;
                const auto f = io::to_rational_function_gaussian(*io::parse_expression(s0_text));
                if (f.den().degree() > 0) throw ParseError("section must be a polynomial");
                out.result["divisor"] = divisor_json(section_divisor_Om(m, f.num() * Polynomial<GaussianRational>::constant(GaussianRational(1) / f.den()[0])));
            }
    };

    // rr
    std::string divisor_text;
    int genus = 0, deg = 0, ell = -1, ellk = -1;
    auto* rr = sub("rr", "Riemann-Roch: l(D) on the sphere, or a check of l(D) - l(K-D) = 1 - g + deg D");
    rr->add_option("--divisor", divisor_text, "Divisor on the sphere as JSON [{\"point\": ..., \"coeff\": n}]");
    rr->add_option("--genus", genus, "Genus")->check(CLI::NonNegativeNumber);
    rr->add_option("--deg", deg, "deg D");
    rr->add_option("--ell", ell, "l(D)");
    rr->add_option("--ellk", ellk, "l(K - D)");
    actions[rr->get_name()] = [&] {
            if (!divisor_text.empty()) {
                const Divisor D = divisor_from_json(parse_json(divisor_text, "divisor"));
                out.inputs = {{"divisor", divisor_json(D)}};
                const int a = ell_P1(D).dimension;
                const int b = ell_P1(Divisor::point(at_infinity(), -2) - D).dimension;
                out.result = {{"degree", D.degree()}, {"ell", a}, {"ell_K_minus_D", b}, {"holds", rr_verify(0, D.degree(), a, b)}};
                return;
            }
            if (ell < 0 || ellk < 0) {
                if (genus == 0) ell = std::max(deg + 1, 0), ellk = std::max(-deg - 1, 0);
                else if (genus == 1 && deg > 0) ell = ell_elliptic(deg), ellk = 0;
                else throw ParseError("rr needs --ell and --ellk for this genus and degree");
            }
            out.inputs = {{"genus", genus}, {"deg", deg}, {"ell", ell}, {"ellk", ellk}};
            out.result = {{"holds", rr_verify(genus, deg, ell, ellk)}, {"rhs", 1 - genus + deg}, {"lhs", ell - ellk}};
    };

    // cover
    auto* cover = sub("cover", "Genus of the double cover y^2 = f(x)");
    cover->add_option("--f", f_text, "Squarefree polynomial in x")->required();
    actions[cover->get_name()] = [&] {
            out.inputs = {{"f", f_text}};
            const auto r = io::to_rational_function_gaussian(*io::parse_expression(f_text));
            if (r.den().degree() > 0) throw ParseError("f must be a polynomial");
            const DoubleCoverSpec<GaussianRational> spec{r.num() * Polynomial<GaussianRational>::constant(GaussianRational(1) / r.den()[0])};
            json branch = json::array();
            for (const auto& p : branch_values(spec)) branch.push_back(point_json(p));
            out.result = {{"genus", genus_double_cover(spec)}, {"branch_values", branch}};
    };

    // mult
    auto* mult = sub("mult", "Intersection multiplicity of f = 0 and g = 0 at the origin");
    mult->add_option("--f", f_text, "Polynomial in x, y")->required();
    mult->add_option("--g", g_text, "Polynomial in x, y")->required();
    actions[mult->get_name()] = [&] {
            out.inputs = {{"f", f_text}, {"g", g_text}};
            const auto f = io::to_sparse_polynomial<2>(*io::parse_expression(f_text));
            const auto gg = io::to_sparse_polynomial<2>(*io::parse_expression(g_text));
            const int n = local_multiplicity(f, gg);
            out.result = {{"multiplicity", n}};
            try {
                out.diagnostics["resultant"] = mult_origin_resultant(f, gg);
            } catch (const DomainError& e) {
                out.diagnostics["resultant"] = std::string("unavailable: ") + e.what();
            }
            // g = y - h(x): the graph method applies
            if (gg.coeff({0, 1}) == 1 && n > 0) {
                bool graph = true;
                PolynomialQ h;
                for (const auto& [e, c] : gg.terms()) {
                    if (e[1] == 0) h = h - PolynomialQ::monomial(e[0], c);
                    else if (e[0] != 0 || e[1] != 1) graph = false;
                }
                if (graph) out.diagnostics["graph"] = mult_origin_graph(f, h);
            }
    };

    // bezout
    auto* bez = sub("bezout", "Intersections of two projective plane curves F(x,y,z) = G(x,y,z) = 0");
    bez->add_option("--f", f_text, "Homogeneous polynomial in x, y, z")->required();
    bez->add_option("--g", g_text, "Homogeneous polynomial in x, y, z")->required();
    actions[bez->get_name()] = [&] {
            out.inputs = {{"f", f_text}, {"g", g_text}};
            const auto r = bezout_verify(io::to_sparse_polynomial<3>(*io::parse_expression(f_text)),
                                         io::to_sparse_polynomial<3>(*io::parse_expression(g_text)));
            json pts = json::array(), clusters = json::array();
            for (const auto& p : r.points)
                pts.push_back({{"point", {show(p.point[0]), show(p.point[1]), show(p.point[2])}}, {"multiplicity", p.multiplicity}});
            for (const auto& c : r.clusters)
                clusters.push_back({{"location", c.location}, {"factor", show(c.factor)}, {"multiplicity", c.multiplicity}});
            out.result = {{"points", pts}, {"clusters", clusters}, {"total", r.total}, {"expected", r.expected}};
            out.diagnostics = {{"shear", {show(r.shear_a), show(r.shear_b)}}};
    };

    // chi, genus
    std::string surface_name = "P2", class_text;
    auto add_surface_opts = [&](CLI::App* s) {
        s->add_option("--surface", surface_name, "P2, P1xP1, F<n> or BlP2");
        s->add_option("--class", class_text, "Class coordinates, comma separated")->required();
    };
    auto* chi = sub("chi", "Euler characteristic of O(D) on a surface");
    add_surface_opts(chi);
    actions[chi->get_name()] = [&] {
            const auto model = surface_model(surface_name);
            const auto D = class_vector(class_text);
            out.inputs = {{"surface", model.name()}, {"class", D}, {"basis", model.basis}};
            out.result = {{"chi", surface_chi(model, D)},
                          {"self_intersection", intersection_number(model, D, D)},
                          {"canonical_degree", intersection_number(model, D, model.canonical)}};
    };
    auto* genus_cmd = sub("genus", "Arithmetic genus of a curve class by adjunction");
    add_surface_opts(genus_cmd);
    actions[genus_cmd->get_name()] = [&] {
            const auto model = surface_model(surface_name);
            const auto C = class_vector(class_text);
            out.inputs = {{"surface", model.name()}, {"class", C}, {"basis", model.basis}};
            out.result = {{"genus", adjunction_genus(model, C)}};
    };

    // theta
    std::string z_text = "0", tau_text = "i", omega_text;
    int index = 3, derivative = 0;
    auto* theta = sub("theta", "Jacobi theta function, or the Riemann theta function with --omega");
    theta->add_option("--z", z_text, "Argument (a JSON list with --omega)");
    theta->add_option("--tau", tau_text, "Modulus in the upper half plane");
    theta->add_option("--index", index, "Jacobi index 1..4")->check(CLI::Range(1, 4));
    theta->add_option("--derivative", derivative, "Derivative order 0..3")->check(CLI::Range(0, 3));
    theta->add_option("--omega", omega_text, "Period matrix as a JSON list of rows of [re, im]");
    actions[theta->get_name()] = [&] {
            if (!omega_text.empty()) {
                const json rows = parse_json(omega_text, "omega");
                const json zs = parse_json(z_text == "0" ? "null" : z_text, "z");
                if (!rows.is_array() || rows.empty()) throw ParseError("omega must be a nonempty list of rows");
                const auto n = static_cast<Eigen::Index>(rows.size());
                Eigen::MatrixXcd M(n, n);
                Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (!rows[i].is_array() || rows[i].size() != rows.size()) throw ParseError("omega must be square");
                    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = json_complex(rows[i][j], "omega entry");
                }
                if (!zs.is_null()) {
                    if (!zs.is_array() || zs.size() != rows.size()) throw ParseError("z must be a list matching omega");
                    for (Eigen::Index i = 0; i < n; ++i) z(i) = json_complex(zs[i], "z entry");
                }
                out.inputs = {{"omega", rows}, {"z", zs}};
                const auto r = riemann_theta(z, RiemannPeriodMatrix(M), g.tol);
                out.result = {{"value", cjson(r.value)}};
                out.diagnostics = {{"error_estimate", r.tail_bound}, {"truncation", r.N}};
                return;
            }
            out.inputs = {{"z", z_text}, {"tau", tau_text}, {"index", index}, {"derivative", derivative}};
            const TauValue tau(io::parse_complex(tau_text));
            out.result = {{"value", cjson(jacobi_theta(index, io::parse_complex(z_text), tau, std::min(g.tol, 1e-14), derivative))}};
    };

    // wp
    std::string lattice_text = R"({"omega1": [1, 0], "omega2": [0, 1]})", method = "theta";
    auto* wp = sub("wp", "Weierstrass p and p' on a lattice");
    wp->add_option("--z", z_text, "Argument")->required();
    wp->add_option("--lattice", lattice_text, "Lattice as JSON {omega1, omega2}");
    wp->add_option("--method", method, "theta or lattice")->check(CLI::IsMember({"theta", "lattice"}));
    actions[wp->get_name()] = [&] {
            const PeriodPair L = lattice_from_json(parse_json(lattice_text, "lattice"));
            const Complex z = io::parse_complex(z_text);
            out.inputs = {{"z", z_text}, {"lattice", {{"omega1", cjson(L.omega1)}, {"omega2", cjson(L.omega2)}}}, {"method", method}};
            const auto inv = eisenstein(L, g.trunc);
            const Complex lat = wp_lattice(z, L, g.trunc);
            if (method == "theta") {
                const ThetaWeierstrass W(L, g.tol);
                const Complex v = W.wp(z);
                out.result = {{"wp", cjson(v)}, {"wp_prime", cjson(W.wp_prime(z))}, {"eta1", cjson(W.eta1())}};
                out.diagnostics = {{"lattice_difference", std::abs(v - lat)}, {"truncation", g.trunc}};
            } else {
                out.result = {{"wp", cjson(lat)}, {"wp_prime", cjson(wp_prime_lattice(z, L, g.trunc))}};
                out.diagnostics = {{"truncation", g.trunc}, {"ode_residual", ode_residual(z, L, g.trunc)}};
            }
            out.result["g2"] = cjson(inv.g2);
            out.result["g3"] = cjson(inv.g3);
    };

    // periods
    double e1 = 1, e2 = 0, e3 = -1;
    auto* periods = sub("periods", "Periods of y^2 = 4(x - e1)(x - e2)(x - e3) for real e1 > e2 > e3");
    periods->add_option("--e1", e1, "Largest root");
    periods->add_option("--e2", e2, "Middle root");
    periods->add_option("--e3", e3, "Smallest root");
    actions[periods->get_name()] = [&] {
            out.inputs = {{"e1", e1}, {"e2", e2}, {"e3", e3}};
            const PeriodPair L = periods_real_cubic(e1, e2, e3);
            const ThetaWeierstrass W(L, g.tol);
            out.result = {{"omega1", cjson(L.omega1)},
                          {"omega2", cjson(L.omega2)},
                          {"tau", cjson(L.tau())},
                          {"half_period_values",
                           {cjson(W.wp(L.omega1 / 2.0)), cjson(W.wp((L.omega1 + L.omega2) / 2.0)), cjson(W.wp(L.omega2 / 2.0))}}};
    };

    // poisson
    double r = 0.5, theta_angle = 0.0, hx = 0.0, hy = 1.0, window = 1e9, bound = 1.0;
    bool halfplane = false;
    std::vector<double> breaks;
    auto* poisson = sub("poisson", "Poisson extension of boundary data to the disk or the upper half plane");
    poisson->add_option("--f", f_text, "Boundary function of one real variable")->required();
    poisson->add_option("--r", r, "Disk radius of the target point");
    poisson->add_option("--theta", theta_angle, "Angle of the target point");
    poisson->add_option("--breaks", breaks, "Jump points of f in radians");
    poisson->add_flag("--halfplane", halfplane, "Use the upper half plane");
    poisson->add_option("--x", hx, "Half-plane target x");
    poisson->add_option("--y", hy, "Half-plane target y > 0");
    poisson->add_option("--window", window, "Half-plane integration window");
    poisson->add_option("--bound", bound, "Bound on |f| outside the window");
    actions[poisson->get_name()] = [&] {
            const auto f = real_function(f_text);
            if (halfplane) {
                out.inputs = {{"f", f_text}, {"x", hx}, {"y", hy}, {"window", window}};
                const auto res = poisson_halfplane(hx, hy, f, window, g.tol, bound);
                out.result = {{"value", res.value}};
                out.diagnostics = {{"truncation", res.tail_bound}};
                return;
            }
            out.inputs = {{"f", f_text}, {"r", r}, {"theta", theta_angle}, {"breaks", breaks}};
            const int nodes = g.grid_given ? g.grid : 512;
            out.result = {{"value", poisson_extend_quadrature(f, r, theta_angle, nodes, breaks, std::min(g.tol, 1e-10))}};
            if (breaks.empty()) out.diagnostics = {{"evaluations", nodes}};
    };

    // laplace
    std::string domain = "circle", modes_text;
    double sphere_c = 1.0;
    auto* laplace = sub("laplace", "Solve -Laplace u = f on the circle or the flat torus, or Laplace u = c z on the sphere");
    laplace->add_option("--domain", domain, "circle, torus or sphere")->check(CLI::IsMember({"circle", "torus", "sphere"}));
    laplace->add_option("--modes", modes_text,
                        "circle: [{\"n\":3,\"kind\":\"sin\",\"c\":1}]; torus: [{\"m\":1,\"n\":1,\"px\":\"cos\",\"py\":\"cos\",\"c\":1}]");
    laplace->add_option("--c", sphere_c, "Sphere coefficient c");
    actions[laplace->get_name()] = [&] {
            out.inputs = {{"domain", domain}};
            if (domain == "sphere") {
                out.inputs["c"] = sphere_c;
                out.result = {{"coefficient", laplace_sphere_l1(sphere_c)}};
                return;
            }
            const json modes = parse_json(modes_text.empty() ? "[]" : modes_text, "modes");
            if (!modes.is_array()) throw ParseError("modes must be a JSON list");
            out.inputs["modes"] = modes;
            auto parity = [](const json& j, const char* key) {
                const std::string s = j.value(key, "cos");
                if (s != "cos" && s != "sin") throw ParseError("parity must be cos or sin");
                return s == "cos" ? Parity::Cos : Parity::Sin;
            };
            try {
                if (domain == "circle") {
                    TrigPolynomial f;
                    for (const auto& md : modes) {
                        const int n = md.at("n").get<int>();
                        const double c = md.value("c", 1.0);
                        if (n < 0) throw ParseError("mode index must be nonnegative");
                        const bool sine = parity(md, "kind") == Parity::Sin;
                        if (n == 0) {
                            if (!sine) f.a0 += c;
                            continue;
                        }
                        auto& v = sine ? f.b : f.a;
                        if (v.size() < static_cast<std::size_t>(n)) v.resize(static_cast<std::size_t>(n), 0.0);
                        v[static_cast<std::size_t>(n - 1)] += c;
                    }
                    const auto u = laplace_circle(f);
                    json sol = json::array();
                    for (int n = 1; n <= u.degree(); ++n) {
                        if (u.cos_coeff(n) != 0) sol.push_back({{"n", n}, {"kind", "cos"}, {"c", u.cos_coeff(n)}});
                        if (u.sin_coeff(n) != 0) sol.push_back({{"n", n}, {"kind", "sin"}, {"c", u.sin_coeff(n)}});
                    }
                    out.result = {{"solution", sol}, {"energy", circle_energy(u)}, {"rhs_norm_squared", l2_norm_squared(f)}};
                    return;
                }
                TorusModes f;
                for (const auto& md : modes)
                    f[TorusMode{md.at("m").get<int>(), md.at("n").get<int>(), parity(md, "px"), parity(md, "py")}] += md.value("c", 1.0);
                const auto u = laplace_torus(f);
                json sol = json::array();
                for (const auto& [k, c] : u)
                    sol.push_back({{"m", k.m}, {"n", k.n}, {"px", k.px == Parity::Cos ? "cos" : "sin"},
                                   {"py", k.py == Parity::Cos ? "cos" : "sin"}, {"c", c}});
                out.result = {{"solution", sol}, {"energy", torus_energy(u)}};
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad mode entry: ") + e.what());
            }
    };

    // surface
    std::string kind = "sphere", csv_path;
    double big_r = 2.0, small_r = 1.0;
    auto* surface = sub("surface", "Total curvature and area of the unit sphere or a torus; CSV grid of K and dA");
    surface->add_option("--kind", kind, "sphere or torus")->check(CLI::IsMember({"sphere", "torus"}));
    surface->add_option("--R", big_r, "Torus center radius");
    surface->add_option("--r", small_r, "Torus tube radius");
    surface->add_option("--csv", csv_path, "Write the u,v,K,dA grid to a file, or - for stdout");
    actions[surface->get_name()] = [&] {
            const SurfaceSpec s = kind == "sphere" ? SurfaceSpec::sphere() : SurfaceSpec::torus(big_r, small_r);
            out.inputs = {{"kind", kind}, {"grid", g.grid}};
            if (kind == "torus") out.inputs["R"] = big_r, out.inputs["r"] = small_r;
            if (csv_path == "-" && !g.json) {
                out.result = {{"csv", surface_grid_csv(s, g.grid)}};
                return;
            }
            const double K = total_curvature(s, g.grid);
            out.result = {{"total_curvature", K}, {"area", surface_area(s, g.grid)}, {"euler_characteristic", K / (2 * kPi)}};
            if (!csv_path.empty() && csv_path != "-") {
                std::ofstream file(csv_path);
                if (!file) throw DomainError("cannot write " + csv_path);
                file << surface_grid_csv(s, g.grid);
                out.result["csv"] = csv_path;
            } else if (csv_path == "-") {
                out.result["csv"] = surface_grid_csv(s, g.grid);
            }
    };

    // selftest
    int only = 0;
    auto* selftest = sub("selftest", "Run the acceptance table");
    selftest->add_option("--id", only, "Run one row")->check(CLI::Range(1, 17));
    actions[selftest->get_name()] = [&] {
            out.inputs = {{"id", only}};
            json rows = json::array();
            int passed = 0;
            for (const auto& c : selftest::criteria()) {
                if (only != 0 && c.id != only) continue;
                const auto res = selftest::run(c);
                rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", res.pass}, {"detail", res.detail}});
                if (res.pass) ++passed;
                if (!g.json) std::cout << (res.pass ? "PASS " : "FAIL ") << c.id << ' ' << c.name << ": " << res.detail << '\n';
            }
            out.result = {{"rows", rows}, {"passed", passed}, {"total", rows.size()}};
            if (passed != static_cast<int>(rows.size())) out.status = kExitNumeric;
    };

    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
        std::cerr << "rk: unknown subcommand \"" << argv[1] << "\"\n\n" << app.help();
        return kExitInput;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "rk: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }
    g.grid_given = grid_opt->count() > 0;
    command = app.get_subcommands().front()->get_name();

    auto fail = [&](int code, const std::string& kind_name, const std::string& message, const json& extra = json::object()) {
        std::cerr << "rk " << command << ": " << message << '\n';
        if (g.json) {
            json diag = extra;
            diag["error"] = {{"kind", kind_name}, {"message", message}};
            std::cout << json{{"command", command}, {"inputs", out.inputs}, {"result", nullptr}, {"diagnostics", diag}}.dump(2) << '\n';
        }
        return code;
    };

    try {
        if (!(g.tol > 0)) throw DomainError("--tol must be positive");
        if (g.grid < 1) throw DomainError("--grid must be positive");
        actions.at(command)();
    } catch (const NumericFailure& e) {
        return fail(kExitNumeric, "numeric", e.what(), {{"best", cjson(e.best())}, {"error_estimate", e.error_estimate()}});
    } catch (const ConsistencyError& e) {
        return fail(kExitNumeric, "consistency", e.what());
    } catch (const ParseError& e) {
        return fail(kExitInput, "parse", e.what());
    } catch (const DomainError& e) {
        return fail(kExitInput, "domain", e.what());
    } catch (const std::exception& e) {
        return fail(kExitNumeric, "internal", e.what());
    }

    if (g.json) {
        out.diagnostics["tolerance"] = g.tol;
        std::cout << json{{"command", command}, {"inputs", out.inputs}, {"result", out.result}, {"diagnostics", out.diagnostics}}.dump(2)
                  << '\n';
    } else if (command != "selftest") {
        print_text(command, out);
    } else {
        std::cout << out.result["passed"].get<int>() << '/' << out.result["total"].get<std::size_t>() << " passed\n";
    }
    return out.status;
}
