#pragma once

#include <string>
#include <vector>

#include "rk/core/error.hpp"

namespace rk {

/// Integer coordinates of a divisor class in the basis of a SurfaceModel.
using ClassVector = std::vector<long long>;

/// One of the tabled surfaces with its intersection form and canonical class.
struct SurfaceModel {
    enum class Kind { P2, P1xP1, Hirzebruch, BlowupP2 };

    Kind kind = Kind::P2;
    int n = 0;
    std::vector<std::string> basis;
    std::vector<std::vector<long long>> gram;
    ClassVector canonical;
    int chiO = 1;

    static SurfaceModel p2() { return {Kind::P2, 0, {"H"}, {{1}}, {-3}, 1}; }
    static SurfaceModel p1xp1() { return {Kind::P1xP1, 0, {"F1", "F2"}, {{0, 1}, {1, 0}}, {-2, -2}, 1}; }
    static SurfaceModel hirzebruch(int n) {
        if (n < 0) throw DomainError("Hirzebruch surface index must be nonnegative");
        return {Kind::Hirzebruch, n, {"s", "f"}, {{-n, 1}, {1, 0}}, {-2, -(n + 2)}, 1};
    }
    static SurfaceModel blowup_p2() { return {Kind::BlowupP2, 0, {"H", "E"}, {{1, 0}, {0, -1}}, {-3, 1}, 1}; }

    std::string name() const {
        switch (kind) {
            case Kind::P2: return "P2";
            case Kind::P1xP1: return "P1xP1";
            case Kind::Hirzebruch: return "F" + std::to_string(n);
            case Kind::BlowupP2: return "BlP2";
        }
        return {};
    }
};

/// D . E = D^T gram E.
inline long long intersection_number(const SurfaceModel& model, const ClassVector& D, const ClassVector& E) {
    const std::size_t r = model.basis.size();
    if (D.size() != r || E.size() != r)
        throw DomainError("class vector length " + std::to_string(D.size() != r ? D.size() : E.size()) +
                          " does not match the basis size " + std::to_string(r) + " of " + model.name());
    long long s = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) s += D[i] * model.gram[i][j] * E[j];
    return s;
}

inline ClassVector canonical_class(const SurfaceModel& model) { return model.canonical; }

/// chi(O(D)) = chi(O) + (D.D - D.K)/2.
inline long long surface_chi(const SurfaceModel& model, const ClassVector& D) {
    const long long q = intersection_number(model, D, D) - intersection_number(model, D, model.canonical);
    if (q % 2 != 0) throw ConsistencyError("D.D - D.K is odd; the intersection table is inconsistent");
    return model.chiO + q / 2;
}

/// Arithmetic genus from adjunction: 2g - 2 = C.(C + K).
inline long long adjunction_genus(const SurfaceModel& model, const ClassVector& C) {
    ClassVector ck = C;
    for (std::size_t i = 0; i < ck.size() && i < model.canonical.size(); ++i) ck[i] += model.canonical[i];
    const long long q = intersection_number(model, C, ck);
    if (q % 2 != 0 || q < -2) throw DomainError("class is not that of a smooth curve: C.(C+K) = " + std::to_string(q));
    return 1 + q / 2;
}

}  // namespace rk
