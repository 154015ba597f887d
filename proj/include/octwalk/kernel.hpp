#pragma once

#include "laurent.hpp"
#include "stepset.hpp"

namespace octwalk {

inline ZPoly char_poly(StepSet s) {
    ZPoly p;
    for (const auto& st : s.steps()) p.add_term({st.i, st.j, st.k}, 1);
    return p;
}

// S(x,y) of a quadrant model, multiplicities as coefficients
inline ZPoly char_poly(const QuadrantModel& q) {
    ZPoly p;
    for (int i = 0; i < 8; ++i) {
        if (!q.weights[i]) continue;
        auto [a, b] = quadrant_step(i);
        p.add_term({a, b, 0}, q.weights[i]);
    }
    return p;
}

struct KernelData {
    ZPoly S;
    std::array<ZPoly, 3> minus, zero, plus;  // A, B, C slices indexed by axis
    ZPoly D, E, F;                           // [x^-1 y^-1]S, [x^-1 z^-1]S, [y^-1 z^-1]S
    int epsilon = 0;

    // K = 1 - t S, coefficients by t-degree
    std::array<ZPoly, 2> kernel() const { return {ZPoly(1), -S}; }
};

inline ZPoly slice2(const ZPoly& S, int v, int w) {
    ZPoly r;
    for (const auto& [e, c] : S.terms())
        if (e[v] == -1 && e[w] == -1) {
            Exp f = e;
            f[v] = f[w] = 0;
            r.add_term(f, c);
        }
    return r;
}

inline KernelData kernel_data(const ZPoly& S) {
    KernelData k;
    k.S = S;
    for (int v = 0; v < 3; ++v) {
        k.minus[v] = S.slice(v, -1);
        k.zero[v] = S.slice(v, 0);
        k.plus[v] = S.slice(v, 1);
    }
    k.D = slice2(S, 0, 1);
    k.E = slice2(S, 0, 2);
    k.F = slice2(S, 1, 2);
    k.epsilon = S.coeff({-1, -1, -1}) != 0 ? 1 : 0;
    for (int v = 0; v < 3; ++v) {
        Exp m{}, p{};
        m[v] = -1;
        p[v] = 1;
        if (k.minus[v].shifted(m) + k.zero[v] + k.plus[v].shifted(p) != S)
            throw Error("kernel_data: slices do not recombine");
    }
    return k;
}

inline KernelData kernel_data(StepSet s) { return kernel_data(char_poly(s)); }

}  // namespace octwalk
