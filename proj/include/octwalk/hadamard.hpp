#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "counting.hpp"
#include "stepset.hpp"

namespace octwalk {

// S = (U x {0}) u (V x T) after reordering coordinates as `axes`: the first
// `d` entries of `axes` form the first block, the rest the second one.
struct HadamardDecomposition {
    int d = 1;                      // size of the first block; the kind is (d, 3 - d)
    std::array<int, 3> axes{};      // original axis of each reordered coordinate
    std::vector<Exp> U, V, T;       // U, V in the first block, T in the second (unused slots are 0)

    std::string kind() const { return "(" + std::to_string(d) + "," + std::to_string(3 - d) + ")"; }
};

namespace detail {

inline std::string render_block(const Exp& e, int len) {
    std::string s;
    for (int a = 0; a < len; ++a) s += sign_char(e[a]);
    return s;
}

inline std::string render_block_set(const std::vector<Exp>& v, int len) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + render_block(v[i], len);
    return s.empty() ? "{}" : s;
}

}  // namespace detail

inline StepSet hadamard_reconstruct(const HadamardDecomposition& h) {
    std::uint32_t mask = 0;
    auto place = [&](const Exp& first, const Exp& second) {
        Exp e{};
        for (int a = 0; a < h.d; ++a) e[h.axes[a]] = first[a];
        for (int a = h.d; a < 3; ++a) e[h.axes[a]] = second[a - h.d];
        Step st{e[0], e[1], e[2]};
        std::uint32_t b = 1u << step_bit(st);
        if (mask & b) throw Error("hadamard: union is not disjoint");
        mask |= b;
    };
    for (const auto& u : h.U) place(u, Exp{});
    for (const auto& v : h.V)
        for (const auto& t : h.T) place(v, t);
    return StepSet{mask};
}

// All (1,2) and (2,1) decompositions; blocks keep the original axis order.
inline std::vector<HadamardDecomposition> detect_hadamard(StepSet s) {
    std::vector<HadamardDecomposition> out;
    auto steps = s.steps();
    for (int d = 1; d <= 2; ++d)
        for (int lone = 0; lone < 3; ++lone) {
            // (1,2): `lone` is the first block; (2,1): `lone` is the second block
            std::array<int, 3> axes{};
            int pos = 0;
            if (d == 1) axes[pos++] = lone;
            for (int a = 0; a < 3; ++a)
                if (a != lone) axes[pos++] = a;
            if (d == 2) axes[pos++] = lone;
            std::set<Exp> U, V, T, rest;
            for (const auto& st : steps) {
                Exp e{st.i, st.j, st.k};
                Exp first{}, second{};
                for (int a = 0; a < d; ++a) first[a] = e[axes[a]];
                for (int a = d; a < 3; ++a) second[a - d] = e[axes[a]];
                if (second == Exp{}) {
                    U.insert(first);
                } else {
                    V.insert(first);
                    T.insert(second);
                    rest.insert(e);
                }
            }
            if (V.empty() || rest.size() != V.size() * T.size()) continue;
            HadamardDecomposition h;
            h.d = d;
            h.axes = axes;
            h.U.assign(U.begin(), U.end());
            h.V.assign(V.begin(), V.end());
            h.T.assign(T.begin(), T.end());
            out.push_back(std::move(h));
        }
    return out;
}

inline bool is_hadamard(StepSet s) { return !detect_hadamard(s).empty(); }

inline nlohmann::json hadamard_json(const HadamardDecomposition& h) {
    return {{"kind", h.kind()},
            {"permutation", std::string{"xyz"[h.axes[0]], "xyz"[h.axes[1]], "xyz"[h.axes[2]]}},
            {"U", detail::render_block_set(h.U, h.d)},
            {"V", detail::render_block_set(h.V, h.d)},
            {"T", detail::render_block_set(h.T, 3 - h.d)}};
}

// o(p, q; n) = sum_k c1(p; n, k) c2(q; k), coordinates put back in place.
inline CountTable<mpz_class> hadamard_assemble(const HadamardDecomposition& h, int N) {
    int delta = 3 - h.d;
    auto C1 = count_coloured(h.U, h.V, h.d, N);
    std::vector<std::pair<Exp, long>> tsteps;
    for (const auto& t : h.T) tsteps.push_back({t, 1});
    auto C2 = count_cone(delta, tsteps, N);
    auto T = build_table<mpz_class>(3, N, [&](const Exp& e, int n) {
        Exp p{}, q{};
        for (int a = 0; a < h.d; ++a) p[a] = e[h.axes[a]];
        for (int a = h.d; a < 3; ++a) q[a - h.d] = e[h.axes[a]];
        mpz_class v = 0;
        for (int k = 0; k <= n; ++k) {
            mpz_class c2 = C2.at(q, k);
            if (c2 == 0) continue;
            v += C1.at(p, n, k) * c2;
        }
        return v;
    });
    T.model = render_model(hadamard_reconstruct(h));
    return T;
}

// O = [z^{>=0}] (1 - zbar^2) Q for a (2,1)-Hadamard model with T = {+1, -1},
// Q counting walks free along that axis.
inline CountTable<mpz_class> reflection_combine(StepSet s, int axis, int N) {
    bool ok = false;
    for (const auto& h : detect_hadamard(s))
        if (h.d == 2 && h.axes[2] == axis && h.T == std::vector<Exp>{Exp{-1, 0, 0}, Exp{1, 0, 0}}) ok = true;
    if (!ok) throw Error("reflection_combine: model is not (2,1)-Hadamard with T = z + 1/z along this axis");
    auto M = count_mixed(s, axis, N);
    Exp two{};
    two[axis] = 2;
    auto T = build_table<mpz_class>(3, N, [&](const Exp& e, int n) -> mpz_class { return M.at(e, n) - M.at(e + two, n); });
    T.model = render_model(s);
    return T;
}

}  // namespace octwalk
