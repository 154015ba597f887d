#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "fourier_motzkin.hpp"

namespace octwalk {

// Bit layout: the 26 nonzero steps in lexicographic order of (i,j,k) with
// -1 < 0 < 1, so bit 0 is (-1,-1,-1), bit 12 is (0,0,-1), bit 13 is (0,0,1)
// and bit 25 is (1,1,1). Every code, store and cache depends on this.
struct Step {
    int i = 0, j = 0, k = 0;
    int operator[](int a) const { return a == 0 ? i : a == 1 ? j : k; }
    friend bool operator==(const Step&, const Step&) = default;
};

inline constexpr int kNumSteps = 26;
inline constexpr std::uint32_t kFullMask = (1u << kNumSteps) - 1;

constexpr int step_bit(Step s) {
    int idx = (s.i + 1) * 9 + (s.j + 1) * 3 + (s.k + 1);
    return idx < 13 ? idx : idx - 1;
}

constexpr Step bit_step(int b) {
    int idx = b < 13 ? b : b + 1;
    return Step{idx / 9 - 1, (idx / 3) % 3 - 1, idx % 3 - 1};
}

struct StepSet {
    std::uint32_t mask = 0;

    StepSet() = default;
    explicit StepSet(std::uint32_t m) : mask(m) {}
    StepSet(std::initializer_list<Step> steps) {
        for (const auto& s : steps) mask |= 1u << step_bit(s);
    }

    bool contains(Step s) const { return mask >> step_bit(s) & 1u; }
    int size() const { return std::popcount(mask); }
    bool empty() const { return mask == 0; }
    std::vector<Step> steps() const {
        std::vector<Step> out;
        for (int b = 0; b < kNumSteps; ++b)
            if (mask >> b & 1u) out.push_back(bit_step(b));
        return out;
    }
    friend bool operator==(const StepSet&, const StepSet&) = default;
    friend auto operator<=>(const StepSet&, const StepSet&) = default;
};

inline char sign_char(int v) { return v < 0 ? '-' : v > 0 ? '+' : '0'; }

inline std::string render_step(Step s) {
    return {sign_char(s.i), sign_char(s.j), sign_char(s.k)};
}

inline std::string render_model(StepSet s) {
    std::string out;
    for (const auto& st : s.steps()) {
        if (!out.empty()) out += ';';
        out += render_step(st);
    }
    return out;
}

inline std::string render_code(std::uint32_t code) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%07x", code);
    return buf;
}

inline int parse_sign(char c, std::size_t pos) {
    switch (c) {
        case '-': return -1;
        case '0': return 0;
        case '+': return 1;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
}

inline StepSet parse_model(const std::string& text) {
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        std::uint64_t v = 0;
        for (std::size_t p = 2; p < text.size(); ++p) {
            char c = text[p];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw ParseError(std::string("bad hex digit '") + c + "'", p);
            v = v * 16 + d;
            if (v > kFullMask) throw ParseError("mask out of range", p);
        }
        return StepSet(std::uint32_t(v));
    }
    StepSet out;
    std::size_t p = 0;
    if (text.empty()) return out;
    while (true) {
        std::size_t start = p;
        std::array<int, 3> v{};
        for (int a = 0; a < 3; ++a, ++p) {
            if (p >= text.size()) throw ParseError("truncated step", p);
            v[a] = parse_sign(text[p], p);
        }
        Step s{v[0], v[1], v[2]};
        if (s == Step{}) throw ParseError("null step 000", start);
        if (out.contains(s)) throw ParseError("duplicate step " + render_step(s), start);
        out.mask |= 1u << step_bit(s);
        if (p == text.size()) break;
        if (text[p] != ';' && text[p] != ',') throw ParseError(std::string("expected separator, got '") + text[p] + "'", p);
        ++p;
    }
    return out;
}

// ---------------------------------------------------------------- permutations

inline constexpr std::array<std::array<int, 3>, 6> kPerms{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

// image of step s under p: new coordinate a is old coordinate p[a]
inline Step permute(Step s, const std::array<int, 3>& p) { return Step{s[p[0]], s[p[1]], s[p[2]]}; }

namespace detail {

struct PermTables {
    // byte-sliced lookup: 4 slices of 8 bits per permutation
    std::array<std::array<std::array<std::uint32_t, 256>, 4>, 6> t{};
    PermTables() {
        for (int q = 0; q < 6; ++q)
            for (int slice = 0; slice < 4; ++slice)
                for (int byte = 0; byte < 256; ++byte) {
                    std::uint32_t m = 0;
                    for (int b = 0; b < 8; ++b) {
                        int bit = slice * 8 + b;
                        if ((byte >> b & 1) && bit < kNumSteps)
                            m |= 1u << step_bit(permute(bit_step(bit), kPerms[q]));
                    }
                    t[q][slice][byte] = m;
                }
    }
};

inline const PermTables& perm_tables() {
    static const PermTables tables;
    return tables;
}

}  // namespace detail

inline std::uint32_t permute_mask(std::uint32_t m, int q) {
    const auto& t = detail::perm_tables().t[q];
    return t[0][m & 0xff] | t[1][m >> 8 & 0xff] | t[2][m >> 16 & 0xff] | t[3][m >> 24 & 0xff];
}

inline std::uint32_t canonical_code(std::uint32_t m) {
    std::uint32_t best = m;
    for (int q = 1; q < 6; ++q) best = std::min(best, permute_mask(m, q));
    return best;
}

inline std::uint32_t canonical_code(StepSet s) { return canonical_code(s.mask); }

// ---------------------------------------------------------------- bit classes

namespace detail {

struct StepClasses {
    std::array<std::uint32_t, 3> pos{}, neg{};
    std::uint32_t nonneg = 0;
    std::array<std::uint32_t, 3> unit{};      // e_c
    std::array<std::uint32_t, 3> pair{};      // {e_c, -e_c}
    std::array<std::uint32_t, 3> sum_le0{};   // s_a + s_b <= 0 for the other axes
    std::array<std::uint32_t, 3> neg_ab{};    // negative in one of the other axes
    std::array<std::array<std::uint32_t, 3>, 3> ge{};  // ge[a][b]: s_b >= s_a
    StepClasses() {
        for (int b = 0; b < kNumSteps; ++b) {
            Step s = bit_step(b);
            std::uint32_t m = 1u << b;
            bool nn = true;
            for (int a = 0; a < 3; ++a) {
                if (s[a] > 0) pos[a] |= m;
                if (s[a] < 0) { neg[a] |= m; nn = false; }
                for (int c = 0; c < 3; ++c)
                    if (s[c] >= s[a]) ge[a][c] |= m;
            }
            if (nn) nonneg |= m;
            for (int c = 0; c < 3; ++c) {
                int a = (c + 1) % 3, d = (c + 2) % 3;
                if (s[a] + s[d] <= 0) sum_le0[c] |= m;
                if (s[a] < 0 || s[d] < 0) neg_ab[c] |= m;
                if (s[a] == 0 && s[d] == 0) {
                    pair[c] |= m;
                    if (s[c] == 1) unit[c] = m;
                }
            }
        }
    }
};

inline const StepClasses& classes() {
    static const StepClasses c;
    return c;
}

// steps flagged by one pass of the three rules (and their permutations)
inline std::uint32_t unused_once(std::uint32_t m) {
    const auto& C = classes();
    if (m && (m & C.nonneg) == 0) return m;
    std::uint32_t out = 0;
    for (int a = 0; a < 3; ++a)
        if ((m & C.neg[a]) && !(m & C.pos[a])) out |= m & C.neg[a];
    for (int c = 0; c < 3; ++c)
        if ((m & C.unit[c]) && !(m & ~C.sum_le0[c]) && (m & ~C.pair[c])) out |= m & C.neg_ab[c];
    return out;
}

}  // namespace detail

inline bool has_unused_steps(std::uint32_t m) { return detail::unused_once(m) != 0; }

inline StepSet unused_steps(StepSet s) {
    std::uint32_t m = s.mask, removed = 0;
    for (std::uint32_t r; (r = detail::unused_once(m)) != 0;) {
        removed |= r;
        m &= ~r;
    }
    return StepSet(removed);
}

inline StepSet strip_unused(StepSet s) { return StepSet(s.mask & ~unused_steps(s).mask); }

// Enforcing only the axis inequality implies the other two.
inline bool lemma1d_check(std::uint32_t m, int axis) {
    const auto& C = detail::classes();
    for (int b = 0; b < 3; ++b) {
        if (b == axis) continue;
        if ((m & C.neg[b]) && (m & ~C.ge[axis][b])) return false;
    }
    return true;
}

inline bool lemma1d_check(StepSet s, int axis) { return lemma1d_check(s.mask, axis); }

inline bool dimension_at_most_one(std::uint32_t m) {
    return lemma1d_check(m, 0) || lemma1d_check(m, 1) || lemma1d_check(m, 2);
}

// ---------------------------------------------------------------- dimension

// Inequality `target` holds for every non-negative multiplicity tuple on which
// the `given` inequalities hold iff s_target >= sum lambda_g s_g on every step
// for some lambda >= 0 (Farkas); decided by exact elimination.
inline bool implied(StepSet s, int target, const std::vector<int>& given) {
    std::vector<fm::Row> rows;
    for (const auto& st : s.steps()) {
        fm::Row r;
        for (int g : given) r.coef.push_back(st[g]);
        r.rhs = st[target];
        rows.push_back(r);
    }
    for (std::size_t v = 0; v < given.size(); ++v) {
        fm::Row r;
        r.coef.assign(given.size(), 0);
        r.coef[v] = -1;
        r.rhs = 0;
        rows.push_back(r);
    }
    return fm::feasible(std::move(rows), given.size());
}

struct Certificate {
    int axis = 0;                                // the violated inequality
    std::vector<std::pair<Step, int>> tuple;     // multiplicities
};

struct AlphaBeta {
    int c = 2, a = 0, b = 1;  // s_c >= alpha s_a + beta s_b
    mpq_class alpha, beta;
};

struct DimensionAnalysis {
    int dimension = 3;
    std::array<bool, 3> redundant{};
    std::vector<Certificate> certificates;
    std::optional<AlphaBeta> alpha_beta;

    int redundant_axis() const {  // preferred axis to drop for projection
        for (int c = 2; c >= 0; --c)
            if (redundant[c]) return c;
        return -1;
    }
};

inline std::array<long long, 3> tuple_forms(const std::vector<std::pair<Step, int>>& tuple) {
    std::array<long long, 3> v{};
    for (const auto& [st, w] : tuple)
        for (int a = 0; a < 3; ++a) v[a] += (long long)w * st[a];
    return v;
}

namespace detail {

// Small extreme-ray search: when the inequality is not implied, a violating
// ray exists with support of size <= 3 and entries bounded by the 2x2 minors.
inline std::optional<Certificate> find_certificate(StepSet s, int c) {
    auto steps = s.steps();
    int n = int(steps.size());
    int a = (c + 1) % 3, b = (c + 2) % 3;
    std::optional<Certificate> best;
    auto test = [&](const std::vector<std::pair<Step, int>>& t) {
        auto v = tuple_forms(t);
        return v[a] >= 0 && v[b] >= 0 && v[c] < 0;
    };
    for (int i = 0; i < n; ++i)
        for (int wi = 1; wi <= 4; ++wi) {
            std::vector<std::pair<Step, int>> t{{steps[i], wi}};
            if (test(t)) return Certificate{c, t};
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int wi = 1; wi <= 4; ++wi)
                for (int wj = 1; wj <= 4; ++wj) {
                    std::vector<std::pair<Step, int>> t{{steps[i], wi}, {steps[j], wj}};
                    if (test(t)) return Certificate{c, t};
                }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l)
                for (int wi = 1; wi <= 4; ++wi)
                    for (int wj = 1; wj <= 4; ++wj)
                        for (int wl = 1; wl <= 4; ++wl) {
                            std::vector<std::pair<Step, int>> t{{steps[i], wi}, {steps[j], wj}, {steps[l], wl}};
                            if (test(t)) return Certificate{c, t};
                        }
    return best;
}

inline std::vector<mpq_class> small_rationals() {
    std::vector<mpq_class> v;
    for (int den = 1; den <= 4; ++den)
        for (int num = 0; num <= 4; ++num) {
            mpq_class q(num, den);
            q.canonicalize();
            if (std::find(v.begin(), v.end(), q) == v.end()) v.push_back(q);
        }
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace detail

inline bool alpha_beta_holds(StepSet s, const AlphaBeta& ab) {
    for (const auto& st : s.steps())
        if (mpq_class(st[ab.c]) < ab.alpha * st[ab.a] + ab.beta * st[ab.b]) return false;
    return true;
}

inline std::optional<AlphaBeta> find_alpha_beta(StepSet s, int c) {
    int a = c == 0 ? 1 : 0, b = c == 2 ? 1 : 2;
    std::vector<std::pair<mpq_class, mpq_class>> order{
        {0, 0}, {1, 0}, {0, 1}, {1, 1}, {mpq_class(1, 2), mpq_class(1, 2)}, {1, 2}, {2, 1}};
    auto qs = detail::small_rationals();
    for (const auto& x : qs)
        for (const auto& y : qs) order.emplace_back(x, y);
    for (const auto& [al, be] : order) {
        AlphaBeta ab{c, a, b, al, be};
        if (alpha_beta_holds(s, ab)) return ab;
    }
    return std::nullopt;
}

inline DimensionAnalysis dimension(StepSet s) {
    if (!unused_steps(s).empty()) throw Error("dimension: model has unused steps " + render_model(unused_steps(s)));
    DimensionAnalysis d;
    for (int c = 0; c < 3; ++c) d.redundant[c] = implied(s, c, {(c + 1) % 3, (c + 2) % 3});
    bool all_nonneg = (s.mask & ~detail::classes().nonneg) == 0;
    bool one = false;
    for (int a = 0; a < 3 && !one; ++a)
        one = implied(s, (a + 1) % 3, {a}) && implied(s, (a + 2) % 3, {a});
    int nred = d.redundant[0] + d.redundant[1] + d.redundant[2];
    d.dimension = all_nonneg ? 0 : one ? 1 : nred > 0 ? 2 : 3;
    for (int c = 0; c < 3; ++c) {
        if (d.redundant[c]) continue;
        auto cert = detail::find_certificate(s, c);
        if (!cert) throw Error("dimension: no certificate for a non-redundant axis");
        d.certificates.push_back(*cert);
    }
    if (d.dimension == 2) d.alpha_beta = find_alpha_beta(s, d.redundant_axis());
    return d;
}

// ---------------------------------------------------------------- quadrant models

inline constexpr int quadrant_index(int a, int b) {
    int idx = (a + 1) * 3 + (b + 1);
    return idx < 4 ? idx : idx - 1;
}

inline constexpr std::pair<int, int> quadrant_step(int idx) {
    int v = idx < 4 ? idx : idx + 1;
    return {v / 3 - 1, v % 3 - 1};
}

struct QuadrantModel {
    std::array<int, 8> weights{};
    int dropped_null_steps = 0;

    int weight(int a, int b) const { return weights[quadrant_index(a, b)]; }
    int total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0); }
    bool multiplicity_free() const {
        return std::all_of(weights.begin(), weights.end(), [](int w) { return w <= 1; });
    }
    QuadrantModel swapped() const {
        QuadrantModel q;
        q.dropped_null_steps = dropped_null_steps;
        for (int i = 0; i < 8; ++i) {
            auto [a, b] = quadrant_step(i);
            q.weights[quadrant_index(b, a)] = weights[i];
        }
        return q;
    }
    QuadrantModel canonical() const {
        QuadrantModel s = swapped();
        return s.weights < weights ? s : *this;
    }
    friend bool operator==(const QuadrantModel&, const QuadrantModel&) = default;
    friend auto operator<=>(const QuadrantModel&, const QuadrantModel&) = default;
};

inline std::string render_quadrant(const QuadrantModel& q) {
    std::string out;
    for (int i = 0; i < 8; ++i) {
        if (!q.weights[i]) continue;
        auto [a, b] = quadrant_step(i);
        if (!out.empty()) out += ';';
        out += sign_char(a);
        out += sign_char(b);
        if (q.weights[i] != 1) out += "*" + std::to_string(q.weights[i]);
    }
    return out;
}

inline QuadrantModel parse_quadrant(const std::string& text) {
    QuadrantModel q;
    std::size_t p = 0;
    while (p < text.size()) {
        std::size_t start = p;
        if (p + 2 > text.size()) throw ParseError("truncated step", p);
        int a = parse_sign(text[p], p), b = parse_sign(text[p + 1], p + 1);
        p += 2;
        int w = 1;
        if (p < text.size() && text[p] == '*') {
            std::size_t q0 = ++p;
            while (p < text.size() && std::isdigit((unsigned char)text[p])) ++p;
            if (q0 == p) throw ParseError("missing multiplicity", q0);
            w = std::stoi(text.substr(q0, p - q0));
            if (w < 1) throw ParseError("multiplicity must be positive", q0);
        }
        if (a == 0 && b == 0) throw ParseError("null step 00", start);
        if (q.weights[quadrant_index(a, b)]) throw ParseError("duplicate step", start);
        q.weights[quadrant_index(a, b)] = w;
        if (p < text.size()) {
            if (text[p] != ';' && text[p] != ',') throw ParseError("expected separator", p);
            ++p;
        }
    }
    return q;
}

// Unnormalized projection along `axis`; remaining axes keep their order.
inline QuadrantModel project_raw(StepSet s, int axis) {
    int a = axis == 0 ? 1 : 0, b = axis == 2 ? 1 : 2;
    QuadrantModel q;
    for (const auto& st : s.steps()) {
        if (st[a] == 0 && st[b] == 0) ++q.dropped_null_steps;
        else ++q.weights[quadrant_index(st[a], st[b])];
    }
    return q;
}

inline QuadrantModel project_to_quadrant(StepSet s, int redundant_axis) {
    int a = redundant_axis == 0 ? 1 : 0, b = redundant_axis == 2 ? 1 : 2;
    if (!implied(s, redundant_axis, {a, b})) throw Error("project_to_quadrant: axis not redundant");
    return project_raw(s, redundant_axis).canonical();
}

// ---------------------------------------------------------------- enumeration

struct ModelFilter {
    bool no_unused = false;
    int min_dim = 0, max_dim = 3;  // only checked when no_unused is set
};

inline bool passes(StepSet s, const ModelFilter& f) {
    if (!f.no_unused) return true;
    if (has_unused_steps(s.mask)) return false;
    if (f.min_dim <= 0 && f.max_dim >= 3) return true;
    if (f.min_dim >= 2 && dimension_at_most_one(s.mask)) return false;
    int d = dimension(s).dimension;
    return d >= f.min_dim && d <= f.max_dim;
}

// One representative per canonical code, ascending code.
inline void for_each_model(int max_card, const ModelFilter& f, const std::function<void(StepSet)>& fn) {
    if (max_card < 0 || max_card > kNumSteps) throw Error("max_card out of range");
    std::vector<std::uint32_t> codes;
    for (int card = 0; card <= max_card; ++card) {
        if (card == 0) {
            codes.push_back(0);
            continue;
        }
        // Gosper's hack over masks of this cardinality
        std::uint32_t m = (1u << card) - 1;
        while (m <= kFullMask) {
            if (canonical_code(m) == m) codes.push_back(m);
            std::uint32_t c = m & -m, r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    std::sort(codes.begin(), codes.end());
    for (auto c : codes)
        if (passes(StepSet(c), f)) fn(StepSet(c));
}

inline std::vector<StepSet> enumerate_models(int max_card, const ModelFilter& f = {}) {
    std::vector<StepSet> out;
    for_each_model(max_card, f, [&](StepSet s) { out.push_back(s); });
    return out;
}

}  // namespace octwalk
