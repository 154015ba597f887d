#pragma once

#include <string>
#include <vector>

#include "group.hpp"
#include "series.hpp"

namespace octwalk {

// Why a non-identity orbit element does not contribute to the positive part.
enum class ExtractionKind {
    Laurent,          // Laurent coordinates, all of non-positive degree in one variable
    Ring,             // membership in one of the rings of the extraction condition
    NonPositiveSum,   // Laurent, every monomial has exponent sum <= 0
    WindowedSupport,  // expanded powers have no all-positive monomial in the window
    Fails,
};

struct ElementExtraction {
    int element = 0;  // index into GroupResult::elements
    ExtractionKind kind = ExtractionKind::Fails;
    int detail = -1;  // variable (Laurent) or ring index (Ring)

    bool syntactic() const { return kind == ExtractionKind::Laurent || kind == ExtractionKind::Ring; }
    bool ok() const { return kind != ExtractionKind::Fails; }
    std::string describe() const {
        switch (kind) {
            case ExtractionKind::Laurent: return std::string("laurent, non-positive in ") + "xyz"[detail];
            case ExtractionKind::Ring: return "ring " + std::to_string(detail);
            case ExtractionKind::NonPositiveSum: return "laurent, exponent sum <= 0";
            case ExtractionKind::WindowedSupport: return "no positive monomial in window";
            case ExtractionKind::Fails: return "fails";
        }
        return "?";
    }
};

struct ExtractionCheck {
    VarOrder order{};
    int dim = 3;
    std::vector<ElementExtraction> elements;

    int count_syntactic() const {
        int n = 0;
        for (const auto& e : elements) n += e.syntactic();
        return n;
    }
    bool outright() const { return count_syntactic() == int(elements.size()); }
    bool holds() const {
        for (const auto& e : elements)
            if (!e.ok()) return false;
        return true;
    }
};

namespace detail {

inline bool laurent_nonpositive(const Point& p, int dim, int v) {
    for (int a = 0; a < dim; ++a) {
        if (!p[a].is_laurent()) return false;
        if (!p[a].num().is_zero() && p[a].num().max_deg(v) > 0) return false;
    }
    return true;
}

// ring k for the order o (outermost first): the denominator is free of
// o[0..k], the numerator has degree <= 0 in o[k] and >= 0 in o[0..k-1]
inline bool in_ring(const Point& p, int dim, const VarOrder& o, int k) {
    for (int a = 0; a < dim; ++a) {
        const RatFunc& c = p[a];
        for (int m = 0; m <= k; ++m)
            if (!c.den().free_of(o[m])) return false;
        if (c.num().is_zero()) continue;
        if (c.num().max_deg(o[k]) > 0) return false;
        for (int m = 0; m < k; ++m)
            if (c.num().min_deg(o[m]) < 0) return false;
    }
    return true;
}

inline bool nonpositive_sum(const Point& p, int dim) {
    for (int a = 0; a < dim; ++a) {
        if (!p[a].is_laurent()) return false;
        for (const auto& [e, c] : p[a].num().terms()) {
            int s = 0;
            for (int v = 0; v < dim; ++v) s += e[v];
            if (s > 0) return false;
        }
    }
    return true;
}

inline RatFunc ratpow(const RatFunc& r, int k) {
    RatFunc out(1);
    for (int i = 0; i < k; ++i) out *= r;
    return out;
}

// x'^i y'^j (z'^k) with all exponents in [1, maxpow], expanded in order o,
// has no monomial with every active exponent in [1, W]
inline bool windowed_support(const Point& p, int dim, const VarOrder& o, int maxpow, int W) {
    Box b = Box::cube(1, W, dim);
    std::array<std::vector<RatFunc>, 3> pw;
    for (int a = 0; a < dim; ++a)
        for (int k = 0; k <= maxpow; ++k) pw[a].push_back(ratpow(p[a], k));
    std::array<int, 3> e{1, 1, dim == 3 ? 1 : 0};
    while (true) {
        RatFunc m = pw[0][e[0]] * pw[1][e[1]];
        if (dim == 3) m *= pw[2][e[2]];
        auto g = expand_box(m, o, b);
        for (const auto& c : g.v)
            if (c != 0) return false;
        int a = 0;
        while (a < dim && e[a] == maxpow) e[a++] = 1;
        if (a == dim) break;
        ++e[a];
    }
    return true;
}

inline std::vector<VarOrder> candidate_orders(int dim) {
    if (dim == 2) return {kOrderYX, VarOrder{0, 1, 2}};
    return {kOrderZYX, {2, 0, 1}, {1, 2, 0}, {1, 0, 2}, {0, 2, 1}, {0, 1, 2}};
}

inline ExtractionCheck classify_under(const GroupResult& G, int dim, const VarOrder& o, bool special, int maxpow,
                                      int W) {
    ExtractionCheck r;
    r.order = o;
    r.dim = dim;
    for (int i = 1; i < int(G.elements.size()); ++i) {
        const Point& p = G.elements[i].coords;
        ElementExtraction e{i, ExtractionKind::Fails, -1};
        for (int v = 0; v < dim && !e.ok(); ++v)
            if (laurent_nonpositive(p, dim, v)) e = {i, ExtractionKind::Laurent, v};
        for (int k = 0; k < dim && !e.ok(); ++k)
            if (in_ring(p, dim, o, k)) e = {i, ExtractionKind::Ring, k};
        if (!e.ok() && special) {
            if (nonpositive_sum(p, dim))
                e = {i, ExtractionKind::NonPositiveSum, -1};
            else if (windowed_support(p, dim, o, maxpow, W))
                e = {i, ExtractionKind::WindowedSupport, -1};
        }
        r.elements.push_back(e);
    }
    return r;
}

}  // namespace detail

// Classifies every non-identity orbit element. Expansion orders are tried in
// a fixed preference (z, y, x first; y, x in 2D); the first order under which
// all elements pass syntactically wins, otherwise the support tests are run on
// the flagged elements, with exponents up to `maxpow` and the window [1, W].
inline ExtractionCheck check_extraction(const GroupResult& G, int dim, int maxpow = 6, int W = 33) {
    if (!G.finite()) throw Error("check_extraction: group is not finite");
    auto orders = detail::candidate_orders(dim);
    for (const auto& o : orders) {
        auto r = detail::classify_under(G, dim, o, false, maxpow, W);
        if (r.outright()) return r;
    }
    ExtractionCheck first;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        auto r = detail::classify_under(G, dim, orders[i], true, maxpow, W);
        if (r.holds()) return r;
        if (i == 0) first = r;
    }
    return first;
}

}  // namespace octwalk
