#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "laurent.hpp"
#include "ratfunc.hpp"

namespace octwalk {

// Inclusive exponent box in x, y, z.
struct Box {
    Exp lo{}, hi{};

    static Box cube(int lo, int hi, int dim = 3) {
        Box b;
        for (int v = 0; v < dim; ++v) {
            b.lo[v] = lo;
            b.hi[v] = hi;
        }
        return b;
    }
    bool empty() const { return hi[0] < lo[0] || hi[1] < lo[1] || hi[2] < lo[2]; }
    bool contains(const Exp& e) const {
        for (int v = 0; v < 3; ++v)
            if (e[v] < lo[v] || e[v] > hi[v]) return false;
        return true;
    }
    std::size_t size() const {
        if (empty()) return 0;
        return std::size_t(hi[0] - lo[0] + 1) * (hi[1] - lo[1] + 1) * (hi[2] - lo[2] + 1);
    }
    Box shrunk(const Exp& below, const Exp& above) const {
        Box b = *this;
        for (int v = 0; v < 3; ++v) {
            b.lo[v] += below[v];
            b.hi[v] -= above[v];
        }
        return b;
    }
    friend bool operator==(const Box&, const Box&) = default;
};

// Values on a box, stored densely.
template <class C>
struct Dense {
    Box box;
    std::vector<C> v;

    Dense() = default;
    explicit Dense(const Box& b) : box(b), v(b.size()) {}

    std::size_t index(const Exp& e) const {
        return (std::size_t(e[0] - box.lo[0]) * (box.hi[1] - box.lo[1] + 1) + (e[1] - box.lo[1])) *
                   (box.hi[2] - box.lo[2] + 1) +
               (e[2] - box.lo[2]);
    }
    C& at(const Exp& e) { return v[index(e)]; }
    const C& at(const Exp& e) const { return v[index(e)]; }
    C get(const Exp& e) const { return box.contains(e) ? v[index(e)] : C(0); }

    template <class F>
    void for_each(F f) const {
        for (int a = box.lo[0]; a <= box.hi[0]; ++a)
            for (int b = box.lo[1]; b <= box.hi[1]; ++b)
                for (int c = box.lo[2]; c <= box.hi[2]; ++c) f(Exp{a, b, c}, at(Exp{a, b, c}));
    }

    LaurentPoly<C> to_poly() const {
        LaurentPoly<C> p;
        for_each([&](const Exp& e, const C& c) { p.add_term(e, c); });
        return p;
    }
    static Dense from_poly(const LaurentPoly<C>& p, const Box& b) {
        Dense d(b);
        for (const auto& [e, c] : p.terms())
            if (b.contains(e)) d.at(e) = c;
        return d;
    }
};

// Variable priority for iterated Laurent expansions, outermost first:
// {2,1,0} expands in z, then y, then x.
using VarOrder = std::array<int, 3>;

inline constexpr VarOrder kOrderZYX{2, 1, 0};
inline constexpr VarOrder kOrderYX{1, 0, 2};

inline bool order_less(const Exp& a, const Exp& b, const VarOrder& ord) {
    for (int v : ord)
        if (a[v] != b[v]) return a[v] < b[v];
    return false;
}

namespace detail {

inline Exp permute_exp(const Exp& e, const VarOrder& ord) { return {e[ord[0]], e[ord[1]], e[ord[2]]}; }

inline Exp unpermute_exp(const Exp& p, const VarOrder& ord) {
    Exp e{};
    for (int k = 0; k < 3; ++k) e[ord[k]] = p[k];
    return e;
}

// G with den * G = num in the iterated Laurent field, computed exactly on
// `target`. Works in permuted coordinates (outermost first) and solves
// G[e] = (num[e + l] - sum_{d != l} den_d G[e + l - d]) / den_l, l being the
// lowest monomial of den, over a box that contains the dependency closure.
template <class C>
Dense<C> expand_box_impl(const LaurentPoly<C>& num, const LaurentPoly<C>& den, const VarOrder& ord,
                         const Box& target) {
    if (den.is_zero()) throw Error("expand: zero denominator");
    Dense<C> out(target);
    if (num.is_zero() || target.empty()) return out;
    Exp ell{};
    C dl;
    bool first = true;
    for (const auto& [e, c] : den.terms()) {
        Exp p = permute_exp(e, ord);
        if (first || p < ell) {
            ell = p;
            dl = c;
            first = false;
        }
    }
    std::vector<std::pair<Exp, C>> rest;  // r = d - l (lex positive), coefficient
    int dm = 0, di = 0;
    for (const auto& [e, c] : den.terms()) {
        Exp r = permute_exp(e, ord) - ell;
        if (r == Exp{}) continue;
        if (r[0] > 0) dm = std::max(dm, -r[1]);
        if (r[0] > 0 || r[1] > 0) di = std::max(di, -r[2]);
        rest.emplace_back(r, c);
    }
    std::vector<std::pair<Exp, C>> nterms;
    Exp nlo{INT_MAX, INT_MAX, INT_MAX};
    for (const auto& [e, c] : num.terms()) {
        Exp p = permute_exp(e, ord) - ell;
        nterms.emplace_back(p, c);
        for (int k = 0; k < 3; ++k) nlo[k] = std::min(nlo[k], p[k]);
    }
    Exp tlo = permute_exp(target.lo, ord), thi = permute_exp(target.hi, ord);
    if (thi[0] < nlo[0]) return out;  // below the support in the outer variable
    long k0 = thi[0] - nlo[0];
    long hm = thi[1] + k0 * dm, lm = nlo[1] - k0 * dm;
    long cnt = k0 + (hm - lm);
    long hi2 = thi[2] + cnt * di, li2 = nlo[2] - cnt * di;
    Box ext;
    ext.lo = {std::min(tlo[0], nlo[0]), int(std::min<long>(tlo[1], lm)), int(std::min<long>(tlo[2], li2))};
    ext.hi = {thi[0], int(std::max<long>(thi[1], hm)), int(std::max<long>(thi[2], hi2))};
    // cells of the outer coordinate below the support are zero; start there
    ext.lo[0] = std::max(ext.lo[0], nlo[0]);
    ext.lo[1] = std::max(ext.lo[1], int(lm));
    ext.lo[2] = std::max(ext.lo[2], int(li2));
    if (ext.size() > (std::size_t(1) << 31)) throw Error("expand: dependency box too large");
    Dense<C> G(ext);
    for (const auto& [p, c] : nterms)
        if (ext.contains(p)) G.at(p) = c;
    bool unit = dl == 1;
    for (int a = ext.lo[0]; a <= ext.hi[0]; ++a)
        for (int b = ext.lo[1]; b <= ext.hi[1]; ++b)
            for (int c = ext.lo[2]; c <= ext.hi[2]; ++c) {
                Exp e{a, b, c};
                C& g = G.at(e);
                for (const auto& [r, dc] : rest) {
                    Exp f = e - r;
                    if (ext.contains(f)) {
                        const C& gf = G.at(f);
                        if (gf != 0) g -= dc * gf;
                    }
                }
                if (!unit && g != 0) g /= dl;
            }
    for (int a = tlo[0]; a <= thi[0]; ++a)
        for (int b = tlo[1]; b <= thi[1]; ++b)
            for (int c = tlo[2]; c <= thi[2]; ++c) {
                Exp p{a, b, c};
                if (ext.contains(p)) out.at(unpermute_exp(p, ord)) = G.at(p);
            }
    return out;
}

}  // namespace detail

// Iterated Laurent expansion of num/den, exact on `target`.
inline Dense<mpq_class> expand_box(const QPoly& num, const QPoly& den, const VarOrder& ord, const Box& target) {
    return detail::expand_box_impl(num, den, ord, target);
}

inline Dense<mpq_class> expand_box(const RatFunc& r, const VarOrder& ord, const Box& target) {
    // integer arithmetic suffices when the lowest denominator coefficient is a unit
    Exp ell{};
    mpz_class dl;
    bool first = true;
    for (const auto& [e, c] : r.den().terms()) {
        Exp p = detail::permute_exp(e, ord);
        if (first || p < ell) {
            ell = p;
            dl = c;
            first = false;
        }
    }
    if (dl == 1 || dl == -1) {
        ZPoly n = r.num(), d = r.den();
        if (dl == -1) {
            n *= mpz_class(-1);
            d *= mpz_class(-1);
        }
        auto g = detail::expand_box_impl(n, d, ord, target);
        Dense<mpq_class> out(target);
        for (std::size_t i = 0; i < g.v.size(); ++i) out.v[i] = g.v[i];
        return out;
    }
    return expand_box(to_q(r.num()), to_q(r.den()), ord, target);
}

// ---------------------------------------------------------------- truncated series

namespace detail {
inline constexpr int kUnbounded = 1 << 28;
}

// Power series in t whose coefficients are Laurent polynomials in x, y, z.
// Coefficients are guaranteed exact for exponents inside `window`; outside it
// nothing is known unless the support is bounded below (`floor`), in which
// case everything below the floor is exactly zero.
struct TruncatedSeries {
    std::vector<QPoly> c;  // c[n] = [t^n], n = 0..order()
    Box window = Box::cube(-detail::kUnbounded, detail::kUnbounded);
    std::array<std::optional<int>, 3> floor{};

    TruncatedSeries() = default;
    explicit TruncatedSeries(std::vector<QPoly> coeffs) : c(std::move(coeffs)) { compute_floor(); }

    int order() const { return int(c.size()) - 1; }
    QPoly coeff(int n) const { return n >= 0 && n < int(c.size()) ? c[n] : QPoly(); }
    bool exact() const { return window == Box::cube(-detail::kUnbounded, detail::kUnbounded); }

    void compute_floor() {
        for (int v = 0; v < 3; ++v) {
            int m = INT_MAX;
            for (const auto& p : c)
                if (!p.is_zero()) m = std::min(m, p.min_deg(v));
            floor[v] = m == INT_MAX ? 0 : m;
        }
    }
    // window bound below which values are known (zero below the floor)
    int known_below(int v) const { return floor[v] ? -detail::kUnbounded : window.lo[v]; }
};

inline TruncatedSeries truncate(const TruncatedSeries& f, int N) {
    TruncatedSeries r = f;
    if (int(r.c.size()) > N + 1) r.c.resize(N + 1);
    return r;
}

// Drops monomials with non-positive exponent in v; the window is unchanged.
inline TruncatedSeries positive_part(const TruncatedSeries& f, int v) {
    TruncatedSeries r = f;
    for (auto& p : r.c) p = p.positive_part(v);
    r.floor[v] = std::max(f.floor[v].value_or(1), 1);
    return r;
}

// Complement of positive_part: monomials with exponent <= 0 in v.
inline TruncatedSeries nonpositive_part(const TruncatedSeries& f, int v) {
    TruncatedSeries r = f;
    for (std::size_t n = 0; n < r.c.size(); ++n) r.c[n] = f.c[n] - f.c[n].positive_part(v);
    return r;
}

inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b, int sign = 1) {
    TruncatedSeries r;
    int n = std::min(a.order(), b.order());
    for (int k = 0; k <= n; ++k) r.c.push_back(sign > 0 ? a.c[k] + b.c[k] : a.c[k] - b.c[k]);
    for (int v = 0; v < 3; ++v) {
        r.window.lo[v] = std::max(a.window.lo[v], b.window.lo[v]);
        r.window.hi[v] = std::min(a.window.hi[v], b.window.hi[v]);
        if (a.floor[v] && b.floor[v]) r.floor[v] = std::min(*a.floor[v], *b.floor[v]);
    }
    return r;
}

inline TruncatedSeries scale(const TruncatedSeries& a, const QPoly& m) {
    if (!m.is_monomial() && !a.exact()) throw Error("scale: windowed series times a non-monomial");
    TruncatedSeries r = a;
    for (auto& p : r.c) p = p * m;
    if (m.is_monomial() && !m.is_zero()) {
        Exp e = m.terms().begin()->first;
        for (int v = 0; v < 3; ++v) {
            if (r.floor[v]) r.floor[v] = *r.floor[v] + e[v];
            if (r.window.lo[v] > -detail::kUnbounded) r.window.lo[v] += e[v];
            if (r.window.hi[v] < detail::kUnbounded) r.window.hi[v] += e[v];
        }
    } else {
        r.compute_floor();
    }
    return r;
}

// Product with window narrowing: supports bounded below by la, lb and
// exactness up to ha, hb give exactness up to min(ha + lb, hb + la).
inline TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, int N = -1) {
    TruncatedSeries r;
    int n = std::min(a.order(), b.order());
    if (N >= 0) n = std::min(n, N);
    r.c.assign(n + 1, QPoly());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            if (!a.c[i].is_zero() && !b.c[j].is_zero()) r.c[i + j] += a.c[i] * b.c[j];
    for (int v = 0; v < 3; ++v) {
        if (a.floor[v] && b.floor[v]) r.floor[v] = *a.floor[v] + *b.floor[v];
        bool fa = a.window.hi[v] < detail::kUnbounded, fb = b.window.hi[v] < detail::kUnbounded;
        if (!fa && !fb) continue;
        if (!a.floor[v] || !b.floor[v]) throw Error("multiply: windowed product needs supports bounded below");
        long ha = a.window.hi[v], hb = b.window.hi[v];
        r.window.hi[v] = int(std::min<long>({ha + *b.floor[v], hb + *a.floor[v], detail::kUnbounded}));
    }
    for (auto& p : r.c) {
        QPoly q;
        for (const auto& [e, cf] : p.terms())
            if (e[0] <= r.window.hi[0] && e[1] <= r.window.hi[1] && e[2] <= r.window.hi[2]) q.add_term(e, cf);
        p = std::move(q);
    }
    return r;
}

// First (t-degree, exponent) where a and b differ inside `where`; asking
// outside either guaranteed window is an error.
inline std::optional<std::pair<int, Exp>> first_difference(const TruncatedSeries& a, const TruncatedSeries& b,
                                                           const Box& where, int N = -1) {
    for (int v = 0; v < 3; ++v) {
        if (where.hi[v] > std::min(a.window.hi[v], b.window.hi[v]) ||
            where.lo[v] < std::max(a.known_below(v), b.known_below(v)))
            throw Error("comparison outside the guaranteed window");
    }
    int n = std::min(a.order(), b.order());
    if (N >= 0) {
        if (N > n) throw Error("comparison beyond the truncation order");
        n = N;
    }
    for (int k = 0; k <= n; ++k) {
        QPoly d = a.c[k] - b.c[k];
        for (const auto& [e, c] : d.terms())
            if (where.contains(e)) return std::make_pair(k, e);
    }
    return std::nullopt;
}

namespace detail {

// integer image of a rational box: values times a common denominator
inline std::pair<Dense<mpz_class>, mpz_class> integralize(const Dense<mpq_class>& g) {
    mpz_class l = 1;
    for (const auto& q : g.v)
        if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    Dense<mpz_class> out(g.box);
    for (std::size_t i = 0; i < g.v.size(); ++i)
        if (g.v[i] != 0) out.v[i] = g.v[i].get_num() * (l / g.v[i].get_den());
    return {std::move(out), l};
}

// P * H on the box where the product is determined by H's box
inline Dense<mpz_class> multiply_box(const ZPoly& P, const Dense<mpz_class>& H) {
    Exp grow_lo{}, grow_hi{};
    for (int v = 0; v < 3; ++v) {
        grow_lo[v] = P.max_deg(v);
        grow_hi[v] = -P.min_deg(v);
    }
    Box b = H.box.shrunk(grow_lo, grow_hi);
    Dense<mpz_class> out(b);
    if (b.empty()) return out;
    std::vector<std::pair<Exp, mpz_class>> terms(P.terms().begin(), P.terms().end());
    for (int i = b.lo[0]; i <= b.hi[0]; ++i)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
            for (int k = b.lo[2]; k <= b.hi[2]; ++k) {
                Exp e{i, j, k};
                mpz_class acc = 0;
                for (const auto& [s, c] : terms) {
                    const mpz_class& h = H.at(e - s);
                    if (h == 0) continue;
                    if (c == 1)
                        acc += h;
                    else
                        acc += c * h;
                }
                out.at(e) = std::move(acc);
            }
    return out;
}

}  // namespace detail

// Iterated Laurent expansion of r / (1 - t S), truncated at t^N. r is expanded
// on W; the t^n coefficient is then exact on W narrowed by n times the step
// span of S, and the series records the narrowest window, W - N * span.
inline TruncatedSeries expand_ratfunc(const RatFunc& r, const VarOrder& ord, int N, const Box& W,
                                      const ZPoly& S = ZPoly()) {
    if (N < 0) throw Error("expand_ratfunc: negative order");
    if (W.empty()) throw Error("expand_ratfunc: empty window");
    auto [H, scale] = detail::integralize(expand_box(r, ord, W));
    Exp grow_lo{}, grow_hi{};
    if (!S.is_zero())
        for (int v = 0; v < 3; ++v) {
            grow_lo[v] = std::max(S.max_deg(v), 0);
            grow_hi[v] = std::max(-S.min_deg(v), 0);
        }
    TruncatedSeries out;
    out.window = W.shrunk(Exp{grow_lo[0] * N, grow_lo[1] * N, grow_lo[2] * N},
                          Exp{grow_hi[0] * N, grow_hi[1] * N, grow_hi[2] * N});
    if (out.window.empty()) throw Error("expand_ratfunc: window too small for the requested order");
    for (int n = 0; n <= N; ++n) {
        if (n > 0) {
            if (S.is_zero()) {
                out.c.push_back(QPoly());
                continue;
            }
            H = detail::multiply_box(S, H);
        }
        QPoly p;
        for (int i = out.window.lo[0]; i <= out.window.hi[0]; ++i)
            for (int j = out.window.lo[1]; j <= out.window.hi[1]; ++j)
                for (int k = out.window.lo[2]; k <= out.window.hi[2]; ++k) {
                    const mpz_class& v = H.at(Exp{i, j, k});
                    if (v == 0) continue;
                    mpq_class q(v, scale);
                    q.canonicalize();
                    p.add_term(Exp{i, j, k}, q);
                }
        out.c.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------- algebraic series

inline TruncatedSeries constant_series(const QPoly& c, int N) {
    std::vector<QPoly> v(N + 1);
    v[0] = c;
    return TruncatedSeries(std::move(v));
}

inline TruncatedSeries t_series(int N) {
    std::vector<QPoly> v(N + 1);
    if (N >= 1) v[1] = QPoly(1);
    return TruncatedSeries(std::move(v));
}

// 1/f for an exact series whose constant term is a non-zero monomial
inline TruncatedSeries inverse(const TruncatedSeries& f, int N) {
    if (f.c.empty() || !f.c[0].is_monomial()) throw Error("inverse: constant term must be a non-zero monomial");
    auto [e, c] = *f.c[0].terms().begin();
    QPoly inv0 = QPoly::monomial(Exp{} - e, 1 / c);
    std::vector<QPoly> b(N + 1);
    b[0] = inv0;
    for (int n = 1; n <= N; ++n) {
        QPoly acc;
        for (int k = 1; k <= n && k < int(f.c.size()); ++k)
            if (!f.c[k].is_zero() && !b[n - k].is_zero()) acc += f.c[k] * b[n - k];
        b[n] = -(acc * inv0);
    }
    return TruncatedSeries(std::move(b));
}

// P(Z; t) = sum_k P[k](t) Z^k, coefficients exact series.
struct AlgebraicSeries {
    std::vector<TruncatedSeries> P;
    TruncatedSeries Z;
    int N = 0;
};

inline TruncatedSeries evaluate_poly(const std::vector<TruncatedSeries>& P, const TruncatedSeries& Z, int N) {
    // Horner
    TruncatedSeries acc = truncate(P.back(), N);
    for (int k = int(P.size()) - 2; k >= 0; --k) acc = add(multiply(acc, Z, N), truncate(P[k], N));
    return acc;
}

inline std::vector<TruncatedSeries> derivative_poly(const std::vector<TruncatedSeries>& P, int N) {
    std::vector<TruncatedSeries> D;
    for (std::size_t k = 1; k < P.size(); ++k) {
        TruncatedSeries d = truncate(P[k], N);
        for (auto& p : d.c) p *= mpq_class(int(k));
        D.push_back(d);
    }
    if (D.empty()) D.push_back(constant_series(QPoly(), N));
    return D;
}

inline bool is_zero_series(const TruncatedSeries& f, int N) {
    for (int n = 0; n <= std::min(N, f.order()); ++n)
        if (!f.c[n].is_zero()) return false;
    return true;
}

// The series root of P with the given constant term, by Newton iteration.
inline AlgebraicSeries solve_algebraic_series(const std::vector<TruncatedSeries>& P, const QPoly& initial, int N) {
    if (P.size() < 2) throw Error("solve_algebraic_series: polynomial of degree < 1 in Z");
    for (const auto& p : P)
        if (!p.exact() || p.order() < 0) throw Error("solve_algebraic_series: coefficients must be exact series");
    std::vector<TruncatedSeries> Pn;
    for (const auto& p : P) {
        TruncatedSeries q = p;
        q.c.resize(std::max<std::size_t>(q.c.size(), N + 1));
        Pn.push_back(truncate(q, N));
    }
    TruncatedSeries Z = constant_series(initial, N);
    TruncatedSeries r0 = evaluate_poly(Pn, Z, 0);
    if (!is_zero_series(r0, 0)) throw Error("solve_algebraic_series: P(initial; 0) != 0");
    auto D = derivative_poly(Pn, N);
    TruncatedSeries d0 = evaluate_poly(D, Z, 0);
    if (d0.c[0].is_zero() || !d0.c[0].is_monomial())
        throw Error("solve_algebraic_series: Newton condition violated (dP/dZ not invertible at t = 0)");
    for (int prec = 1;; prec *= 2) {
        int M = std::min(N, 2 * prec);
        TruncatedSeries res = evaluate_poly(Pn, truncate(Z, M), M);
        TruncatedSeries der = evaluate_poly(D, truncate(Z, M), M);
        Z = add(truncate(Z, M), multiply(res, inverse(der, M), M), -1);
        Z.c.resize(N + 1);
        if (M == N) {
            if (is_zero_series(evaluate_poly(Pn, Z, N), N)) break;
            if (prec > 4 * (N + 1)) throw Error("solve_algebraic_series: Newton iteration did not converge");
        }
    }
    TruncatedSeries Zt = truncate(Z, N);
    Zt.compute_floor();
    if (!is_zero_series(evaluate_poly(Pn, Zt, N), N)) throw Error("solve_algebraic_series: residual check failed");
    return {Pn, Zt, N};
}

// sqrt(f) for f with constant term 1
inline TruncatedSeries series_sqrt(const TruncatedSeries& f, int N) {
    if (f.c.empty() || f.c[0] != QPoly(1)) throw Error("series_sqrt: constant term must be 1");
    TruncatedSeries negf = f;
    for (auto& p : negf.c) p = -p;
    std::vector<TruncatedSeries> P{negf, constant_series(QPoly(), N), constant_series(QPoly(1), N)};
    return solve_algebraic_series(P, QPoly(1), N).Z;
}

// f(g): every t-coefficient of f is a polynomial in variable v; g has no
// constant term, so the composition is finite at each order.
inline TruncatedSeries series_substitute(const TruncatedSeries& f, int v, const TruncatedSeries& g, int N) {
    if (!g.c.empty() && !g.c[0].is_zero()) throw Error("series_substitute: g has a non-zero constant term");
    int maxk = 0;
    for (const auto& p : f.c)
        if (!p.is_zero()) {
            if (p.min_deg(v) < 0) throw Error("series_substitute: f is not polynomial in the variable");
            maxk = std::max(maxk, p.max_deg(v));
        }
    std::vector<TruncatedSeries> gp{constant_series(QPoly(1), N)};
    TruncatedSeries gN = truncate(g, N);
    gN.c.resize(N + 1);
    for (int k = 1; k <= std::min(maxk, N); ++k) gp.push_back(multiply(gp.back(), gN, N));
    std::vector<QPoly> out(N + 1);
    for (int n = 0; n <= std::min(N, f.order()); ++n) {
        for (int k = 0; k <= std::min(maxk, N - n); ++k) {
            QPoly coef = f.c[n].slice(v, k);
            if (coef.is_zero()) continue;
            for (int m = 0; m + n <= N; ++m)
                if (!gp[k].c[m].is_zero()) out[n + m] += coef * gp[k].c[m];
        }
    }
    return TruncatedSeries(std::move(out));
}

// Series with [t^n] given by a function, exact.
template <class F>
TruncatedSeries series_from(int N, F coeff) {
    std::vector<QPoly> v;
    for (int n = 0; n <= N; ++n) v.push_back(coeff(n));
    return TruncatedSeries(std::move(v));
}

}  // namespace octwalk
