#pragma once

#include <optional>

#include "laurent.hpp"

// Greatest common divisors in Z[x,y,z] by the recursive primitive
// pseudo-remainder sequence. Inputs must be genuine polynomials.

namespace octwalk::gcd {

inline mpz_class integer_content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline int degree(const ZPoly& p, int v) { return p.is_zero() ? -1 : p.max_deg(v); }

// leading coefficient in v, as a polynomial free of v
inline ZPoly lead(const ZPoly& p, int v) { return p.slice(v, degree(p, v)); }

// exact division in Z[x,y,z]; nullopt if b does not divide a
inline std::optional<ZPoly> divide(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw Error("division by zero polynomial");
    if (b.is_constant()) {
        const mpz_class& d = b.terms().begin()->second;
        ZPoly q;
        for (const auto& [e, c] : a.terms()) {
            if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            q.add_term(e, mpz_class(c / d));
        }
        return q;
    }
    // lexicographic leading terms (largest key of the map)
    ZPoly r = a, q;
    const auto& [lb_e, lb_c] = *b.terms().rbegin();
    while (!r.is_zero()) {
        const auto [lr_e, lr_c] = *r.terms().rbegin();
        Exp d = lr_e - lb_e;
        if (d[0] < 0 || d[1] < 0 || d[2] < 0) return std::nullopt;
        if (!mpz_divisible_p(lr_c.get_mpz_t(), lb_c.get_mpz_t())) return std::nullopt;
        mpz_class c = lr_c / lb_c;
        q.add_term(d, c);
        r -= b.shifted(d) * c;
    }
    return q;
}

inline ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
    auto q = divide(a, b);
    if (!q) throw Error("inexact polynomial division");
    return *q;
}

// pseudo-remainder of a by b in v
inline ZPoly prem(ZPoly a, const ZPoly& b, int v) {
    int db = degree(b, v);
    ZPoly lb = lead(b, v);
    int da = degree(a, v);
    int extra = std::max(da - db + 1, 0);
    while (!a.is_zero() && (da = degree(a, v)) >= db) {
        ZPoly la = lead(a, v);
        Exp s{};
        s[v] = da - db;
        a = a * lb - (b * la).shifted(s);
        --extra;
    }
    if (extra > 0) a = a * lb.pow(unsigned(extra));
    return a;
}

inline ZPoly normalize_sign(ZPoly p) {
    if (!p.is_zero() && p.leading().second < 0) p *= mpz_class(-1);
    return p;
}

ZPoly gcd(const ZPoly& a, const ZPoly& b);

// gcd of the coefficients of p seen as a polynomial in v
inline ZPoly content(const ZPoly& p, int v) {
    ZPoly g;
    int lo = p.min_deg(v), hi = p.max_deg(v);
    for (int k = lo; k <= hi; ++k) {
        ZPoly c = p.slice(v, k);
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant() && g.terms().begin()->second == 1) break;
    }
    return g;
}

inline int first_variable(const ZPoly& a, const ZPoly& b) {
    for (int v = 0; v < 3; ++v)
        if (!a.free_of(v) || !b.free_of(v)) return v;
    return -1;
}

inline ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);
    int v = first_variable(a, b);
    if (v < 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.terms().begin()->second.get_mpz_t(), b.terms().begin()->second.get_mpz_t());
        return ZPoly(g);
    }
    if (a.free_of(v)) return gcd(a, content(b, v));
    if (b.free_of(v)) return gcd(content(a, v), b);
    ZPoly ca = content(a, v), cb = content(b, v);
    ZPoly p = divide_exact(a, ca), q = divide_exact(b, cb);
    ZPoly g = gcd(ca, cb);
    if (degree(p, v) < degree(q, v)) std::swap(p, q);
    while (true) {
        ZPoly r = prem(p, q, v);
        if (r.is_zero()) break;
        if (degree(r, v) == 0) {
            q = ZPoly(1);
            break;
        }
        p = q;
        q = divide_exact(r, content(r, v));
    }
    // q is primitive in v
    return normalize_sign(g * q);
}

}  // namespace octwalk::gcd
