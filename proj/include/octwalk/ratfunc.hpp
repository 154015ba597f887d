#pragma once

#include <array>
#include <vector>

#include "polygcd.hpp"

namespace octwalk {

// Quotient of integer Laurent polynomials in x, y, z. The stored form is
// reduced: den is a polynomial coprime to num and to every variable, with
// positive leading coefficient (graded lex), and the monomial part lives in num.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const ZPoly& num) : num_(num), den_(1) {}
    RatFunc(int c) : num_(c), den_(1) {}
    RatFunc(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFunc from_q(const QPoly& num, const QPoly& den = QPoly(1)) {
        return RatFunc(clear(num, den), clear(den, num));
    }
    static RatFunc var(int v) { return RatFunc(ZPoly::var(v)); }

    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_constant(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num_ *= mpz_class(-1);
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw Error("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    // equality by cross-multiplication
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

    std::uint64_t eval_mod(const Zp& F, const std::array<std::uint64_t, 3>& pt) const {
        std::uint64_t d = den_.eval_mod(F, pt);
        if (d == 0) throw Error("fingerprint point is a pole");
        return F.mul(num_.eval_mod(F, pt), F.inv(d));
    }

    RatFunc permuted(const std::array<int, 3>& perm) const {
        RatFunc r;
        r.num_ = num_.permuted(perm);
        r.den_ = den_.permuted(perm);
        r.normalize();
        return r;
    }

    std::string str() const {
        if (den_.is_constant() && den_.terms().begin()->second == 1) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    ZPoly num_, den_;

    static ZPoly clear(const QPoly& p, const QPoly& other) {
        mpz_class l = 1;
        for (const auto* q : {&p, &other})
            for (const auto& [e, c] : q->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        ZPoly r;
        for (const auto& [e, c] : p.terms()) r.add_term(e, mpz_class(c * l));
        return r;
    }

    void normalize() {
        if (den_.is_zero()) throw Error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = ZPoly(1);
            return;
        }
        Exp md = den_.min_exp(), mn = num_.min_exp();
        ZPoly d = den_.shifted(Exp{} - md);
        ZPoly n = num_.shifted(Exp{} - mn);
        Exp mono = mn - md;
        if (!d.is_constant() || !n.is_constant()) {
            ZPoly g = gcd::gcd(n, d);
            if (!(g.is_constant() && g.terms().begin()->second == 1)) {
                n = gcd::divide_exact(n, g);
                d = gcd::divide_exact(d, g);
            }
        } else {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), n.terms().begin()->second.get_mpz_t(), d.terms().begin()->second.get_mpz_t());
            n = gcd::divide_exact(n, ZPoly(g));
            d = gcd::divide_exact(d, ZPoly(g));
        }
        if (d.leading().second < 0) {
            n *= mpz_class(-1);
            d *= mpz_class(-1);
        }
        num_ = n.shifted(mono);
        den_ = std::move(d);
    }
};

namespace detail {

template <class C>
mpz_class to_int_coeff(const C& c) {
    if constexpr (std::is_same_v<C, mpz_class>) {
        return c;
    } else {
        if (c.get_den() != 1) throw Error("substitute: non-integer coefficient");
        return c.get_num();
    }
}

}  // namespace detail

// p(args[0], args[1], args[2]) for an integer-coefficient Laurent polynomial p.
template <class C>
RatFunc substitute(const LaurentPoly<C>& p, const std::array<RatFunc, 3>& args) {
    if (p.is_zero()) return RatFunc();
    std::array<int, 3> lo{}, hi{};
    std::array<std::vector<ZPoly>, 3> npow, dpow;
    for (int v = 0; v < 3; ++v) {
        lo[v] = std::min(p.min_deg(v), 0);
        hi[v] = std::max(p.max_deg(v), 0);
        int span = hi[v] - lo[v];
        if (span == 0) continue;
        if (args[v].is_zero() && lo[v] < 0) throw Error("substitute: negative power of zero");
        npow[v].push_back(ZPoly(1));
        dpow[v].push_back(ZPoly(1));
        for (int k = 1; k <= span; ++k) {
            npow[v].push_back(npow[v].back() * args[v].num());
            dpow[v].push_back(dpow[v].back() * args[v].den());
        }
    }
    ZPoly num;
    for (const auto& [e, c] : p.terms()) {
        ZPoly t(detail::to_int_coeff(c));
        for (int v = 0; v < 3; ++v) {
            if (hi[v] == lo[v]) continue;
            t = t * npow[v][e[v] - lo[v]] * dpow[v][hi[v] - e[v]];
        }
        num += t;
    }
    ZPoly den(1);
    for (int v = 0; v < 3; ++v) {
        if (hi[v] == lo[v]) continue;
        den = den * npow[v][-lo[v]] * dpow[v][hi[v]];
    }
    return RatFunc(num, den);
}

}  // namespace octwalk
