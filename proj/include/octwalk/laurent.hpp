#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"

namespace octwalk {

// Exponents of x, y, z.
using Exp = std::array<int, 3>;

inline Exp operator+(const Exp& a, const Exp& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Exp operator-(const Exp& a, const Exp& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// graded lexicographic with x > y > z
inline bool grlex_less(const Exp& a, const Exp& b) {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da < db;
    return a < b;
}

template <class C>
class LaurentPoly {
public:
    using Coeff = C;
    using Terms = std::map<Exp, C>;

    LaurentPoly() = default;
    LaurentPoly(const C& c) {
        if (c != 0) terms_[Exp{}] = c;
    }
    LaurentPoly(int c) : LaurentPoly(C(c)) {}

    static LaurentPoly monomial(const Exp& e, const C& c = C(1)) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }
    static LaurentPoly var(int v, int power = 1) {
        Exp e{};
        e[v] = power;
        return monomial(e);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C(0) : it->second;
    }
    void add_term(const Exp& e, const C& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const C& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= C(-1); }
    friend LaurentPoly operator*(LaurentPoly a, const C& s) { return a *= s; }
    friend LaurentPoly operator*(const C& s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(unsigned e) const {
        LaurentPoly r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // multiply by x^e
    LaurentPoly shifted(const Exp& e) const {
        LaurentPoly r;
        for (const auto& [f, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), f + e, c);
        return r;
    }

    int max_deg(int v) const {
        int m = INT_MIN;
        for (const auto& [e, c] : terms_) m = std::max(m, e[v]);
        return m;
    }
    int min_deg(int v) const {
        int m = INT_MAX;
        for (const auto& [e, c] : terms_) m = std::min(m, e[v]);
        return m;
    }
    Exp min_exp() const {
        Exp m{INT_MAX, INT_MAX, INT_MAX};
        for (const auto& [e, c] : terms_)
            for (int v = 0; v < 3; ++v) m[v] = std::min(m[v], e[v]);
        return m;
    }
    bool free_of(int v) const {
        for (const auto& [e, c] : terms_)
            if (e[v] != 0) return false;
        return true;
    }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exp{}); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_polynomial() const {
        for (const auto& [e, c] : terms_)
            if (e[0] < 0 || e[1] < 0 || e[2] < 0) return false;
        return true;
    }

    // coefficient of v^k, as a polynomial free of v
    LaurentPoly slice(int v, int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (e[v] == k) {
                Exp f = e;
                f[v] = 0;
                r.terms_.emplace(f, c);
            }
        return r;
    }
    // terms with v-exponent > 0
    LaurentPoly positive_part(int v) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (e[v] > 0) r.terms_.emplace_hint(r.terms_.end(), e, c);
        return r;
    }
    // substitute v -> v^-1
    LaurentPoly reflected(int v) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            Exp f = e;
            f[v] = -f[v];
            r.terms_.emplace(f, c);
        }
        return r;
    }
    // rename coordinates: new exponent a is old exponent perm[a]
    LaurentPoly permuted(const std::array<int, 3>& perm) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{e[perm[0]], e[perm[1]], e[perm[2]]}, c);
        return r;
    }

    // leading term under graded lex x > y > z
    std::pair<Exp, C> leading() const {
        if (terms_.empty()) throw Error("leading term of zero");
        auto best = terms_.begin();
        for (auto it = terms_.begin(); it != terms_.end(); ++it)
            if (grlex_less(best->first, it->first)) best = it;
        return *best;
    }

    template <class F>
    auto map_coeffs(F f) const {
        using D = decltype(f(std::declval<C>()));
        LaurentPoly<D> r;
        for (const auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    // value mod p with each variable set to pt[v] (non-zero)
    std::uint64_t eval_mod(const Zp& F, const std::array<std::uint64_t, 3>& pt) const {
        std::array<std::uint64_t, 3> inv{F.inv(pt[0]), F.inv(pt[1]), F.inv(pt[2])};
        std::uint64_t s = 0;
        for (const auto& [e, c] : terms_) {
            std::uint64_t m = F.from(c);
            for (int v = 0; v < 3; ++v) m = F.mul(m, e[v] >= 0 ? F.pow(pt[v], e[v]) : F.pow(inv[v], -e[v]));
            s = F.add(s, m);
        }
        return s;
    }

    std::string str() const;

private:
    Terms terms_;
};

using QPoly = LaurentPoly<mpq_class>;
using ZPoly = LaurentPoly<mpz_class>;

inline QPoly to_q(const ZPoly& p) {
    return p.map_coeffs([](const mpz_class& c) { return mpq_class(c); });
}

namespace detail {

template <class C>
std::string coeff_str(const C& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

}  // namespace detail

// ASCII rendering, e.g. "2*x^-1*y^2 - z + 3"
template <class C>
std::string LaurentPoly<C>::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exp, C>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
    static const char* names = "xyz";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ts) {
        std::string cs = detail::coeff_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (int v = 0; v < 3; ++v) {
            if (!e[v]) continue;
            if (!mono.empty()) mono += '*';
            mono += names[v];
            if (e[v] != 1) mono += "^" + std::to_string(e[v]);
        }
        if (mono.empty()) out += cs;
        else if (cs == "1") out += mono;
        else out += cs + "*" + mono;
    }
    return out;
}

// Parses the rendering above (integer or rational coefficients, x, y, z).
inline QPoly parse_laurent(const std::string& s) {
    QPoly out;
    std::size_t p = 0;
    auto skip = [&] {
        while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
    };
    skip();
    if (p == s.size()) throw ParseError("empty polynomial", p);
    bool firstterm = true;
    while (p < s.size()) {
        int sign = 1;
        skip();
        if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
            sign = s[p] == '-' ? -1 : 1;
            ++p;
            skip();
        } else if (!firstterm) {
            throw ParseError("expected + or -", p);
        }
        firstterm = false;
        mpq_class c(sign);
        Exp e{};
        bool any = false;
        while (p < s.size()) {
            skip();
            if (p < s.size() && std::isdigit((unsigned char)s[p])) {
                std::size_t q = p;
                while (p < s.size() && (std::isdigit((unsigned char)s[p]) || s[p] == '/')) ++p;
                mpq_class v(s.substr(q, p - q));
                v.canonicalize();
                c *= v;
            } else if (p < s.size() && (s[p] == 'x' || s[p] == 'y' || s[p] == 'z')) {
                int v = s[p] - 'x';
                ++p;
                int power = 1;
                if (p < s.size() && s[p] == '^') {
                    ++p;
                    std::size_t q = p;
                    if (p < s.size() && s[p] == '-') ++p;
                    while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
                    if (q == p) throw ParseError("missing exponent", p);
                    power = std::stoi(s.substr(q, p - q));
                }
                e[v] += power;
            } else {
                throw ParseError("unexpected character", p);
            }
            any = true;
            skip();
            if (p < s.size() && s[p] == '*') {
                ++p;
                continue;
            }
            break;
        }
        if (!any) throw ParseError("empty term", p);
        out.add_term(e, c);
        skip();
    }
    return out;
}

}  // namespace octwalk
