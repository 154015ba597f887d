#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace octwalk {

// sum_{i <= r} p_i(n) a(n + i) = 0 with deg p_i <= d, coefficients mod prime.
struct RecurrenceCandidate {
    int r = 0, d = 0;
    std::uint64_t prime = kDefaultPrime;
    std::vector<std::vector<std::uint64_t>> p;  // p[i][k] = [n^k] p_i
    std::optional<std::vector<std::vector<mpq_class>>> lifted;
    std::string source;
    int fitted_terms = 0;

    // flattened coefficient vector, i-major
    std::vector<std::uint64_t> flat() const {
        std::vector<std::uint64_t> v;
        for (const auto& pi : p) v.insert(v.end(), pi.begin(), pi.end());
        return v;
    }

    std::string str() const {
        std::string s;
        for (int i = r; i >= 0; --i) {
            std::string poly;
            for (int k = d; k >= 0; --k) {
                std::string c = lifted ? (*lifted)[i][k].get_str() : std::to_string(p[i][k]);
                if (c == "0") continue;
                if (!poly.empty()) poly += " + ";
                poly += c + (k ? (k == 1 ? "*n" : "*n^" + std::to_string(k)) : "");
            }
            if (poly.empty()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + poly + ")*a(n" + (i ? "+" + std::to_string(i) : "") + ")";
        }
        return s + " = 0";
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"order", r}, {"degree", d}, {"prime", prime}, {"source", source}, {"fitted_terms", fitted_terms}};
        j["coefficients_mod_p"] = p;
        if (lifted) {
            nlohmann::json q = nlohmann::json::array();
            for (const auto& pi : *lifted) {
                nlohmann::json row = nlohmann::json::array();
                for (const auto& c : pi) row.push_back(c.get_str());
                q.push_back(row);
            }
            j["coefficients"] = q;
        }
        j["recurrence"] = str();
        return j;
    }
};

inline std::vector<std::uint64_t> reduce_mod(const std::vector<mpz_class>& seq, std::uint64_t prime) {
    Zp F{prime};
    std::vector<std::uint64_t> out;
    out.reserve(seq.size());
    for (const auto& v : seq) out.push_back(F.from(v));
    return out;
}

// a/b = u mod p with |a|, |b| <= sqrt(p / 2), if such a pair exists
inline std::optional<mpq_class> rational_reconstruct(std::uint64_t u, std::uint64_t prime) {
    mpz_class p(std::to_string(prime)), bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(p / 2).get_mpz_t());
    mpz_class r0 = p, r1(std::to_string(u)), t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return std::nullopt;
    mpq_class q(r1, t1);
    q.canonicalize();
    return q;
}

// First index n at which the recurrence fails, over every n with n + r in range.
inline std::optional<int> first_violation(const RecurrenceCandidate& c, const std::vector<std::uint64_t>& seq) {
    Zp F{c.prime};
    for (int n = 0; n + c.r < int(seq.size()); ++n) {
        std::uint64_t s = 0, nn = F.from((long long)n);
        for (int i = 0; i <= c.r; ++i) {
            std::uint64_t pv = 0;
            for (int k = c.d; k >= 0; --k) pv = F.add(F.mul(pv, nn), c.p[i][k]);
            s = F.add(s, F.mul(pv, seq[n + i] % c.prime));
        }
        if (s) return n;
    }
    return std::nullopt;
}

inline bool verify_candidate(const RecurrenceCandidate& c, const std::vector<std::uint64_t>& seq) {
    return !first_violation(c, seq);
}

inline bool verify_candidate(const RecurrenceCandidate& c, const std::vector<mpz_class>& seq) {
    return verify_candidate(c, reduce_mod(seq, c.prime));
}

namespace detail {

// Incremental row echelon form mod p; stops as soon as the rank is full.
struct Echelon {
    Zp F;
    int cols;
    std::vector<std::vector<std::uint64_t>> rows;  // pivot row for each pivot column, normalized
    std::vector<int> pivot_of;                      // column -> row index or -1

    Echelon(std::uint64_t p, int c) : F{p}, cols(c), pivot_of(c, -1) {}
    int rank() const { return int(rows.size()); }

    void insert(std::vector<std::uint64_t> v) {
        for (int c = 0; c < cols; ++c) {
            if (!v[c]) continue;
            int pr = pivot_of[c];
            if (pr >= 0) {
                std::uint64_t f = v[c];
                const auto& row = rows[pr];
                for (int k = c; k < cols; ++k)
                    if (row[k]) v[k] = F.sub(v[k], F.mul(f, row[k]));
            } else {
                std::uint64_t inv = F.inv(v[c]);
                for (int k = c; k < cols; ++k) v[k] = F.mul(v[k], inv);
                pivot_of[c] = int(rows.size());
                rows.push_back(std::move(v));
                return;
            }
        }
    }

    // basis of the nullspace, one vector per free column
    std::vector<std::vector<std::uint64_t>> nullspace() const {
        // back-substitute to reduced form
        auto R = rows;
        std::vector<int> pcol(R.size());
        for (int c = 0; c < cols; ++c)
            if (pivot_of[c] >= 0) pcol[pivot_of[c]] = c;
        for (int i = int(R.size()) - 1; i >= 0; --i)
            for (int j = 0; j < int(R.size()); ++j) {
                if (j == i) continue;
                std::uint64_t f = R[j][pcol[i]];
                if (!f) continue;
                for (int k = 0; k < cols; ++k)
                    if (R[i][k]) R[j][k] = F.sub(R[j][k], F.mul(f, R[i][k]));
            }
        std::vector<std::vector<std::uint64_t>> out;
        for (int c = 0; c < cols; ++c) {
            if (pivot_of[c] >= 0) continue;
            std::vector<std::uint64_t> v(cols, 0);
            v[c] = 1;
            for (std::size_t i = 0; i < R.size(); ++i) v[pcol[i]] = F.neg(R[i][c]);
            out.push_back(std::move(v));
        }
        return out;
    }
};

inline bool has_leading(const std::vector<std::uint64_t>& v, int r, int d) {
    for (int k = 0; k <= d; ++k)
        if (v[r * (d + 1) + k]) return true;
    return false;
}

// scale so that the last non-zero entry is 1
inline void normalize(std::vector<std::uint64_t>& v, const Zp& F) {
    for (int i = int(v.size()) - 1; i >= 0; --i)
        if (v[i]) {
            std::uint64_t inv = F.inv(v[i]);
            for (auto& x : v) x = F.mul(x, inv);
            return;
        }
}

}  // namespace detail

// Candidate for one (r, d) cell fitted on seq[0 .. L - margin) and checked on
// the trailing `margin` terms.
inline std::optional<RecurrenceCandidate> guess_cell(const std::vector<std::uint64_t>& seq, int r, int d,
                                                     std::uint64_t prime, int margin = 10) {
    Zp F{prime};
    int L = int(seq.size()), fit = L - margin, cols = (r + 1) * (d + 1);
    int nrows = fit - r;
    if (nrows < cols) return std::nullopt;
    detail::Echelon E(prime, cols);
    for (int n = 0; n < nrows && E.rank() < cols; ++n) {
        std::vector<std::uint64_t> row(cols);
        std::uint64_t nn = F.from((long long)n);
        for (int i = 0; i <= r; ++i) {
            std::uint64_t pw = 1, a = seq[n + i] % prime;
            for (int k = 0; k <= d; ++k) {
                row[i * (d + 1) + k] = F.mul(pw, a);
                pw = F.mul(pw, nn);
            }
        }
        E.insert(std::move(row));
    }
    if (E.rank() == cols) return std::nullopt;
    for (auto& v : E.nullspace()) {
        if (!detail::has_leading(v, r, d)) continue;
        detail::normalize(v, F);
        RecurrenceCandidate c;
        c.r = r;
        c.d = d;
        c.prime = prime;
        c.fitted_terms = fit;
        c.p.assign(r + 1, std::vector<std::uint64_t>(d + 1));
        for (int i = 0; i <= r; ++i)
            for (int k = 0; k <= d; ++k) c.p[i][k] = v[i * (d + 1) + k];
        if (!verify_candidate(c, seq)) continue;
        std::vector<std::vector<mpq_class>> q(r + 1, std::vector<mpq_class>(d + 1));
        bool ok = true;
        for (int i = 0; i <= r && ok; ++i)
            for (int k = 0; k <= d && ok; ++k) {
                auto x = rational_reconstruct(c.p[i][k], prime);
                if (x) q[i][k] = *x;
                else ok = false;
            }
        if (ok) {
            // clear denominators and content so lifted coefficients are coprime integers
            mpz_class l = 1, g = 0;
            for (const auto& pi : q)
                for (const auto& x : pi) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
            for (auto& pi : q)
                for (auto& x : pi) {
                    x *= l;
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
                }
            if (g != 0)
                for (auto& pi : q)
                    for (auto& x : pi) x /= g;
            c.lifted = std::move(q);
        }
        return c;
    }
    return std::nullopt;
}

// Staircase sweep over (r, d): increasing r + d, then increasing r. A found
// candidate masks every cell with larger r and larger d.
inline std::vector<RecurrenceCandidate> guess_precursive(const std::vector<std::uint64_t>& seq, int r_max, int d_max,
                                                         std::uint64_t prime = kDefaultPrime, int margin = 10,
                                                         const std::string& source = "") {
    long need = long(r_max + 1) * (d_max + 1) + r_max + margin;
    if (long(seq.size()) < need)
        throw Error("guess_precursive: need at least " + std::to_string(need) + " terms, got " +
                    std::to_string(seq.size()));
    if (!is_probable_prime(prime)) throw Error("guess_precursive: modulus is not prime");
    std::vector<RecurrenceCandidate> found;
    for (int s = 1; s <= r_max + d_max; ++s)
        for (int r = 1; r <= std::min(s, r_max); ++r) {
            int d = s - r;
            if (d > d_max) continue;
            bool masked = false;
            for (const auto& f : found)
                if (r >= f.r && d >= f.d) masked = true;
            if (masked) continue;
            if (auto c = guess_cell(seq, r, d, prime, margin)) {
                c->source = source;
                found.push_back(std::move(*c));
            }
        }
    return found;
}

inline std::vector<RecurrenceCandidate> guess_precursive(const std::vector<mpz_class>& seq, int r_max, int d_max,
                                                         std::uint64_t prime = kDefaultPrime, int margin = 10,
                                                         const std::string& source = "") {
    return guess_precursive(reduce_mod(seq, prime), r_max, d_max, prime, margin, source);
}

// Same (r, d) and proportional coefficient vectors: compares the lifted
// rationals, which must exist for both.
inline bool prime_stable(const RecurrenceCandidate& a, const RecurrenceCandidate& b) {
    if (a.r != b.r || a.d != b.d || !a.lifted || !b.lifted) return false;
    return *a.lifted == *b.lifted;
}

}  // namespace octwalk
