#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "stepset.hpp"

namespace octwalk {

// Coefficient list indexed by cardinality.
using CensusPolynomial = std::vector<long long>;

enum class CensusPredicate { NoUnused, DimAtMostOne, DimTwoOrThree };

inline CensusPredicate parse_census_predicate(const std::string& s) {
    if (s == "no-unused") return CensusPredicate::NoUnused;
    if (s == "dim<=1") return CensusPredicate::DimAtMostOne;
    if (s == "dim23") return CensusPredicate::DimTwoOrThree;
    throw Error("unknown census predicate '" + s + "'");
}

inline long long census_total(const CensusPolynomial& p) {
    long long t = 0;
    for (auto c : p) t += c;
    return t;
}

namespace detail {

inline bool census_test(std::uint32_t m, CensusPredicate p) {
    if (has_unused_steps(m)) return false;
    bool low = dimension_at_most_one(m);
    switch (p) {
        case CensusPredicate::NoUnused: return true;
        case CensusPredicate::DimAtMostOne: return low;
        case CensusPredicate::DimTwoOrThree: return !low;
    }
    return false;
}

// Orbits of the step bits under a coordinate permutation.
inline std::vector<std::uint32_t> step_orbits(int q) {
    std::vector<std::uint32_t> orbits;
    std::uint32_t seen = 0;
    for (int b = 0; b < kNumSteps; ++b) {
        if (seen >> b & 1u) continue;
        std::uint32_t o = 1u << b, m = o;
        while ((m = permute_mask(m, q)) != (1u << b)) o |= m;
        seen |= o;
        orbits.push_back(o);
    }
    return orbits;
}

inline CensusPolynomial fixed_count(int q, CensusPredicate p, unsigned jobs) {
    CensusPolynomial out(kNumSteps + 1, 0);
    if (q == 0) {
        unsigned n = worker_count(jobs);
        std::vector<std::array<long long, kNumSteps + 1>> part(n);
        std::vector<std::thread> pool;
        std::uint64_t total = std::uint64_t(1) << kNumSteps;
        for (unsigned w = 0; w < n; ++w)
            pool.emplace_back([&, w] {
                auto& acc = part[w];
                acc.fill(0);
                std::uint64_t lo = total * w / n, hi = total * (w + 1) / n;
                for (std::uint64_t m = lo; m < hi; ++m)
                    if (census_test(std::uint32_t(m), p)) ++acc[std::popcount(std::uint32_t(m))];
            });
        for (auto& t : pool) t.join();
        for (const auto& acc : part)
            for (int c = 0; c <= kNumSteps; ++c) out[c] += acc[c];
        return out;
    }
    auto orbits = step_orbits(q);
    std::uint32_t n = std::uint32_t(orbits.size());
    for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
        std::uint32_t m = 0;
        for (std::uint32_t o = 0; o < n; ++o)
            if (sub >> o & 1u) m |= orbits[o];
        if (census_test(m, p)) ++out[std::popcount(m)];
    }
    return out;
}

}  // namespace detail

struct BurnsideTerms {
    CensusPolynomial identity, transposition, three_cycle, total;
};

inline BurnsideTerms burnside_terms(CensusPredicate p, unsigned jobs = 0) {
    BurnsideTerms t;
    t.identity = detail::fixed_count(0, p, jobs);
    t.transposition = detail::fixed_count(2, p, jobs);  // swaps x and y
    t.three_cycle = detail::fixed_count(3, p, jobs);
    t.total.assign(kNumSteps + 1, 0);
    for (int c = 0; c <= kNumSteps; ++c) {
        long long s = t.identity[c] + 3 * t.transposition[c] + 2 * t.three_cycle[c];
        if (s % 6) throw Error("burnside: orbit count not integral");
        t.total[c] = s / 6;
    }
    return t;
}

inline CensusPolynomial burnside_census(CensusPredicate p, unsigned jobs = 0) {
    return burnside_terms(p, jobs).total;
}

// ---------------------------------------------------------------- appendix formulas

namespace detail {

struct UPoly {
    std::vector<long long> c;
    UPoly(long long v = 0) : c{v} {}
    explicit UPoly(std::vector<long long> v) : c(std::move(v)) {}
    long long at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<long long> r(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) + b.at(i);
        return UPoly(r);
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-1) * b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        std::vector<long long> r(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return UPoly(r);
    }
    friend UPoly operator*(long long s, const UPoly& a) { return UPoly(s) * a; }
    UPoly pow(int e) const {
        UPoly r(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }
};

inline UPoly u_var() { return UPoly(std::vector<long long>{0, 1}); }
inline UPoly br(int i) { return UPoly(std::vector<long long>{1, 1}).pow(i); }               // [i]
inline UPoly bb(int j) { return UPoly(std::vector<long long>{1, 0, 1}).pow(j); }            // [[j]]
inline UPoly ang(int j) { return UPoly(std::vector<long long>{1, 0, 0, 1}).pow(j); }        // <j>

inline CensusPolynomial to_census(const UPoly& p) {
    CensusPolynomial out(kNumSteps + 1, 0);
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        if (i > std::size_t(kNumSteps)) throw Error("census polynomial degree exceeds 26");
        out[i] = p.c[i];
    }
    return out;
}

inline CensusPolynomial burnside_combine(const UPoly& id, const UPoly& t12, const UPoly& t123) {
    auto s = to_census(id + 3 * t12 + 2 * t123);
    for (auto& c : s) {
        if (c % 6) throw Error("appendix: non-integral coefficient");
        c /= 6;
    }
    return s;
}

}  // namespace detail

struct AppendixPolynomials {
    CensusPolynomial J, K, I;
    CensusPolynomial Jid, J12, J123, Kid, K12, K123;
};

inline AppendixPolynomials appendix_polynomials() {
    using namespace detail;
    const UPoly u = u_var(), one(1);
    UPoly Jid = br(26) - br(19) - 3 * br(17) + 3 * br(14) + 3 * br(11) - 3 * br(10) + 3 * br(8) - 9 * br(5) +
                6 * br(4) + 3 * br(2) - 3 * br(1) + one + 3 * u * (-1 * br(16) + 2 * br(13) - br(10));
    UPoly J12 = br(8) * bb(9) - br(5) * (bb(7) + bb(6) + bb(3)) + br(4) * (bb(5) + bb(3)) + br(2) * (bb(3) + one) -
                br(1) * (bb(2) + one) + one - u * br(4) * (bb(6) - bb(3));
    UPoly J123 = br(2) * ang(8) - br(1) * ang(6) + one;
    UPoly sq = (br(2) - one) * (br(2) - one);
    UPoly Kid = 3 * br(13) - 3 * br(12) + 9 * br(11) - 6 * br(10) - 6 * br(9) + 3 * br(8) - 2 * br(7) + 3 * br(3) -
                3 * u * u * br(3) - 3 * sq * br(1) + u * u;
    UPoly K12 = br(5) * bb(3) + br(5) * bb(4) - br(4) * bb(2) + br(1) * bb(1) - br(4) * bb(4) + u * u * br(3) +
                sq * br(1) - u * u;
    UPoly K123 = br(1) * ang(2) + u * u;
    AppendixPolynomials a;
    a.Jid = to_census(Jid);
    a.J12 = to_census(J12);
    a.J123 = to_census(J123);
    a.Kid = to_census(Kid);
    a.K12 = to_census(K12);
    a.K123 = to_census(K123);
    a.J = burnside_combine(Jid, J12, J123);
    a.K = burnside_combine(Kid, K12, K123);
    a.I.resize(kNumSteps + 1);
    for (int c = 0; c <= kNumSteps; ++c) a.I[c] = a.J[c] - a.K[c];
    return a;
}

}  // namespace octwalk
