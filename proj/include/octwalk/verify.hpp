#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "counting.hpp"
#include "extraction.hpp"
#include "group.hpp"
#include "kernel.hpp"
#include "series.hpp"

namespace octwalk {

enum class VerifyStatus { Pass, Fail, Inconclusive };

inline const char* status_name(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Pass: return "pass";
        case VerifyStatus::Fail: return "fail";
        case VerifyStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct Discrepancy {
    int n = 0;  // power of t
    Exp e{};    // monomial x^i y^j z^k
    std::string expected, actual;
};

struct VerificationReport {
    std::string identity;
    int N = 0;
    std::string window;  // where the comparison is guaranteed exact
    VerifyStatus status = VerifyStatus::Pass;
    std::optional<Discrepancy> first;
    std::string note;

    bool pass() const { return status == VerifyStatus::Pass; }

    nlohmann::json to_json() const {
        nlohmann::json j{{"identity", identity}, {"order", N}, {"window", window}, {"status", status_name(status)}};
        if (first)
            j["discrepancy"] = {{"n", first->n},
                                {"exponent", {first->e[0], first->e[1], first->e[2]}},
                                {"expected", first->expected},
                                {"actual", first->actual}};
        if (!note.empty()) j["note"] = note;
        return j;
    }
};

// coefficients of t^n as Laurent polynomials
using PolySeq = std::vector<QPoly>;

namespace detail {

inline std::string box_str(const Box& b, int dim) {
    std::string s;
    for (int v = 0; v < dim; ++v) {
        if (v) s += " x ";
        s += "[" + std::to_string(b.lo[v]) + "," + std::to_string(b.hi[v]) + "]";
    }
    return s;
}

template <class C>
std::string num_str(const C& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

// First coefficient where `got` and `want` differ, over n <= N.
inline std::optional<Discrepancy> compare_polys(const PolySeq& want, const PolySeq& got, int N) {
    for (int n = 0; n <= N; ++n) {
        QPoly a = n < int(want.size()) ? want[n] : QPoly();
        QPoly b = n < int(got.size()) ? got[n] : QPoly();
        QPoly d = a - b;
        if (d.is_zero()) continue;
        Exp e = d.terms().begin()->first;
        return Discrepancy{n, e, num_str(a.coeff(e)), num_str(b.coeff(e))};
    }
    return std::nullopt;
}

inline VerificationReport make_report(std::string name, int N, std::string window,
                                      const std::optional<Discrepancy>& d) {
    VerificationReport r{std::move(name), N, std::move(window), d ? VerifyStatus::Fail : VerifyStatus::Pass, d, ""};
    return r;
}

inline VerificationReport compare_series(std::string name, const TruncatedSeries& want, const TruncatedSeries& got,
                                         int N) {
    if (want.order() < N || got.order() < N) throw Error(name + ": series shorter than the comparison order");
    return make_report(std::move(name), N, "exact", compare_polys(want.c, got.c, N));
}

}  // namespace detail

// o(.; n) as polynomials, each exponent shifted by `shift`.
inline PolySeq table_polys(const CountTable<mpz_class>& T, const Exp& shift = Exp{}) {
    PolySeq out(T.N + 1);
    for (int n = 0; n <= T.N; ++n)
        T.for_each(n, [&](const Exp& e, const mpz_class& c) {
            if (c != 0) out[n].add_term(e + shift, mpq_class(c));
        });
    return out;
}

// adds `by` to one count (negative controls)
inline void perturb(CountTable<mpz_class>& T, const Exp& e, int n, long by = 1) {
    if (!T.has_table() || n > T.N || !T.in_range(e, n)) throw Error("perturb: count outside the table");
    T.slabs[n][T.index(e, n)] += by;
}

// ---------------------------------------------------------------- functional equation

// o_n = [n = 0] + sum over subsets A of the confined axes of
// (-1)^|A| S_A o_{n-1}|_{A = 0}, where S_A keeps the steps moving -1 along
// every axis of A. With all three axes confined this is the full
// inclusion-exclusion equation; leaving one out gives the 2D form.
inline VerificationReport verify_functional_equation(const ZPoly& S, std::array<bool, 3> confined, const PolySeq& o,
                                                     int N, const std::string& name = "functional equation") {
    if (int(o.size()) < N + 1) throw Error("verify_functional_equation: counts shorter than N");
    QPoly Sq = to_q(S);
    std::vector<std::pair<int, QPoly>> parts;  // (subset mask, signed S_A)
    for (int A = 0; A < 8; ++A) {
        bool ok = true;
        for (int a = 0; a < 3; ++a)
            if ((A >> a & 1) && !confined[a]) ok = false;
        if (!ok) continue;
        QPoly SA;
        for (const auto& [e, c] : Sq.terms()) {
            bool in = true;
            for (int a = 0; a < 3; ++a)
                if ((A >> a & 1) && e[a] != -1) in = false;
            if (in) SA.add_term(e, c);
        }
        if (SA.is_zero()) continue;
        if (__builtin_popcount(A) % 2) SA = -SA;
        parts.push_back({A, SA});
    }
    PolySeq rhs(N + 1);
    rhs[0] = QPoly(1);
    for (int n = 1; n <= N; ++n)
        for (const auto& [A, SA] : parts) {
            QPoly restricted;
            for (const auto& [e, c] : o[n - 1].terms()) {
                bool zero = true;
                for (int a = 0; a < 3; ++a)
                    if ((A >> a & 1) && e[a] != 0) zero = false;
                if (zero) restricted.add_term(e, c);
            }
            if (!restricted.is_zero()) rhs[n] += SA * restricted;
        }
    return detail::make_report(name, N, "exact", detail::compare_polys(o, rhs, N));
}

// The 3D equation, or the 2D form when one octant inequality is redundant.
inline VerificationReport verify_functional_equation(StepSet s, int N, const CountOptions& opt = {}) {
    auto dim = dimension(s);
    std::array<bool, 3> confined{true, true, true};
    std::string name = "functional equation (3D)";
    if (dim.dimension == 2) {
        confined[dim.redundant_axis()] = false;
        name = std::string("functional equation (2D, ") + "xyz"[dim.redundant_axis()] + " free)";
    } else if (dim.dimension != 3) {
        throw Error("verify_functional_equation: model has dimension " + std::to_string(dim.dimension));
    }
    auto T = count_octant(s, N, opt);
    auto r = verify_functional_equation(char_poly(s), confined, table_polys(T), N, name);
    r.identity += " " + render_model(s);
    return r;
}

inline VerificationReport verify_functional_equation(const QuadrantModel& q, int N, const CountOptions& opt = {}) {
    auto T = count_quadrant(q, N, opt);
    auto r = verify_functional_equation(char_poly(q), {true, true, false}, table_polys(T), N, "functional equation (quadrant)");
    r.identity += " " + render_quadrant(q);
    return r;
}

// ---------------------------------------------------------------- extraction

// Positive part of the orbit-sum side against x y z O from counts `o`.
// The expansion runs on [1 - N, 2N + 1]^d, which leaves [1, N + 1]^d exact.
inline VerificationReport verify_extraction_counts(const RatFunc& os, const ExtractionCheck& ck, const ZPoly& S,
                                                   const PolySeq& o, int N, const std::string& name) {
    int dim = ck.dim;
    VerificationReport r;
    r.identity = name;
    r.N = N;
    Box where = Box::cube(1, N + 1, dim);
    r.window = detail::box_str(where, dim);
    if (!ck.holds()) {
        r.status = VerifyStatus::Inconclusive;
        r.note = "extraction fails:";
        for (const auto& e : ck.elements)
            if (!e.ok()) r.note += " element " + std::to_string(e.element);
        return r;
    }
    auto f = expand_ratfunc(os, ck.order, N, Box::cube(1 - N, 2 * N + 1, dim), S);
    for (int v = 0; v < dim; ++v) f = positive_part(f, v);
    Exp shift{1, 1, dim == 3 ? 1 : 0};
    PolySeq want(N + 1);
    for (int n = 0; n <= N && n < int(o.size()); ++n) want[n] = o[n].shifted(shift);
    TruncatedSeries W(want);
    auto d = first_difference(W, f, where, N);
    if (d) {
        auto [n, e] = *d;
        r.status = VerifyStatus::Fail;
        r.first = Discrepancy{n, e, detail::num_str(W.c[n].coeff(e)), detail::num_str(f.c[n].coeff(e))};
    }
    std::string ord;
    for (int v = 0; v < dim; ++v) ord += "xyz"[ck.order[v]];
    r.note = "expansion order " + ord + (ck.outright() ? "" : ", support argument used");
    return r;
}

inline VerificationReport verify_extraction(StepSet s, int N, int maxpow = 6, const CountOptions& opt = {}) {
    auto G = explore_group(group_model(s));
    if (!G.finite()) throw Error("verify_extraction: group is not finite");
    auto os = orbit_sum(G, 3);
    if (os.is_zero()) throw Error("verify_extraction: orbit sum is zero");
    auto ck = check_extraction(G, 3, maxpow, 2 * N + 1);
    auto T = count_octant(s, N, opt);
    return verify_extraction_counts(os, ck, char_poly(s), table_polys(T), N, "extraction " + render_model(s));
}

inline VerificationReport verify_extraction(const QuadrantModel& q, int N, int maxpow = 6, const CountOptions& opt = {}) {
    auto G = explore_group(group_model(q));
    if (!G.finite()) throw Error("verify_extraction: group is not finite");
    auto os = orbit_sum(G, 2);
    if (os.is_zero()) throw Error("verify_extraction: orbit sum is zero");
    auto ck = check_extraction(G, 2, maxpow, 2 * N + 1);
    auto T = count_quadrant(q, N, opt);
    return verify_extraction_counts(os, ck, char_poly(q), table_polys(T), N, "extraction " + render_quadrant(q));
}

// ---------------------------------------------------------------- closed forms

namespace detail {

// prod a_i! / prod b_j! times rational factors; a negative b_j makes the
// whole term zero, and that is decided before anything is divided.
struct FactorialTerm {
    std::vector<long> up, down;
    std::vector<std::pair<long, long>> ratios;  // p / q
    FactorialTerm& times_fact(long m) {
        up.push_back(m);
        return *this;
    }
    FactorialTerm& over(long m) {
        down.push_back(m);
        return *this;
    }
    FactorialTerm& times(long p, long q = 1) {
        ratios.push_back({p, q});
        return *this;
    }
    mpq_class get() const {
        for (long m : down)
            if (m < 0) return 0;
        mpq_class v(1);
        for (long m : up) {
            if (m < 0) throw Error("closed form: factorial of a negative number in a numerator");
            v *= factorial(m);
        }
        for (long m : down) v /= factorial(m);
        for (auto [p, q] : ratios) {
            if (q == 0) throw Error("closed form: zero denominator");
            mpq_class r(p, q);
            r.canonicalize();
            v *= r;
        }
        v.canonicalize();
        return v;
    }
};

inline mpq_class closed_ex43(long i, long j, long k, long n) {
    long r = n - i - 2 * j - 4 * k;
    if (r % 8) return 0;
    long m = r / 8;
    FactorialTerm f;
    f.times((i + 1) * (j + 1) * (k + 1)).times_fact(n);
    f.over(4 * m + i + j + 2 * k + 1).over(2 * m + j + k + 1).over(m + k + 1).over(m);
    return f.get();
}

inline mpq_class closed_ex44(long i, long j, long k, long n) {
    long r = n - 4 * i - 2 * j - 3 * k;
    if (r % 8) return 0;
    long m = r / 8;
    FactorialTerm f;
    f.times((i + 1) * (j + 1) * (k + 1), 4 * m + 2 * i + j + 2 * k + 1);
    f.times_fact(6 * m + 3 * i + 2 * j + 2 * k).over(3 * m + 2 * i + j + k + 1).over(3 * m + i + j + k);
    f.times_fact(n).over(2 * m + i + k).over(2 * m + i + j + k + 1).over(4 * m + 2 * i + j + k);
    return f.get();
}

inline mpq_class closed_s0(long i, long j, long n) {
    long r = n - i;
    if (r % 2) return 0;
    long m = r / 2;
    FactorialTerm f;
    f.times((i + 1) * (j + 1) * ((2 * i + 3 * j + 6) * m + i * i + 5 * i + 2 * i * j + 3 * j + 6));
    f.times_fact(n).times_fact(3 * m + i + 2);
    f.over(m).over(m + i).over(m - j).over(2 * m + i + j + 3);
    f.times(1, (m + i + 1) * (m + i + 2) * (m + 1));
    return f.get();
}

inline mpq_class closed_s0bar_j0(long i, long n) {
    long r = n - i;
    if (r % 2) return 0;
    long m = r / 2;
    FactorialTerm f;
    f.times((i + 1) * (i + 2)).times_fact(2 * m + i).times_fact(3 * m + 2 * i + 3);
    f.over(m).over(m + i).over(m + i + 2).over(2 * m + i + 2);
    f.times(1, (m + i + 1) * (2 * m + 2 * i + 3));
    return f.get();
}

}  // namespace detail

struct ClosedFormModel {
    std::string id;
    std::string model;  // octant model or quadrant model text
    bool quadrant = false;
};

inline const std::vector<ClosedFormModel>& closed_form_models() {
    static const std::vector<ClosedFormModel> v{
        {"ex43", "---;--+;-+0;+00", false},
        {"ex44", "-0-;-++;0-+;+0-;+++", false},
        {"S0", "--;-0*2;-+;+0;+-", true},
        {"S0bar-j0", "++;+0*2;+-;-0;-+", true},
    };
    return v;
}

// value of the closed form at (i, j, k; n)
inline mpq_class closed_form_value(const std::string& id, long i, long j, long k, long n) {
    if (id == "ex43") return detail::closed_ex43(i, j, k, n);
    if (id == "ex44") return detail::closed_ex44(i, j, k, n);
    if (id == "S0") return k ? mpq_class(0) : detail::closed_s0(i, j, n);
    if (id == "S0bar-j0") {
        if (j || k) throw Error("closed form S0bar-j0 only covers j = 0");
        return detail::closed_s0bar_j0(i, n);
    }
    throw Error("unknown closed-form model '" + id + "'");
}

// Formula against counts for every endpoint and n <= N.
inline VerificationReport verify_closed_form(const std::string& id, int N,
                                             const std::function<void(CountTable<mpz_class>&)>& tamper = {}) {
    const ClosedFormModel* cm = nullptr;
    for (const auto& m : closed_form_models())
        if (m.id == id) cm = &m;
    if (!cm) throw Error("unknown closed-form model '" + id + "'");
    CountTable<mpz_class> T = cm->quadrant ? count_quadrant(parse_quadrant(cm->model), N)
                                           : count_octant(parse_model(cm->model), N);
    if (tamper) tamper(T);
    bool j0 = id == "S0bar-j0";
    std::optional<Discrepancy> first;
    for (int n = 0; n <= N && !first; ++n)
        T.for_each(n, [&](const Exp& e, const mpz_class& c) {
            if (first || (j0 && e[1] != 0)) return;
            mpq_class f = closed_form_value(id, e[0], e[1], e[2], n);
            if (f != mpq_class(c)) first = Discrepancy{n, e, detail::num_str(f), detail::num_str(c)};
        });
    std::string window = cm->quadrant ? (j0 ? "0 <= i <= n, j = 0" : "0 <= i, j <= n") : "0 <= i, j, k <= n";
    auto r = detail::make_report("closed form " + id + " " + cm->model, N, window, first);
    return r;
}

// ---------------------------------------------------------------- algebraic and kernel identities

namespace detail {

inline const char* kS1bar = "--;-0;+-;+0*2;++";
inline const char* kS1 = "++;+0;-+;-0*2;--";

inline TruncatedSeries poly_series(const std::vector<std::pair<int, long>>& terms, int N) {
    std::vector<QPoly> v(N + 1);
    for (auto [k, c] : terms)
        if (k <= N) v[k] += QPoly(int(c));
    return TruncatedSeries(std::move(v));
}

inline TruncatedSeries laurent_const(const QPoly& p, int N) { return constant_series(p, N); }

inline TruncatedSeries padded(const PolySeq& p, int M) {
    std::vector<QPoly> v(M + 1);
    for (int n = 0; n <= M && n < int(p.size()); ++n) v[n] = p[n];
    return TruncatedSeries(std::move(v));
}

inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b, int N) { return multiply(a, b, N); }
inline TruncatedSeries plus(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b); }
inline TruncatedSeries minus(const TruncatedSeries& a, const TruncatedSeries& b) { return add(a, b, -1); }

// f / t for a series without constant term
inline TruncatedSeries div_t(const TruncatedSeries& f) {
    if (!f.c.empty() && !f.c[0].is_zero()) throw Error("div_t: non-zero constant term");
    return TruncatedSeries(std::vector<QPoly>(f.c.begin() + 1, f.c.end()));
}

inline TruncatedSeries mul_t(const TruncatedSeries& f, int k, int N) {
    std::vector<QPoly> v(N + 1);
    for (int n = 0; n + k <= N && n <= f.order(); ++n) v[n + k] = f.c[n];
    return TruncatedSeries(std::move(v));
}

// root with zero constant term of a0 + a1 Z + a2 Z^2, coefficients polynomials in t
inline TruncatedSeries quadratic_root(const std::vector<TruncatedSeries>& P, int N) {
    return solve_algebraic_series(P, QPoly(), N).Z;
}

struct QuadrantData {
    PolySeq full, x0, y0;  // Q(x,y), Q(x,0), Q(0,y)
    PolySeq q00;
};

using Tamper = std::function<void(CountTable<mpz_class>&)>;

inline QuadrantData quadrant_data(const std::string& model, int N, const Tamper& tamper) {
    auto T = count_quadrant(parse_quadrant(model), N);
    if (tamper) tamper(T);
    QuadrantData d;
    d.full = table_polys(T);
    for (const auto& p : d.full) {
        QPoly a, b, c;
        for (const auto& [e, v] : p.terms()) {
            if (e[1] == 0) a.add_term(e, v);
            if (e[0] == 0) b.add_term(e, v);
            if (e[0] == 0 && e[1] == 0) c.add_term(e, v);
        }
        d.x0.push_back(a);
        d.y0.push_back(b);
        d.q00.push_back(c);
    }
    return d;
}

inline QPoly X() { return QPoly::var(0); }
inline QPoly Y() { return QPoly::var(1); }

}  // namespace detail

inline const std::vector<std::string>& algebraic_selectors() {
    static const std::vector<std::string> v{"q00", "q00-param", "qxy", "qx0", "q0y", "q0y-hyper", "kernel-system",
                                            "kernel-system-s1", "homogeneous"};
    return v;
}

// Checks one family of identities for the model S1bar (or S1); every
// check is an exact comparison of truncated series mod t^(N+1).
// `tamper` may alter the counts before comparison (negative controls).
inline std::vector<VerificationReport> verify_algebraic_results(const std::string& which, int N,
                                                                const detail::Tamper& tamper = {}) {
    using namespace detail;
    std::vector<VerificationReport> out;
    auto series_of = [](const PolySeq& p) { return TruncatedSeries(p); };

    if (which == "q00" || which == "a") {
        auto d = quadrant_data(kS1bar, N, tamper);
        auto hyper = series_from(N, [](int n) -> QPoly {
            if (n % 2) return QPoly();
            long m = n / 2;
            FactorialTerm f;
            f.times(6).times_fact(6 * m + 1).times_fact(2 * m + 1).over(3 * m).over(4 * m + 3).over(m + 1);
            return QPoly(f.get());
        });
        auto Q = series_of(d.q00);
        out.push_back(compare_series("Q(0,0) hypergeometric display", hyper, Q, N));
        std::vector<TruncatedSeries> P{
            poly_series({{0, -1}, {2, 44}, {4, 16}}, N),  poly_series({{0, 1}, {2, -56}, {4, 48}}, N),
            poly_series({{2, 9}, {4, -8}, {6, 48}}, N),   poly_series({{4, 32}, {6, 96}}, N),
            poly_series({{6, 56}, {8, 48}}, N),           poly_series({{8, 48}}, N),
            poly_series({{10, 16}}, N)};
        auto res = evaluate_poly(P, Q, N);
        out.push_back(compare_series("Q(0,0) algebraic equation of degree 6", constant_series(QPoly(), N), res, N));
    } else if (which == "q00-param" || which == "b") {
        auto d = quadrant_data(kS1bar, N, tamper);
        // Z(1 - Z)(1 - 2Z)^4 - t^2 = Z - 9Z^2 + 32Z^3 - 56Z^4 + 48Z^5 - 16Z^6 - t^2
        std::vector<TruncatedSeries> P{poly_series({{2, -1}}, N), poly_series({{0, 1}}, N), poly_series({{0, -9}}, N),
                                       poly_series({{0, 32}}, N), poly_series({{0, -56}}, N), poly_series({{0, 48}}, N),
                                       poly_series({{0, -16}}, N)};
        auto Z = quadratic_root(P, N);
        std::vector<TruncatedSeries> R{poly_series({}, N), poly_series({{0, 1}}, N), poly_series({{0, -6}}, N),
                                       poly_series({{0, 4}}, N)};
        auto rhs = evaluate_poly(R, Z, N);
        auto lhs = mul_t(series_of(d.q00), 2, N);
        out.push_back(compare_series("t^2 Q(0,0) = Z(1 - 6Z + 4Z^2)", lhs, rhs, N));
    } else if (which == "qxy" || which == "c") {
        auto d = quadrant_data(kS1bar, N, tamper);
        // xy(1 - t(1 + 1/y)(1/x + x(1 + y))) Q = xy - t(1 + x^2) Q(x,0) - t(1 + y) Q(0,y) + t Q(0,0)
        QPoly x = X(), y = Y(), xy = x * y;
        QPoly K1 = xy * (QPoly(1) + QPoly::monomial({0, -1, 0})) * (QPoly::monomial({-1, 0, 0}) + x * (QPoly(1) + y));
        PolySeq lhs(N + 1), rhs(N + 1);
        for (int n = 0; n <= N; ++n) {
            lhs[n] = xy * d.full[n];
            if (n) lhs[n] -= K1 * d.full[n - 1];
            if (n == 0) rhs[n] = xy;
            if (n) {
                rhs[n] -= (QPoly(1) + x * x) * d.x0[n - 1];
                rhs[n] -= (QPoly(1) + y) * d.y0[n - 1];
                rhs[n] += d.q00[n - 1];
            }
        }
        out.push_back(make_report("kernel equation for Q(x,y)", N, "exact", compare_polys(lhs, rhs, N)));
    } else if (which == "qx0" || which == "q0y" || which == "d") {
        int M = N + 2;
        auto d = quadrant_data(kS1bar, N, tamper);
        // T(1 - 4T^2) = t; S = T(1 + S^2)
        auto T = quadratic_root({poly_series({{1, -1}}, M), poly_series({{0, 1}}, M), poly_series({}, M),
                                 poly_series({{0, -4}}, M)},
                                M);
        if (which != "q0y") {
            auto Sx = quadratic_root({T, constant_series(QPoly(-1), M), T}, M);
            auto one = constant_series(QPoly(1), M);
            auto S2 = mul(Sx, Sx, M);
            auto S4 = mul(S2, S2, M);
            auto xs = constant_series(X(), M);
            auto x2 = constant_series(QPoly(1) + X() * X(), M);
            auto onem = minus(one, S2), onep = plus(one, S2);
            auto disc = minus(mul(onem, onem, M), scale(mul(Sx, onep, M), QPoly(4) * X()));
            auto root = series_sqrt(disc, M);
            auto num = mul(xs, plus(plus(one, scale(S2, QPoly(6))), S4), M);
            num = minus(num, mul(scale(mul(Sx, onem, M), QPoly(2)), x2, M));
            auto lin = plus(minus(xs, scale(Sx, QPoly(2))), scale(S2, X()));
            num = minus(num, mul(lin, root, M));
            auto rhs = mul(mul(onep, mul(onep, onep, M), M), num, M);
            auto lhs = mul(scale(mul(S2, mul(onem, mul(onem, onem, M), M), M), QPoly(2) * X() * (QPoly(1) + X() * X())),
                           padded(d.x0, M), M);
            auto r = compare_series("Q(x,0) parametrization (cleared of denominators)", lhs, rhs, M);
            r.N = N;
            out.push_back(r);
        }
        if (which != "qx0") {
            // W(1 - (1 + y)W) = T^2; t^2 Q(0,y) = W(1 - 4T^2 - 2W)
            auto T2 = mul(T, T, M);
            TruncatedSeries negT2 = T2;
            for (auto& p : negT2.c) p = -p;
            auto W = quadratic_root({negT2, constant_series(QPoly(1), M), constant_series(-(QPoly(1) + Y()), M)}, M);
            auto rhs = mul(W, minus(minus(constant_series(QPoly(1), M), scale(T2, QPoly(4))), scale(W, QPoly(2))), M);
            auto lhs = mul_t(padded(d.y0, N), 2, M);
            auto r = compare_series("Q(0,y) parametrization", lhs, rhs, M);
            r.N = N;
            out.push_back(r);
        }
    } else if (which == "q0y-hyper" || which == "e") {
        auto d = quadrant_data(kS1bar, N, tamper);
        auto hyper = series_from(N, [](int n) -> QPoly {
            QPoly p;
            if (n % 2) return p;
            long m = n / 2;
            for (long j = 0; j <= m; ++j) {
                FactorialTerm f;
                f.times(6).times_fact(2 * j + 1).times_fact(6 * m + 1).times_fact(2 * m + j + 1);
                f.over(j).over(j).over(3 * m).over(4 * m + 2 * j + 3).over(m - j).times(1, m + 1);
                p.add_term({0, int(j), 0}, f.get());
            }
            return p;
        });
        out.push_back(compare_series("Q(0,y) double hypergeometric display", hyper, series_of(d.y0), N));
    } else if (which == "kernel-system" || which == "kernel-system-s1" || which == "f") {
        bool both = which == "f";
        for (int pass = 0; pass < 2; ++pass) {
            bool s1 = pass == 1;
            if (!both && s1 != (which == "kernel-system-s1")) continue;
            int M = N + 1;
            auto d = quadrant_data(s1 ? kS1 : kS1bar, N, tamper);
            QPoly x = X(), y = Y(), xb = QPoly::monomial({-1, 0, 0}), yb = QPoly::monomial({0, -1, 0});
            TruncatedSeries Xs, Ys;
            if (!s1) {
                // Y roots -t x Y^2 + (1 - t/x - 2tx) Y - t(x + 1/x); X roots -t(1+1/y)(1+y) X^2 + X - t(1 + 1/y)
                Ys = quadratic_root({mul_t(constant_series(-(x + xb), M), 1, M),
                                     plus(constant_series(QPoly(1), M), mul_t(constant_series(-(xb + QPoly(2) * x), M), 1, M)),
                                     mul_t(constant_series(-x, M), 1, M)},
                                    M);
                Xs = quadratic_root({mul_t(constant_series(-(QPoly(1) + yb), M), 1, M), constant_series(QPoly(1), M),
                                     mul_t(constant_series(-(QPoly(1) + yb) * (QPoly(1) + y), M), 1, M)},
                                    M);
            } else {
                // Y roots -t(x + 1/x) Y^2 + (1 - 2t/x - tx) Y - t/x; X roots -t(1+y) X^2 + X - t(1+y)(1+1/y)
                Ys = quadratic_root({mul_t(constant_series(-xb, M), 1, M),
                                     plus(constant_series(QPoly(1), M), mul_t(constant_series(-(QPoly(2) * xb + x), M), 1, M)),
                                     mul_t(constant_series(-(x + xb), M), 1, M)},
                                    M);
                Xs = quadratic_root({mul_t(constant_series(-(QPoly(1) + y) * (QPoly(1) + yb), M), 1, M),
                                     constant_series(QPoly(1), M), mul_t(constant_series(-(QPoly(1) + y), M), 1, M)},
                                    M);
            }
            auto F = series_of(d.x0), G = series_of(d.y0), Q00 = series_of(d.q00);
            auto one = constant_series(QPoly(1), N);
            auto Yn = truncate(Ys, N), Xn = truncate(Xs, N);
            auto FX = series_substitute(F, 0, Xn, N);
            auto GY = series_substitute(G, 1, Yn, N);
            auto Yt = truncate(div_t(Ys), N), Xt = truncate(div_t(Xs), N);
            auto rhs1 = plus(scale(Yt, x), Q00), rhs2 = plus(scale(Xt, y), Q00);
            TruncatedSeries lhs1, lhs2;
            if (!s1) {
                lhs1 = plus(scale(F, QPoly(1) + x * x), mul(plus(one, Yn), GY, N));
                lhs2 = plus(mul(plus(one, mul(Xn, Xn, N)), FX, N), scale(G, QPoly(1) + y));
            } else {
                auto oy = plus(one, Yn);
                lhs1 = plus(F, mul(mul(oy, oy, N), GY, N));
                lhs2 = plus(FX, scale(G, (QPoly(1) + y) * (QPoly(1) + y)));
            }
            std::string tag = s1 ? " (S1)" : " (S1bar)";
            out.push_back(compare_series("kernel system, first equation" + tag, rhs1, lhs1, N));
            out.push_back(compare_series("kernel system, second equation" + tag, rhs2, lhs2, N));
        }
    } else if (which == "homogeneous" || which == "g") {
        auto G = explore_group(group_model(parse_quadrant(kS1)));
        if (!G.finite() || G.order != 6) throw Error("homogeneous check: unexpected group for S1");
        for (const char* ptext : {"x", "2*x*y + x^3*y", "x^2*y + x^2 + y + 2", "x^3*y^2 - x^3*y + x^3 + 2*x*y^2"}) {
            QPoly P = parse_laurent(ptext);
            RatFunc sum;
            for (const auto& e : G.elements) {
                RatFunc term = orbit_monomial(e.coords, 2) * substitute(P, e.coords);
                sum = e.sign() > 0 ? sum + term : sum - term;
            }
            VerificationReport r;
            r.identity = std::string("homogeneous orbit equation annihilated by ") + ptext;
            r.N = N;
            r.window = "exact rational identity";
            if (!sum.is_zero()) {
                r.status = VerifyStatus::Fail;
                r.note = "signed orbit sum = " + sum.num().str() + " / (" + sum.den().str() + ")";
            }
            out.push_back(r);
        }
    } else {
        throw Error("unknown selector '" + which + "'");
    }
    return out;
}

}  // namespace octwalk
