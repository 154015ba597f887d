// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <octwalk/census.hpp>
#include <octwalk/classify.hpp>
#include <octwalk/guess.hpp>
#include <octwalk/verify.hpp>

#include "oracles.hpp"

using namespace octwalk;

namespace {

// pinned tolerances and limits
constexpr double kRatioTarget = 27.0;
constexpr double kRatioTolerance = 0.05;
constexpr double kCensusSeconds = 300.0;
constexpr double kCountSeconds = 120.0;
constexpr double kClassify5Seconds = 1800.0;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << detail << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string brackets(const std::vector<long>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::vector<long> by_card(const ClassificationSummary& s, const std::string& name) {
    auto* st = s.find(name);
    return st ? st->by_card : std::vector<long>(s.last_card - s.first_card + 1, 0);
}

std::string fmt(double x, int prec = 3) {
    std::ostringstream o;
    o.precision(prec);
    o << std::fixed << x;
    return o.str();
}

struct Runs {
    ClassifyResult octant, projected, quadrant;
    double octant_seconds = 0, octant5_seconds = 0;
};

Runs classify_all() {
    Runs r;
    ClassifyOptions o5;
    o5.max_card = 5;
    auto t0 = std::chrono::steady_clock::now();
    run_classify(Scope::Octant3D, o5);
    r.octant5_seconds = seconds_since(t0);
    ClassifyOptions opt;
    t0 = std::chrono::steady_clock::now();
    r.octant = run_classify(Scope::Octant3D, opt);
    r.octant_seconds = seconds_since(t0);
    r.projected = run_classify(Scope::Projected2D, opt);
    ClassifyOptions q = opt;
    q.max_card = 8;
    r.quadrant = run_classify(Scope::Quadrant, q);
    return r;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto a = appendix_polynomials();
    auto J = burnside_census(CensusPredicate::NoUnused);
    auto K = burnside_census(CensusPredicate::DimAtMostOne);
    auto I = burnside_census(CensusPredicate::DimTwoOrThree);
    double secs = seconds_since(t0);
    bool ok = J == a.J && K == a.K && I == a.I;
    ok = ok && I.size() == 27 && I[3] == 73 && I[4] == 979 && I[5] == 6425 && I[6] == 28071 && I[26] == 1;
    ok = ok && census_total(I) == 11074225;
    // classes of dimension 2 or 3 with at most 6 steps, from the polynomial and from direct enumeration
    long long upto6 = 0;
    for (int c = 0; c <= 6; ++c) upto6 += I[c];
    long enumerated = 0;
    for_each_model(6, {.no_unused = true, .min_dim = 2, .max_dim = 3}, [&](StepSet) { ++enumerated; });
    ok = ok && upto6 == 35548 && enumerated == 35548 && secs <= kCensusSeconds;
    report(1, ok,
           "burnside = appendix for J, K, I; I total " + std::to_string(census_total(I)) + "; I[3..6] = " +
               std::to_string(I[3]) + "," + std::to_string(I[4]) + "," + std::to_string(I[5]) + "," +
               std::to_string(I[6]) + " (" + std::to_string(upto6) + " from I, " +
               std::to_string(enumerated) + " enumerated); sweep " + fmt(secs, 1) + " s");
}

void criterion2() {
    std::vector<long> d3(7), d2(7);
    for_each_model(6, {.no_unused = true, .min_dim = 2, .max_dim = 3}, [&](StepSet s) {
        (dimension(s).dimension == 3 ? d3 : d2)[s.size()]++;
    });
    long t3 = 0, t2 = 0;
    for (long v : d3) t3 += v;
    for (long v : d2) t2 += v;
    std::vector<long> d3c(d3.begin() + 3, d3.end());
    ClassifyOptions opt;
    opt.verify = false;
    auto items = scope_items(Scope::Projected2D, 6);
    std::vector<long> proj(4);
    for (const auto& w : items) proj[w.cardinality - 3]++;
    bool ok = t3 == 20804 && d3c == std::vector<long>{1, 220, 2852, 17731} && t2 == 14744 && items.size() == 527 &&
              proj == std::vector<long>{7, 41, 141, 338};
    report(2, ok,
           "3D " + std::to_string(t3) + " = " + brackets(d3c) + "; 2D " + std::to_string(t2) + "; projected " +
               std::to_string(items.size()) + " = " + brackets(proj));
}

void criterion3(const Runs& r) {
    const auto& s = r.octant.summary;
    std::set<int> orders;
    for (const auto& rec : r.octant.records)
        if (rec.finite()) orders.insert(rec.group_order);
    bool orders_ok = true;
    for (int o : orders) orders_ok = orders_ok && std::set<int>{8, 12, 16, 24, 48}.count(o);
    bool infinite_ok = true;
    for (const auto& rec : r.octant.records)
        if (!rec.finite()) infinite_ok = infinite_ok && rec.group_status == "exceeds" && rec.group_order > 200;
    std::map<int, int> fig;
    for (const auto& [m, o] : s.non_hadamard) fig[o]++;
    bool ok = by_card(s, "finite") == std::vector<long>{0, 26, 47, 97} && orders_ok && infinite_ok &&
              by_card(s, "finite/os-nonzero") == std::vector<long>{0, 11, 31, 66} &&
              by_card(s, "finite/os-zero") == std::vector<long>{0, 15, 16, 31} &&
              by_card(s, "finite/os-zero/hadamard") == std::vector<long>{0, 8, 16, 19} &&
              by_card(s, "finite/os-zero/non-hadamard") == std::vector<long>{0, 7, 0, 12} &&
              by_card(s, "infinite") == std::vector<long>{1, 194, 2805, 17634} &&
              fig == std::map<int, int>{{12, 2}, {24, 11}, {48, 6}} && r.octant5_seconds <= kClassify5Seconds;
    std::string figs;
    for (auto [o, c] : fig) figs += (figs.empty() ? "" : ", ") + std::to_string(o) + "x" + std::to_string(c);
    report(3, ok,
           "finite " + brackets(by_card(s, "finite")) + ", OS!=0 " + brackets(by_card(s, "finite/os-nonzero")) +
               ", OS=0 " + brackets(by_card(s, "finite/os-zero")) + ", Hadamard " +
               brackets(by_card(s, "finite/os-zero/hadamard")) + ", non-Hadamard " +
               brackets(by_card(s, "finite/os-zero/non-hadamard")) + " {" + figs + "}, infinite " +
               brackets(by_card(s, "infinite")) + "; <=5 steps " + fmt(r.octant5_seconds, 1) + " s, <=6 steps " +
               fmt(r.octant_seconds, 1) + " s");
}

void criterion4(const Runs& r) {
    const auto& q = r.quadrant.summary;
    const auto& p = r.projected.summary;
    std::set<int> orders;
    for (const auto& rec : r.projected.records)
        if (rec.finite()) orders.insert(rec.group_order);
    bool orders_ok = true;
    for (int o : orders) orders_ok = orders_ok && std::set<int>{4, 6, 8}.count(o);
    long qall = q.find("all")->total(), qfin = q.find("finite")->total();
    bool ok = qall == 79 && qfin == 23 && by_card(p, "finite") == std::vector<long>{5, 19, 35, 59} && orders_ok &&
              p.find("finite/os-nonzero")->total() == 95 && p.find("finite/os-zero")->total() == 23;
    report(4, ok,
           "multiplicity-free quadrant " + std::to_string(qall) + " models, " + std::to_string(qfin) +
               " finite; projected finite " + brackets(by_card(p, "finite")) + ", OS!=0 " +
               std::to_string(p.find("finite/os-nonzero")->total()) + ", OS=0 " +
               std::to_string(p.find("finite/os-zero")->total()));
}

void criterion5(const Runs& r) {
    auto count = [](const ClassifyResult& res, const std::string& status) {
        long n = 0;
        for (const auto& rec : res.records) {
            auto it = rec.verification.find("extraction");
            if (it != rec.verification.end() && it->second == status) ++n;
        }
        return n;
    };
    long p3 = count(r.octant, "pass"), p2 = count(r.projected, "pass");
    std::string s0, s0bar, s1;
    for (const auto& rec : r.projected.records) {
        auto key = render_quadrant(parse_quadrant(rec.model).canonical());
        if (key == render_quadrant(parse_quadrant("--;-0*2;-+;+0;+-").canonical())) s0 = rec.extraction.value_or("");
        if (key == render_quadrant(parse_quadrant("++;+0*2;+-;-0;-+").canonical())) s0bar = rec.extraction.value_or("");
        if (key == render_quadrant(parse_quadrant("++;+0;-+;-0*2;--").canonical())) s1 = rec.extraction.value_or("");
    }
    bool ok = p3 == 108 && p2 == 94 && count(r.projected, "fail") == 0 && count(r.octant, "fail") == 0 &&
              s0 == "support" && s0bar == "support" && s1 == "fails" &&
              r.projected.summary.find("finite/os-nonzero/extraction-fails")->total() == 1;
    report(5, ok,
           "3D passes " + std::to_string(p3) + "/108 at N = 12, projected passes " + std::to_string(p2) +
               "/94 at N = 16; S0 " + s0 + ", S0bar " + s0bar + ", S1 " + s1);
}

void criterion6() {
    bool ok = true;
    std::string d;
    for (const auto& m : closed_form_models()) {
        int N = m.quadrant ? 40 : 24;
        auto rep = verify_closed_form(m.id, N);
        ok = ok && rep.pass();
        d += m.id + "@" + std::to_string(N) + " " + status_name(rep.status) + "; ";
    }
    StepSet ex = parse_model("---;--+;-+0;+00");
    std::vector<std::array<int, 3>> st;
    for (const auto& s : ex.steps()) st.push_back({s.i, s.j, s.k});
    mpq_class f1 = closed_form_value("ex43", 0, 0, 0, 8);
    mpz_class c1 = count_octant(ex, 8).at(0, 0, 0, 8);
    long long e1 = oracle::walks_to(st, {0, 0, 0}, 8);
    std::vector<std::array<int, 3>> q{{-1, -1, 0}, {-1, 0, 0}, {-1, 0, 0}, {-1, 1, 0}, {1, 0, 0}, {1, -1, 0}};
    mpq_class f2 = closed_form_value("S0", 0, 0, 0, 2);
    mpz_class c2 = count_quadrant(parse_quadrant("--;-0*2;-+;+0;+-"), 2).at(0, 0, 0, 2);
    long long e2 = oracle::walks_to(q, {0, 0, 0}, 2, 2);
    ok = ok && f1 == 28 && c1 == 28 && e1 == 28 && f2 == 2 && c2 == 2 && e2 == 2;
    d += "o(0,0,0;8) formula/DP/enumeration = " + f1.get_str() + "/" + c1.get_str() + "/" + std::to_string(e1);
    d += "; q(0,0;2) = " + f2.get_str() + "/" + c2.get_str() + "/" + std::to_string(e2);
    report(6, ok, d);
}

void criterion7(const Runs& r) {
    const int N = 16;
    int had = 0, ok_assemble = 0, refl = 0, ok_refl = 0;
    for (const auto& rec : r.octant.records) {
        if (!rec.finite() || !rec.orbit_sum_zero || !*rec.orbit_sum_zero || rec.hadamard.empty()) continue;
        StepSet s = parse_model(rec.model);
        auto direct = count_octant(s, N);
        ++had;
        bool all = true;
        for (const auto& h : detect_hadamard(s)) {
            auto got = hadamard_assemble(h, N);
            for (int n = 0; n <= N; ++n) all = all && got.slabs[n] == direct.slabs[n];
            if (h.d == 2 && h.T == std::vector<Exp>{Exp{-1, 0, 0}, Exp{1, 0, 0}}) {
                ++refl;
                auto rc = reflection_combine(s, h.axes[2], N);
                bool same = true;
                for (int n = 0; n <= N; ++n) same = same && rc.slabs[n] == direct.slabs[n];
                ok_refl += same;
            }
        }
        ok_assemble += all;
    }
    bool ok = had == 43 && ok_assemble == 43 && refl > 0 && ok_refl == refl;
    report(7, ok,
           "assembly = counts for " + std::to_string(ok_assemble) + "/" + std::to_string(had) +
               " Hadamard models, reflection = counts for " + std::to_string(ok_refl) + "/" + std::to_string(refl) +
               " (2,1) cases with T = z + 1/z, n <= 16");
}

void criterion8() {
    bool ok = true;
    int n = 0;
    std::string bad;
    for (const auto& w : algebraic_selectors()) {
        int N = (w == "q00" || w == "q00-param") ? 60 : 30;
        for (const auto& r : verify_algebraic_results(w, N)) {
            ++n;
            if (!r.pass()) {
                ok = false;
                bad += " " + r.identity;
            }
        }
    }
    report(8, ok, std::to_string(n) + " identities exact (Q(0,0) items mod t^61, others mod t^31)" + bad);
}

void criterion9() {
    auto T = count_quadrant(parse_quadrant("--;-0*2;-+;+0;+-"), 204, {.keep_table = false});
    const auto& q = T.series(0, 0);
    std::vector<mpz_class> head(q.begin(), q.begin() + 100), all(q.begin(), q.begin() + 201);
    auto a = guess_precursive(head, 3, 4, kDefaultPrime);
    auto b = guess_precursive(head, 3, 4, 2305843009213693951ULL);
    bool found = !a.empty() && verify_candidate(a[0], all);
    bool stable = a.size() == b.size() && !a.empty();
    for (std::size_t i = 0; stable && i < a.size(); ++i) stable = prime_stable(a[i], b[i]);
    // q(0,0;n) vanishes for odd n; m indexes even lengths
    const int m = 50;
    mpq_class ratio(q[2 * m + 2], q[2 * m]);
    double rv = ratio.get_d();
    bool ratio_ok = std::fabs(rv - kRatioTarget) <= kRatioTolerance * kRatioTarget;
    double corrected = rv * std::pow(double(2 * m + 2) / (2 * m), 4);
    report(9, found && stable && ratio_ok,
           std::string("recurrence from 100 terms ") + (found ? "verified on 201 terms" : "NOT found") + ": " +
               (a.empty() ? "-" : a[0].str()) + "; prime-stable " + (stable ? "yes" : "no") +
               "; q(0,0;102)/q(0,0;100) = " + fmt(rv, 4) + " vs 27 +- 5% " + (ratio_ok ? "ok" : "out of range") +
               " (times (102/100)^4: " + fmt(corrected, 4) + ")");
}

void criterion10(const Runs& r) {
    std::vector<std::string> bad;
    // generators: involution and S-fixing, every 3D model and every projected model
    long gens = 0;
    for_each_model(6, {.no_unused = true, .min_dim = 3, .max_dim = 3}, [&](StepSet s) {
        auto m = group_model(s);
        for (const auto& g : generators(m)) {
            Point p = apply_generator(g, identity_point());
            if (!(substitute(m.S, p) == RatFunc(m.S)) || !same_point(apply_generator(g, p), identity_point()))
                bad.push_back("generator " + render_model(s));
            ++gens;
        }
    });
    for (const auto& w : scope_items(Scope::Projected2D, 6)) {
        auto m = group_model(w.quadrant);
        for (const auto& g : generators(m)) {
            Point p = apply_generator(g, identity_point());
            if (!(substitute(m.S, p) == RatFunc(m.S)) || !same_point(apply_generator(g, p), identity_point()))
                bad.push_back("generator " + render_quadrant(w.quadrant));
            ++gens;
        }
    }
    // unused steps against reachability, every model of at most 4 steps
    long small = 0;
    for (StepSet s : enumerate_models(4)) {
        if (unused_steps(s).mask != (s.mask & ~oracle::used_steps(s).mask)) bad.push_back("unused " + render_model(s));
        ++small;
    }
    // functional equation on every finite-group model at N = 8 (run inside classification)
    long fe = 0;
    for (const auto* res : {&r.octant, &r.projected, &r.quadrant})
        for (const auto& rec : res->records)
            if (rec.finite()) {
                auto it = rec.verification.find("functional_equation");
                if (it == rec.verification.end() || it->second != "pass") bad.push_back("FE " + rec.model);
                ++fe;
            }
    // Newton residuals at N = 60
    const int N = 60;
    auto tp = [&](long c, int k) {
        std::vector<QPoly> v(N + 1);
        v[k] = QPoly(mpq_class(c));
        return TruncatedSeries(v);
    };
    std::vector<TruncatedSeries> PT{tp(-1, 1), tp(1, 0), tp(0, 0), tp(-4, 0)};
    auto Tn = solve_algebraic_series(PT, QPoly(), N).Z;
    std::vector<TruncatedSeries> PS{Tn, constant_series(QPoly(-1), N), Tn};
    auto Sn = solve_algebraic_series(PS, QPoly(), N).Z;
    std::vector<TruncatedSeries> PZ{tp(-1, 2), tp(1, 0), tp(-9, 0), tp(32, 0), tp(-56, 0), tp(48, 0), tp(-16, 0)};
    auto Zn = solve_algebraic_series(PZ, QPoly(), N).Z;
    auto T2 = multiply(Tn, Tn, N);
    for (auto& c : T2.c) c = -c;
    std::vector<TruncatedSeries> PW{T2, constant_series(QPoly(1), N), constant_series(-(QPoly(1) + QPoly::var(1)), N)};
    auto Wn = solve_algebraic_series(PW, QPoly(), N).Z;
    bool newton = is_zero_series(evaluate_poly(PT, Tn, N), N) && is_zero_series(evaluate_poly(PS, Sn, N), N) &&
                  is_zero_series(evaluate_poly(PZ, Zn, N), N) && is_zero_series(evaluate_poly(PW, Wn, N), N);
    if (!newton) bad.push_back("newton");
    // exact and modular tables, n <= 60
    for (const char* m : {"---;--+;-+0;+00", "-0-;-++;0-+;+0-;+++"}) {
        auto E = count_octant(parse_model(m), 60, {.keep_table = false});
        auto M = count_octant_mod(parse_model(m), 60, kDefaultPrime, {.keep_table = false});
        for (int mask = 0; mask < 8; ++mask)
            for (int n = 0; n <= 60; ++n) {
                mpz_class rr = E.specs[mask][n] % mpz_class(std::to_string(kDefaultPrime));
                if (rr.get_str() != std::to_string(M.specs[mask][n])) bad.push_back(std::string("mod ") + m);
            }
    }
    // negative controls: a single count +1 must fail within two terms
    int controls = 0, caught = 0;
    auto check = [&](const VerificationReport& rep, int n) {
        ++controls;
        caught += rep.status == VerifyStatus::Fail && rep.first && rep.first->n >= n && rep.first->n <= n + 2;
    };
    auto bump = [](Exp e, int n) { return [=](CountTable<mpz_class>& T) { perturb(T, e, n); }; };
    {
        StepSet s = parse_model("---;--+;-+0;+00");
        auto T = count_octant(s, 12);
        perturb(T, {1, 0, 0}, 5);
        check(verify_functional_equation(char_poly(s), {true, true, true}, table_polys(T), 12), 5);
        auto G = explore_group(group_model(s));
        check(verify_extraction_counts(orbit_sum(G, 3), check_extraction(G, 3, 6, 25), char_poly(s), table_polys(T), 12,
                                       "tampered"),
              5);
    }
    check(verify_closed_form("ex43", 12, bump({0, 0, 0}, 8)), 8);
    check(verify_closed_form("ex44", 12, bump({1, 1, 1}, 5)), 5);
    check(verify_closed_form("S0", 12, bump({2, 0, 0}, 6)), 6);
    check(verify_closed_form("S0bar-j0", 12, bump({1, 0, 0}, 7)), 7);
    for (const auto& [w, e, n] : std::vector<std::tuple<std::string, Exp, int>>{{"q00", {0, 0, 0}, 10},
                                                                              {"q00-param", {0, 0, 0}, 8},
                                                                              {"qxy", {2, 1, 0}, 7},
                                                                              {"qx0", {3, 0, 0}, 9},
                                                                              {"q0y", {0, 2, 0}, 6},
                                                                              {"q0y-hyper", {0, 2, 0}, 8},
                                                                              {"kernel-system", {1, 0, 0}, 5},
                                                                              {"kernel-system-s1", {0, 1, 0}, 5}}) {
        auto reps = verify_algebraic_results(w, 16, bump(e, n));
        VerificationReport worst;
        for (const auto& rep : reps)
            if (!rep.pass()) worst = rep;
        check(worst, n);
    }
    if (caught != controls) bad.push_back("negative controls " + std::to_string(caught) + "/" + std::to_string(controls));
    std::string d = std::to_string(gens) + " generators; " + std::to_string(small) + " models <= 4 steps; FE on " +
                    std::to_string(fe) + " finite-group models; Newton residuals " + (newton ? "zero" : "NONZERO") +
                    "; negative controls caught " + std::to_string(caught) + "/" + std::to_string(controls);
    for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 5); ++i) d += "; " + bad[i];
    report(10, bad.empty(), d);
}

void criterion11() {
    // a 6-step 3D model
    StepSet s = parse_model("-00;-0+;0-0;00-;0+-;+00");
    auto t0 = std::chrono::steady_clock::now();
    auto T = count_octant_mod(s, 200, kDefaultPrime, {.keep_table = false});
    double count_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto I = burnside_census(CensusPredicate::DimTwoOrThree);
    double census_s = seconds_since(t0);
    bool ok = count_s <= kCountSeconds && census_s <= kCensusSeconds && T.series(1, 1, 1).size() == 201 &&
              census_total(I) == 11074225;
    report(11, ok,
           "mod-p series to n = 200: " + fmt(count_s, 1) + " s (limit 120, " + std::to_string(worker_count(0)) +
               " worker(s)); census sweep " + fmt(census_s, 1) + " s (limit 300)");
}

}  // namespace

int main() {
    try {
        criterion1();
        criterion2();
        Runs runs = classify_all();
        criterion3(runs);
        criterion4(runs);
        criterion5(runs);
        criterion6();
        criterion7(runs);
        criterion8();
        criterion9();
        criterion10(runs);
        criterion11();
    } catch (const std::exception& e) {
        std::cout << "acceptance aborted: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (failures ? std::to_string(failures) + " criterion(s) failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
