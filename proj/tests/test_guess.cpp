#include <catch_amalgamated.hpp>

#include <octwalk/classify.hpp>
#include <octwalk/counting.hpp>
#include <octwalk/guess.hpp>

using namespace octwalk;

namespace {

std::vector<mpz_class> powers_of_two(int L) {
    std::vector<mpz_class> v(L);
    for (int n = 0; n < L; ++n) v[n] = mpz_class(1) << n;
    return v;
}

std::vector<mpz_class> central_binomials(int L) {
    std::vector<mpz_class> v(L);
    for (int n = 0; n < L; ++n) v[n] = binomial(2 * n, n);
    return v;
}

std::vector<mpz_class> lifted_flat(const RecurrenceCandidate& c) {
    std::vector<mpz_class> v;
    for (const auto& pi : *c.lifted)
        for (const auto& q : pi) {
            REQUIRE(q.get_den() == 1);
            v.push_back(q.get_num());
        }
    return v;
}

// product of linear factors (a m + b), coefficients in increasing degree
std::vector<mpz_class> linear_product(const std::vector<std::pair<long, long>>& f) {
    std::vector<mpz_class> p{1};
    for (auto [a, b] : f) {
        std::vector<mpz_class> q(p.size() + 1, 0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k] * b;
            q[k + 1] += p[k] * a;
        }
        p = q;
    }
    return p;
}

std::vector<mpz_class> repeated_step_q00(int N) {
    auto T = count_quadrant(parse_quadrant("--;-0*2;-+;+0;+-"), N, {.keep_table = false});
    return T.series(0, 0);
}

}  // namespace

TEST_CASE("powers of two") {
    auto c = guess_precursive(powers_of_two(60), 2, 2);
    REQUIRE(c.size() == 1);
    CHECK(c[0].r == 1);
    CHECK(c[0].d == 0);
    REQUIRE(c[0].lifted);
    CHECK(lifted_flat(c[0]) == std::vector<mpz_class>{-2, 1});
}

TEST_CASE("central binomial coefficients") {
    auto c = guess_precursive(central_binomials(60), 2, 3);
    REQUIRE_FALSE(c.empty());
    CHECK(c[0].r == 1);
    CHECK(c[0].d == 1);
    // (n + 1) a(n + 1) - (4n + 2) a(n)
    CHECK(lifted_flat(c[0]) == std::vector<mpz_class>{-2, -4, 1, 1});
}

TEST_CASE("verify_candidate on a long sequence and a negative control") {
    auto c = guess_precursive(powers_of_two(40), 1, 1)[0];
    auto seq = powers_of_two(1000);
    CHECK(verify_candidate(c, seq));
    seq[500] += 1;
    CHECK_FALSE(verify_candidate(c, seq));
    auto v = first_violation(c, reduce_mod(seq, c.prime));
    REQUIRE(v);
    CHECK(*v == 499);
}

TEST_CASE("too few terms and composite moduli are rejected") {
    CHECK_THROWS_AS(guess_precursive(powers_of_two(20), 2, 4), Error);
    CHECK_THROWS_AS(guess_precursive(powers_of_two(100), 1, 1, 1000000), Error);
}

TEST_CASE("rational reconstruction") {
    const std::uint64_t p = kDefaultPrime;
    Zp F{p};
    auto x = rational_reconstruct(F.mul(F.from(-3LL), F.inv(7)), p);
    REQUIRE(x);
    CHECK(*x == mpq_class(-3, 7));
}

TEST_CASE("repeated-step model: guess from 100 terms, verify on 200") {
    auto seq = repeated_step_q00(200);
    std::vector<mpz_class> head(seq.begin(), seq.begin() + 100);
    auto c = guess_precursive(head, 3, 4);
    REQUIRE_FALSE(c.empty());
    for (const auto& cand : c) {
        CHECK(verify_candidate(cand, seq));
        CHECK(cand.lifted.has_value());
    }
    CHECK(c[0].r == 2);
    CHECK(c[0].d == 3);
}

TEST_CASE("candidates hold on held-out terms the solver never saw") {
    auto seq = repeated_step_q00(150);
    // fit on the first 80%, then check all 151 terms
    std::vector<mpz_class> head(seq.begin(), seq.begin() + 120);
    for (const auto& c : guess_precursive(head, 3, 4)) CHECK(verify_candidate(c, seq));
    auto cb = central_binomials(150);
    std::vector<mpz_class> h2(cb.begin(), cb.begin() + 120);
    for (const auto& c : guess_precursive(h2, 2, 3)) CHECK(verify_candidate(c, cb));
}

TEST_CASE("guessing is stable across primes") {
    auto seq = repeated_step_q00(100);
    auto a = guess_precursive(seq, 3, 4, kDefaultPrime);
    auto b = guess_precursive(seq, 3, 4, 2305843009213693951ULL);  // 2^61 - 1
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].r == b[i].r);
        CHECK(a[i].d == b[i].d);
        CHECK(prime_stable(a[i], b[i]));
    }
}

TEST_CASE("hypergeometric recurrence for Q(0,0) of the reversed model holds to 200 terms") {
    // a(m) = q(0,0;2m) = 6 (6m+1)! (2m+1)! / ((3m)! (4m+3)! (m+1)!)
    auto T = count_quadrant_mod(parse_quadrant("--;-0;+-;+0*2;++"), 400, kDefaultPrime, {.keep_table = false});
    const auto& s = T.series(0, 0);
    std::vector<std::uint64_t> a;
    for (int m = 0; m <= 200; ++m) a.push_back(s[2 * m]);
    auto num = linear_product({{6, 2}, {6, 3}, {6, 4}, {6, 5}, {6, 6}, {6, 7}, {2, 2}, {2, 3}});
    auto den = linear_product({{3, 1}, {3, 2}, {3, 3}, {4, 4}, {4, 5}, {4, 6}, {4, 7}, {1, 2}});
    RecurrenceCandidate c;
    c.r = 1;
    c.d = 8;
    Zp F{c.prime};
    c.p.assign(2, std::vector<std::uint64_t>(9));
    for (int k = 0; k <= 8; ++k) {
        c.p[1][k] = F.from(den[k]);
        c.p[0][k] = F.neg(F.from(num[k]));
    }
    CHECK(verify_candidate(c, a));
    a[150] = F.add(a[150], 1);
    CHECK_FALSE(verify_candidate(c, a));
}

TEST_CASE("no small recurrence for the 3D non-Hadamard zero-orbit-sum models at desk scale") {
    // 200 terms of O(1,1,1;t) mod p, order and degree up to 12
    ClassifyOptions opt;
    opt.verify = false;
    auto res = run_classify(Scope::Octant3D, opt);
    REQUIRE(res.summary.non_hadamard.size() == 19);
    for (const auto& [model, order] : res.summary.non_hadamard) {
        auto T = count_octant_mod(parse_model(model), 200, kDefaultPrime, {.keep_table = false});
        auto c = guess_precursive(T.series(1, 1, 1), 12, 12, kDefaultPrime, 10, model);
        INFO(model);
        CHECK(c.empty());
    }
}

TEST_CASE("candidate serialization") {
    auto c = guess_precursive(central_binomials(40), 1, 1)[0];
    auto j = c.to_json();
    CHECK(j["order"] == 1);
    CHECK(j["degree"] == 1);
    CHECK(j["recurrence"] == "(1*n + 1)*a(n+1) + (-4*n + -2)*a(n) = 0");
}
