#include <catch_amalgamated.hpp>

#include <set>

#include <octwalk/stepset.hpp>

#include "oracles.hpp"

using namespace octwalk;

namespace {

const StepSet kEx43 = parse_model("---;--+;-+0;+00");
const StepSet kExample1 = parse_model("0--;-+0;-++;+0+");

bool sufficient(StepSet s, std::vector<int> kept) {
    for (int c = 0; c < 3; ++c) {
        if (std::find(kept.begin(), kept.end(), c) != kept.end()) continue;
        if (kept.empty()) {
            for (const auto& st : s.steps())
                if (st[c] < 0) return false;
        } else if (!implied(s, c, kept)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("bit layout is lexicographic") {
    CHECK(step_bit({-1, -1, -1}) == 0);
    CHECK(step_bit({0, 0, -1}) == 12);
    CHECK(step_bit({0, 0, 1}) == 13);
    CHECK(step_bit({1, 1, 1}) == 25);
    for (int b = 0; b < kNumSteps; ++b) CHECK(step_bit(bit_step(b)) == b);
}

TEST_CASE("parse and render") {
    CHECK(parse_model("+00") == StepSet{{1, 0, 0}});
    CHECK(kEx43 == StepSet{{-1, -1, -1}, {-1, -1, 1}, {-1, 1, 0}, {1, 0, 0}});
    CHECK(parse_model("---,--+,-+0,+00") == kEx43);
    CHECK(parse_model(render_model(kEx43)) == kEx43);
    CHECK(parse_model(render_code(kEx43.mask)) == kEx43);
    CHECK(render_code(1) == "0x0000001");
    CHECK_THROWS_AS(parse_model("000"), ParseError);
    CHECK_THROWS_AS(parse_model("+0x"), ParseError);
    CHECK_THROWS_AS(parse_model("+00;+00"), ParseError);
    CHECK_THROWS_AS(parse_model("+00;+0"), ParseError);
    CHECK_THROWS_AS(parse_model("0x4000000"), ParseError);
    try {
        parse_model("+00;--a");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
}

TEST_CASE("canonical code") {
    CHECK(canonical_code(StepSet{{1, 0, 0}}) == canonical_code(StepSet{{0, 1, 0}}));
    std::set<std::uint32_t> codes;
    for (const auto& p : kPerms) {
        StepSet img;
        for (const auto& st : kEx43.steps()) img.mask |= 1u << step_bit(permute(st, p));
        codes.insert(canonical_code(img));
        CHECK(permute_mask(kEx43.mask, int(&p - kPerms.data())) == img.mask);
    }
    CHECK(codes.size() == 1);
    for (std::uint32_t m : {0u, 5u, 12345u, kEx43.mask, kFullMask})
        CHECK(canonical_code(canonical_code(m)) == canonical_code(m));
}

TEST_CASE("unused steps: worked examples") {
    CHECK(unused_steps(StepSet{{-1, 0, 0}, {0, 1, 0}}) == StepSet{{-1, 0, 0}});
    CHECK(unused_steps(StepSet{{0, 0, 1}, {-1, 1, 0}, {1, -1, -1}}) == StepSet{{-1, 1, 0}, {1, -1, -1}});
    CHECK(unused_steps(StepSet{{1, 1, 1}, {1, 0, 0}}).empty());
    CHECK(unused_steps(StepSet{}).empty());
}

TEST_CASE("unused steps agree with reachability for every model of at most 4 steps") {
    long long checked = 0;
    for (int card = 0; card <= 4; ++card)
        for (const auto& s : enumerate_models(card)) {
            if (s.size() != card) continue;
            StepSet used = oracle::used_steps(s, 16);
            REQUIRE(StepSet(s.mask & ~used.mask) == unused_steps(s));
            ++checked;
        }
    CHECK(checked > 1000);
}

TEST_CASE("dimension examples") {
    for (std::uint32_t sub = 1; sub < 128; ++sub) {
        StepSet s;
        for (int b = 0; b < 7; ++b)
            if (sub >> b & 1) s.mask |= 1u << step_bit({(b + 1) >> 2 & 1, (b + 1) >> 1 & 1, (b + 1) & 1});
        CHECK(dimension(s).dimension == 0);
    }
    auto d1 = dimension(kExample1);
    CHECK(d1.dimension == 2);
    CHECK(d1.redundant == std::array<bool, 3>{false, false, true});
    REQUIRE(d1.alpha_beta);
    CHECK(d1.alpha_beta->c == 2);
    CHECK(d1.alpha_beta->alpha == 1);
    CHECK(d1.alpha_beta->beta == 1);

    auto d43 = dimension(kEx43);
    CHECK(d43.dimension == 3);
    CHECK(d43.certificates.size() == 3);
    CHECK_THROWS_AS(dimension(StepSet{{-1, 0, 0}, {0, 1, 0}}), Error);
}

TEST_CASE("dimension two examples with a redundant axis") {
    CHECK(lemma1d_check(StepSet{{-1, 1, 1}, {1, 1, 1}}, 0));
    CHECK(!lemma1d_check(kExample1, 0));
    CHECK(lemma1d_check(StepSet{}, 0));
    CHECK(implied(StepSet{{-1, 1, 1}, {1, 1, 1}}, 1, {0}));
    CHECK(!implied(kExample1, 1, {0}));
}

TEST_CASE("dimension properties over all models with at most 6 steps") {
    std::array<int, 4> by_dim{};
    std::set<std::tuple<mpq_class, mpq_class>> observed{
        {0, 0}, {1, 0}, {0, 1}, {1, 1}, {mpq_class(1, 2), mpq_class(1, 2)}, {1, 2}, {2, 1}};
    for_each_model(6, {.no_unused = true}, [&](StepSet s) {
        auto d = dimension(s);
        ++by_dim[d.dimension];
        // Lemma 2 and the elimination agree
        REQUIRE((d.dimension <= 1) == dimension_at_most_one(s.mask));
        for (int a = 0; a < 3; ++a)
            if (lemma1d_check(s, a)) REQUIRE(d.dimension <= 1);
        // sufficiency is upward closed and its minimum size is the dimension
        int best = 3;
        for (int sub = 0; sub < 8; ++sub) {
            std::vector<int> kept;
            for (int a = 0; a < 3; ++a)
                if (sub >> a & 1) kept.push_back(a);
            if (!sufficient(s, kept)) continue;
            best = std::min(best, int(kept.size()));
            for (int a = 0; a < 3; ++a)
                if (!(sub >> a & 1)) {
                    auto more = kept;
                    more.push_back(a);
                    REQUIRE(sufficient(s, more));
                }
        }
        REQUIRE(best == d.dimension);
        for (const auto& cert : d.certificates) {
            auto v = tuple_forms(cert.tuple);
            for (int a = 0; a < 3; ++a) REQUIRE((v[a] < 0) == (a == cert.axis));
        }
        if (d.dimension == 2) {
            REQUIRE(d.alpha_beta);
            bool found = false;
            for (int c = 0; c < 3 && !found; ++c) {
                if (!d.redundant[c]) continue;
                for (const auto& [al, be] : observed)
                    found = found || alpha_beta_holds(s, {c, c == 0 ? 1 : 0, c == 2 ? 1 : 2, al, be});
            }
            REQUIRE(found);
        }
    });
    CHECK(by_dim[2] + by_dim[3] == 35548);
    CHECK(by_dim[3] == 20804);
    CHECK(by_dim[2] == 14744);
}

TEST_CASE("projection to the quadrant") {
    auto q = project_to_quadrant(kExample1, 2);
    CHECK(q.weight(0, -1) == 1);
    CHECK(q.weight(-1, 1) == 2);
    CHECK(q.weight(1, 0) == 1);
    CHECK(q.total_weight() == 4);
    CHECK(render_quadrant(q) == "-+*2;0-;+0");
    CHECK(parse_quadrant(render_quadrant(q)) == q);

    // (0,0,-1) always breaks redundancy of z, so the pair is only seen by the raw projection
    StepSet pair = parse_model("00+;00-;-0+;+0-;0+0");
    CHECK(project_raw(pair, 2).dropped_null_steps == 2);
    CHECK(!implied(pair, 2, {0, 1}));
    StepSet nulls = parse_model("00+;+++;-0+;0-+");
    REQUIRE(dimension(nulls).redundant[2]);
    CHECK(project_to_quadrant(nulls, 2).dropped_null_steps == 1);

    StepSet mirror;
    for (const auto& st : kExample1.steps()) mirror.mask |= 1u << step_bit({st.j, st.i, st.k});
    CHECK(project_to_quadrant(mirror, 2) == q);
    CHECK_THROWS_AS(project_to_quadrant(kEx43, 2), Error);
}

TEST_CASE("enumeration yields distinct canonical codes") {
    auto models = enumerate_models(4);
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < models.size(); ++i) {
        CHECK(canonical_code(models[i]) == models[i].mask);
        CHECK(seen.insert(models[i].mask).second);
        if (i) CHECK(models[i - 1].mask < models[i].mask);
    }
    CHECK(enumerate_models(0).size() == 1);
    // single steps form three classes: one, two and three nonzero coordinates... up to sign
    auto singles = enumerate_models(1);
    std::set<std::uint32_t> codes;
    for (int b = 0; b < kNumSteps; ++b) codes.insert(canonical_code(1u << b));
    CHECK(singles.size() == codes.size() + 1);
    auto nu = enumerate_models(1, {.no_unused = true});
    for (const auto& s : nu)
        for (const auto& st : s.steps()) CHECK((st.i >= 0 && st.j >= 0 && st.k >= 0));
}
