#include <set>

#include <catch_amalgamated.hpp>

#include <octwalk/extraction.hpp>
#include <octwalk/group.hpp>

using namespace octwalk;

namespace {

const char* kExample = "---;--+;-+0;+00";
const char* kGessel = "-0;+0;--;++";

}  // namespace

TEST_CASE("generators fix S and are involutions for every 3D model with at most 6 steps") {
    long checked = 0;
    for_each_model(6, {.no_unused = true, .min_dim = 3, .max_dim = 3}, [&](StepSet s) {
        auto m = group_model(s);
        auto id = identity_point();
        for (const auto& g : generators(m)) {
            Point p = apply_generator(g, id);
            REQUIRE(substitute(m.S, p) == RatFunc(m.S));
            REQUIRE(same_point(apply_generator(g, p), id));
        }
        ++checked;
    });
    CHECK(checked == 20804);
}

TEST_CASE("quadrant generators fix S and are involutions") {
    for (int mask = 1; mask < 256; ++mask) {
        QuadrantModel q;
        for (int b = 0; b < 8; ++b) q.weights[b] = mask >> b & 1;
        auto m = group_model(q);
        bool ok = true;
        for (int v = 0; v < 2; ++v) ok = ok && !m.S.slice(v, -1).is_zero() && !m.S.slice(v, 1).is_zero();
        if (!ok) continue;
        for (const auto& g : generators(m)) {
            Point p = apply_generator(g, identity_point());
            REQUIRE(substitute(m.S, p) == RatFunc(m.S));
            REQUIRE(same_point(apply_generator(g, p), identity_point()));
        }
    }
}

TEST_CASE("known group orders") {
    CHECK(explore_group(group_model(parse_model(kExample))).order == 8);
    CHECK(explore_group(group_model(parse_quadrant(kGessel))).order == 8);
    CHECK(explore_group(group_model(parse_quadrant("-0;0-;++"))).order == 6);
    CHECK(explore_group(group_model(parse_quadrant("-0;+0;0-;0+"))).order == 4);
    auto inf = explore_group(group_model(parse_quadrant("-0;0-;+-;++")), 200);
    CHECK(inf.status == GroupStatus::ExceedsBound);
    CHECK(inf.order > 200);
}

TEST_CASE("finite groups are closed under generators and orbit sums are antisymmetric") {
    for (const char* model : {"---;--+;-+0;+00", "-0-;-++;0-+;+0-;+++", "+00;-00;0+0;0-0;00+;00-"}) {
        auto m = group_model(parse_model(model));
        auto G = explore_group(m);
        REQUIRE(G.finite());
        auto gens = generators(m);
        for (const auto& e : G.elements)
            for (const auto& g : gens) {
                Point q = apply_generator(g, e.coords);
                bool found = false;
                for (const auto& f : G.elements)
                    if (same_point(f.coords, q)) {
                        found = true;
                        CHECK(f.sign() == -e.sign());
                    }
                REQUIRE(found);
            }
        auto os = orbit_sum(G, 3);
        for (const auto& g : gens) {
            Point p = apply_generator(g, identity_point());
            auto num = substitute(os.num(), p), den = substitute(os.den(), p);
            CHECK(num / den == -os);
        }
    }
}

TEST_CASE("orbit sums: Kreweras vanishes, the simple walk does not") {
    auto simple = explore_group(group_model(parse_model("+00;-00;0+0;0-0;00+;00-")));
    CHECK(simple.order == 8);
    // (x - 1/x)(y - 1/y)(z - 1/z)
    ZPoly x = ZPoly::var(0), y = ZPoly::var(1), z = ZPoly::var(2);
    RatFunc want(ZPoly((x * x - ZPoly(1)) * (y * y - ZPoly(1)) * (z * z - ZPoly(1))), ZPoly(x * y * z));
    CHECK(orbit_sum(simple, 3) == want);
    auto kre = explore_group(group_model(parse_quadrant("-0;0-;++")));
    CHECK(orbit_sum(kre, 2).is_zero());
    auto ex = explore_group(group_model(parse_model(kExample)));
    CHECK_FALSE(orbit_sum(ex, 3).is_zero());
}

TEST_CASE("fingerprint verdicts agree with exact comparison") {
    // exploring with two seeds gives the same order; the exact pass never merges
    // points the fingerprints keep apart
    for (const char* model : {"---;--+;-+0;+00", "-0-;-++;0-+;+0-;+++", "--0;-+-;0+0;+-+;++-"}) {
        auto m = group_model(parse_model(model));
        auto a = explore_group(m, 200, 1), b = explore_group(m, 200, 99);
        CHECK(a.status == b.status);
        CHECK(a.order == b.order);
        if (a.finite())
            for (std::size_t i = 0; i < a.elements.size(); ++i)
                for (std::size_t j = i + 1; j < a.elements.size(); ++j)
                    REQUIRE_FALSE(same_point(a.elements[i].coords, a.elements[j].coords));
    }
}

TEST_CASE("group orders of finite 3D groups up to 5 steps lie in {8, 12, 16, 24, 48}") {
    std::set<int> orders;
    int finite = 0;
    for_each_model(5, {.no_unused = true, .min_dim = 3, .max_dim = 3}, [&](StepSet s) {
        auto G = explore_group(group_model(s), 200);
        REQUIRE(G.status != GroupStatus::SignIllDefined);
        if (G.finite()) {
            ++finite;
            orders.insert(G.order);
        }
    });
    CHECK(finite == 26 + 47);
    for (int o : orders) CHECK(std::set<int>{8, 12, 16, 24, 48}.count(o) == 1);
}

TEST_CASE("extraction check on the Kreweras example") {
    auto G = explore_group(group_model(parse_model(kExample)));
    auto ck = check_extraction(G, 3);
    CHECK(ck.holds());
    CHECK(ck.elements.size() == G.elements.size() - 1);
}
