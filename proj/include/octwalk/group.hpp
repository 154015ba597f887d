#pragma once

#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <string>
#include <vector>

#include "kernel.hpp"
#include "ratfunc.hpp"

namespace octwalk {

// S(x,y,z) together with the number of active coordinates (2 for quadrant models).
struct GroupModel {
    ZPoly S;
    int dim = 3;
};

inline GroupModel group_model(StepSet s) { return {char_poly(s), 3}; }
inline GroupModel group_model(const QuadrantModel& q) { return {char_poly(q), 2}; }

// Involution replacing coordinate `axis` by minus / (coordinate * plus),
// both slices evaluated at the other coordinates.
struct Generator {
    int axis = 0;
    ZPoly minus, plus;
    char name = 'i';
};

using Point = std::array<RatFunc, 3>;

struct GroupElement {
    Point coords;
    int length = 0;
    std::string word;  // generators applied, most recent first
    int sign() const { return length % 2 ? -1 : 1; }
};

enum class GroupStatus { Finite, ExceedsBound, SignIllDefined };

struct GroupResult {
    GroupStatus status = GroupStatus::Finite;
    int order = 0;  // number of elements found
    int bound = 200;
    std::vector<GroupElement> elements;  // BFS order; exact coordinates only when finite
    std::string detail;
    bool finite() const { return status == GroupStatus::Finite; }
};

inline std::vector<Generator> generators(const GroupModel& m) {
    static const char names[] = "ipt";
    std::vector<Generator> g;
    for (int v = 0; v < m.dim; ++v) {
        Generator gen{v, m.S.slice(v, -1), m.S.slice(v, 1), names[v]};
        if (gen.plus.is_zero() || gen.minus.is_zero())
            throw Error(std::string("generators: zero slice along axis ") + "xyz"[v] +
                        " (model is not of the claimed dimension)");
        g.push_back(std::move(gen));
    }
    return g;
}

inline Point identity_point() { return {RatFunc::var(0), RatFunc::var(1), RatFunc::var(2)}; }

inline Point apply_generator(const Generator& g, const Point& p) {
    Point q = p;
    q[g.axis] = substitute(g.minus, p) / (p[g.axis] * substitute(g.plus, p));
    return q;
}

inline std::vector<GroupElement> generator_elements(const GroupModel& m) {
    std::vector<GroupElement> out;
    for (const auto& g : generators(m)) out.push_back({apply_generator(g, identity_point()), 1, std::string(1, g.name)});
    return out;
}

inline bool same_point(const Point& a, const Point& b) { return a[0] == b[0] && a[1] == b[1] && a[2] == b[2]; }

namespace detail {

using Fingerprint = std::array<std::uint64_t, 6>;

struct Degenerate {};

struct FingerprintHash {
    std::size_t operator()(const Fingerprint& f) const { return f[0] ^ (f[1] * 0x9e3779b97f4a7c15ULL) ^ (f[2] << 1); }
};

struct SmallPoly {
    std::vector<std::pair<std::uint64_t, Exp>> terms;  // coefficient mod p, exponents
    SmallPoly(const Zp& F, const ZPoly& p) {
        for (const auto& [e, c] : p.terms()) terms.emplace_back(F.from(c), e);
    }
    // value at pt, with inv[v] = 1/pt[v]
    std::uint64_t eval(const Zp& F, const std::array<std::uint64_t, 3>& pt,
                       const std::array<std::uint64_t, 3>& inv) const {
        std::uint64_t s = 0;
        for (const auto& [c, e] : terms) {
            std::uint64_t m = c;
            for (int v = 0; v < 3; ++v) {
                if (e[v] == 0) continue;
                std::uint64_t b = e[v] > 0 ? pt[v] : inv[v];
                for (int k = std::abs(e[v]); k > 0; --k) m = F.mul(m, b);
            }
            s = F.add(s, m);
        }
        return s;
    }
};

struct CompiledGenerator {
    int axis;
    SmallPoly minus, plus;
    CompiledGenerator(const Zp& F, const Generator& g) : axis(g.axis), minus(F, g.minus), plus(F, g.plus) {}
};

// Image of a fingerprint (values and their inverses) under a generator,
// using one modular inversion per point.
inline void apply_fp(const Zp& F, const CompiledGenerator& g, const Fingerprint& f, const Fingerprint& finv,
                     Fingerprint& out, Fingerprint& outinv) {
    out = f;
    outinv = finv;
    for (int h = 0; h < 2; ++h) {
        std::array<std::uint64_t, 3> pt{f[3 * h], f[3 * h + 1], f[3 * h + 2]};
        std::array<std::uint64_t, 3> inv{finv[3 * h], finv[3 * h + 1], finv[3 * h + 2]};
        std::uint64_t plus = g.plus.eval(F, pt, inv), minus = g.minus.eval(F, pt, inv);
        std::uint64_t pm = F.mul(plus, minus);
        if (pm == 0) throw Degenerate{};
        std::uint64_t ipm = F.inv(pm);
        int a = 3 * h + g.axis;
        out[a] = F.mul(F.mul(minus, inv[g.axis]), F.mul(minus, ipm));
        outinv[a] = F.mul(F.mul(plus, pt[g.axis]), F.mul(plus, ipm));
    }
}

}  // namespace detail

// Breadth-first closure under the generators. Elements are told apart by
// their values at two random points mod a 62-bit prime; distinct values prove
// distinctness, and for finite groups every identification is re-checked
// exactly on materialized coordinates.
inline GroupResult explore_group(const GroupModel& m, int bound = 200, std::uint64_t seed = 0x5eed,
                                 bool materialize = true) {
    if (bound < 2) throw Error("explore_group: bound must be at least 2");
    auto gens = generators(m);
    Zp F;
    std::vector<detail::CompiledGenerator> cg;
    for (const auto& g : gens) cg.emplace_back(F, g);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 8; ++attempt) {
        detail::Fingerprint start, startinv;
        for (int v = 0; v < 6; ++v) {
            start[v] = 2 + rng() % (F.p - 3);
            startinv[v] = F.inv(start[v]);
        }
        struct Node {
            detail::Fingerprint fp, inv;
            int length, parent, gen;
        };
        std::vector<Node> nodes{{start, startinv, 0, -1, -1}};
        std::unordered_map<detail::Fingerprint, int, detail::FingerprintHash> index{{start, 0}};
        std::vector<std::array<int, 3>> edges;  // (from, generator, to)
        GroupResult res;
        res.bound = bound;
        try {
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                for (int g = 0; g < int(gens.size()); ++g) {
                    detail::Fingerprint fp, fpinv;
                    detail::apply_fp(F, cg[g], nodes[i].fp, nodes[i].inv, fp, fpinv);
                    auto it = index.find(fp);
                    if (it == index.end()) {
                        int id = int(nodes.size());
                        index.emplace(fp, id);
                        nodes.push_back({fp, fpinv, nodes[i].length + 1, int(i), g});
                        if (int(nodes.size()) > bound) {
                            res.status = GroupStatus::ExceedsBound;
                            res.order = int(nodes.size());
                            return res;
                        }
                    } else {
                        int to = it->second;
                        if ((nodes[to].length - nodes[i].length) % 2 == 0 && res.status == GroupStatus::Finite) {
                            res.status = GroupStatus::SignIllDefined;
                            res.detail = "element reached by words of both parities";
                        }
                        edges.push_back({int(i), g, to});
                    }
                }
            }
        } catch (const detail::Degenerate&) {
            continue;
        }
        res.order = int(nodes.size());
        if (!materialize) return res;
        res.elements.resize(nodes.size());
        res.elements[0] = {identity_point(), 0, ""};
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const auto& n = nodes[i];
            const auto& par = res.elements[n.parent];
            res.elements[i] = {apply_generator(gens[n.gen], par.coords), n.length, std::string(1, gens[n.gen].name) + par.word};
        }
        for (const auto& [from, g, to] : edges)
            if (!same_point(apply_generator(gens[g], res.elements[from].coords), res.elements[to].coords))
                throw Error("explore_group: fingerprint collision not confirmed exactly");
        return res;
    }
    throw Error("explore_group: could not find a non-degenerate fingerprint point");
}

inline RatFunc orbit_monomial(const Point& p, int dim) {
    RatFunc r = p[0] * p[1];
    if (dim == 3) r *= p[2];
    return r;
}

// sum of sign(g) g(xyz), or g(xy) for quadrant models
inline RatFunc orbit_sum(const GroupResult& G, int dim) {
    if (!G.finite()) throw Error("orbit_sum: group is not finite with well-defined signs");
    // group terms by denominator to limit gcd work
    std::map<std::string, std::pair<ZPoly, ZPoly>> byden;
    for (const auto& e : G.elements) {
        RatFunc t = orbit_monomial(e.coords, dim);
        auto key = t.den().str();
        auto& slot = byden[key];
        if (slot.second.is_zero()) slot.second = t.den();
        ZPoly n = t.num();
        if (e.sign() < 0) n *= mpz_class(-1);
        slot.first += n;
    }
    RatFunc sum;
    for (auto& [k, v] : byden) sum += RatFunc(v.first, v.second);
    return sum;
}

inline std::string render_point(const Point& p, int dim) {
    std::string s = "[" + p[0].str() + ", " + p[1].str();
    if (dim == 3) s += ", " + p[2].str();
    return s + "]";
}

}  // namespace octwalk
