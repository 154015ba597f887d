#pragma once

#include <array>
#include <cstring>
#include <fstream>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kernel.hpp"
#include "stepset.hpp"

namespace octwalk {

// Coefficient policies for the counting engines.
struct ExactArith {
    using V = mpz_class;
    using W = mpz_class;
    static W weight(long w) { return W(w); }
    void madd(V& acc, const W& w, const V& v) const {
        if (v == 0) return;
        if (w == 1)
            acc += v;
        else
            acc += w * v;
    }
    static bool is_zero(const V& v) { return v == 0; }
    static std::optional<std::uint64_t> modulus() { return std::nullopt; }
    static mpz_class lift(const V& v) { return v; }
};

struct ModArith {
    using V = std::uint64_t;
    using W = std::uint64_t;
    Zp F;
    W weight(long w) const { return F.from((long long)w); }
    void madd(V& acc, W w, V v) const {
        if (w == 1) {
            acc += v;
            if (acc >= F.p) acc -= F.p;
        } else {
            acc = F.add(acc, F.mul(w, v));
        }
    }
    static bool is_zero(V v) { return v == 0; }
    std::optional<std::uint64_t> modulus() const { return F.p; }
    static mpz_class lift(V v) { return mpz_class(std::to_string(v)); }
};

// Polynomial weights, used for step weights carrying a formal variable.
struct PolyArith {
    using V = ZPoly;
    using W = ZPoly;
    static W weight(long w) { return ZPoly(w); }
    void madd(V& acc, const W& w, const V& v) const {
        if (!v.is_zero()) acc += w * v;
    }
    static bool is_zero(const V& v) { return v.is_zero(); }
    static std::optional<std::uint64_t> modulus() { return std::nullopt; }
};

// c(e; n) for n <= N on the cone [lo_a(n), n] per axis, lo_a(n) = 0 on
// confined axes and -n on free ones. The full table is optional; the
// specializations (every axis either summed or fixed to 0) are always kept.
template <class V>
struct CountTable {
    int dims = 3;
    int N = 0;
    std::array<bool, 3> free{};
    std::optional<std::uint64_t> prime;
    std::vector<std::vector<V>> slabs;      // slabs[n], empty unless kept
    std::vector<std::vector<V>> specs;      // specs[mask][n]; bit a set: axis a summed
    std::string model;

    bool has_table() const { return !slabs.empty(); }
    int lo(int a, int n) const { return free[a] ? -n : 0; }
    int extent(int a, int n) const { return a < dims ? n - lo(a, n) + 1 : 1; }

    std::size_t index(const Exp& e, int n) const {
        std::size_t idx = 0;
        for (int a = 0; a < dims; ++a) idx = idx * extent(a, n) + (e[a] - lo(a, n));
        return idx;
    }
    bool in_range(const Exp& e, int n) const {
        for (int a = 0; a < 3; ++a) {
            if (a >= dims) {
                if (e[a] != 0) return false;
                continue;
            }
            if (e[a] < lo(a, n) || e[a] > n) return false;
        }
        return true;
    }
    V at(const Exp& e, int n) const {
        if (!has_table()) throw Error("count table was computed without the full table");
        if (n < 0 || n > N || !in_range(e, n)) return V(0);
        return slabs[n][index(e, n)];
    }
    V at(int i, int j, int k, int n) const { return at(Exp{i, j, k}, n); }

    // series of O(x0, y0, z0; t) with each x0 in {0, 1}
    const std::vector<V>& series(int x0, int y0 = 1, int z0 = 1) const {
        int mask = 0;
        std::array<int, 3> b{x0, y0, z0};
        for (int a = 0; a < dims; ++a) {
            if (b[a] != 0 && b[a] != 1) throw Error("specializations are only kept at 0 and 1");
            if (b[a]) mask |= 1 << a;
        }
        return specs[mask];
    }

    template <class F>
    void for_each(int n, F f) const {
        std::array<int, 3> lo3{}, hi3{};
        for (int a = 0; a < 3; ++a) {
            lo3[a] = a < dims ? lo(a, n) : 0;
            hi3[a] = a < dims ? n : 0;
        }
        for (int i = lo3[0]; i <= hi3[0]; ++i)
            for (int j = lo3[1]; j <= hi3[1]; ++j)
                for (int k = lo3[2]; k <= hi3[2]; ++k) {
                    Exp e{i, j, k};
                    f(e, slabs[n][index(e, n)]);
                }
    }
};

struct CountOptions {
    bool keep_table = true;
    int jobs = 0;  // 0: from OCTWALK_JOBS or hardware
};

namespace detail {

template <class Arith, class W = typename Arith::W>
CountTable<typename Arith::V> count_engine(int dims, const std::vector<std::pair<Exp, W>>& steps,
                                           std::array<bool, 3> free, int N, const Arith& ar,
                                           const CountOptions& opt) {
    using V = typename Arith::V;
    if (N < 0) throw Error("count: negative length");
    if (dims < 1 || dims > 3) throw Error("count: dimension must be 1, 2 or 3");
    for (const auto& [s, w] : steps)
        for (int a = 0; a < 3; ++a)
            if (s[a] < -1 || s[a] > 1 || (a >= dims && s[a] != 0))
                throw Error("count: steps must lie in {-1,0,1}^d");
    CountTable<V> T;
    T.dims = dims;
    T.N = N;
    T.free = free;
    T.prime = ar.modulus();
    // padded storage: axis a spans [lo_a(N) - 1, N + 1]
    std::array<int, 3> off{}, ext{};
    for (int a = 0; a < 3; ++a) {
        if (a < dims) {
            off[a] = (free[a] ? N : 0) + 1;
            ext[a] = off[a] + N + 2;
        } else {
            off[a] = 0;
            ext[a] = 1;
        }
    }
    std::size_t total = std::size_t(ext[0]) * ext[1] * ext[2];
    std::vector<V> cur(total, V(0)), nxt(total, V(0));
    auto lin = [&](int i, int j, int k) {
        return (std::size_t(i + off[0]) * ext[1] + (j + off[1])) * ext[2] + (k + off[2]);
    };
    std::vector<std::pair<std::ptrdiff_t, W>> deltas;
    for (const auto& [s, w] : steps)
        deltas.emplace_back(-(std::ptrdiff_t(s[0]) * ext[1] * ext[2] + std::ptrdiff_t(s[1]) * ext[2] + s[2]), w);
    cur[lin(0, 0, 0)] = V(1);
    T.specs.assign(1 << dims, std::vector<V>());
    int jobs = 1;
    if constexpr (!std::is_same_v<V, ZPoly>) jobs = worker_count(opt.jobs);

    auto record = [&](int n, const std::vector<V>& slab) {
        std::array<int, 3> lo3{}, hi3{};
        for (int a = 0; a < 3; ++a) {
            lo3[a] = a < dims ? T.lo(a, n) : 0;
            hi3[a] = a < dims ? n : 0;
        }
        if (opt.keep_table) {
            std::vector<V> out;
            out.reserve(std::size_t(T.extent(0, n)) * T.extent(1, n) * T.extent(2, n));
            for (int i = lo3[0]; i <= hi3[0]; ++i)
                for (int j = lo3[1]; j <= hi3[1]; ++j)
                    for (int k = lo3[2]; k <= hi3[2]; ++k) out.push_back(slab[lin(i, j, k)]);
            T.slabs.push_back(std::move(out));
        }
        for (int mask = 0; mask < (1 << dims); ++mask) {
            std::array<int, 3> l = lo3, h = hi3;
            for (int a = 0; a < dims; ++a)
                if (!(mask >> a & 1)) l[a] = h[a] = 0;
            V sum(0);
            for (int i = l[0]; i <= h[0]; ++i)
                for (int j = l[1]; j <= h[1]; ++j)
                    for (int k = l[2]; k <= h[2]; ++k) ar.madd(sum, ar.weight(1), slab[lin(i, j, k)]);
            T.specs[mask].push_back(std::move(sum));
        }
    };
    record(0, cur);
    for (int n = 1; n <= N; ++n) {
        std::array<int, 3> lo3{}, hi3{};
        for (int a = 0; a < 3; ++a) {
            lo3[a] = a < dims ? T.lo(a, n) : 0;
            hi3[a] = a < dims ? n : 0;
        }
        auto work = [&](int i0, int i1) {
            for (int i = i0; i < i1; ++i)
                for (int j = lo3[1]; j <= hi3[1]; ++j) {
                    std::size_t base = lin(i, j, lo3[2]);
                    for (int k = 0; k <= hi3[2] - lo3[2]; ++k) {
                        std::size_t c = base + k;
                        V acc(0);
                        for (const auto& [d, w] : deltas) ar.madd(acc, w, cur[std::size_t(std::ptrdiff_t(c) + d)]);
                        nxt[c] = std::move(acc);
                    }
                }
        };
        int rows = hi3[0] - lo3[0] + 1;
        int nj = std::min(jobs, rows);
        if (nj <= 1 || std::size_t(rows) * (hi3[1] - lo3[1] + 1) * (hi3[2] - lo3[2] + 1) < 20000) {
            work(lo3[0], hi3[0] + 1);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nj; ++t) {
                int a = lo3[0] + rows * t / nj, b = lo3[0] + rows * (t + 1) / nj;
                pool.emplace_back(work, a, b);
            }
            for (auto& th : pool) th.join();
        }
        std::swap(cur, nxt);
        record(n, cur);
    }
    return T;
}

inline std::vector<std::pair<Exp, long>> unit_steps(StepSet s) {
    std::vector<std::pair<Exp, long>> out;
    for (const auto& st : s.steps()) out.push_back({Exp{st.i, st.j, st.k}, 1});
    return out;
}

inline std::vector<std::pair<Exp, long>> quadrant_steps(const QuadrantModel& q) {
    std::vector<std::pair<Exp, long>> out;
    for (int i = 0; i < 8; ++i)
        if (q.weights[i]) {
            auto [a, b] = quadrant_step(i);
            out.push_back({Exp{a, b, 0}, q.weights[i]});
        }
    return out;
}

template <class Arith>
auto convert_weights(const std::vector<std::pair<Exp, long>>& st, const Arith& ar) {
    std::vector<std::pair<Exp, typename Arith::W>> out;
    for (const auto& [e, w] : st) out.emplace_back(e, ar.weight(w));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------- octant / quadrant

inline CountTable<mpz_class> count_octant(StepSet s, int N, const CountOptions& opt = {}) {
    ExactArith ar;
    auto T = detail::count_engine(3, detail::convert_weights(detail::unit_steps(s), ar), {}, N, ar, opt);
    T.model = render_model(s);
    return T;
}

inline CountTable<std::uint64_t> count_octant_mod(StepSet s, int N, std::uint64_t prime = kDefaultPrime,
                                                   const CountOptions& opt = {}) {
    if (prime < 3 || prime % 2 == 0 || !is_probable_prime(prime)) throw Error("count: modulus must be an odd prime");
    ModArith ar{Zp{prime}};
    auto T = detail::count_engine(3, detail::convert_weights(detail::unit_steps(s), ar), {}, N, ar, opt);
    T.model = render_model(s);
    return T;
}

inline CountTable<mpz_class> count_quadrant(const QuadrantModel& q, int N, const CountOptions& opt = {}) {
    ExactArith ar;
    auto T = detail::count_engine(2, detail::convert_weights(detail::quadrant_steps(q), ar), {}, N, ar, opt);
    T.model = render_quadrant(q);
    return T;
}

inline CountTable<std::uint64_t> count_quadrant_mod(const QuadrantModel& q, int N,
                                                     std::uint64_t prime = kDefaultPrime,
                                                     const CountOptions& opt = {}) {
    if (prime < 3 || prime % 2 == 0 || !is_probable_prime(prime)) throw Error("count: modulus must be an odd prime");
    ModArith ar{Zp{prime}};
    auto T = detail::count_engine(2, detail::convert_weights(detail::quadrant_steps(q), ar), {}, N, ar, opt);
    T.model = render_quadrant(q);
    return T;
}

// Quadrant walks whose steps carry polynomial weights (exponents in z).
inline CountTable<ZPoly> count_quadrant_weighted(const std::vector<std::pair<Exp, ZPoly>>& steps, int N) {
    PolyArith ar;
    return detail::count_engine(2, steps, {}, N, ar, CountOptions{true, 1});
}

// Octant walks counted in N^2 x Z (or any permutation): `free_axis` is not confined.
inline CountTable<mpz_class> count_mixed(StepSet s, int free_axis, int N, const CountOptions& opt = {}) {
    if (free_axis < 0 || free_axis > 2) throw Error("count_mixed: axis out of range");
    ExactArith ar;
    std::array<bool, 3> fr{};
    fr[free_axis] = true;
    auto T = detail::count_engine(3, detail::convert_weights(detail::unit_steps(s), ar), fr, N, ar, opt);
    T.model = render_model(s);
    return T;
}

// General d-dimensional walks with integer step weights, confined to N^d.
inline CountTable<mpz_class> count_cone(int dims, const std::vector<std::pair<Exp, long>>& steps, int N,
                                        const CountOptions& opt = {}) {
    ExactArith ar;
    return detail::count_engine(dims, detail::convert_weights(steps, ar), {}, N, ar, opt);
}

// Exact table over [0, n]^dims built from a value function, with the specializations.
template <class V, class F>
CountTable<V> build_table(int dims, int N, F value) {
    CountTable<V> T;
    T.dims = dims;
    T.N = N;
    T.specs.assign(1 << dims, std::vector<V>(N + 1, V(0)));
    for (int n = 0; n <= N; ++n) {
        std::vector<V> slab;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= (dims > 1 ? n : 0); ++j)
                for (int k = 0; k <= (dims > 2 ? n : 0); ++k) {
                    V v = value(Exp{i, j, k}, n);
                    Exp e{i, j, k};
                    for (int mask = 0; mask < (1 << dims); ++mask) {
                        bool in = true;
                        for (int a = 0; a < dims; ++a)
                            if (!(mask >> a & 1) && e[a] != 0) in = false;
                        if (in) T.specs[mask][n] += v;
                    }
                    slab.push_back(std::move(v));
                }
        T.slabs.push_back(std::move(slab));
    }
    return T;
}

// ---------------------------------------------------------------- coloured walks

// c(e; n, k): coloured (U,V)-walks in N^d of length n with k black steps.
struct ColouredCountTable {
    int dims = 1;
    int N = 0;
    std::vector<Exp> U, V;
    std::vector<std::vector<std::vector<mpz_class>>> c;  // c[n][k][index(e, n)]

    int extent(int a, int n) const { return a < dims ? n + 1 : 1; }
    std::size_t index(const Exp& e, int n) const {
        std::size_t idx = 0;
        for (int a = 0; a < dims; ++a) idx = idx * extent(a, n) + e[a];
        return idx;
    }
    mpz_class at(const Exp& e, int n, int k) const {
        if (n < 0 || n > N || k < 0 || k > n) return 0;
        for (int a = 0; a < 3; ++a)
            if (e[a] < 0 || e[a] > (a < dims ? n : 0)) return 0;
        return c[n][k][index(e, n)];
    }
};

inline ColouredCountTable count_coloured(const std::vector<Exp>& U, const std::vector<Exp>& V, int dims, int N) {
    if (dims < 1 || dims > 2) throw Error("count_coloured: dimension must be 1 or 2");
    if (U.empty() && V.empty()) throw Error("count_coloured: U and V are both empty");
    for (const auto* set : {&U, &V})
        for (const auto& s : *set)
            for (int a = 0; a < 3; ++a)
                if (s[a] < -1 || s[a] > 1 || (a >= dims && s[a] != 0))
                    throw Error("count_coloured: steps must lie in {-1,0,1}^d");
    ColouredCountTable T;
    T.dims = dims;
    T.N = N;
    T.U = U;
    T.V = V;
    // (step, colour) pairs: colour 0 white (from U), 1 black (from V)
    std::vector<std::pair<Exp, int>> moves;
    for (const auto& s : U) moves.push_back({s, 0});
    for (const auto& s : V) moves.push_back({s, 1});
    T.c.resize(N + 1);
    T.c[0].assign(1, std::vector<mpz_class>(1, 1));
    for (int n = 1; n <= N; ++n) {
        std::size_t sz = std::size_t(T.extent(0, n)) * T.extent(1, n);
        T.c[n].assign(n + 1, std::vector<mpz_class>(sz));
        for (int k = 0; k <= n; ++k)
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= (dims > 1 ? n : 0); ++j) {
                    Exp e{i, j, 0};
                    mpz_class acc = 0;
                    for (const auto& [s, col] : moves) acc += T.at(e - s, n - 1, k - col);
                    T.c[n][k][T.index(e, n)] = acc;
                }
    }
    return T;
}

// ---------------------------------------------------------------- export

template <class V>
std::string value_string(const V& v) {
    if constexpr (std::is_same_v<V, mpz_class>)
        return v.get_str();
    else if constexpr (std::is_same_v<V, ZPoly>)
        return v.str();
    else
        return std::to_string(v);
}

// {model, N, mode, series: {"x0y0z0": [...]}}
template <class V>
nlohmann::json export_json(const CountTable<V>& T) {
    nlohmann::json j;
    j["model"] = T.model;
    j["N"] = T.N;
    j["mode"] = T.prime ? "mod " + std::to_string(*T.prime) : std::string("exact");
    nlohmann::json series = nlohmann::json::object();
    for (int mask = 0; mask < int(T.specs.size()); ++mask) {
        std::string key;
        for (int a = 0; a < T.dims; ++a) key += std::string(1, "xyz"[a]) + ((mask >> a & 1) ? "1" : "0");
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : T.specs[mask]) arr.push_back(value_string(v));
        series[key] = arr;
    }
    j["series"] = series;
    return j;
}

// Binary dump of a modular table: "OWCT" magic, then little-endian u32 dims, N,
// u64 prime, followed for each n by the slab over [0, n]^dims in row-major order
// as u64 residues.
inline void dump_binary(const CountTable<std::uint64_t>& T, const std::string& path) {
    if (!T.has_table()) throw Error("dump_binary: table was not kept");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    auto put = [&](std::uint64_t v, int bytes) {
        for (int b = 0; b < bytes; ++b) out.put(char((v >> (8 * b)) & 0xff));
    };
    out.write("OWCT", 4);
    put(std::uint32_t(T.dims), 4);
    put(std::uint32_t(T.N), 4);
    put(T.prime.value_or(0), 8);
    for (const auto& slab : T.slabs)
        for (auto v : slab) put(v, 8);
}

}  // namespace octwalk
