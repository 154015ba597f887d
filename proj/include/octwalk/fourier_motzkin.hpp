#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <vector>

namespace octwalk::fm {

// coef . lambda <= rhs, integer data
struct Row {
    std::vector<long long> coef;
    long long rhs = 0;
    friend auto operator<=>(const Row&, const Row&) = default;
};

inline void reduce(Row& r) {
    long long g = std::llabs(r.rhs);
    for (auto c : r.coef) g = std::gcd(g, std::llabs(c));
    if (g > 1) {
        for (auto& c : r.coef) c /= g;
        r.rhs /= g;
    }
}

// Exact feasibility of a system over the rationals by eliminating the
// variables one at a time.
inline bool feasible(std::vector<Row> rows, std::size_t nvars) {
    for (std::size_t v = 0; v < nvars; ++v) {
        std::vector<Row> pos, neg, next;
        for (auto& r : rows) {
            if (r.coef[v] > 0) pos.push_back(r);
            else if (r.coef[v] < 0) neg.push_back(r);
            else next.push_back(r);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                long long a = p.coef[v], b = -n.coef[v];
                Row r;
                r.coef.resize(nvars);
                for (std::size_t w = 0; w < nvars; ++w) r.coef[w] = b * p.coef[w] + a * n.coef[w];
                r.rhs = b * p.rhs + a * n.rhs;
                reduce(r);
                next.push_back(std::move(r));
            }
        std::set<Row> uniq(next.begin(), next.end());
        rows.assign(uniq.begin(), uniq.end());
    }
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.rhs >= 0; });
}

}  // namespace octwalk::fm
