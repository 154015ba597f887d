#pragma once
// Independent brute-force oracles shared by the test binaries.

#include <array>
#include <functional>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <octwalk/stepset.hpp>

namespace oracle {

using octwalk::Step;
using octwalk::StepSet;

// Steps occurring in some octant walk of length <= maxlen.
inline StepSet used_steps(StepSet s, int maxlen = 16) {
    auto steps = s.steps();
    std::set<std::array<int, 3>> seen{{0, 0, 0}};
    std::vector<std::array<int, 3>> frontier{{0, 0, 0}};
    StepSet used;
    for (int len = 1; len <= maxlen && !frontier.empty(); ++len) {
        std::vector<std::array<int, 3>> next;
        for (const auto& p : frontier)
            for (const auto& st : steps) {
                std::array<int, 3> q{p[0] + st.i, p[1] + st.j, p[2] + st.k};
                if (q[0] < 0 || q[1] < 0 || q[2] < 0) continue;
                used.mask |= 1u << octwalk::step_bit(st);
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier.swap(next);
    }
    return used;
}

// Exhaustive enumeration of octant walks ending at `end` with n steps.
inline long long walks_to(const std::vector<std::array<int, 3>>& steps, std::array<int, 3> end, int n,
                          int dims = 3) {
    long long count = 0;
    std::vector<std::array<int, 3>> pos{{0, 0, 0}};
    std::function<void(std::array<int, 3>, int)> rec = [&](std::array<int, 3> p, int left) {
        if (left == 0) {
            if (p == end) ++count;
            return;
        }
        for (const auto& s : steps) {
            std::array<int, 3> q{p[0] + s[0], p[1] + s[1], p[2] + s[2]};
            bool ok = true;
            for (int a = 0; a < dims; ++a) ok = ok && q[a] >= 0;
            if (ok) rec(q, left - 1);
        }
    };
    rec({0, 0, 0}, n);
    return count;
}

}  // namespace oracle
