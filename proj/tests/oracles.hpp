#pragma once

// Brute-force reference implementations, deliberately independent of the
// library under test: plain recursion and naive convolution only.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracles {

// Number of partitions of n with every part <= max_part, by direct
// recursion over the largest part.
inline std::int64_t partitions_le(int n, int max_part) {
    static std::map<std::pair<int, int>, std::int64_t> memo;
    if (n == 0) return 1;
    if (n < 0 || max_part <= 0) return 0;
    const auto key = std::make_pair(n, max_part);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::int64_t value = partitions_le(n - max_part, max_part) +
                               partitions_le(n, max_part - 1);
    memo[key] = value;
    return value;
}

inline std::int64_t partitions(int n) { return partitions_le(n, n); }

// Naive truncated polynomial product on small integer coefficients.
inline std::vector<std::int64_t> poly_mul(const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b,
                                          std::size_t order) {
    std::vector<std::int64_t> out(order + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

// All partitions of n with parts <= cap, materialized (small n only).
inline std::vector<std::vector<int>> partition_list(int n, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int left, int max_part) -> void {
        if (left == 0) {
            out.push_back(current);
            return;
        }
        for (int p = std::min(left, max_part); p >= 1; --p) {
            current.push_back(p);
            self(self, left - p, p);
            current.pop_back();
        }
    };
    rec(rec, n, std::min(n, cap));
    return out;
}

/* Count of r-tuples ((m_1,Y_1)..(m_r,Y_r)) with m_a >= 0, sum m = r*d,
 * columns of Y_a at most m_a and |Y| + (sum m^2 - r d^2)/2 = j, by fully
 * explicit enumeration of both the vectors and the partitions. */
inline std::int64_t decorated_count(int r, int d, int j) {
    std::vector<int> m(r, 0);
    std::int64_t total = 0;

    auto count_diagrams = [&](auto&& self, int slot, int budget) -> std::int64_t {
        if (slot == r) return budget == 0 ? 1 : 0;
        std::int64_t ways = 0;
        for (int b = 0; b <= budget; ++b) {
            const auto list = partition_list(b, m[slot]);
            if (!list.empty())
                ways += static_cast<std::int64_t>(list.size()) *
                        self(self, slot + 1, budget - b);
        }
        return ways;
    };

    auto rec = [&](auto&& self, int idx, int left) -> void {
        if (idx + 1 == r) {
            m[idx] = left;
            long long sq = 0;
            for (int v : m) sq += static_cast<long long>(v) * v;
            const long long twice_half = sq - static_cast<long long>(r) * d * d;
            if (twice_half < 0 || twice_half % 2 != 0) return;
            const long long half = twice_half / 2;
            if (half > j) return;
            total += count_diagrams(count_diagrams, 0, j - static_cast<int>(half));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            m[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, r * d);
    return total;
}

}  // namespace oracles
