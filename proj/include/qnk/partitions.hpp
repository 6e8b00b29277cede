#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qnk/numeric.hpp"
#include "qnk/qseries.hpp"

namespace qnk {

/* A Young diagram stored as its row partition: a weakly decreasing list of
 * positive row lengths. The number of columns c(Y) is the first row length,
 * so c() is O(1); |Y| is the total number of boxes. */
class YoungDiagram {
public:
    YoungDiagram() = default;

    explicit YoungDiagram(std::vector<unsigned> rows) : rows_(std::move(rows)) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i] == 0 || (i > 0 && rows_[i] > rows_[i - 1])) {
                throw std::invalid_argument("rows must be weakly decreasing and positive");
            }
        }
    }

    // Conjugate construction: heights may come in any order, zeros allowed.
    static YoungDiagram from_column_heights(std::span<const unsigned> heights) {
        unsigned tallest = 0;
        for (unsigned h : heights) tallest = std::max(tallest, h);
        std::vector<unsigned> rows(tallest);
        for (unsigned h : heights)
            for (unsigned t = 0; t < h; ++t) ++rows[t];
        return YoungDiagram(std::move(rows));
    }

    std::size_t boxes() const {
        std::size_t n = 0;
        for (unsigned r : rows_) n += r;
        return n;
    }

    unsigned columns() const { return rows_.empty() ? 0 : rows_[0]; }

    std::span<const unsigned> rows() const { return rows_; }

    // Heights left to right (weakly decreasing), length == columns().
    std::vector<unsigned> column_heights() const {
        std::vector<unsigned> heights(columns());
        for (unsigned r : rows_)
            for (unsigned c = 0; c < r; ++c) ++heights[c];
        return heights;
    }

    friend auto operator<=>(const YoungDiagram&, const YoungDiagram&) = default;

private:
    std::vector<unsigned> rows_;
};

/* An index vector (k_1..k_l) with bounded entries, in canonical form: the
 * last entry is nonzero unless the vector is empty. Trailing zeros would
 * index the same expansion branch, so canonical form makes the index sets
 * finite. */
class ThetaVector {
public:
    ThetaVector() = default;

    explicit ThetaVector(std::vector<unsigned> entries) : entries_(std::move(entries)) {
        if (!entries_.empty() && entries_.back() == 0) {
            throw std::invalid_argument("canonical form requires a nonzero last entry");
        }
    }

    std::span<const unsigned> entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // sum k_i
    unsigned long long sum() const {
        unsigned long long s = 0;
        for (unsigned k : entries_) s += k;
        return s;
    }

    // sum i*k_i with 1-based positions
    unsigned long long weighted_sum() const {
        unsigned long long s = 0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            s += (i + 1) * static_cast<unsigned long long>(entries_[i]);
        return s;
    }

    friend auto operator<=>(const ThetaVector&, const ThetaVector&) = default;

private:
    std::vector<unsigned> entries_;
};

// An r-tuple of (bound, diagram) pairs with c(Y_a) <= m_a for every slot.
struct DecoratedTuple {
    std::vector<std::pair<unsigned, YoungDiagram>> pairs;

    friend auto operator<=>(const DecoratedTuple&, const DecoratedTuple&) = default;
};

// Number of partitions of j whose parts are all <= max_part (equivalently,
// diagrams with |Y| = j and at most max_part columns).
inline Int restricted_partition_count(unsigned j, unsigned max_part) {
    if (j == 0) return 1;
    if (max_part == 0) return 0;
    std::vector<Int> ways(j + 1);
    ways[0] = 1;
    for (unsigned part = 1; part <= std::min(max_part, j); ++part)
        for (unsigned n = part; n <= j; ++n) ways[n] += ways[n - part];
    return ways[j];
}

// p(j), the number of partitions of j.
inline Int partition_count(unsigned j) { return restricted_partition_count(j, j); }

namespace detail {

// Smallest achievable sum of pos*k over placements of `remaining` units at
// positions from..(with at most `cap` units per position): pack greedily low.
inline unsigned long long min_fill_weight(unsigned long long remaining,
                                          unsigned long long from, unsigned cap) {
    unsigned long long w = 0, pos = from;
    while (remaining > 0) {
        const unsigned long long take = std::min<unsigned long long>(remaining, cap);
        w += pos * take;
        remaining -= take;
        ++pos;
    }
    return w;
}

}  // namespace detail

/* All canonical vectors (k_1..k_l) with 0 <= k_i <= rank, sum k_i = rank*d
 * and sum i*k_i = j + rank*d*(d+1)/2, sorted by (length, entries). Depth
 * first search over positions; a branch dies once even the greedy low
 * packing of the remaining units overshoots or cannot reach the target
 * weight. */
inline std::vector<ThetaVector> enumerate_theta(unsigned rank, unsigned d, unsigned j) {
    if (rank == 0) throw std::invalid_argument("rank must be positive");
    const unsigned long long target_sum = static_cast<unsigned long long>(rank) * d;
    const unsigned long long target_weight =
        j + static_cast<unsigned long long>(rank) * d * (d + 1) / 2;

    std::vector<ThetaVector> found;
    if (target_sum == 0) {
        if (j == 0) found.emplace_back();
        return found;
    }

    std::vector<unsigned> prefix;
    auto rec = [&](auto&& self, unsigned long long pos, unsigned long long rem_sum,
                   unsigned long long rem_weight) -> void {
        const unsigned cap = static_cast<unsigned>(
            std::min<unsigned long long>(rank, rem_sum));
        for (unsigned k = 0; k <= cap; ++k) {
            const unsigned long long used = pos * k;
            if (used > rem_weight) break;
            const unsigned long long s2 = rem_sum - k;
            const unsigned long long w2 = rem_weight - used;
            if (s2 == 0) {
                if (w2 == 0 && k > 0) {
                    prefix.push_back(k);
                    found.push_back(ThetaVector(prefix));
                    prefix.pop_back();
                }
                continue;
            }
            if (detail::min_fill_weight(s2, pos + 1, rank) > w2) continue;
            prefix.push_back(k);
            self(self, pos + 1, s2, w2);
            prefix.pop_back();
        }
    };
    rec(rec, 1, target_sum, target_weight);

    std::sort(found.begin(), found.end(), [](const ThetaVector& a, const ThetaVector& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return std::ranges::lexicographical_compare(a.entries(), b.entries());
    });
    return found;
}

// Binomial-weighted count over enumerate_theta: sum over vectors of
// prod_i C(rank, k_i).
inline Int a_tilde(unsigned rank, unsigned d, unsigned j) {
    Int total = 0;
    for (const ThetaVector& v : enumerate_theta(rank, d, j)) {
        Int prod = 1;
        for (unsigned k : v.entries()) prod *= binomial(rank, k);
        total += prod;
    }
    return total;
}

// Discrete pairing sum_{a,b}(m_a-m_b)^2 / (2*len(m)), an exact rational.
inline Rat pairing(std::span<const long long> m) {
    if (m.empty()) throw std::invalid_argument("pairing needs at least one entry");
    Int sum = 0;
    for (long long a : m)
        for (long long b : m) {
            const Int diff = Int(a) - Int(b);
            sum += diff * diff;
        }
    return Rat(sum, Int(2) * static_cast<long long>(m.size()));
}

/* Number of tuples ((m_1,Y_1)..(m_r,Y_r)) with m_a >= 0, sum m_a = rank*d,
 * c(Y_a) <= m_a and |Y| + (m,m)/2 = j. The half-pairing is evaluated
 * exactly; for zero remaining box budget the diagram count per slot is the
 * restricted partition number, convolved across slots. */
inline Int a_count(unsigned rank, unsigned d, unsigned j) {
    if (rank == 0) throw std::invalid_argument("rank must be positive");
    const long long total = static_cast<long long>(rank) * d;

    Int result = 0;
    std::vector<long long> m(rank);
    auto rec = [&](auto&& self, unsigned idx, long long left) -> void {
        if (idx + 1 == rank) {
            m[idx] = left;
            // (m,m)/2 = (sum m^2 - rank*d^2)/2 given sum m = rank*d
            long long sq = 0;
            for (long long v : m) sq += v * v;
            const long long twice_half = sq - static_cast<long long>(rank) * d * d;
            if (twice_half % 2 != 0) {
                throw std::logic_error("pairing parity violated");  // cannot happen
            }
            const long long half = twice_half / 2;
            if (half < 0 || half > static_cast<long long>(j)) return;
            const unsigned budget = j - static_cast<unsigned>(half);
            // convolve the per-slot restricted partition counts up to budget
            std::vector<Int> conv(budget + 1);
            conv[0] = 1;
            for (long long bound : m) {
                std::vector<Int> next(budget + 1);
                for (unsigned eaten = 0; eaten <= budget; ++eaten) {
                    if (conv[eaten] == 0) continue;
                    for (unsigned b = 0; b + eaten <= budget; ++b) {
                        const Int ways =
                            restricted_partition_count(b, static_cast<unsigned>(bound));
                        if (ways != 0) next[eaten + b] += conv[eaten] * ways;
                    }
                }
                conv = std::move(next);
            }
            result += conv[budget];
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            m[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return result;
}

// Explicit list of the tuples counted by a_count; intended for audits and
// small parameters only.
inline std::vector<DecoratedTuple> enumerate_decorated(unsigned rank, unsigned d,
                                                       unsigned j) {
    if (rank == 0) throw std::invalid_argument("rank must be positive");
    const long long total = static_cast<long long>(rank) * d;

    // all diagrams with |Y| = n and c(Y) <= cap, as row partitions
    auto diagrams = [](unsigned n, long long cap) {
        std::vector<YoungDiagram> out;
        std::vector<unsigned> rows;
        auto rec = [&](auto&& self, unsigned left, unsigned maxpart) -> void {
            if (left == 0) {
                out.push_back(YoungDiagram(rows));
                return;
            }
            for (unsigned p = std::min(left, maxpart); p >= 1; --p) {
                rows.push_back(p);
                self(self, left - p, p);
                rows.pop_back();
            }
        };
        if (cap >= 0) rec(rec, n, static_cast<unsigned>(std::min<long long>(cap, n)));
        return out;
    };

    std::vector<DecoratedTuple> found;
    std::vector<long long> m(rank);
    DecoratedTuple current;
    auto fill_diagrams = [&](auto&& self, unsigned idx, unsigned budget) -> void {
        if (idx == rank) {
            if (budget == 0) found.push_back(current);
            return;
        }
        for (unsigned b = 0; b <= budget; ++b) {
            for (const YoungDiagram& y : diagrams(b, m[idx])) {
                current.pairs[idx] = {static_cast<unsigned>(m[idx]), y};
                self(self, idx + 1, budget - b);
            }
        }
    };
    auto rec = [&](auto&& self, unsigned idx, long long left) -> void {
        if (idx + 1 == rank) {
            m[idx] = left;
            long long sq = 0;
            for (long long v : m) sq += v * v;
            const long long half = (sq - static_cast<long long>(rank) * d * d) / 2;
            if (half < 0 || half > static_cast<long long>(j)) return;
            current.pairs.assign(rank, {0, YoungDiagram()});
            fill_diagrams(fill_diagrams, 0, j - static_cast<unsigned>(half));
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            m[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return found;
}

// Coefficient of q^j in the infinite-level series.
inline Int a_infinity(unsigned rank, unsigned j) {
    return theta_sum_infinite(rank, j).coefficient(j);
}

/* Rank-one dictionary between index vectors and diagrams. A canonical 0/1
 * vector with exactly d ones at positions i_1 < ... < i_d maps to the
 * diagram whose columns have heights i_t - t; the heights are weakly
 * increasing, so read right to left they are a diagram with at most d
 * columns and j = sum(i_t) - d(d+1)/2 boxes. */
inline YoungDiagram rank1_diagram(const ThetaVector& v, unsigned d) {
    std::vector<unsigned> heights;
    unsigned long long ones = 0;
    const auto entries = v.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] > 1) {
            throw std::invalid_argument("rank-one vectors must have entries in {0,1}");
        }
        if (entries[i] == 1) {
            ++ones;
            const unsigned long long pos = i + 1;  // 1-based support index i_t
            heights.push_back(static_cast<unsigned>(pos - ones));
        }
    }
    if (ones != d) {
        throw std::invalid_argument("support size does not match the level d");
    }
    return YoungDiagram::from_column_heights(heights);
}

// Inverse direction: a diagram with at most d columns determines the
// support i_t = h_t + t where h is the height list padded with zeros to
// length d and read in increasing order.
inline ThetaVector rank1_vector(const YoungDiagram& y, unsigned d) {
    if (y.columns() > d) {
        throw std::invalid_argument("diagram has more columns than the level d allows");
    }
    std::vector<unsigned> heights = y.column_heights();  // weakly decreasing
    heights.resize(d, 0);
    std::reverse(heights.begin(), heights.end());
    if (d == 0) return ThetaVector();
    const unsigned long long top = heights.back() + d;
    std::vector<unsigned> entries(top, 0);
    for (unsigned t = 1; t <= d; ++t) entries[heights[t - 1] + t - 1] = 1;
    return ThetaVector(std::move(entries));
}

}  // namespace qnk
