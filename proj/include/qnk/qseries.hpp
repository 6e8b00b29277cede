#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qnk/numeric.hpp"

namespace qnk {

/* A formal power series in q truncated at an explicit order N: exactly the
 * coefficients of q^0..q^N are stored, as arbitrary-precision integers.
 * Binary operations never change the order silently; addition requires
 * equal orders and multiplication truncates to the minimum of the two
 * orders (the longest prefix on which the convolution is exact). */
class QSeries {
public:
    explicit QSeries(std::size_t order) : coeffs_(order + 1) {}

    QSeries(std::size_t order, std::initializer_list<Int> low_coeffs)
        : coeffs_(order + 1) {
        if (low_coeffs.size() > coeffs_.size()) {
            throw std::invalid_argument("more coefficients than the order admits");
        }
        std::copy(low_coeffs.begin(), low_coeffs.end(), coeffs_.begin());
    }

    static QSeries one(std::size_t order) {
        QSeries s(order);
        s.coeffs_[0] = 1;
        return s;
    }

    // c * q^degree, truncated at `order` (zero series if degree > order).
    static QSeries monomial(std::size_t degree, std::size_t order, Int c = Int(1)) {
        QSeries s(order);
        if (degree <= order) s.coeffs_[degree] = std::move(c);
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    // Coefficient of q^n. Asking beyond the truncation order is a hard
    // error, never a silent zero.
    const Int& coefficient(std::size_t n) const {
        if (n >= coeffs_.size()) {
            throw std::out_of_range("coefficient index exceeds truncation order");
        }
        return coeffs_[n];
    }

    void set_coefficient(std::size_t n, Int c) {
        if (n >= coeffs_.size()) {
            throw std::out_of_range("coefficient index exceeds truncation order");
        }
        coeffs_[n] = std::move(c);
    }

    std::span<const Int> coefficients() const { return coeffs_; }

    QSeries truncated(std::size_t new_order) const {
        QSeries s(std::min(new_order, order()));
        std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
        return s;
    }

    QSeries& operator+=(const QSeries& rhs) {
        require_same_order(rhs);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
        return *this;
    }

    QSeries& operator-=(const QSeries& rhs) {
        require_same_order(rhs);
        for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= rhs.coeffs_[n];
        return *this;
    }

    friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
    friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }

    // Exact coefficientwise convolution, truncated to min(order a, order b).
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        QSeries out(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; i + j < out.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }

    friend bool operator==(const QSeries&, const QSeries&) = default;

    /* In-place multiplication by 1/(1-q^d), d >= 1: a running prefix sum
     * with stride d. Factors with d beyond the order are 1 mod q^{N+1}. */
    QSeries& divide_one_minus_power(unsigned d) {
        if (d == 0) throw std::invalid_argument("1-q^0 has no series inverse");
        for (std::size_t n = d; n < coeffs_.size(); ++n) coeffs_[n] += coeffs_[n - d];
        return *this;
    }

    // In-place multiplication by (1-q^d), d >= 1; inverse of the above.
    QSeries& multiply_one_minus_power(unsigned d) {
        if (d == 0) throw std::invalid_argument("degenerate factor 1-q^0");
        for (std::size_t n = coeffs_.size(); n-- > d;) coeffs_[n] -= coeffs_[n - d];
        return *this;
    }

    // Adds c * q^shift * rhs, truncating whatever falls past the order.
    QSeries& add_shifted(const QSeries& rhs, std::size_t shift, const Int& c = Int(1)) {
        for (std::size_t n = 0; n + shift < coeffs_.size() && n < rhs.coeffs_.size(); ++n) {
            coeffs_[n + shift] += c * rhs.coeffs_[n];
        }
        return *this;
    }

private:
    void require_same_order(const QSeries& rhs) const {
        if (coeffs_.size() != rhs.coeffs_.size()) {
            throw std::invalid_argument(
                "series orders differ; truncate explicitly before adding");
        }
    }

    std::vector<Int> coeffs_;
};

// Geometric series 1 + q^d + q^{2d} + ... truncated at `order`; d >= 1.
inline QSeries inv_one_minus_qd(unsigned d, std::size_t order) {
    if (d == 0) throw std::invalid_argument("1-q^0 has no series inverse");
    QSeries s = QSeries::one(order);
    s.divide_one_minus_power(d);
    return s;
}

/* (prod_{d=1}^{k} 1/(1-q^d))^power truncated at `order`. An absent k means
 * the full product over all d >= 1; factors with d > order do not move any
 * stored coefficient, so the cutoff at `order` is exact. */
inline QSeries euler_product_inv(std::optional<unsigned> k, unsigned power,
                                 std::size_t order) {
    QSeries s = QSeries::one(order);
    const std::size_t top = k ? std::min<std::size_t>(*k, order) : order;
    for (std::size_t d = 1; d <= top; ++d)
        for (unsigned p = 0; p < power; ++p) s.divide_one_minus_power(static_cast<unsigned>(d));
    return s;
}

/* (prod_{d>=1} 1/(1-q^d))^{euler} truncated at `order`. The coefficient of
 * q^n is the Euler characteristic of the Hilbert scheme of n points on a
 * surface with that topological Euler number. Negative exponents are the
 * corresponding positive power of prod (1-q^d). */
inline QSeries goettsche_series(long long euler, std::size_t order) {
    QSeries s = QSeries::one(order);
    for (std::size_t d = 1; d <= order; ++d) {
        if (euler >= 0) {
            for (long long p = 0; p < euler; ++p) s.divide_one_minus_power(static_cast<unsigned>(d));
        } else {
            for (long long p = 0; p < -euler; ++p) s.multiply_one_minus_power(static_cast<unsigned>(d));
        }
    }
    return s;
}

namespace detail {

inline long long isqrt_floor(long long v) {
    long long r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

/* Enumerates integer vectors (m_1..m_rank) with sum zero, every entry
 * >= lo (no lower bound when lo is absent), and sum of squares <= sq_max,
 * in lexicographic order. The zero-sum constraint forces the quadratic
 * exponent below to be sum m^2 / 2, which is what makes sq_max a complete
 * bound. */
template <typename Visit>
void enumerate_zero_sum(unsigned rank, std::optional<long long> lo, long long sq_max,
                        Visit&& visit) {
    std::vector<long long> m(rank);
    auto rec = [&](auto&& self, unsigned idx, long long sum, long long sq) -> void {
        if (idx + 1 == rank) {
            const long long last = -sum;
            if (lo && last < *lo) return;
            if (sq + last * last > sq_max) return;
            m[idx] = last;
            visit(std::span<const long long>(m));
            return;
        }
        const long long hi = isqrt_floor(sq_max - sq);
        long long from = -hi;
        if (lo) from = std::max(from, *lo);
        for (long long v = from; v <= hi; ++v) {
            // remaining entries must be able to cancel the running sum
            const long long rem = static_cast<long long>(rank - idx - 1);
            if (lo && -(sum + v) < *lo * rem) continue;
            m[idx] = v;
            self(self, idx + 1, sum + v, sq + v * v);
        }
    };
    rec(rec, 0, 0, 0);
}

}  // namespace detail

/* Sum over integer vectors m with entries >= -d and zero total of
 *   q^{(m,m)/2} * prod_a prod_{k=1}^{m_a+d} 1/(1-q^k),
 * truncated at `order`, where (m,m) is the discrete pairing
 * sum_{a,b}(m_a-m_b)^2/(2*rank). With zero total this equals sum m_a^2, so
 * only vectors with sum of squares <= 2*order contribute. Generates the
 * finite-level multiplicity numbers of rank `rank` at level d. */
inline QSeries theta_sum(unsigned rank, unsigned d, std::size_t order) {
    if (rank == 0) throw std::invalid_argument("rank must be positive");
    QSeries out(order);
    detail::enumerate_zero_sum(
        rank, -static_cast<long long>(d), 2 * static_cast<long long>(order),
        [&](std::span<const long long> m) {
            long long sq = 0;
            for (long long v : m) sq += v * v;
            const std::size_t shift = static_cast<std::size_t>(sq / 2);
            QSeries term = QSeries::one(order - shift);
            for (long long v : m) {
                const long long parts = v + static_cast<long long>(d);
                for (long long k = 1; k <= parts && k <= static_cast<long long>(term.order()); ++k) {
                    term.divide_one_minus_power(static_cast<unsigned>(k));
                }
            }
            out.add_shifted(term, shift);
        });
    return out;
}

// The d -> infinity limit: (prod_{k>=1} 1/(1-q^k))^rank times the bare
// lattice sum of q^{(m,m)/2} over zero-sum integer vectors.
inline QSeries theta_sum_infinite(unsigned rank, std::size_t order) {
    if (rank == 0) throw std::invalid_argument("rank must be positive");
    QSeries lattice(order);
    detail::enumerate_zero_sum(rank, std::nullopt, 2 * static_cast<long long>(order),
                               [&](std::span<const long long> m) {
                                   long long sq = 0;
                                   for (long long v : m) sq += v * v;
                                   lattice.add_shifted(QSeries::one(0),
                                                       static_cast<std::size_t>(sq / 2));
                               });
    return euler_product_inv(std::nullopt, rank, order) * lattice;
}

}  // namespace qnk
