#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "qnk/partitions.hpp"
#include "qnk/qseries.hpp"
#include "oracles.hpp"

using qnk::Int;
using qnk::Rat;
using qnk::ThetaVector;
using qnk::YoungDiagram;

TEST_CASE("young diagram invariants") {
    CHECK(YoungDiagram().boxes() == 0);
    CHECK(YoungDiagram().columns() == 0);

    YoungDiagram y({3, 3, 1});
    CHECK(y.boxes() == 7);
    CHECK(y.columns() == 3);
    CHECK(y.column_heights() == std::vector<unsigned>{3, 2, 2});

    CHECK_THROWS_AS(YoungDiagram({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(YoungDiagram({2, 0}), std::invalid_argument);

    const std::vector<unsigned> heights{0, 2, 1, 2};
    CHECK(YoungDiagram::from_column_heights(heights) == YoungDiagram({3, 2}));
}

TEST_CASE("theta vectors are canonical") {
    CHECK(ThetaVector().empty());
    ThetaVector v(std::vector<unsigned>{1, 0, 2});
    CHECK(v.sum() == 3);
    CHECK(v.weighted_sum() == 1 + 0 + 6);
    CHECK_THROWS_AS(ThetaVector(std::vector<unsigned>{1, 0}), std::invalid_argument);
}

TEST_CASE("partition counts") {
    CHECK(qnk::partition_count(0) == 1);
    CHECK(qnk::partition_count(4) == 5);
    CHECK(qnk::partition_count(6) == 11);
    CHECK(qnk::partition_count(40) == 37338);
    for (unsigned j = 0; j <= 25; ++j) {
        CHECK(qnk::partition_count(j) == oracles::partitions(j));
        for (unsigned cap = 0; cap <= 6; ++cap)
            CHECK(qnk::restricted_partition_count(j, cap) == oracles::partitions_le(j, cap));
    }
}

TEST_CASE("theta enumeration worked examples") {
    const auto single = qnk::enumerate_theta(1, 2, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == ThetaVector(std::vector<unsigned>{1, 0, 1}));

    const auto rank2 = qnk::enumerate_theta(2, 1, 0);
    REQUIRE(rank2.size() == 1);
    CHECK(rank2[0] == ThetaVector(std::vector<unsigned>{2}));

    const auto degenerate = qnk::enumerate_theta(1, 0, 0);
    REQUIRE(degenerate.size() == 1);
    CHECK(degenerate[0].empty());
    CHECK(qnk::enumerate_theta(1, 0, 3).empty());

    CHECK_THROWS_AS(qnk::enumerate_theta(0, 1, 1), std::invalid_argument);
}

TEST_CASE("theta enumeration satisfies its defining constraints") {
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned d = 0; d <= 4; ++d)
            for (unsigned j = 0; j <= 8; ++j) {
                std::set<std::vector<unsigned>> seen;
                for (const ThetaVector& v : qnk::enumerate_theta(r, d, j)) {
                    CHECK(v.sum() == static_cast<unsigned long long>(r) * d);
                    CHECK(v.weighted_sum() ==
                          j + static_cast<unsigned long long>(r) * d * (d + 1) / 2);
                    for (unsigned k : v.entries()) CHECK(k <= r);
                    if (!v.empty()) CHECK(v.entries().back() >= 1);
                    seen.emplace(v.entries().begin(), v.entries().end());
                }
                CHECK(seen.size() == qnk::enumerate_theta(r, d, j).size());
            }
}

TEST_CASE("binomial-weighted counts") {
    CHECK(qnk::a_tilde(2, 1, 0) == 1);
    CHECK(qnk::a_tilde(2, 1, 1) == 4);
    CHECK(qnk::a_tilde(1, 2, 2) == 2);
    CHECK(qnk::a_tilde(3, 0, 0) == 1);
    CHECK(qnk::a_tilde(3, 0, 2) == 0);
}

TEST_CASE("pairing values") {
    const std::vector<long long> zeros{0, 0, 0};
    CHECK(qnk::pairing(zeros) == 0);
    const std::vector<long long> pm{1, -1};
    CHECK(qnk::pairing(pm) == 2);
    const std::vector<long long> two_zero{2, 0};
    CHECK(qnk::pairing(two_zero) == 2);
    CHECK_THROWS_AS(qnk::pairing(std::vector<long long>{}), std::invalid_argument);
}

TEST_CASE("pairing is shift invariant") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> entry(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> m(1 + trial % 4);
        for (auto& v : m) v = entry(rng);
        std::vector<long long> shifted = m;
        for (auto& v : shifted) v += 3;
        CHECK(qnk::pairing(m) == qnk::pairing(shifted));
    }
}

TEST_CASE("decorated tuple counts match the brute-force oracle") {
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned d = 0; d <= 2; ++d)
            for (unsigned j = 0; j <= 5; ++j) {
                CHECK(qnk::a_count(r, d, j) == oracles::decorated_count(r, d, j));
                CHECK(qnk::a_count(r, d, j) ==
                      Int(qnk::enumerate_decorated(r, d, j).size()));
            }
}

TEST_CASE("the two counts and the generating function agree") {
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned d = 0; d <= 5; ++d) {
            const qnk::QSeries series = qnk::theta_sum(r, d, 12);
            for (unsigned j = 0; j <= 12; ++j) {
                const Int lhs = qnk::a_tilde(r, d, j);
                CHECK(lhs == qnk::a_count(r, d, j));
                CHECK(lhs == series.coefficient(j));
            }
        }
}

TEST_CASE("rank-one specializations") {
    for (unsigned d = 0; d <= 6; ++d)
        for (unsigned j = 0; j <= 10; ++j)
            CHECK(qnk::a_count(1, d, j) == qnk::restricted_partition_count(j, d));
    for (unsigned j = 0; j <= 12; ++j)
        CHECK(qnk::a_infinity(1, j) == qnk::partition_count(j));
    CHECK(qnk::a_infinity(1, 5) == 7);
    CHECK(qnk::a_infinity(2, 0) == 1);
    CHECK(qnk::a_infinity(2, 1) == 4);
}

TEST_CASE("rank-one dictionary worked examples") {
    // support {1,3} at level 2: columns of heights 0 and 1
    ThetaVector v13(std::vector<unsigned>{1, 0, 1});
    CHECK(qnk::rank1_diagram(v13, 2) == YoungDiagram({1}));

    // the minimal support {1,...,d} gives the empty diagram
    ThetaVector minimal(std::vector<unsigned>{1, 1, 1});
    CHECK(qnk::rank1_diagram(minimal, 3) == YoungDiagram());

    ThetaVector v23(std::vector<unsigned>{0, 1, 1});
    CHECK(qnk::rank1_diagram(v23, 2) == YoungDiagram({2}));

    CHECK_THROWS_AS(qnk::rank1_diagram(ThetaVector(std::vector<unsigned>{2}), 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(qnk::rank1_diagram(v13, 3), std::invalid_argument);
    CHECK_THROWS_AS(qnk::rank1_vector(YoungDiagram({3}), 2), std::invalid_argument);
}

TEST_CASE("rank-one dictionary is a bijection") {
    for (unsigned d = 0; d <= 8; ++d)
        for (unsigned j = 0; j <= 12; ++j) {
            const auto vectors = qnk::enumerate_theta(1, d, j);
            std::set<YoungDiagram> images;
            for (const ThetaVector& v : vectors) {
                const YoungDiagram y = qnk::rank1_diagram(v, d);
                CHECK(y.boxes() == j);
                CHECK(y.columns() <= d);
                CHECK(qnk::rank1_vector(y, d) == v);
                images.insert(y);
            }
            CHECK(images.size() == vectors.size());
            CHECK(Int(vectors.size()) == qnk::restricted_partition_count(j, d));
        }
}

TEST_CASE("quadratic rearrangement of the pairing") {
    std::mt19937_64 rng(20240825);
    std::uniform_int_distribution<long long> entry(-10, 10);
    std::uniform_int_distribution<unsigned> rank(1, 5);
    std::uniform_int_distribution<long long> level(0, 4);
    int accepted = 0;
    while (accepted < 200) {
        const unsigned r = rank(rng);
        const long long d = level(rng);
        std::vector<long long> m(r);
        long long partial = 0;
        for (unsigned i = 0; i + 1 < r; ++i) {
            m[i] = entry(rng);
            partial += m[i];
        }
        m[r - 1] = static_cast<long long>(r) * d - partial;
        if (m[r - 1] < -10 || m[r - 1] > 10) continue;
        ++accepted;

        Int lhs = 0;
        Int sq = 0;
        for (long long a : m) {
            sq += Int(a) * a;
            for (long long b : m) lhs += (Int(a) - b) * (Int(a) - b);
        }
        const Int rhs = 2 * Int(r) * sq - 2 * Int(r) * r * d * d;
        CHECK(lhs == rhs);
        CHECK(qnk::pairing(m) == Rat(lhs, 2 * static_cast<long long>(r)));
    }
}

TEST_CASE("sum of squares has the parity of the sum") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long long> entry(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        long long sum = 0, sq = 0;
        for (int i = 0; i < 1 + trial % 5; ++i) {
            const long long v = entry(rng);
            sum += v;
            sq += v * v;
        }
        CHECK((sq - sum) % 2 == 0);
    }
}
