#include "initdeg/linalg.hpp"

#include "initdeg/interpolation.hpp"

#include <doctest.h>

using namespace initdeg;

namespace {

Matrix rational_matrix(const std::vector<std::vector<long>>& rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()),
             FieldSpec::rational());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m.at(static_cast<int>(r), static_cast<int>(c)) = FieldElement(Rat(rows[r][c]));
        }
    }
    return m;
}

IntMatrix random_int_matrix(SplitMix64& rng, int max_dim, long box) {
    const int rows = 1 + static_cast<int>(rng.bounded(max_dim));
    const int cols = 1 + static_cast<int>(rng.bounded(max_dim));
    IntMatrix m(rows, cols);
    for (auto& v : m.e) v = Int(rng.in_range(-box, box));
    // sprinkle rank deficiency: sometimes duplicate or zero a row
    if (rows >= 2 && rng.bounded(3) == 0) {
        const int src = static_cast<int>(rng.bounded(rows));
        const int dst = static_cast<int>(rng.bounded(rows));
        for (int c = 0; c < cols; ++c) m.at(dst, c) = m.at(src, c);
    }
    return m;
}

Matrix to_rational(const IntMatrix& im) {
    Matrix m(im.rows, im.cols, FieldSpec::rational());
    for (int r = 0; r < im.rows; ++r) {
        for (int c = 0; c < im.cols; ++c) m.at(r, c) = FieldElement(Rat(im.at(r, c)));
    }
    return m;
}

} // namespace

TEST_CASE("identity and visible dependency") {
    const RankResult id3 = rank_kernel(rational_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(id3.rank == 3);
    CHECK(id3.kernel_dim == 0);
    CHECK_FALSE(id3.certificate.has_value());
    CHECK(id3.provenance.to_string() == "exact");

    const RankResult dep = rank_kernel(rational_matrix({{1, 2}, {2, 4}}));
    CHECK(dep.rank == 1);
    CHECK(dep.kernel_dim == 1);
    REQUIRE(dep.certificate.has_value());
    // certificate proportional to (2, -1), normalized to leading coefficient 1
    CHECK((*dep.certificate)[0] == FieldElement(Rat(1)));
    CHECK((*dep.certificate)[1] == FieldElement(Rat(-1, 2)));
}

TEST_CASE("fermat12 m=2 d=7 has full column rank 36 (exact eisenstein path)") {
    const auto Z = fermat12_configuration(FieldSpec::eisenstein());
    const ConditionMatrix cm = build_matrix(Z, 2, 7);
    REQUIRE(cm.mat.cols == 36);
    const RankResult rr = rank_kernel(cm.mat, true);
    CHECK(rr.rank == 36);
    CHECK(rr.kernel_dim == 0);
}

TEST_CASE("multi-prime consensus basics") {
    const auto& primes = default_consensus_primes();
    SUBCASE("integer identity") {
        IntMatrix m(3, 3);
        for (int i = 0; i < 3; ++i) m.at(i, i) = 1;
        const MultiPrimeRank mp = multi_prime_rank(m, primes);
        REQUIRE(mp.consensus());
        CHECK(mp.result->rank == 3);
        CHECK(mp.result->provenance.to_string() ==
              "modular-consensus(2147483647,2147483629,2147483587,2147483563)");
    }
    SUBCASE("constructed rank drop at one prime disagrees") {
        IntMatrix m(2, 2);
        m.at(0, 0) = Int(primes[0]); // 0 mod primes[0], nonzero elsewhere
        m.at(1, 1) = 1;
        const MultiPrimeRank mp = multi_prime_rank(m, primes);
        CHECK_FALSE(mp.consensus());
        CHECK(mp.per_prime[0].second == 1);
        CHECK(mp.per_prime[1].second == 2);
    }
    SUBCASE("needs two primes") {
        IntMatrix m(1, 1);
        m.at(0, 0) = 1;
        CHECK_THROWS_AS(multi_prime_rank(m, {2147483647ull}), UsageError);
        CHECK_THROWS_AS(multi_prime_rank(m, {4ull, 6ull}), UsageError);
    }
}

TEST_CASE("consensus rank equals exact Bareiss rank on random integer matrices") {
    SplitMix64 rng(99);
    const auto& primes = default_consensus_primes();
    for (int iter = 0; iter < 60; ++iter) {
        const IntMatrix m = random_int_matrix(rng, 20, 1000);
        const MultiPrimeRank mp = multi_prime_rank(m, primes);
        REQUIRE(mp.consensus());
        CHECK(mp.result->rank == bareiss_rank(m));
    }
}

TEST_CASE("eisenstein consensus agrees with exact Bareiss over Z[w]") {
    SplitMix64 rng(123);
    const auto& primes = default_consensus_primes();
    for (int iter = 0; iter < 25; ++iter) {
        const int n = 2 + static_cast<int>(rng.bounded(8));
        EisIntMatrix m(n, n + 1);
        for (auto& v : m.e) {
            v = EisInt{Int(rng.in_range(-9, 9)), Int(rng.in_range(-9, 9))};
        }
        const MultiPrimeRank mp = multi_prime_rank(m, primes);
        REQUIRE(mp.consensus());
        CHECK(mp.result->rank == bareiss_rank(m));
    }
}

TEST_CASE("rank properties under row operations") {
    SplitMix64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        IntMatrix m = random_int_matrix(rng, 8, 50);
        const int r0 = bareiss_rank(m);
        CHECK(r0 <= std::min(m.rows, m.cols));
        // appending a row never decreases rank
        IntMatrix ext(m.rows + 1, m.cols);
        for (int r = 0; r < m.rows; ++r) {
            for (int c = 0; c < m.cols; ++c) ext.at(r, c) = m.at(r, c);
        }
        for (int c = 0; c < m.cols; ++c) ext.at(m.rows, c) = Int(rng.in_range(-50, 50));
        CHECK(bareiss_rank(ext) >= r0);
        // appending a duplicate row never increases it
        const int dup = static_cast<int>(rng.bounded(m.rows));
        for (int c = 0; c < m.cols; ++c) ext.at(m.rows, c) = m.at(dup, c);
        CHECK(bareiss_rank(ext) == r0);
    }
}

TEST_CASE("kernel certificates verify against gauss over prime fields") {
    SplitMix64 rng(5);
    const FieldSpec f = FieldSpec::prime(1009);
    for (int iter = 0; iter < 30; ++iter) {
        const int rows = 2 + static_cast<int>(rng.bounded(5));
        const int cols = rows + 1 + static_cast<int>(rng.bounded(3));
        Matrix m(rows, cols, f);
        for (auto& v : m.entries) v = FieldElement(ModularResidue{rng.bounded(1009), 1009});
        const RankResult rr = rank_kernel(m, true);
        CHECK(rr.rank + rr.kernel_dim == cols);
        REQUIRE(rr.certificate.has_value()); // cols > rows forces a kernel
        CHECK(verify_kernel_vector(m, *rr.certificate));
        // leading coefficient is 1
        for (const auto& v : *rr.certificate) {
            if (!v.is_zero()) {
                CHECK(v.is_one());
                break;
            }
        }
    }
}

TEST_CASE("eisenstein rank_kernel certificates verify") {
    SplitMix64 rng(6);
    const FieldSpec e = FieldSpec::eisenstein();
    for (int iter = 0; iter < 15; ++iter) {
        const int rows = 2 + static_cast<int>(rng.bounded(3));
        const int cols = rows + 1;
        Matrix m(rows, cols, e);
        for (auto& v : m.entries) {
            v = FieldElement(Eisenstein{Rat(Int(rng.in_range(-5, 5)), Int(1 + rng.bounded(3))),
                                        Rat(Int(rng.in_range(-5, 5)), Int(1 + rng.bounded(3)))});
        }
        const RankResult rr = rank_kernel(m, true);
        REQUIRE(rr.certificate.has_value());
        CHECK(verify_kernel_vector(m, *rr.certificate));
    }
}

TEST_CASE("reduce_mod maps w consistently") {
    EisIntMatrix m(1, 2);
    m.at(0, 0) = EisInt{0, 1};  // w
    m.at(0, 1) = EisInt{-1, -1}; // -1-w = w^2
    const std::uint64_t p = 2147483647ull;
    const ModMatrix mm = reduce_mod(m, p);
    CHECK(mul_mod(mm.at(0, 0), mm.at(0, 0), p) == mm.at(0, 1));
    CHECK_THROWS_AS(reduce_mod(m, 5), MathError); // 5 = 2 mod 3: no cube root
}

TEST_CASE("gauss rank on reduced matrices matches field elimination") {
    SplitMix64 rng(8);
    for (int iter = 0; iter < 20; ++iter) {
        const IntMatrix im = random_int_matrix(rng, 10, 100);
        const ModMatrix mm = reduce_mod(im, 1009);
        Matrix m(im.rows, im.cols, FieldSpec::prime(1009));
        for (int r = 0; r < im.rows; ++r) {
            for (int c = 0; c < im.cols; ++c) {
                m.at(r, c) = FieldElement::from_integer(FieldSpec::prime(1009), im.at(r, c));
            }
        }
        CHECK(gauss_rank(mm) == rank_kernel(m, false).rank);
    }
}
