#include <doctest.h>

#include "ptmoments/harerzagier.hpp"
#include "test_oracles.hpp"

using namespace ptmoments;

TEST_CASE("Harer-Zagier base cases and small values") {
    CHECK(hz_epsilon(0, 3) == 5);
    CHECK(hz_epsilon(1, 1) == 0);
    CHECK(hz_epsilon(1, 2) == 1);
    CHECK(hz_epsilon(1, 3) == 10);
    CHECK(hz_epsilon(-1, 4) == 0);
    CHECK(hz_epsilon(0, 0) == 1);
    auto cat = oracles::catalan_by_recursion(20);
    for (int n = 0; n <= 20; ++n) CHECK(hz_epsilon(0, n) == cat[static_cast<std::size_t>(n)]);
}

TEST_CASE("recursion matches direct enumeration for n <= 6") {
    HZTable table;
    for (int n = 1; n <= 6; ++n) {
        auto by_enum = enumerate_involutions_by_genus(n);
        BigInt total = 0;
        int max_g = (n - 1) / 2 + 1;
        for (int g = 0; g <= max_g + 1; ++g) {
            BigInt expected = table.epsilon(g, n);
            BigInt enumerated = by_enum.count(g) ? by_enum.at(g) : BigInt(0);
            CHECK(expected == enumerated);
            total += enumerated;
        }
        CHECK(total == double_factorial_odd(static_cast<unsigned>(n)));
    }
    CHECK(enumerate_involutions_by_genus(1) == std::map<int, BigInt>{{0, 1}});
    CHECK(enumerate_involutions_by_genus(2) == std::map<int, BigInt>{{0, 2}, {1, 1}});
    CHECK(enumerate_involutions_by_genus(3) == std::map<int, BigInt>{{0, 5}, {1, 10}});
}

TEST_CASE("involution genus agrees with the generic genus function, n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto by_enum = enumerate_involutions_by_genus(n);
        // recompute through permgroup: genus(alpha, 2) on S_{2n}
        std::map<int, BigInt> by_genus2;
        for_each_permutation(2 * n, [&](const std::vector<int>& im) {
            Permutation alpha(im);
            if (!(compose(alpha, alpha) == Permutation::identity(2 * n))) return;
            for (int i = 0; i < 2 * n; ++i)
                if (alpha(i) == i) return;  // fixed point
            by_genus2[genus(alpha, 2)] += 1;
        });
        CHECK(by_genus2 == by_enum);
    }
}

TEST_CASE("sum over genus equals (2n-1)!! for n <= 20") {
    HZTable table;
    for (int n = 1; n <= 20; ++n) {
        BigInt sum = 0;
        for (int g = 0; 2 * g <= n - 1; ++g) sum += table.epsilon(g, n);
        // genus above (n-1)/2 must vanish
        for (int g = (n - 1) / 2 + 1; g <= (n - 1) / 2 + 3; ++g) CHECK(table.epsilon(g, n) == 0);
        CHECK(sum == double_factorial_odd(static_cast<unsigned>(n)));
    }
}

TEST_CASE("Catalan identity used by the bound proof") {
    for (int n = 1; n <= 20; ++n)
        CHECK(BigInt(n + 1) * catalan_big(static_cast<unsigned>(n)) ==
              BigInt(2) * (2 * n - 1) * catalan_big(static_cast<unsigned>(n - 1)));
}

TEST_CASE("stratum counts of fixed-point-free permutations") {
    CHECK(stratum_count(2, 0) == 1);

    // totals: number of fixed-point-free permutations (p = 4 gives 9)
    auto counts4 = stratum_counts(4);
    BigInt total4 = 0;
    for (const auto& [h, c] : counts4) total4 += c;
    CHECK(total4 == 9);

    for (int p = 2; p <= 7; ++p) {
        auto counts = stratum_counts(p);
        BigInt total = 0, fpf = 0;
        for (const auto& [h, c] : counts) total += c;
        for_each_permutation(p, [&](const std::vector<int>& im) {
            for (int i = 0; i < p; ++i)
                if (im[static_cast<std::size_t>(i)] == i) return;
            fpf += 1;
        });
        CHECK(total == fpf);
        for (const auto& [h, c] : counts) CHECK(cardinality_bound_holds(p, h, c));
    }
}

TEST_CASE("identity1: hand values and exactness") {
    // t = p: single surviving term F(D,p) <= 1
    for (int p = 0; p <= 6; ++p) {
        auto r = identity1_check(p, p, 16);
        CHECK(r.lhs == f_factor(16, p));
        CHECK(r.holds);
    }
    // p=2, t=0, D=16: lhs = 16/17 - 2 + 1 = -1/17, bound 1/4
    auto r = identity1_check(2, 0, 16);
    CHECK(r.lhs == Rational(-1, 17));
    CHECK(r.rhs == doctest::Approx(0.25));
    CHECK(r.holds);
    CHECK_THROWS_AS(identity1_check(2, 0, 1), std::invalid_argument);
}

TEST_CASE("identity1 holds on the full grid p <= 12") {
    for (int p = 0; p <= 12; ++p)
        for (int t = 0; t <= p; ++t)
            for (std::int64_t D : {4, 16, 64, 256}) CHECK(identity1_check(p, t, D).holds);
}

TEST_CASE("hzcor bound") {
    CHECK(hzcor_check(1, 2));  // 1 <= 4 * 8
    HZTable table;
    for (int g = 0; g <= 6; ++g)
        for (int n = 1; n <= 40; ++n) CHECK(hzcor_check(g, n, table));
}
