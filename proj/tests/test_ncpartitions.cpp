#include <doctest.h>

#include <set>

#include "ptmoments/setpartition.hpp"
#include "test_oracles.hpp"

using namespace ptmoments;

TEST_CASE("noncrossing predicate") {
    CHECK(is_noncrossing(SetPartition({{1}, {2, 3, 6}, {4, 5}})));
    CHECK_FALSE(is_noncrossing(SetPartition({{1, 3}, {2, 4}})));
    CHECK(is_noncrossing(SetPartition({{1}, {2}, {3}, {4}})));
    CHECK(is_noncrossing(SetPartition({{1, 3, 5}, {2}, {4}})));
    CHECK_FALSE(is_noncrossing(SetPartition({{1, 3}, {2, 4, 5}})));
    // over a sparse ground set: crossing is about the induced order
    CHECK(is_noncrossing(SetPartition({{1, 7}, {3, 5}})));
    CHECK_FALSE(is_noncrossing(SetPartition({{1, 5}, {3, 7}})));
}

TEST_CASE("SetPartition validation") {
    CHECK_THROWS_AS(SetPartition({{1, 2}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(SetPartition({{1}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(NoncrossingPartition({{1, 3}, {2, 4}}), std::invalid_argument);
}

TEST_CASE("NC counts match brute force and Catalan") {
    // brute force via restricted growth strings for small p
    for (int p = 0; p <= 7; ++p) {
        std::uint64_t brute = 0;
        oracles::for_each_partition(p, [&](const std::vector<std::vector<int>>& blocks) {
            SetPartition sp;
            sp.blocks = blocks;
            if (is_noncrossing(sp)) ++brute;
        });
        CHECK(enumerate_nc(p).size() == brute);
    }
    CHECK(enumerate_nc(3).size() == 5);
    CHECK(enumerate_nc(4).size() == 14);
    CHECK(enumerate_nc(4, std::set<int>{1, 2}).size() == 9);

    auto cat = oracles::catalan_by_recursion(10);
    for (int p = 0; p <= 10; ++p) {
        std::uint64_t count = 0;
        for_each_noncrossing(p, std::nullopt, [&](const auto&) { ++count; });
        CHECK(BigInt(count) == cat[static_cast<std::size_t>(p)]);
        CHECK(catalan_big(static_cast<unsigned>(p)) == cat[static_cast<std::size_t>(p)]);
    }
}

TEST_CASE("NC enumeration has no duplicates and early stop works") {
    std::set<SetPartition> seen;
    for_each_noncrossing(6, std::nullopt, [&](const std::vector<std::vector<int>>& blocks) {
        SetPartition sp;
        sp.blocks = blocks;
        sp.normalize();
        CHECK(seen.insert(sp).second);
    });
    CHECK(seen.size() == 132);

    int visited = 0;
    for_each_noncrossing(6, std::nullopt, [&](const auto&) -> bool { return ++visited < 10; });
    CHECK(visited == 10);
}

TEST_CASE("biane_t on the reference partition") {
    SetPartition tau({{1}, {2, 3, 6}, {4, 5}});
    Permutation t = biane_t(tau);
    CHECK(t == Permutation::from_cycles(6, {{2, 3, 6}, {4, 5}}));
    CHECK(t.cycle_count() == 3);

    CHECK(biane_t(SetPartition({{1}, {2}, {3}})) == Permutation::identity(3));
    CHECK(biane_t(SetPartition({{1, 2, 3, 4}})) == Permutation::full_cycle(4));
}

TEST_CASE("biane_inverse and geodesic validation") {
    SetPartition tau({{1}, {2, 3, 6}, {4, 5}});
    CHECK(biane_inverse(biane_t(tau)) == NoncrossingPartition(tau));
    CHECK(biane_inverse(Permutation::identity(4)) ==
          NoncrossingPartition({{1}, {2}, {3}, {4}}));
    CHECK_NOTHROW(biane_inverse(Permutation::from_cycles(4, {{1, 3}})));
    CHECK_THROWS_AS(biane_inverse(Permutation::from_cycles(4, {{1, 3}, {2, 4}})),
                    std::invalid_argument);
}

TEST_CASE("Biane bijection: images coincide with the geodesics, p <= 6") {
    for (int p = 1; p <= 6; ++p) {
        Permutation id = Permutation::identity(p);
        Permutation pi = Permutation::full_cycle(p);
        Permutation pi_inv = pi.inverse();

        std::set<Permutation> to_pi, to_pi_inv, both;
        for_each_permutation(p, [&](const std::vector<int>& im) {
            Permutation beta(im);
            bool g1 = on_geodesic(id, beta, pi), g2 = on_geodesic(id, beta, pi_inv);
            if (g1) to_pi.insert(beta);
            if (g2) to_pi_inv.insert(beta);
            if (g1 && g2) both.insert(beta);
        });

        std::set<Permutation> image_t, image_t_inv, image_nc12;
        for (const auto& tau : enumerate_nc(p)) {
            Permutation t = biane_t(tau);
            image_t.insert(t);
            image_t_inv.insert(t.inverse());
            CHECK(t.cycle_count() == tau.block_count());
            CHECK(biane_inverse(t) == NoncrossingPartition(tau));
        }
        for (const auto& tau : enumerate_nc(p, std::set<int>{1, 2})) {
            Permutation t = biane_t(tau);
            CHECK(t == t.inverse());  // involution
            image_nc12.insert(t);
        }
        CHECK(image_t == to_pi);
        CHECK(image_t_inv == to_pi_inv);
        CHECK(image_nc12 == both);
    }
}

TEST_CASE("even block count") {
    CHECK(even_block_count(SetPartition({{1, 2}})) == 1);
    CHECK(even_block_count(SetPartition({{1}, {2}, {3}})) == 0);
    CHECK(even_block_count(SetPartition({{1, 2}, {3}, {4, 5, 6, 7}})) == 2);
}

TEST_CASE("NC over relabeled ground sets") {
    // odd positions of [8]: order isomorphism to [4]
    std::vector<int> odds{1, 3, 5, 7};
    std::uint64_t count = 0;
    for_each_noncrossing(odds, std::nullopt, [&](const auto&) { ++count; });
    CHECK(count == 14);
}
