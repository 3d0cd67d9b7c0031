#include <doctest.h>

#include "ptmoments/freeprob.hpp"
#include "ptmoments/meanders.hpp"
#include "test_oracles.hpp"

using namespace ptmoments;

TEST_CASE("components: paper figure and hand-traced configurations") {
    MeanderConfig fig(4, NoncrossingPartition({{1, 2}, {3, 4}, {5, 8}, {6, 7}}),
                      NoncrossingPartition({{1, 6}, {2, 5}, {3, 4}, {7, 8}}));
    CHECK(components(fig) == 2);

    MeanderConfig one_loop(2, NoncrossingPartition({{1, 2}, {3, 4}}),
                           NoncrossingPartition({{1, 4}, {2, 3}}));
    CHECK(components(one_loop) == 1);

    // sigma1 = sigma2 closes q loops immediately
    for (int q = 1; q <= 5; ++q) {
        for (const auto& partner : enumerate_nc2_partners(q)) {
            std::vector<std::vector<int>> blocks;
            for (int i = 1; i <= 2 * q; ++i)
                if (i < partner[static_cast<std::size_t>(i)])
                    blocks.push_back({i, partner[static_cast<std::size_t>(i)]});
            NoncrossingPartition pp(blocks);
            CHECK(components(MeanderConfig(q, pp, pp)) == q);
        }
    }
}

TEST_CASE("malformed pair-partitions are rejected") {
    CHECK_THROWS_AS(MeanderConfig(2, NoncrossingPartition({{1, 2, 3}, {4}}),
                                  NoncrossingPartition({{1, 2}, {3, 4}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(MeanderConfig(3, NoncrossingPartition({{1, 2}, {3, 4}}),
                                  NoncrossingPartition({{1, 2}, {3, 4}})),
                    std::invalid_argument);
}

TEST_CASE("tracing and permutation routes agree exhaustively, q <= 6") {
    for (int q = 1; q <= 6; ++q) {
        auto pairings = enumerate_nc2_partners(q);
        CHECK(BigInt(pairings.size()) == catalan_big(static_cast<unsigned>(q)));
        auto to_partition = [&](const std::vector<int>& partner) {
            std::vector<std::vector<int>> blocks;
            for (int i = 1; i <= 2 * q; ++i)
                if (i < partner[static_cast<std::size_t>(i)])
                    blocks.push_back({i, partner[static_cast<std::size_t>(i)]});
            return NoncrossingPartition(blocks);
        };
        for (const auto& up : pairings)
            for (const auto& low : pairings) {
                MeanderConfig cfg(q, to_partition(up), to_partition(low));
                CHECK(components_by_tracing(cfg) == components_by_permutation(cfg));
            }
    }
}

TEST_CASE("fattening bijection") {
    // worked example: tau = {{1,3,4},{2}} in NC(4) fattens to
    // {{2,5},{3,4},{6,7},{1,8}}
    NoncrossingPartition tau({{1, 3, 4}, {2}});
    NoncrossingPartition fat = fatten(tau, 4);
    CHECK(fat == NoncrossingPartition({{2, 5}, {3, 4}, {6, 7}, {1, 8}}));
    CHECK(unfatten(fat, 4) == tau);

    // roundtrip and noncrossing image over all of NC(q), q <= 7
    for (int q = 1; q <= 7; ++q) {
        std::uint64_t seen = 0;
        for (const auto& t : enumerate_nc(q)) {
            NoncrossingPartition f = fatten(t, q);
            for (const auto& b : f.blocks) CHECK(b.size() == 2);
            CHECK(unfatten(f, q) == NoncrossingPartition(t));
            ++seen;
        }
        CHECK(BigInt(seen) == catalan_big(static_cast<unsigned>(q)));
    }
}

TEST_CASE("meander tallies") {
    MeanderTally t1 = meander_tally(1);
    CHECK(t1.counts == std::map<int, std::uint64_t>{{1, 1}});

    MeanderTally t2 = meander_tally(2);
    CHECK(t2.counts == std::map<int, std::uint64_t>{{1, 2}, {2, 2}});

    MeanderTally t3 = meander_tally(3);
    CHECK(t3.counts == std::map<int, std::uint64_t>{{1, 8}, {2, 12}, {3, 5}});
    CHECK(t3.total() == 25);

    for (int q = 1; q <= 6; ++q) {
        MeanderTally t = meander_tally(q);
        BigInt cat = catalan_big(static_cast<unsigned>(q));
        CHECK(BigInt(t.total()) == cat * cat);           // all configurations
        CHECK(BigInt(t.counts.at(q)) == cat);            // only sigma1 = sigma2 gives q loops
        CHECK(t.counts.begin()->first == 1);             // connected meanders exist
    }
    CHECK_THROWS_AS(meander_tally(9), std::invalid_argument);
}

TEST_CASE("connected meanders match a direct connected-only enumeration") {
    for (int q = 1; q <= 5; ++q) {
        auto pairings = enumerate_nc2_partners(q);
        std::uint64_t connected = 0;
        for (const auto& up : pairings)
            for (const auto& low : pairings)
                if (detail::meander_loops_traced(up, low, 2 * q) == 1) ++connected;
        CHECK(meander_tally(q).counts.at(1) == connected);
    }
}

TEST_CASE("meander polynomial values") {
    CHECK(meander_polynomial(1, Rational(7)) == 7);
    CHECK(meander_polynomial(2, Rational(3)) == 2 * 3 + 2 * 9);
    CHECK(meander_polynomial(3, Rational(1)) == 25);
}

TEST_CASE("reflection invariance of the component count") {
    for (int q = 1; q <= 5; ++q) {
        auto pairings = enumerate_nc2_partners(q);
        auto reflect = [&](const std::vector<int>& partner) {
            std::vector<std::vector<int>> blocks;
            for (int i = 1; i <= 2 * q; ++i) {
                int j = partner[static_cast<std::size_t>(i)];
                if (i < j) blocks.push_back({2 * q + 1 - j, 2 * q + 1 - i});
            }
            return NoncrossingPartition(blocks);
        };
        auto to_partition = [&](const std::vector<int>& partner) {
            std::vector<std::vector<int>> blocks;
            for (int i = 1; i <= 2 * q; ++i)
                if (i < partner[static_cast<std::size_t>(i)])
                    blocks.push_back({i, partner[static_cast<std::size_t>(i)]});
            return NoncrossingPartition(blocks);
        };
        for (const auto& up : pairings)
            for (const auto& low : pairings) {
                MeanderConfig cfg(q, to_partition(up), to_partition(low));
                MeanderConfig mirrored(q, reflect(up), reflect(low));
                CHECK(components_by_tracing(cfg) == components_by_tracing(mirrored));
            }
    }
}

TEST_CASE("meander polynomial equals the l-fixed limit moment") {
    TableStore tables;
    for (int q = 1; q <= 5; ++q) {
        MeanderTally tally = meander_tally(q);
        for (int l = 1; l <= 5; ++l)
            CHECK(meander_polynomial(tally, Rational(l)) ==
                  limit_moment(LFixed{Rational(l), Rational(1)}, 2 * q, tables));
    }
}
