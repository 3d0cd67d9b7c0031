// The property suite behind `ptmoments check`: fast cross-route consistency
// checks that exercise every module. Each check returns pass/fail; the suite
// is meant to run in seconds, the heavyweight statistical verification lives
// in the test binaries.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ptmoments/exactmoments.hpp"
#include "ptmoments/freeprob.hpp"
#include "ptmoments/harerzagier.hpp"
#include "ptmoments/meanders.hpp"
#include "ptmoments/montecarlo.hpp"

namespace ptmoments {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::vector<CheckResult> run_selfchecks(TableStore& tables, unsigned threads = 0) {
    std::vector<CheckResult> results;
    auto run = [&](const std::string& name, const std::function<bool()>& fn) {
        CheckResult r;
        r.name = name;
        try {
            r.pass = fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    };

    run("nc-catalan-counts", [] {
        for (int p = 0; p <= 9; ++p) {
            std::uint64_t count = 0;
            for_each_noncrossing(p, std::nullopt, [&](const auto&) { ++count; });
            if (BigInt(count) != catalan_big(static_cast<unsigned>(p))) return false;
        }
        return true;
    });

    run("biane-roundtrip-p6", [] {
        for (int p = 1; p <= 6; ++p)
            for (const auto& tau : enumerate_nc(p)) {
                Permutation t = biane_t(tau);
                if (t.cycle_count() != tau.block_count()) return false;
                if (!(biane_inverse(t) == NoncrossingPartition(tau))) return false;
            }
        return true;
    });

    run("class-table-invariants-p6", [&] {
        for (int p = 1; p <= 6; ++p) {
            const ClassCountTable& t = tables.get(p, threads);
            if (t.total() != factorial_u64(static_cast<unsigned>(p))) return false;
            for (const auto& [key, count] : t.entries) {
                auto [a, b, c] = key;
                if (t.entries.at({a, c, b}) != count) return false;
            }
            if (t.entries.at({0, p - 1, p - 1}) != 1) return false;
        }
        return true;
    });

    run("exact-hand-values", [&] {
        return expected_moment(2, 2, 2, 2, tables, threads) == Rational(8, 3) &&
               expected_moment(2, 2, 2, 3, tables, threads) == Rational(32, 5) &&
               variance(2, 2, 2, 1, tables, threads) == 0;
    });

    run("moment-cumulant-roundtrip", [] {
        CumulantSequence k;
        for (int i = 1; i <= 8; ++i) k.values.push_back(Rational(2 * i - 9, i));
        MomentSequence m = moments_from_cumulants(k, 8);
        CumulantSequence back = cumulants_from_moments(m, 8);
        for (int p = 1; p <= 8; ++p)
            if (back.k(p) != k.k(p)) return false;
        return true;
    });

    run("regime1-vs-semicircle-cumulants", [&] {
        Rational a(2, 5);
        MomentSequence m = moments_from_cumulants(named_cumulants(Semicircle{1, a}, 8), 8);
        for (int p = 0; p <= 8; ++p)
            if (limit_moment(Regime1{a}, p, tables, threads) != m.m(p)) return false;
        return true;
    });

    run("meander-dual-routes-q4", [] {
        for (int q = 1; q <= 4; ++q) {
            auto pairings = enumerate_nc2_partners(q);
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
                    if (components_by_tracing(cfg) != components_by_permutation(cfg)) return false;
                }
        }
        return true;
    });

    run("meander-polynomial-vs-geodesic-q4", [&] {
        for (int q = 1; q <= 4; ++q) {
            MeanderTally tally = meander_tally(q);
            for (int l = 1; l <= 3; ++l)
                if (meander_polynomial(tally, Rational(l)) !=
                    limit_moment(LFixed{Rational(l), Rational(1)}, 2 * q, tables, threads))
                    return false;
        }
        return true;
    });

    run("hz-vs-enumeration-n6", [] {
        HZTable table;
        for (int n = 1; n <= 6; ++n) {
            auto by_enum = enumerate_involutions_by_genus(n);
            for (int g = 0; g <= n; ++g) {
                BigInt e = by_enum.count(g) ? by_enum.at(g) : BigInt(0);
                if (table.epsilon(g, n) != e) return false;
            }
        }
        return true;
    });

    run("identity1-grid-p8", [] {
        for (int p = 0; p <= 8; ++p)
            for (int t = 0; t <= p; ++t)
                for (std::int64_t D : {4, 16, 64, 256})
                    if (!identity1_check(p, t, D).holds) return false;
        return true;
    });

    run("mc-smoke-(2,2,2)", [&] {
        auto est = mc_moment_estimates(2, 2, 2, 2, 2000, 424242, threads);
        double exact = to_double(expected_moment(2, 2, 2, 2, tables, threads));
        return est.moments[0].mean == 1.0 &&
               std::abs(est.moments[1].mean - exact) <= 5 * est.moments[1].stderr_;
    });

    run("partial-transpose-involution", [] {
        RNGStream rng(1, 0);
        ComplexMatrix W = times_adjoint(sample_ginibre(6, 4, rng));
        ComplexMatrix back = partial_transpose(partial_transpose(W, 3, 2), 3, 2);
        return back.a == W.a;
    });

    return results;
}

}  // namespace ptmoments
