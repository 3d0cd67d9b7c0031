#include <doctest.h>

#include "ptmoments/freeprob.hpp"
#include "test_oracles.hpp"

using namespace ptmoments;

namespace {
TableStore& shared_tables() {
    static TableStore store;  // honors PTMOMENTS_CACHE
    return store;
}
}  // namespace

TEST_CASE("moment-cumulant transform: displayed identities") {
    CumulantSequence k;
    k.values = {Rational(2), Rational(3), Rational(5), Rational(7)};
    MomentSequence m = moments_from_cumulants(k, 4);
    const Rational k1 = 2, k2 = 3, k3 = 5, k4 = 7;
    CHECK(m.m(0) == 1);
    CHECK(m.m(1) == k1);
    CHECK(m.m(2) == k2 + k1 * k1);
    CHECK(m.m(3) == k3 + 3 * k1 * k2 + k1 * k1 * k1);
    CHECK(m.m(4) == k4 + 4 * k1 * k3 + 2 * k2 * k2 + 6 * k1 * k1 * k2 + k1 * k1 * k1 * k1);
}

TEST_CASE("all cumulants zero / point mass") {
    CumulantSequence zero;
    zero.values.assign(6, Rational(0));
    MomentSequence m = moments_from_cumulants(zero, 6);
    for (int p = 1; p <= 6; ++p) CHECK(m.m(p) == 0);

    MomentSequence ones;
    ones.values.assign(7, Rational(1));  // m_0 .. m_6 all 1: point mass at 1
    CumulantSequence k = cumulants_from_moments(ones, 6);
    CHECK(k.k(1) == 1);
    for (int p = 2; p <= 6; ++p) CHECK(k.k(p) == 0);
}

TEST_CASE("transforms are mutually inverse on pseudo-random rationals") {
    CumulantSequence k;
    // deterministic scrambled rationals
    for (int i = 1; i <= 10; ++i)
        k.values.push_back(Rational((i * 7919) % 23 - 11, 1 + (i * 104729) % 9));
    MomentSequence m = moments_from_cumulants(k, 10);
    CumulantSequence back = cumulants_from_moments(m, 10);
    for (int p = 1; p <= 10; ++p) CHECK(back.k(p) == k.k(p));
}

TEST_CASE("free Poisson nu_{1,1} has Catalan moments and unit cumulants") {
    CumulantSequence k = named_cumulants(FreePoisson{Rational(1), Rational(1)}, 8);
    for (int p = 1; p <= 8; ++p) CHECK(k.k(p) == 1);
    MomentSequence m = moments_from_cumulants(k, 8);
    for (int p = 0; p <= 8; ++p)
        CHECK(m.m(p) == Rational(catalan_big(static_cast<unsigned>(p))));
}

TEST_CASE("semicircle cumulants") {
    CumulantSequence k = named_cumulants(Semicircle{Rational(1), Rational(1, 4)}, 6);
    CHECK(k.k(1) == 1);
    CHECK(k.k(2) == Rational(1, 4));
    for (int p = 3; p <= 6; ++p) CHECK(k.k(p) == 0);
}

TEST_CASE("free difference cumulants match the m-fixed regime") {
    for (auto [b, m0] : {std::pair<Rational, Rational>{1, 1}, {2, 3}, {Rational(1, 2), 4}}) {
        CumulantSequence direct = named_cumulants(MFixed{b, m0}, 9);
        CumulantSequence via_difference =
            named_cumulants(FreeDifference{b * (m0 + 1) / 2, b * (m0 - 1) / 2}, 9);
        for (int r = 1; r <= 9; ++r) CHECK(direct.k(r) == via_difference.k(r));
    }
}

TEST_CASE("limit_moment regime1: hand values and semicircle identification") {
    TableStore& tables = shared_tables();
    Rational a(3, 7);
    CHECK(limit_moment(Regime1{a}, 0, tables) == 1);
    CHECK(limit_moment(Regime1{a}, 4, tables) == 1 + 6 * a + 2 * a * a);

    // moments of SC_{1, sqrt a} computed through cumulants agree for p <= 10
    for (const Rational& av : {Rational(1), Rational(2), Rational(1, 3)}) {
        MomentSequence m = moments_from_cumulants(named_cumulants(Semicircle{1, av}, 10), 10);
        for (int p = 0; p <= 10; ++p) CHECK(limit_moment(Regime1{av}, p, tables) == m.m(p));
    }
}

TEST_CASE("limit_moment l_fixed: hand values, vanishing odd moments") {
    TableStore& tables = shared_tables();
    Rational l(3), c(5, 2);
    CHECK(limit_moment(LFixed{l, c}, 2, tables) == l * c);
    CHECK(limit_moment(LFixed{Rational(2), Rational(1)}, 4, tables) == 2 * 2 + 2 * 4);
    for (int p = 1; p <= 9; p += 2) CHECK(limit_moment(LFixed{l, c}, p, tables) == 0);
    CHECK_THROWS_AS(limit_moment(LFixed{Rational(1, 2), c}, 2, tables), std::invalid_argument);
}

TEST_CASE("limit_moment l_fixed matches a direct geodesic sum, p <= 8") {
    TableStore& tables = shared_tables();
    for (int p = 2; p <= 8; p += 2) {
        Permutation pi = Permutation::full_cycle(p);
        Permutation pi_inv = pi.inverse();
        for (const auto& [l, c] : {std::pair<Rational, Rational>{1, 1}, {3, 1}, {2, Rational(5, 3)}}) {
            Rational direct = 0;
            for_each_permutation(p, [&](const std::vector<int>& im) {
                Permutation alpha(im);
                if (!on_geodesic(pi_inv, alpha, pi)) return;
                direct += pow_rational(l, alpha.cycle_count()) *
                          pow_rational(c, compose(pi, alpha).cycle_count() - 1);
            });
            CHECK(limit_moment(LFixed{l, c}, p, tables) == direct);
        }
    }
}

TEST_CASE("pure state limit: c * m_{2q} = (sum over NC(q) of c^{#tau})^2") {
    TableStore& tables = shared_tables();
    for (const Rational& c : {Rational(1), Rational(2), Rational(1, 3)}) {
        for (int q = 1; q <= 5; ++q) {
            Rational nc_sum = 0;
            for_each_noncrossing(q, std::nullopt, [&](const std::vector<std::vector<int>>& blocks) {
                nc_sum += pow_rational(c, static_cast<int>(blocks.size()));
            });
            CHECK(c * limit_moment(PureStateLimit{c}, 2 * q, tables) == nc_sum * nc_sum);
            CHECK(limit_moment(PureStateLimit{c}, 2 * q - 1, tables) == 0);
        }
    }
}

TEST_CASE("m_fixed moments: hand value and cumulant route") {
    TableStore& tables = shared_tables();
    Rational b(2), m0(3);
    CHECK(limit_moment(MFixed{b, m0}, 2, tables) == b * b + b * m0);
    for (auto [bb, mm] : {std::pair<Rational, Rational>{1, 1}, {2, 3}, {Rational(1, 2), 4}}) {
        MomentSequence m = moments_from_cumulants(named_cumulants(MFixed{bb, mm}, 10), 10);
        for (int p = 0; p <= 10; ++p) CHECK(limit_moment(MFixed{bb, mm}, p, tables) == m.m(p));
    }
}

TEST_CASE("densities and atoms") {
    // semicircle(1, 1/4): support [0, 2]
    DistributionSpec sc = Semicircle{Rational(1), Rational(1, 4)};
    auto [lo, hi] = support(sc);
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(2.0));
    CHECK(density(sc, -0.01) == 0.0);
    CHECK(density(sc, 2.01) == 0.0);
    CHECK(atoms(sc).empty());

    DistributionSpec fp = FreePoisson{Rational(1, 2), Rational(1)};
    auto at = atoms(fp);
    REQUIRE(at.size() == 1);
    CHECK(at[0].location == 0.0);
    CHECK(at[0].mass == doctest::Approx(0.5));
    CHECK(atoms(FreePoisson{Rational(3, 2), Rational(1)}).empty());

    // quadrature oracle: second moment of SC_{0,1} is 1, total mass 1
    DistributionSpec std_sc = Semicircle{Rational(0), Rational(1)};
    auto second = oracles::simpson([&](double x) { return x * x * density(std_sc, x); }, -2, 2,
                                   200000);
    CHECK(second == doctest::Approx(1.0).epsilon(1e-6));
    auto mass = oracles::simpson([&](double x) { return density(std_sc, x); }, -2, 2, 200000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));

    // free Poisson continuous mass complements the atom
    auto [plo, phi] = support(fp);
    auto pmass = oracles::simpson([&](double x) { return density(fp, x); }, plo, phi, 200000);
    CHECK(pmass == doctest::Approx(0.5).epsilon(1e-4));
}
