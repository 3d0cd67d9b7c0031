// Exact finite-(l,m,n) moments of the rescaled partial transpose mn*rho^G
// of a random induced state, by summation over the symmetric group:
//
//   E Z^(p)  =  F(lmn,p) * sum_alpha  l^{-|alpha|} m^{p-1-|pi alpha|} n^{p-1-|pi^-1 alpha|}
//   F(D,p)   =  prod_{i=0}^{p-1} D/(D+i)
//
// The sum factors through the class-count table, so after one table build a
// whole (l,m,n) sweep is cheap. Mixed moments (products of traces over a
// cycle type theta) use the same kernel with tau of type theta in place of
// pi; the value only depends on theta, so the canonical representative with
// consecutive cycles (1..t1)(t1+1..t1+t2)... is used.
//
// Everything here returns exact rationals; there is no floating point on
// these paths.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "ptmoments/classtable.hpp"
#include "ptmoments/rational.hpp"

namespace ptmoments {

/// F(D,p) = prod_{i=0}^{p-1} D/(D+i); equals 1 for p in {0,1}.
inline Rational f_factor(std::int64_t D, int p) {
    if (D < 1) throw std::invalid_argument("f_factor: D must be >= 1");
    if (p < 0) throw std::invalid_argument("f_factor: p must be >= 0");
    Rational r = 1;
    for (int i = 0; i < p; ++i) r *= Rational(D, D + i);
    return r;
}

struct MixedMomentSpec {
    std::vector<int> cycle_type;  // theta_1, ..., theta_l, each >= 1

    int total() const { return std::accumulate(cycle_type.begin(), cycle_type.end(), 0); }

    void validate() const {
        if (cycle_type.empty()) throw std::invalid_argument("MixedMomentSpec: empty cycle type");
        for (int t : cycle_type)
            if (t < 1) throw std::invalid_argument("MixedMomentSpec: cycle lengths must be >= 1");
    }

    /// Cycles laid out consecutively: (1..t1)(t1+1..t1+t2)...
    Permutation canonical_tau() const {
        validate();
        const int p = total();
        std::vector<int> im(static_cast<std::size_t>(p));
        int base = 0;
        for (int t : cycle_type) {
            for (int j = 0; j < t; ++j) im[static_cast<std::size_t>(base + j)] = base + (j + 1) % t;
            base += t;
        }
        return Permutation(std::move(im));
    }
};

inline void check_dims(std::int64_t l, std::int64_t m, std::int64_t n) {
    if (l < 1 || m < 1 || n < 1)
        throw std::invalid_argument("dimensions l, m, n must be positive");
}

/// E Z^(p), evaluated from a prebuilt table.
inline Rational expected_moment(std::int64_t l, std::int64_t m, std::int64_t n,
                                const ClassCountTable& table) {
    check_dims(l, m, n);
    const int p = table.p;
    Rational sum = 0;
    for (const auto& [key, count] : table.entries) {
        auto [a, b, c] = key;
        Rational term = pow_rational(Rational(l), -a) * pow_rational(Rational(m), p - 1 - b) *
                        pow_rational(Rational(n), p - 1 - c);
        sum += Rational(count) * term;
    }
    return f_factor(l * m * n, p) * sum;
}

inline Rational expected_moment(std::int64_t l, std::int64_t m, std::int64_t n, int p,
                                TableStore& tables, unsigned threads = 0,
                                int ceiling = kClassTableCeiling) {
    if (p < 1) throw std::invalid_argument("expected_moment: p must be >= 1");
    return expected_moment(l, m, n, tables.get(p, threads, ceiling));
}

/// E prod_i trace[(mn rho^G)^{theta_i}].
inline Rational expected_mixed_moment(std::int64_t l, std::int64_t m, std::int64_t n,
                                      const MixedMomentSpec& spec, unsigned threads = 0,
                                      int ceiling = kClassTableCeiling) {
    check_dims(l, m, n);
    const int p = spec.total();
    ClassCountTable table = build_triple_length_table(spec.canonical_tau(), threads, ceiling);
    Rational sum = 0;
    for (const auto& [key, count] : table.entries) {
        auto [a, b, c] = key;
        Rational term = pow_rational(Rational(l), -a) * pow_rational(Rational(m), p - b) *
                        pow_rational(Rational(n), p - c);
        sum += Rational(count) * term;
    }
    return f_factor(l * m * n, p) * sum;
}

/// Var Z^(p) = (mn)^{-2} E[trace^2 via theta=(p,p)] - (E Z^(p))^2.
inline Rational variance(std::int64_t l, std::int64_t m, std::int64_t n, int p,
                         TableStore& tables, unsigned threads = 0,
                         int ceiling = kClassTableCeiling) {
    if (p < 1) throw std::invalid_argument("variance: p must be >= 1");
    MixedMomentSpec pair{{p, p}};
    Rational second = expected_mixed_moment(l, m, n, pair, threads, ceiling);
    Rational first = expected_moment(l, m, n, p, tables, threads, ceiling);
    Rational mn2 = Rational(m) * Rational(n);
    return second / (mn2 * mn2) - first * first;
}

/// (1/mn) E trace[(mn rho^G - I)^p], by binomial expansion into E Z^(k).
inline Rational centered_moment(std::int64_t l, std::int64_t m, std::int64_t n, int p,
                                TableStore& tables, unsigned threads = 0,
                                int ceiling = kClassTableCeiling) {
    if (p < 0) throw std::invalid_argument("centered_moment: p must be >= 0");
    Rational sum = 0;
    for (int k = 0; k <= p; ++k) {
        Rational zk = (k == 0) ? Rational(1) : expected_moment(l, m, n, k, tables, threads, ceiling);
        Rational coeff = Rational(binomial_big(static_cast<unsigned>(p), static_cast<unsigned>(k)));
        if ((p - k) % 2 != 0) coeff = -coeff;
        sum += coeff * zk;
    }
    return sum;
}

/// One stratum of the genus expansion (moment3.1 regrouping):
/// term = (mn/l)^{|alpha|} m^{-2 g1} n^{-2 g2}, count permutations share it.
struct GenusStratum {
    int alpha_length = 0;
    int g1 = 0;
    int g2 = 0;
    std::uint64_t count = 0;
    Rational term;
};

inline std::vector<GenusStratum> genus_expansion(std::int64_t l, std::int64_t m, std::int64_t n,
                                                 int p, TableStore& tables, unsigned threads = 0,
                                                 int ceiling = kClassTableCeiling) {
    check_dims(l, m, n);
    if (p < 1) throw std::invalid_argument("genus_expansion: p must be >= 1");
    const ClassCountTable& table = tables.get(p, threads, ceiling);
    // 2 g1 = a + b - (p-1), 2 g2 = a + c - (p-1); several (a,b,c) keys can
    // land in one stratum, so accumulate counts.
    std::map<std::tuple<int, int, int>, std::uint64_t> strata;
    for (const auto& [key, count] : table.entries) {
        auto [a, b, c] = key;
        int g1_twice = a + b - (p - 1);
        int g2_twice = a + c - (p - 1);
        if (g1_twice < 0 || g1_twice % 2 != 0 || g2_twice < 0 || g2_twice % 2 != 0)
            throw std::logic_error("genus_expansion: invalid genus stratum");
        strata[{a, g1_twice / 2, g2_twice / 2}] += count;
    }
    std::vector<GenusStratum> out;
    Rational mn_over_l = Rational(m) * Rational(n) / Rational(l);
    for (const auto& [key, count] : strata) {
        auto [a, g1, g2] = key;
        GenusStratum s;
        s.alpha_length = a;
        s.g1 = g1;
        s.g2 = g2;
        s.count = count;
        s.term = pow_rational(mn_over_l, a) * pow_rational(Rational(m), -2 * g1) *
                 pow_rational(Rational(n), -2 * g2);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ptmoments
