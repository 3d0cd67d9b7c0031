// Harer-Zagier numbers and the inequality suite used by the high-moment
// bound.
//
// eps_g(n) counts fixed-point-free involutions of [2n] with genus g, where
// 2 g(alpha) = |alpha| + |alpha^{-1} pi| - 2n + 1 for pi = (1,2,...,2n).
// They satisfy the recursion
//
//   (n+1) eps_g(n) = 2(2n-1) eps_g(n-1) + (2n-1)(n-1)(2n-3) eps_{g-1}(n-2)
//
// with eps_0(n) = Cat_n; the recursion forces eps_g = 0 for g < 0 or n < 0
// and eps_0(0) = 1. Direct enumeration of the (2n-1)!! pairings serves as
// the oracle for small n.
//
// The suite also checks two combinatorial bounds:
//   |T_{p,h}| <= 4^{p/2-1} p^{12h+5}   for the genus-sum strata of
//                                       fixed-point-free permutations, and
//   sum_k C(p,k) C(k,t) (-1)^{p-k} F(D,k) <= C(p,t) (p/sqrt(D))^{p-t}.
// The latter is compared exactly by squaring (the left side is rational and
// the inequality only needs care when the left side is positive).

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ptmoments/exactmoments.hpp"
#include "ptmoments/permutation.hpp"
#include "ptmoments/rational.hpp"

namespace ptmoments {

class HZTable {
public:
    const BigInt& epsilon(int g, int n) {
        if (g < 0 || n < 0) return zero_;
        auto key = std::make_pair(g, n);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        BigInt value;
        if (g == 0) {
            value = catalan_big(static_cast<unsigned>(n));
        } else {
            BigInt rhs = 2 * BigInt(2 * n - 1) * epsilon(g, n - 1) +
                         BigInt(2 * n - 1) * BigInt(n - 1) * BigInt(2 * n - 3) * epsilon(g - 1, n - 2);
            if (rhs % (n + 1) != 0)
                throw std::logic_error("HZ recursion: division by n+1 is not exact");
            value = rhs / (n + 1);
        }
        return memo_.emplace(key, std::move(value)).first->second;
    }

private:
    std::map<std::pair<int, int>, BigInt> memo_;
    BigInt zero_{0};
};

inline BigInt hz_epsilon(int g, int n) {
    HZTable t;
    return t.epsilon(g, n);
}

namespace detail {

template <typename Fn>
void for_each_pairing(std::vector<int>& partner, std::vector<bool>& used, int two_n, Fn&& fn) {
    int first = -1;
    for (int i = 0; i < two_n; ++i)
        if (!used[static_cast<std::size_t>(i)]) {
            first = i;
            break;
        }
    if (first < 0) {
        fn(const_cast<const std::vector<int>&>(partner));
        return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int j = first + 1; j < two_n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        used[static_cast<std::size_t>(j)] = true;
        partner[static_cast<std::size_t>(first)] = j;
        partner[static_cast<std::size_t>(j)] = first;
        for_each_pairing(partner, used, two_n, fn);
        used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
}

}  // namespace detail

/// Stratifies all fixed-point-free involutions of [2n] by genus.
/// Oracle for hz_epsilon; n <= 8 keeps (2n-1)!! manageable.
inline std::map<int, BigInt> enumerate_involutions_by_genus(int n, int ceiling = 8) {
    if (n < 1) throw std::invalid_argument("enumerate_involutions_by_genus: n must be >= 1");
    if (n > ceiling)
        throw std::invalid_argument("enumerate_involutions_by_genus: n exceeds ceiling " +
                                    std::to_string(ceiling));
    const int two_n = 2 * n;
    std::map<int, BigInt> out;
    std::vector<int> partner(static_cast<std::size_t>(two_n));
    std::vector<bool> used(static_cast<std::size_t>(two_n), false);
    int f[32];
    detail::for_each_pairing(partner, used, two_n, [&](const std::vector<int>& alpha) {
        // 2g = |alpha| + |alpha^{-1} pi| - 2n + 1 with |alpha| = n;
        // alpha^{-1} pi maps i -> alpha(i+1 mod 2n).
        for (int i = 0; i < two_n; ++i) f[i] = alpha[static_cast<std::size_t>((i + 1) % two_n)];
        int len = two_n - detail::cycle_count_map(f, two_n);
        int twice_g = n + len - two_n + 1;
        if (twice_g < 0 || twice_g % 2 != 0)
            throw std::logic_error("involution genus: parity violation");
        out[twice_g / 2] += 1;
    });
    return out;
}

/// Counts of fixed-point-free alpha in S_p by h = g^(1) + g^(2).
inline std::map<int, BigInt> stratum_counts(int p, int ceiling = 10) {
    if (p < 1) throw std::invalid_argument("stratum_counts: p must be >= 1");
    if (p > ceiling)
        throw std::invalid_argument("stratum_counts: p exceeds ceiling " + std::to_string(ceiling));
    std::map<int, BigInt> out;
    int f[32];
    for_each_permutation(p, [&](const std::vector<int>& alpha) {
        for (int i = 0; i < p; ++i)
            if (alpha[static_cast<std::size_t>(i)] == i) return;  // fixed point
        int a = p - detail::cycle_count_map(alpha.data(), p);
        for (int i = 0; i < p; ++i) f[i] = (alpha[static_cast<std::size_t>(i)] + 1) % p;
        int b = p - detail::cycle_count_map(f, p);  // |pi alpha|
        for (int i = 0; i < p; ++i) f[i] = (alpha[static_cast<std::size_t>(i)] + p - 1) % p;
        int c = p - detail::cycle_count_map(f, p);  // |pi^{-1} alpha|
        // h = g1 + g2 with 2g1 = a + b - (p-1), 2g2 = a + c - (p-1)
        int twice_h = 2 * a + b + c - 2 * (p - 1);
        if (twice_h < 0 || twice_h % 2 != 0)
            throw std::logic_error("stratum_counts: parity violation");
        out[twice_h / 2] += 1;
    });
    return out;
}

inline BigInt stratum_count(int p, int h, int ceiling = 10) {
    auto counts = stratum_counts(p, ceiling);
    auto it = counts.find(h);
    return it == counts.end() ? BigInt(0) : it->second;
}

/// |T_{p,h}| <= 4^{p/2-1} p^{12h+5}, evaluated exactly as 2^{p-2} p^{12h+5}.
inline bool cardinality_bound_holds(int p, int h, const BigInt& count) {
    if (p < 2) throw std::invalid_argument("cardinality_bound_holds: p must be >= 2");
    BigInt bound = pow_bigint(2, static_cast<unsigned>(p - 2)) *
                   pow_bigint(p, static_cast<unsigned>(12 * h + 5));
    return count <= bound;
}

struct Identity1Result {
    Rational lhs;      // sum_k C(p,k) C(k,t) (-1)^{p-k} F(D,k), exact
    double rhs;        // C(p,t) (p/sqrt(D))^{p-t}
    bool holds;        // lhs <= rhs, decided exactly
};

/// The alternating-sum bound. The comparison is exact: for lhs <= 0 it is
/// immediate, otherwise both sides are squared (rhs^2 is rational).
inline Identity1Result identity1_check(int p, int t, std::int64_t D) {
    if (p < 0 || t < 0) throw std::invalid_argument("identity1_check: p, t must be >= 0");
    if (D < 2) throw std::invalid_argument("identity1_check: D must be >= 2");
    Rational lhs = 0;
    for (int k = t; k <= p; ++k) {
        Rational term = Rational(binomial_big(static_cast<unsigned>(p), static_cast<unsigned>(k))) *
                        Rational(binomial_big(static_cast<unsigned>(k), static_cast<unsigned>(t))) *
                        f_factor(D, k);
        if ((p - k) % 2 != 0) term = -term;
        lhs += term;
    }
    Rational binom = Rational(binomial_big(static_cast<unsigned>(p), static_cast<unsigned>(t)));
    int q = p - t;
    bool holds;
    if (lhs <= 0) {
        holds = true;
    } else {
        // lhs^2 <= binom^2 p^{2q} / D^q
        Rational rhs_sq =
            binom * binom * pow_rational(Rational(p), 2 * q) / pow_rational(Rational(D), q);
        holds = lhs * lhs <= rhs_sq;
    }
    double rhs = to_double(binom) * std::pow(static_cast<double>(p) / std::sqrt(static_cast<double>(D)),
                                             q);
    return {lhs, rhs, holds};
}

/// eps_g(n) <= 4^{n-1} n^{3g}.
inline bool hzcor_check(int g, int n, HZTable& table) {
    if (g < 0 || n < 1) throw std::invalid_argument("hzcor_check: need g >= 0, n >= 1");
    BigInt bound = pow_bigint(4, static_cast<unsigned>(n - 1)) *
                   pow_bigint(n, static_cast<unsigned>(3 * g));
    return table.epsilon(g, n) <= bound;
}

inline bool hzcor_check(int g, int n) {
    HZTable t;
    return hzcor_check(g, n, t);
}

}  // namespace ptmoments
