// Moment-cumulant calculus over noncrossing partitions, the named limit
// distributions (semicircle, free Poisson, free difference of free
// Poissons), and the limit-moment formulas of the three asymptotic regimes:
//
//   regime1(a)       sum over NC_{1,2}(p) of a^{#pairs}          (l ~ mn)
//   l_fixed(l0,c)    geodesic sum pi^{-1} -> alpha -> pi          (l fixed)
//   pure_state(c)    l_fixed with l0 = 1
//   m_fixed(b,m0)    sum over NC(p) of b^{#tau} m0^{e(tau)}       (m fixed)
//
// The geodesic sum is evaluated from the class-count table slice
// |pi alpha| + |pi^-1 alpha| = p-2: that slice is exactly the geodesic
// pi^{-1} -> pi, and the table already carries (#alpha, #pi alpha). The
// meanders module computes the same polynomial from loop tracing and serves
// as the independent cross-check.

#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ptmoments/classtable.hpp"
#include "ptmoments/rational.hpp"
#include "ptmoments/setpartition.hpp"

namespace ptmoments {

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// k_1, k_2, ..., k_P.
struct CumulantSequence {
    std::vector<Rational> values;

    int max_order() const { return static_cast<int>(values.size()); }
    const Rational& k(int p) const {
        if (p < 1 || p > max_order())
            throw std::out_of_range("CumulantSequence: index " + std::to_string(p));
        return values[static_cast<std::size_t>(p - 1)];
    }
};

/// m_0 = 1, m_1, ..., m_P.
struct MomentSequence {
    std::vector<Rational> values{Rational(1)};

    int max_order() const { return static_cast<int>(values.size()) - 1; }
    const Rational& m(int p) const {
        if (p < 0 || p > max_order())
            throw std::out_of_range("MomentSequence: index " + std::to_string(p));
        return values[static_cast<std::size_t>(p)];
    }
};

/// m_p = sum over NC(p) of prod_{blocks} k_{|b|}.
inline MomentSequence moments_from_cumulants(const CumulantSequence& k, int P) {
    if (P < 0) throw std::invalid_argument("moments_from_cumulants: P must be >= 0");
    if (k.max_order() < P)
        throw std::invalid_argument("moments_from_cumulants: need cumulants up to order P");
    MomentSequence m;
    for (int p = 1; p <= P; ++p) {
        Rational mp = 0;
        for_each_noncrossing(p, std::nullopt, [&](const std::vector<std::vector<int>>& blocks) {
            Rational prod = 1;
            for (const auto& b : blocks) prod *= k.k(static_cast<int>(b.size()));
            mp += prod;
        });
        m.values.push_back(std::move(mp));
    }
    return m;
}

/// Triangular inversion: k_p = m_p - (all NC(p) terms with more than one block).
inline CumulantSequence cumulants_from_moments(const MomentSequence& m, int P) {
    if (P < 0) throw std::invalid_argument("cumulants_from_moments: P must be >= 0");
    if (m.max_order() < P)
        throw std::invalid_argument("cumulants_from_moments: need moments up to order P");
    CumulantSequence k;
    for (int p = 1; p <= P; ++p) {
        Rational lower = 0;
        for_each_noncrossing(p, std::nullopt, [&](const std::vector<std::vector<int>>& blocks) {
            if (blocks.size() == 1) return;  // the k_p term itself
            Rational prod = 1;
            for (const auto& b : blocks) prod *= k.k(static_cast<int>(b.size()));
            lower += prod;
        });
        k.values.push_back(m.m(p) - lower);
    }
    return k;
}

// ---------------------------------------------------------------------------
// Distribution specs
// ---------------------------------------------------------------------------

struct Semicircle {
    Rational mean;
    Rational variance;  // sigma^2
};
struct FreePoisson {
    Rational rate;       // lambda >= 0
    Rational jump_size;  // alpha
};
struct FreeDifference {
    Rational x;  // rates of the two free Poissons (jump size 1)
    Rational y;
};
struct Regime1 {
    Rational a;  // mn/l -> a
};
struct LFixed {
    Rational l0;  // environment dimension, fixed
    Rational c;   // m/n -> c
};
struct PureStateLimit {
    Rational c;  // the l0 = 1 case
};
struct MFixed {
    Rational b;   // l/n -> b
    Rational m0;  // fixed system part
};

using DistributionSpec =
    std::variant<Semicircle, FreePoisson, FreeDifference, Regime1, LFixed, PureStateLimit, MFixed>;

inline void validate(const DistributionSpec& spec) {
    if (const auto* sc = std::get_if<Semicircle>(&spec)) {
        if (sc->variance < 0) throw std::invalid_argument("semicircle: variance must be >= 0");
    } else if (const auto* fp = std::get_if<FreePoisson>(&spec)) {
        if (fp->rate < 0) throw std::invalid_argument("free_poisson: rate must be >= 0");
    }
}

/// Closed-form free cumulants of the named distributions.
inline CumulantSequence named_cumulants(const DistributionSpec& spec, int P) {
    validate(spec);
    CumulantSequence k;
    if (const auto* sc = std::get_if<Semicircle>(&spec)) {
        for (int r = 1; r <= P; ++r)
            k.values.push_back(r == 1 ? sc->mean : (r == 2 ? sc->variance : Rational(0)));
    } else if (const auto* fp = std::get_if<FreePoisson>(&spec)) {
        for (int r = 1; r <= P; ++r) k.values.push_back(fp->rate * pow_rational(fp->jump_size, r));
    } else if (const auto* fd = std::get_if<FreeDifference>(&spec)) {
        // X - Y with X,Y free Poisson, jump size 1: k_r = x + (-1)^r y
        for (int r = 1; r <= P; ++r)
            k.values.push_back(r % 2 == 0 ? Rational(fd->x + fd->y) : Rational(fd->x - fd->y));
    } else if (const auto* mf = std::get_if<MFixed>(&spec)) {
        for (int r = 1; r <= P; ++r) k.values.push_back(r % 2 == 0 ? mf->b * mf->m0 : mf->b);
    } else {
        throw std::invalid_argument("named_cumulants: no closed-form cumulants for this spec");
    }
    return k;
}

namespace detail {

inline Rational regime1_moment(const Rational& a, int p) {
    Rational sum = 0;
    std::optional<std::set<int>> sizes{std::in_place, std::initializer_list<int>{1, 2}};
    for_each_noncrossing(p, sizes, [&](const std::vector<std::vector<int>>& blocks) {
        int pairs = 0;
        for (const auto& b : blocks) pairs += (b.size() == 2);
        sum += pow_rational(a, pairs);
    });
    return sum;
}

inline Rational m_fixed_moment(const Rational& b, const Rational& m0, int p) {
    Rational sum = 0;
    for_each_noncrossing(p, std::nullopt, [&](const std::vector<std::vector<int>>& blocks) {
        int evens = 0;
        for (const auto& blk : blocks) evens += (blk.size() % 2 == 0);
        sum += pow_rational(b, static_cast<int>(blocks.size())) * pow_rational(m0, evens);
    });
    return sum;
}

/// Geodesic sum over pi^{-1} -> alpha -> pi of l0^{#alpha} c^{#(pi alpha)-1}.
/// Table keys satisfy b + c = p - 2 exactly on that geodesic.
inline Rational l_fixed_moment(const Rational& l0, const Rational& c, int p, TableStore& tables,
                               unsigned threads, int ceiling) {
    if (p % 2 != 0) return 0;  // all odd moments vanish
    const ClassCountTable& table = tables.get(p, threads, ceiling);
    Rational sum = 0;
    for (const auto& [key, count] : table.entries) {
        auto [a, b, cdist] = key;
        if (b + cdist != p - 2) continue;
        sum += Rational(count) * pow_rational(l0, p - a) * pow_rational(c, p - b - 1);
    }
    return sum;
}

}  // namespace detail

/// p-th moment of the limiting law of the given regime (p = 0 gives 1).
/// l_fixed / pure_state_limit need S_p data and hence a table store.
inline Rational limit_moment(const DistributionSpec& spec, int p, TableStore& tables,
                             unsigned threads = 0, int ceiling = kClassTableCeiling) {
    if (p < 0) throw std::invalid_argument("limit_moment: p must be >= 0");
    if (p == 0) return 1;
    if (const auto* r1 = std::get_if<Regime1>(&spec)) return detail::regime1_moment(r1->a, p);
    if (const auto* lf = std::get_if<LFixed>(&spec)) {
        if (denominator(lf->l0) != 1 || lf->l0 < 1)
            throw std::invalid_argument("l_fixed: l0 must be a positive integer");
        return detail::l_fixed_moment(lf->l0, lf->c, p, tables, threads, ceiling);
    }
    if (const auto* ps = std::get_if<PureStateLimit>(&spec))
        return detail::l_fixed_moment(Rational(1), ps->c, p, tables, threads, ceiling);
    if (const auto* mf = std::get_if<MFixed>(&spec)) return detail::m_fixed_moment(mf->b, mf->m0, p);
    throw std::invalid_argument("limit_moment: spec has no direct limit-moment formula");
}

// ---------------------------------------------------------------------------
// Densities (the only floating-point surface of this module)
// ---------------------------------------------------------------------------

struct Atom {
    double location;
    double mass;
};

/// Point masses carried by the law (empty when absolutely continuous).
inline std::vector<Atom> atoms(const DistributionSpec& spec) {
    validate(spec);
    if (const auto* fp = std::get_if<FreePoisson>(&spec)) {
        double lambda = to_double(fp->rate);
        if (lambda < 1.0) return {{0.0, 1.0 - lambda}};
        return {};
    }
    if (std::holds_alternative<Semicircle>(spec)) return {};
    throw std::invalid_argument("atoms: density only available for semicircle / free_poisson");
}

/// Density of the absolutely continuous part at x (zero off support).
inline double density(const DistributionSpec& spec, double x) {
    validate(spec);
    const double pi_const = 3.14159265358979323846;
    if (const auto* sc = std::get_if<Semicircle>(&spec)) {
        double M = to_double(sc->mean), var = to_double(sc->variance);
        if (var == 0.0) return 0.0;  // degenerate: point mass at M
        double disc = 4.0 * var - (x - M) * (x - M);
        if (disc <= 0.0) return 0.0;
        return std::sqrt(disc) / (2.0 * pi_const * var);
    }
    if (const auto* fp = std::get_if<FreePoisson>(&spec)) {
        double lambda = to_double(fp->rate), alpha = to_double(fp->jump_size);
        if (alpha == 0.0 || lambda == 0.0) return 0.0;  // pure atom at 0
        if (x == 0.0) return 0.0;
        double disc = 4.0 * lambda * alpha * alpha -
                      (x - alpha * (1.0 + lambda)) * (x - alpha * (1.0 + lambda));
        if (disc <= 0.0) return 0.0;
        double d = std::sqrt(disc) / (2.0 * pi_const * alpha * x);
        return d > 0.0 ? d : 0.0;
    }
    throw std::invalid_argument("density: only semicircle / free_poisson have densities here");
}

/// Support endpoints of the continuous part, [lo, hi].
inline std::pair<double, double> support(const DistributionSpec& spec) {
    if (const auto* sc = std::get_if<Semicircle>(&spec)) {
        double M = to_double(sc->mean), s = std::sqrt(to_double(sc->variance));
        return {M - 2 * s, M + 2 * s};
    }
    if (const auto* fp = std::get_if<FreePoisson>(&spec)) {
        double lambda = to_double(fp->rate), alpha = to_double(fp->jump_size);
        double lo = alpha * (1 - std::sqrt(lambda)) * (1 - std::sqrt(lambda));
        double hi = alpha * (1 + std::sqrt(lambda)) * (1 + std::sqrt(lambda));
        return alpha >= 0 ? std::make_pair(lo, hi) : std::make_pair(hi, lo);
    }
    throw std::invalid_argument("support: only semicircle / free_poisson");
}

}  // namespace ptmoments
