// Meanders of order q: pairs (upper, lower) of noncrossing pair-partitions
// of [2q], one arc system above the line and one below. The number of
// closed loops is computed two ways:
//
//  (1) direct tracing: from each unvisited bridge alternate upper and lower
//      arcs until the loop closes;
//  (2) through the symmetric group: unfatten the two arc systems to
//      noncrossing partitions, interleave their Biane permutations on odd
//      and even positions, and count cycles of pi^{-1} (tau1 (+) tau2).
//
// Route (2) is the geodesic picture behind the l-fixed moment formula; the
// two routes must agree configuration by configuration, and the resulting
// polynomial must match the geodesic moment sum computed by freeprob.
//
// Fattening NC(q) -> NC_2(2q): each i in [q] doubles into i_- = 2i-1 (left)
// and i_+ = 2i (right); i_+ is paired with (t(tau)(i))_-.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ptmoments/rational.hpp"
#include "ptmoments/setpartition.hpp"

namespace ptmoments {

inline constexpr int kMeanderCeiling = 8;

/// Partner array representation of a pair-partition of [2q]:
/// partner[i] = the element paired with i (1-based, partner[0] unused).
inline std::vector<int> pairing_partner_array(const SetPartition& pp, int two_q) {
    if (pp.size() != two_q)
        throw std::invalid_argument("pair-partition does not cover [2q]");
    std::vector<int> partner(static_cast<std::size_t>(two_q) + 1, 0);
    for (const auto& b : pp.blocks) {
        if (b.size() != 2)
            throw std::invalid_argument("pair-partition has a block of size != 2");
        partner[static_cast<std::size_t>(b[0])] = b[1];
        partner[static_cast<std::size_t>(b[1])] = b[0];
    }
    for (int i = 1; i <= two_q; ++i)
        if (partner[static_cast<std::size_t>(i)] == 0)
            throw std::invalid_argument("pair-partition does not cover [2q]");
    return partner;
}

struct MeanderConfig {
    int q = 0;
    NoncrossingPartition upper;  // in NC_2(2q)
    NoncrossingPartition lower;  // in NC_2(2q)

    MeanderConfig(int order, NoncrossingPartition up, NoncrossingPartition low)
        : q(order), upper(std::move(up)), lower(std::move(low)) {
        // partner-array construction validates the pair structure
        pairing_partner_array(upper, 2 * q);
        pairing_partner_array(lower, 2 * q);
    }
};

namespace detail {

/// Loop count by alternating arc tracing over raw partner arrays.
inline int meander_loops_traced(const std::vector<int>& up, const std::vector<int>& low,
                                int two_q) {
    std::uint32_t visited = 0;  // bit i-1 for point i; 2q <= 32 is ample
    int loops = 0;
    for (int start = 1; start <= two_q; ++start) {
        if (visited >> (start - 1) & 1u) continue;
        ++loops;
        int cur = start;
        do {
            visited |= 1u << (cur - 1);
            int over = up[static_cast<std::size_t>(cur)];
            visited |= 1u << (over - 1);
            cur = low[static_cast<std::size_t>(over)];
        } while (cur != start);
    }
    return loops;
}

}  // namespace detail

/// NC(q) -> NC_2(2q): pairs 2i with 2 t(i) - 1.
inline NoncrossingPartition fatten(const SetPartition& tau, int q) {
    if (tau.size() != q) throw std::invalid_argument("fatten: partition must cover [q]");
    Permutation t = cyclic_successor_permutation(tau, q);
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(q));
    for (int i = 1; i <= q; ++i) blocks.push_back({2 * i, 2 * t(i - 1) + 1});
    return NoncrossingPartition(std::move(blocks));
}

/// Inverse of fatten: recovers tau from the arc system.
inline NoncrossingPartition unfatten(const SetPartition& pairing, int q) {
    auto partner = pairing_partner_array(pairing, 2 * q);
    std::vector<int> images(static_cast<std::size_t>(q));
    for (int i = 1; i <= q; ++i) {
        int j = partner[static_cast<std::size_t>(2 * i)];
        if (j % 2 == 0)
            throw std::invalid_argument("unfatten: pairing joins two right copies");
        images[static_cast<std::size_t>(i - 1)] = (j + 1) / 2 - 1;
    }
    Permutation t(std::move(images));
    SetPartition sp;
    sp.blocks = t.cycles();
    sp.normalize();
    return NoncrossingPartition(std::move(sp));
}

/// Route (2): the cycle count of pi^{-1} (tau1 (+) tau2), with tau1 placed
/// on odd positions from the upper system and tau2 on even positions from
/// the lower system (the lower system enters through its Kreweras-type
/// complement u^{-1} pi_q, which is how the two banks glue).
inline int components_by_permutation(const MeanderConfig& cfg) {
    const int q = cfg.q;
    const int p = 2 * q;
    Permutation t1 = cyclic_successor_permutation(unfatten(cfg.upper, q), q);
    Permutation u = cyclic_successor_permutation(unfatten(cfg.lower, q), q);
    Permutation t2 = compose(u.inverse(), Permutation::full_cycle(q));
    std::vector<int> gamma(static_cast<std::size_t>(p));
    for (int i = 0; i < q; ++i) {
        gamma[static_cast<std::size_t>(2 * i)] = 2 * t1(i);          // odd positions (0-based even)
        gamma[static_cast<std::size_t>(2 * i + 1)] = 2 * t2(i) + 1;  // even positions
    }
    Permutation beta = compose(Permutation::full_cycle(p).inverse(), Permutation(std::move(gamma)));
    return beta.cycle_count();
}

/// Route (1): direct loop tracing.
inline int components_by_tracing(const MeanderConfig& cfg) {
    auto up = pairing_partner_array(cfg.upper, 2 * cfg.q);
    auto low = pairing_partner_array(cfg.lower, 2 * cfg.q);
    return detail::meander_loops_traced(up, low, 2 * cfg.q);
}

/// Number of closed loops; both computation routes are run and must agree.
inline int components(const MeanderConfig& cfg) {
    int traced = components_by_tracing(cfg);
    int via_perm = components_by_permutation(cfg);
    if (traced != via_perm)
        throw std::logic_error("meander components: tracing and permutation routes disagree");
    return traced;
}

struct MeanderTally {
    int q = 0;
    std::map<int, std::uint64_t> counts;  // k -> M_q^{(k)}

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [k, v] : counts) t += v;
        return t;
    }
};

/// All pairings in NC_2(2q) as partner arrays.
inline std::vector<std::vector<int>> enumerate_nc2_partners(int q) {
    std::vector<std::vector<int>> out;
    std::optional<std::set<int>> sizes{std::in_place, std::initializer_list<int>{2}};
    for_each_noncrossing(2 * q, sizes, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<int> partner(static_cast<std::size_t>(2 * q) + 1, 0);
        for (const auto& b : blocks) {
            partner[static_cast<std::size_t>(b[0])] = b[1];
            partner[static_cast<std::size_t>(b[1])] = b[0];
        }
        out.push_back(std::move(partner));
    });
    return out;
}

/// Exhaustive loop-count tally over NC_2(2q) x NC_2(2q).
inline MeanderTally meander_tally(int q, int ceiling = kMeanderCeiling) {
    if (q < 1) throw std::invalid_argument("meander_tally: q must be >= 1");
    if (q > ceiling)
        throw std::invalid_argument("meander_tally: q=" + std::to_string(q) +
                                    " exceeds the ceiling " + std::to_string(ceiling));
    auto pairings = enumerate_nc2_partners(q);
    MeanderTally tally;
    tally.q = q;
    for (const auto& up : pairings)
        for (const auto& low : pairings)
            ++tally.counts[detail::meander_loops_traced(up, low, 2 * q)];
    return tally;
}

/// M_q(x) = sum_k x^k M_q^{(k)}.
inline Rational meander_polynomial(const MeanderTally& tally, const Rational& x) {
    Rational sum = 0;
    for (const auto& [k, count] : tally.counts) sum += Rational(count) * pow_rational(x, k);
    return sum;
}

inline Rational meander_polynomial(int q, const Rational& x, int ceiling = kMeanderCeiling) {
    return meander_polynomial(meander_tally(q, ceiling), x);
}

}  // namespace ptmoments
