// Set partitions, the noncrossing predicate, and Biane's bijection between
// noncrossing partitions of [p] and the geodesic id -> (1,2,...,p).
//
// A partition is stored as blocks of 1-based labels, each block sorted,
// blocks ordered by their minima. The ground set may be any finite set of
// positive integers (the meander bridge needs NC over odd/even positions);
// "noncrossing" is always meant with respect to the natural order of the
// labels that are present.
//
// Enumeration of NC is by the recursive first-block construction: the block
// containing the smallest label splits the remaining labels into independent
// gaps. This visits each noncrossing partition exactly once and never builds
// a crossing candidate, so the work is Catalan-sized rather than Bell-sized.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ptmoments/permutation.hpp"

namespace ptmoments {

struct SetPartition {
    std::vector<std::vector<int>> blocks;

    SetPartition() = default;
    explicit SetPartition(std::vector<std::vector<int>> b) : blocks(std::move(b)) {
        normalize();
        validate();
    }

    /// Union of the blocks, ascending.
    std::vector<int> ground_set() const {
        std::vector<int> g;
        for (const auto& b : blocks) g.insert(g.end(), b.begin(), b.end());
        std::sort(g.begin(), g.end());
        return g;
    }

    int size() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }

    int block_count() const { return static_cast<int>(blocks.size()); }

    bool operator==(const SetPartition& o) const { return blocks == o.blocks; }
    bool operator<(const SetPartition& o) const { return blocks < o.blocks; }

    void normalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
    }

    void validate() const {
        std::set<int> seen;
        for (const auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("SetPartition: empty block");
            for (int x : b) {
                if (x < 1) throw std::invalid_argument("SetPartition: labels must be >= 1");
                if (!seen.insert(x).second)
                    throw std::invalid_argument("SetPartition: blocks are not disjoint");
            }
        }
    }
};

/// True iff no a<b<c<d has a,c in one block and b,d in a different one.
inline bool is_noncrossing(const SetPartition& t) {
    const auto ground = t.ground_set();
    std::vector<int> block_of;  // indexed by position in `ground`
    block_of.reserve(ground.size());
    for (int x : ground) {
        for (std::size_t bi = 0; bi < t.blocks.size(); ++bi) {
            if (std::binary_search(t.blocks[bi].begin(), t.blocks[bi].end(), x)) {
                block_of.push_back(static_cast<int>(bi));
                break;
            }
        }
    }
    // Stack scan over positions: a block interrupted by a different open block
    // must be fully nested inside it.
    std::vector<int> stack;
    std::vector<int> remaining(t.blocks.size());
    for (std::size_t bi = 0; bi < t.blocks.size(); ++bi)
        remaining[bi] = static_cast<int>(t.blocks[bi].size());
    for (int b : block_of) {
        if (!stack.empty() && stack.back() == b) {
            // continuing the innermost open block
        } else {
            if (std::find(stack.begin(), stack.end(), b) != stack.end())
                return false;  // reopened a block that was interrupted
            stack.push_back(b);
        }
        if (--remaining[static_cast<std::size_t>(b)] == 0) {
            if (stack.back() != b) return false;
            stack.pop_back();
        }
    }
    return true;
}

/// A SetPartition that has been checked to be noncrossing.
struct NoncrossingPartition : SetPartition {
    NoncrossingPartition() = default;
    explicit NoncrossingPartition(SetPartition p) : SetPartition(std::move(p)) {
        if (!is_noncrossing(*this))
            throw std::invalid_argument("NoncrossingPartition: partition has a crossing");
    }
    explicit NoncrossingPartition(std::vector<std::vector<int>> b)
        : NoncrossingPartition(SetPartition(std::move(b))) {}
};

namespace detail {

// Recursive first-block generator over an ordered label vector.
// `sizes`: if set, only blocks whose cardinality is in the set are allowed.
// An even-only size restriction lets us prune odd-sized gaps early.
inline bool sizes_all_even(const std::set<int>& sizes) {
    for (int s : sizes)
        if (s % 2 != 0) return false;
    return true;
}

using NCVisitor = std::function<bool(const std::vector<std::vector<int>>&)>;

inline bool nc_generate(const std::vector<int>& labels, const std::optional<std::set<int>>& sizes,
                        bool even_only, std::vector<std::vector<int>>& acc, const NCVisitor& fn) {
    if (labels.empty()) return fn(acc);
    if (even_only && labels.size() % 2 != 0) return true;  // dead branch

    // choose the rest of the block containing labels[0]
    std::vector<int> block{labels[0]};
    std::vector<std::size_t> picks;  // indices into labels (>=1) forming the block

    std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
        // current block is complete: recurse on the gaps it carves out
        if (!sizes || sizes->count(static_cast<int>(block.size()))) {
            std::vector<std::vector<int>> gaps;
            bool feasible = true;
            for (std::size_t k = 0; k <= picks.size(); ++k) {
                std::size_t lo = (k == 0) ? 1 : picks[k - 1] + 1;
                std::size_t hi = (k == picks.size()) ? labels.size() : picks[k];
                gaps.emplace_back(labels.begin() + static_cast<std::ptrdiff_t>(lo),
                                  labels.begin() + static_cast<std::ptrdiff_t>(hi));
                if (even_only && gaps.back().size() % 2 != 0) feasible = false;
            }
            if (feasible) {
                acc.push_back(block);
                std::function<bool(std::size_t)> rec_gaps = [&](std::size_t gi) -> bool {
                    if (gi == gaps.size()) return fn(acc);
                    return nc_generate(gaps[gi], sizes, even_only, acc,
                                       [&](const std::vector<std::vector<int>>&) {
                                           return rec_gaps(gi + 1);
                                       });
                };
                bool keep_going = rec_gaps(0);
                acc.pop_back();
                if (!keep_going) return false;
            }
        }
        // extend the block with a further element
        for (std::size_t i = from; i < labels.size(); ++i) {
            if (sizes && static_cast<int>(block.size()) >= *sizes->rbegin()) break;
            block.push_back(labels[i]);
            picks.push_back(i);
            if (!choose(i + 1)) return false;
            picks.pop_back();
            block.pop_back();
        }
        return true;
    };
    return choose(1);
}

}  // namespace detail

/// Visits every noncrossing partition of `labels` (ascending label vector),
/// optionally restricted to block sizes in `allowed_sizes`. `fn` may return
/// bool (false stops the enumeration) or void.
template <typename Fn>
void for_each_noncrossing(const std::vector<int>& labels,
                          const std::optional<std::set<int>>& allowed_sizes, Fn&& fn) {
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    bool even_only = allowed_sizes && detail::sizes_all_even(*allowed_sizes);
    std::vector<std::vector<int>> acc;
    detail::NCVisitor wrap = [&fn](const std::vector<std::vector<int>>& blocks) -> bool {
        if constexpr (std::is_same_v<decltype(fn(blocks)), bool>) {
            return fn(blocks);
        } else {
            fn(blocks);
            return true;
        }
    };
    detail::nc_generate(sorted, allowed_sizes, even_only, acc, wrap);
}

template <typename Fn>
void for_each_noncrossing(int p, const std::optional<std::set<int>>& allowed_sizes, Fn&& fn) {
    std::vector<int> labels(static_cast<std::size_t>(p));
    std::iota(labels.begin(), labels.end(), 1);
    for_each_noncrossing(labels, allowed_sizes, std::forward<Fn>(fn));
}

/// Materialized NC(p) (or NC restricted to allowed block sizes).
inline std::vector<SetPartition> enumerate_nc(
    int p, const std::optional<std::set<int>>& allowed_sizes = std::nullopt) {
    std::vector<SetPartition> out;
    for_each_noncrossing(p, allowed_sizes, [&](const std::vector<std::vector<int>>& blocks) {
        SetPartition sp;
        sp.blocks = blocks;
        sp.normalize();
        out.push_back(std::move(sp));
    });
    return out;
}

/// Sends each element of a block to the cyclically next element of the same
/// block, as a permutation of [ambient_p] fixing everything off the ground
/// set. The cyclic order is the sorted order of the partition's own labels.
inline Permutation cyclic_successor_permutation(const SetPartition& t, int ambient_p) {
    std::vector<int> im(static_cast<std::size_t>(ambient_p));
    std::iota(im.begin(), im.end(), 0);
    for (const auto& b : t.blocks) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            int from = b[j], to = b[(j + 1) % b.size()];
            if (from > ambient_p)
                throw std::invalid_argument("cyclic_successor_permutation: label beyond degree");
            im[static_cast<std::size_t>(from - 1)] = to - 1;
        }
    }
    return Permutation(std::move(im));
}

/// Biane's map t(tau) for tau a noncrossing partition of [p].
inline Permutation biane_t(const SetPartition& t) {
    const auto ground = t.ground_set();
    const int p = t.size();
    for (int i = 0; i < p; ++i)
        if (ground[static_cast<std::size_t>(i)] != i + 1)
            throw std::invalid_argument("biane_t: partition must cover [p]");
    return cyclic_successor_permutation(t, p);
}

/// Inverse of biane_t. Requires s on the geodesic id -> pi (checked); the
/// blocks of the result are the orbits of s.
inline NoncrossingPartition biane_inverse(const Permutation& s) {
    const int p = s.degree();
    if (p < 1) throw std::invalid_argument("biane_inverse: degree must be >= 1");
    if (genus(s, 2) != 0)
        throw std::invalid_argument("biane_inverse: permutation is not on the geodesic id -> pi");
    SetPartition sp;
    sp.blocks = s.cycles();
    sp.normalize();
    return NoncrossingPartition(std::move(sp));
}

/// Number of blocks of even cardinality (the statistic e(.)).
inline int even_block_count(const SetPartition& t) {
    int e = 0;
    for (const auto& b : t.blocks)
        if (b.size() % 2 == 0) ++e;
    return e;
}

}  // namespace ptmoments
