// Permutations of [p] with the Cayley-graph metric generated by all
// transpositions.
//
// Conventions, fixed once and used everywhere:
//   * composition (a*b)(i) = a(b(i))            (b acts first)
//   * storage is 0-based one-line notation; printing is 1-based
//   * full_cycle(p) sends i to i+1 cyclically, i.e. (1,2,...,p)
//
// length(a) = p - cycle_count(a) is the minimal number of transpositions,
// dist(a,b) = length(inverse(a)*b), and the two genus functions measure the
// excess of the path id -> a -> pi^{-1} (resp. pi) over the direct geodesic.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptmoments/rational.hpp"

namespace ptmoments {

class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        validate();
    }

    static Permutation identity(int p) {
        check_degree(p);
        std::vector<int> im(static_cast<std::size_t>(p));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(unchecked{}, std::move(im));
    }

    /// The canonical full cycle (1,2,...,p): i -> i+1 mod p.
    static Permutation full_cycle(int p) {
        if (p < 1) throw std::invalid_argument("full_cycle: degree must be >= 1");
        std::vector<int> im(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) im[static_cast<std::size_t>(i)] = (i + 1) % p;
        return Permutation(unchecked{}, std::move(im));
    }

    /// Builds a permutation of [p] from disjoint cycles given with 1-based labels.
    static Permutation from_cycles(int p, const std::vector<std::vector<int>>& cycles) {
        check_degree(p);
        std::vector<int> im(static_cast<std::size_t>(p));
        std::iota(im.begin(), im.end(), 0);
        std::vector<bool> seen(static_cast<std::size_t>(p), false);
        for (const auto& cyc : cycles) {
            for (std::size_t j = 0; j < cyc.size(); ++j) {
                int from = cyc[j], to = cyc[(j + 1) % cyc.size()];
                if (from < 1 || from > p || to < 1 || to > p)
                    throw std::invalid_argument("from_cycles: label outside [p]");
                if (seen[static_cast<std::size_t>(from - 1)])
                    throw std::invalid_argument("from_cycles: repeated label");
                seen[static_cast<std::size_t>(from - 1)] = true;
                im[static_cast<std::size_t>(from - 1)] = to - 1;
            }
        }
        return Permutation(im);
    }

    int degree() const { return static_cast<int>(images_.size()); }

    /// Image of i, 0-based.
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }

    const std::vector<int>& images() const { return images_; }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (int i = 0; i < degree(); ++i) im[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
        return Permutation(unchecked{}, std::move(im));
    }

    int cycle_count() const {
        const int p = degree();
        std::uint64_t visited = 0;  // degrees beyond 64 are out of scope here
        if (p > 64) return cycle_count_large();
        int cycles = 0;
        for (int i = 0; i < p; ++i) {
            if (visited >> i & 1u) continue;
            ++cycles;
            int j = i;
            while (!(visited >> j & 1u)) {
                visited |= std::uint64_t(1) << j;
                j = images_[static_cast<std::size_t>(j)];
            }
        }
        return cycles;
    }

    int length() const { return degree() - cycle_count(); }

    /// Cycles as sorted-by-minimum lists, 1-based labels (fixed points included).
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> visited(images_.size(), false);
        for (int i = 0; i < degree(); ++i) {
            if (visited[static_cast<std::size_t>(i)]) continue;
            std::vector<int> cyc;
            int j = i;
            while (!visited[static_cast<std::size_t>(j)]) {
                visited[static_cast<std::size_t>(j)] = true;
                cyc.push_back(j + 1);
                j = images_[static_cast<std::size_t>(j)];
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    std::string cycle_string() const {
        std::string s;
        for (const auto& cyc : cycles()) {
            s += '(';
            for (std::size_t j = 0; j < cyc.size(); ++j) {
                if (j) s += ' ';
                s += std::to_string(cyc[j]);
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

private:
    struct unchecked {};
    Permutation(unchecked, std::vector<int> images) : images_(std::move(images)) {}

    static void check_degree(int p) {
        if (p < 0) throw std::invalid_argument("permutation degree must be >= 0");
    }

    void validate() const {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: images are not a bijection of [p]");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    int cycle_count_large() const {
        std::vector<bool> visited(images_.size(), false);
        int cycles = 0;
        for (int i = 0; i < degree(); ++i) {
            if (visited[static_cast<std::size_t>(i)]) continue;
            ++cycles;
            int j = i;
            while (!visited[static_cast<std::size_t>(j)]) {
                visited[static_cast<std::size_t>(j)] = true;
                j = images_[static_cast<std::size_t>(j)];
            }
        }
        return cycles;
    }

    std::vector<int> images_;

    friend Permutation compose(const Permutation&, const Permutation&);
};

inline void require_same_degree(const Permutation& a, const Permutation& b, const char* op) {
    if (a.degree() != b.degree())
        throw std::invalid_argument(std::string(op) + ": degree mismatch");
}

/// (a*b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    require_same_degree(a, b, "compose");
    std::vector<int> im(static_cast<std::size_t>(a.degree()));
    for (int i = 0; i < a.degree(); ++i) im[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(Permutation::unchecked{}, std::move(im));
}

inline Permutation inverse(const Permutation& a) { return a.inverse(); }
inline int cycle_count(const Permutation& a) { return a.cycle_count(); }
inline int length(const Permutation& a) { return a.length(); }

inline int distance(const Permutation& a, const Permutation& b) {
    require_same_degree(a, b, "distance");
    return compose(a.inverse(), b).length();
}

inline bool on_geodesic(const Permutation& a, const Permutation& b, const Permutation& c) {
    require_same_degree(a, b, "on_geodesic");
    require_same_degree(b, c, "on_geodesic");
    return distance(a, b) + distance(b, c) == distance(a, c);
}

/// Genus functions g_p^{(1)} (path through pi^{-1}) and g_p^{(2)} (through pi).
/// Always a nonnegative integer; the defining sum is even.
inline int genus(const Permutation& a, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("genus: which must be 1 or 2");
    const int p = a.degree();
    if (p < 1) throw std::invalid_argument("genus: degree must be >= 1");
    Permutation pi = Permutation::full_cycle(p);
    Permutation target = (which == 1) ? pi.inverse() : pi;
    int twice = distance(Permutation::identity(p), a) + distance(a, target) -
                distance(Permutation::identity(p), target);
    if (twice % 2 != 0) throw std::logic_error("genus: parity violation");
    return twice / 2;
}

// ---------------------------------------------------------------------------
// Deterministic enumeration of S_p in lexicographic one-line order, with
// explicit unranking so disjoint rank ranges partition the group exactly.
// ---------------------------------------------------------------------------

struct EnumerationRange {
    int p = 0;
    std::uint64_t start_rank = 0;
    std::uint64_t end_rank = 0;  // exclusive
};

/// One-line images (0-based) of the permutation at `rank` in lex order.
inline std::vector<int> unrank_permutation(int p, std::uint64_t rank) {
    if (p < 0) throw std::invalid_argument("unrank_permutation: negative degree");
    const std::uint64_t total = factorial_u64(static_cast<unsigned>(p));
    if (rank >= total) throw std::out_of_range("unrank_permutation: rank out of bounds");
    std::vector<int> pool(static_cast<std::size_t>(p));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> im;
    im.reserve(pool.size());
    for (int i = p; i >= 1; --i) {
        std::uint64_t f = factorial_u64(static_cast<unsigned>(i - 1));
        std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        im.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return im;
}

/// Visits the one-line arrays of the range in lexicographic order.
/// The span passed to `fn` is only valid during the call.
template <typename Fn>
void for_each_permutation(const EnumerationRange& range, Fn&& fn) {
    const std::uint64_t total = factorial_u64(static_cast<unsigned>(range.p));
    if (range.start_rank > range.end_rank || range.end_rank > total)
        throw std::out_of_range("for_each_permutation: rank range out of bounds");
    if (range.start_rank == range.end_rank) return;
    std::vector<int> im = unrank_permutation(range.p, range.start_rank);
    for (std::uint64_t r = range.start_rank; r < range.end_rank; ++r) {
        fn(static_cast<const std::vector<int>&>(im));
        std::next_permutation(im.begin(), im.end());
    }
}

template <typename Fn>
void for_each_permutation(int p, Fn&& fn) {
    for_each_permutation(EnumerationRange{p, 0, factorial_u64(static_cast<unsigned>(p))},
                         std::forward<Fn>(fn));
}

}  // namespace ptmoments
