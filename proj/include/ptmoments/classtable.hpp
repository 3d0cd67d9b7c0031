// The class-count table: for fixed degree p, the number of permutations
// alpha in S_p with a given triple
//
//      ( |alpha|, |pi alpha|, |pi^{-1} alpha| ),      pi = (1,2,...,p).
//
// This table is the precomputed kernel of every exact-moment evaluation:
// building it costs one pass over S_p (p! permutations), after which any
// parameter triple (l,m,n) is evaluated from a few hundred table entries.
//
// The same enumeration kernel also serves arbitrary reference permutations
// tau (mixed moments use tau with prescribed cycle type), but only the
// tau = pi tables are cached on disk.
//
// Cache file format (text, line oriented, bit-exact round trip):
//      ptmoments-classtable v1 p=<p>
//      a,b,c,count            one line per key, lexicographic key order
//      total=<p!>

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>

#include "ptmoments/parallel.hpp"
#include "ptmoments/permutation.hpp"

namespace ptmoments {

inline constexpr int kClassTableCeiling = 12;

struct ClassCountTable {
    int p = 0;
    // key (a,b,c) = (|alpha|, |pi alpha|, |pi^{-1} alpha|); std::map keeps
    // the lexicographic order the cache format requires.
    std::map<std::tuple<int, int, int>, std::uint64_t> entries;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [k, v] : entries) t += v;
        return t;
    }
};

namespace detail {

// Cycle count of the map i -> f(i) over 0..p-1, f given as a small array.
// p <= 12 here, so a 32-bit visited mask suffices.
inline int cycle_count_map(const int* f, int p) {
    std::uint32_t visited = 0;
    int cycles = 0;
    for (int i = 0; i < p; ++i) {
        if (visited >> i & 1u) continue;
        ++cycles;
        int j = i;
        while (!(visited >> j & 1u)) {
            visited |= 1u << j;
            j = f[j];
        }
    }
    return cycles;
}

}  // namespace detail

/// Tallies (|alpha|, |tau alpha|, |tau^{-1} alpha|) over all alpha in S_p
/// for an arbitrary fixed tau in S_p. Deterministic for any thread count.
inline ClassCountTable build_triple_length_table(const Permutation& tau, unsigned threads = 0,
                                                 int ceiling = kClassTableCeiling) {
    const int p = tau.degree();
    if (p < 1) throw std::invalid_argument("build_triple_length_table: degree must be >= 1");
    if (p > ceiling)
        throw std::invalid_argument("build_triple_length_table: p=" + std::to_string(p) +
                                    " exceeds the enumeration ceiling " + std::to_string(ceiling));

    std::array<int, 32> tau_map{}, tau_inv_map{};
    for (int i = 0; i < p; ++i) {
        tau_map[static_cast<std::size_t>(i)] = tau(i);
        tau_inv_map[static_cast<std::size_t>(tau(i))] = i;
    }

    const std::uint64_t total = factorial_u64(static_cast<unsigned>(p));
    threads = resolve_threads(threads);
    const std::uint64_t chunks = std::min<std::uint64_t>(total, threads * 16ull);
    const std::size_t cube = static_cast<std::size_t>(p) * static_cast<std::size_t>(p) *
                             static_cast<std::size_t>(p);

    std::vector<std::vector<std::uint64_t>> local(chunks);
    parallel_for_chunks(chunks, threads, [&](std::uint64_t c) {
        std::uint64_t lo = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
        std::uint64_t hi = lo + total / chunks + (c < total % chunks ? 1 : 0);
        auto& counts = local[c];
        counts.assign(cube, 0);
        std::vector<int> im = unrank_permutation(p, lo);
        int f[32];
        for (std::uint64_t r = lo; r < hi; ++r) {
            const int* alpha = im.data();
            int a = p - detail::cycle_count_map(alpha, p);
            for (int i = 0; i < p; ++i) f[i] = tau_map[static_cast<std::size_t>(alpha[i])];
            int b = p - detail::cycle_count_map(f, p);
            for (int i = 0; i < p; ++i) f[i] = tau_inv_map[static_cast<std::size_t>(alpha[i])];
            int cc = p - detail::cycle_count_map(f, p);
            ++counts[(static_cast<std::size_t>(a) * static_cast<std::size_t>(p) +
                      static_cast<std::size_t>(b)) *
                         static_cast<std::size_t>(p) +
                     static_cast<std::size_t>(cc)];
            std::next_permutation(im.begin(), im.end());
        }
    });

    ClassCountTable table;
    table.p = p;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c) {
                std::uint64_t sum = 0;
                std::size_t idx = (static_cast<std::size_t>(a) * static_cast<std::size_t>(p) +
                                   static_cast<std::size_t>(b)) *
                                      static_cast<std::size_t>(p) +
                                  static_cast<std::size_t>(c);
                for (const auto& loc : local) sum += loc[idx];
                if (sum) table.entries[{a, b, c}] = sum;
            }
    return table;
}

/// The tau = pi case: the table behind Corollary-style moment formulas.
inline ClassCountTable build_class_table(int p, unsigned threads = 0,
                                         int ceiling = kClassTableCeiling) {
    return build_triple_length_table(Permutation::full_cycle(p), threads, ceiling);
}

// ---------------------------------------------------------------------------
// Disk cache
// ---------------------------------------------------------------------------

inline std::string format_class_table(const ClassCountTable& t) {
    std::ostringstream os;
    os << "ptmoments-classtable v1 p=" << t.p << "\n";
    for (const auto& [key, count] : t.entries) {
        os << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
           << count << "\n";
    }
    os << "total=" << t.total() << "\n";
    return os.str();
}

inline ClassCountTable parse_class_table(std::istream& in) {
    ClassCountTable t;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("class table: empty stream");
    int p = 0;
    if (std::sscanf(line.c_str(), "ptmoments-classtable v1 p=%d", &p) != 1 || p < 1)
        throw std::runtime_error("class table: bad header '" + line + "'");
    t.p = p;
    std::uint64_t declared_total = 0;
    bool have_total = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("total=", 0) == 0) {
            declared_total = std::strtoull(line.c_str() + 6, nullptr, 10);
            have_total = true;
            break;
        }
        int a, b, c;
        unsigned long long count;
        if (std::sscanf(line.c_str(), "%d,%d,%d,%llu", &a, &b, &c, &count) != 4)
            throw std::runtime_error("class table: bad entry line '" + line + "'");
        t.entries[{a, b, c}] = count;
    }
    if (!have_total) throw std::runtime_error("class table: missing total footer");
    if (t.total() != declared_total)
        throw std::runtime_error("class table: totals disagree with entries");
    return t;
}

inline ClassCountTable parse_class_table(const std::string& text) {
    std::istringstream is(text);
    return parse_class_table(is);
}

/// PTMOMENTS_CACHE, else XDG_CACHE_HOME/ptmoments, else ~/.cache/ptmoments.
inline std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("PTMOMENTS_CACHE"); env && *env)
        return std::filesystem::path(env);
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "ptmoments";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "ptmoments";
    return std::filesystem::temp_directory_path() / "ptmoments-cache";
}

/// Holds tables in memory and mirrors them in the cache directory.
/// Concurrent writers go through a temp file + rename, so the last writer
/// wins with a complete file either way (content is deterministic anyway).
class TableStore {
public:
    explicit TableStore(std::filesystem::path dir = default_cache_dir(), bool use_disk = true)
        : dir_(std::move(dir)), use_disk_(use_disk) {}

    const ClassCountTable& get(int p, unsigned threads = 0, int ceiling = kClassTableCeiling) {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = mem_.find(p); it != mem_.end()) {
            last_was_cache_hit_ = true;
            return it->second;
        }
        if (use_disk_) {
            std::ifstream in(file_for(p));
            if (in) {
                ClassCountTable t = parse_class_table(in);
                if (t.p == p && t.total() == factorial_u64(static_cast<unsigned>(p))) {
                    last_was_cache_hit_ = true;
                    return mem_.emplace(p, std::move(t)).first->second;
                }
            }
        }
        last_was_cache_hit_ = false;
        ClassCountTable t = build_class_table(p, threads, ceiling);
        if (use_disk_) write_file(t);
        return mem_.emplace(p, std::move(t)).first->second;
    }

    bool last_was_cache_hit() const { return last_was_cache_hit_; }
    const std::filesystem::path& directory() const { return dir_; }

private:
    std::filesystem::path file_for(int p) const {
        return dir_ / ("classtable-p" + std::to_string(p) + ".v1.txt");
    }

    void write_file(const ClassCountTable& t) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        auto tmp = file_for(t.p);
        tmp += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) return;  // cache is best-effort
            out << format_class_table(t);
        }
        std::filesystem::rename(tmp, file_for(t.p), ec);
        if (ec) std::filesystem::remove(tmp, ec);
    }

    std::filesystem::path dir_;
    bool use_disk_;
    bool last_was_cache_hit_ = false;
    std::mutex mu_;
    std::map<int, ClassCountTable> mem_;
};

}  // namespace ptmoments
