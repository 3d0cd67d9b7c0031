// Statistical verification harness: Ginibre/Wishart sampling, random induced
// states, partial-transpose moment and spectrum estimators, and the matrix
// model that recovers meander polynomials.
//
// Determinism: sample s draws from RNG stream s (counter-based), and
// per-sample statistics land in a preallocated slot before a sequential
// reduction, so estimates are identical for any worker count.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ptmoments/matrix.hpp"
#include "ptmoments/parallel.hpp"
#include "ptmoments/rng.hpp"

namespace ptmoments {

struct MCEstimate {
    std::string statistic;
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct RunningStats {
    std::uint64_t n = 0;
    double mean = 0.0, m2 = 0.0, m4_accum = 0.0;

    static RunningStats from_values(const std::vector<double>& xs) {
        RunningStats s;
        s.n = xs.size();
        if (xs.empty()) return s;
        double sum = 0.0;
        for (double x : xs) sum += x;
        s.mean = sum / static_cast<double>(xs.size());
        double m2 = 0.0, m4 = 0.0;
        for (double x : xs) {
            double d = x - s.mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        s.m2 = m2;
        s.m4_accum = m4;
        return s;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_of_mean() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
    /// Standard error of the unbiased sample variance, via the fourth moment.
    double stderr_of_variance() const {
        if (n < 2) return 0.0;
        double N = static_cast<double>(n);
        double m4 = m4_accum / N;
        double s2 = variance();
        double var_of_var = (m4 - (N - 3.0) / (N - 1.0) * s2 * s2) / N;
        return var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
    }
};

}  // namespace detail

/// i.i.d. complex N(0,1) entries: real and imaginary parts N(0, 1/2).
inline ComplexMatrix sample_ginibre(int rows, int cols, RNGStream& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("sample_ginibre: positive dims required");
    ComplexMatrix G(rows, cols);
    const double s = std::sqrt(0.5);
    for (auto& z : G.a) z = {s * rng.normal(), s * rng.normal()};
    return G;
}

/// rho = W / Tr W with W = G G* for G of size (mn) x l.
inline ComplexMatrix random_state(int l, int m, int n, RNGStream& rng) {
    if (l < 1 || m < 1 || n < 1) throw std::invalid_argument("random_state: positive dims required");
    for (;;) {
        ComplexMatrix G = sample_ginibre(m * n, l, rng);
        ComplexMatrix W = times_adjoint(G);
        double tr = trace(W).real();
        if (tr > 0) {  // zero trace has probability zero; resample if it happens
            ComplexMatrix rho = scale(W, 1.0 / tr);
            return rho;
        }
    }
}

/// Z^(k) = (1/mn) trace[(mn rho^G)^k] for k = 1..max_p, one sample.
/// Computed from the unscaled W^G so that the k = 1 statistic is exactly 1.
inline std::vector<double> sample_pt_moments(int l, int m, int n, int max_p, RNGStream& rng) {
    ComplexMatrix G = sample_ginibre(m * n, l, rng);
    ComplexMatrix W = times_adjoint(G);
    double tr_w = trace(W).real();
    ComplexMatrix Y = partial_transpose(W, m, n);
    const double mn = static_cast<double>(m) * n;
    std::vector<double> z(static_cast<std::size_t>(max_p));
    ComplexMatrix P = Y;
    double scale_k = 1.0;  // (mn)^{k-1} / (tr W)^k
    for (int k = 1; k <= max_p; ++k) {
        scale_k = (k == 1) ? 1.0 / tr_w : scale_k * mn / tr_w;
        z[static_cast<std::size_t>(k - 1)] = trace(P).real() * scale_k;
        if (k < max_p) P = multiply(P, Y);
    }
    return z;
}

struct MomentEstimates {
    std::vector<MCEstimate> moments;          // index k-1 -> estimate of E Z^(k)
    std::vector<MCEstimate> variances;        // index k-1 -> estimate of Var Z^(k)
};

/// Monte Carlo moments (and sample variances) of Z^(k), k <= max_p.
inline MomentEstimates mc_moment_estimates(int l, int m, int n, int max_p, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads = 0) {
    if (samples < 2) throw std::invalid_argument("mc_moment_estimates: samples must be >= 2");
    if (max_p < 1) throw std::invalid_argument("mc_moment_estimates: max_p must be >= 1");
    std::vector<std::vector<double>> values(static_cast<std::size_t>(max_p),
                                            std::vector<double>(samples));
    const std::uint64_t block = 256;
    const std::uint64_t chunks = (samples + block - 1) / block;
    parallel_for_chunks(chunks, threads, [&](std::uint64_t c) {
        std::uint64_t lo = c * block, hi = std::min(samples, lo + block);
        for (std::uint64_t s = lo; s < hi; ++s) {
            RNGStream rng(seed, s);
            auto z = sample_pt_moments(l, m, n, max_p, rng);
            for (int k = 0; k < max_p; ++k)
                values[static_cast<std::size_t>(k)][s] = z[static_cast<std::size_t>(k)];
        }
    });
    MomentEstimates out;
    for (int k = 1; k <= max_p; ++k) {
        auto stats = detail::RunningStats::from_values(values[static_cast<std::size_t>(k - 1)]);
        MCEstimate m_est;
        m_est.statistic = "Z^(" + std::to_string(k) + ")";
        m_est.mean = stats.mean;
        m_est.stderr_ = stats.stderr_of_mean();
        m_est.samples = samples;
        m_est.seed = seed;
        out.moments.push_back(m_est);
        MCEstimate v_est;
        v_est.statistic = "Var Z^(" + std::to_string(k) + ")";
        v_est.mean = stats.variance();
        v_est.stderr_ = stats.stderr_of_variance();
        v_est.samples = samples;
        v_est.seed = seed;
        out.variances.push_back(v_est);
    }
    return out;
}

inline MCEstimate mc_expected_moment(int l, int m, int n, int p, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 0) {
    auto est = mc_moment_estimates(l, m, n, p, samples, seed, threads);
    return est.moments.back();
}

/// Full spectrum of a Hermitian matrix (ascending), with a trace sanity gate.
inline std::vector<double> empirical_spectrum(const ComplexMatrix& A) {
    auto eig = jacobi_eigenvalues(A);
    double tr = trace(A).real(), sum = 0.0;
    for (double x : eig) sum += x;
    if (std::abs(sum - tr) > 1e-8 * std::max(1.0, static_cast<double>(A.rows)))
        throw std::logic_error("empirical_spectrum: eigenvalue sum drifted from the trace");
    return eig;
}

struct ExtremeSummary {
    int n = 0;
    int m = 0;
    int l = 0;
    MCEstimate lambda_min;
    MCEstimate lambda_max;
};

/// Extreme eigenvalues of mn rho^G along a grid m = n, l = ceil(n^2 / a).
inline std::vector<ExtremeSummary> extreme_eigenvalue_experiment(double a,
                                                                 const std::vector<int>& n_list,
                                                                 std::uint64_t samples,
                                                                 std::uint64_t seed,
                                                                 unsigned threads = 0) {
    if (a <= 0) throw std::invalid_argument("extreme_eigenvalue_experiment: a must be > 0");
    std::vector<ExtremeSummary> out;
    std::uint64_t stream_base = 0;
    for (int n : n_list) {
        int m = n;
        int l = static_cast<int>(std::ceil(static_cast<double>(n) * n / a));
        std::vector<double> mins(samples), maxs(samples);
        const std::uint64_t block = 8;
        const std::uint64_t chunks = (samples + block - 1) / block;
        parallel_for_chunks(chunks, threads, [&](std::uint64_t c) {
            std::uint64_t lo = c * block, hi = std::min(samples, lo + block);
            for (std::uint64_t s = lo; s < hi; ++s) {
                RNGStream rng(seed, stream_base + s);
                ComplexMatrix rho = random_state(l, m, n, rng);
                ComplexMatrix X = scale(partial_transpose(rho, m, n),
                                        static_cast<double>(m) * n);
                auto eig = jacobi_eigenvalues(X);
                mins[s] = eig.front();
                maxs[s] = eig.back();
            }
        });
        ExtremeSummary summary;
        summary.n = n;
        summary.m = m;
        summary.l = l;
        auto smin = detail::RunningStats::from_values(mins);
        auto smax = detail::RunningStats::from_values(maxs);
        summary.lambda_min = {"lambda_min(mn rho^G)", smin.mean, smin.stderr_of_mean(), samples, seed};
        summary.lambda_max = {"lambda_max(mn rho^G)", smax.mean, smax.stderr_of_mean(), samples, seed};
        out.push_back(summary);
        stream_base += samples;  // fresh substreams per grid point
    }
    return out;
}

/// Matrix model for meander polynomials: G of size n^2 x l with entry parts
/// of variance 1/(2n); estimates (1/n^2) E trace[((G G*)^G)^{2q}] -> M_q(l).
inline MCEstimate meander_mc_estimate(int l, int n, int q, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads = 0) {
    if (l < 1 || n < 1 || q < 1) throw std::invalid_argument("meander_mc_estimate: bad parameters");
    if (samples < 2) throw std::invalid_argument("meander_mc_estimate: samples must be >= 2");
    std::vector<double> values(samples);
    const std::uint64_t block = 4;
    const std::uint64_t chunks = (samples + block - 1) / block;
    parallel_for_chunks(chunks, threads, [&](std::uint64_t c) {
        std::uint64_t lo = c * block, hi = std::min(samples, lo + block);
        for (std::uint64_t s = lo; s < hi; ++s) {
            RNGStream rng(seed, s);
            ComplexMatrix G = sample_ginibre(n * n, l, rng);
            // rescale entries from parts N(0,1/2) to parts N(0,1/(2n))
            double rescale = 1.0 / std::sqrt(static_cast<double>(n));
            for (auto& z : G.a) z *= rescale;
            ComplexMatrix W = times_adjoint(G);
            ComplexMatrix X = partial_transpose(W, n, n);
            ComplexMatrix P = X;
            for (int k = 1; k < 2 * q; ++k) P = multiply(P, X);
            values[s] = trace(P).real() / (static_cast<double>(n) * n);
        }
    });
    auto stats = detail::RunningStats::from_values(values);
    MCEstimate est;
    est.statistic = "meander_mc(q=" + std::to_string(q) + ",l=" + std::to_string(l) + ")";
    est.mean = stats.mean;
    est.stderr_ = stats.stderr_of_mean();
    est.samples = samples;
    est.seed = seed;
    return est;
}

}  // namespace ptmoments
