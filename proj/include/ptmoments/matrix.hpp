// Dense complex matrices at Monte Carlo scale (mn up to a few hundred),
// the partial transpose on the second tensor factor, and a cyclic Jacobi
// eigensolver for Hermitian matrices.
//
// Index convention for bipartite matrices: row (x,y) with x in [m], y in [n]
// is stored at x*n + y, and the partial transpose acts on the n-dimensional
// factor: B_{xy,x'y'} = A_{xy',x'y}.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace ptmoments {

struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> a;  // row-major

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    std::complex<double>& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const std::complex<double>& at(int r, int c) const {
        return a[static_cast<std::size_t>(r) * cols + c];
    }

    static ComplexMatrix identity(int d) {
        ComplexMatrix m(d, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline ComplexMatrix multiply(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("multiply: dimension mismatch");
    ComplexMatrix C(A.rows, B.cols);
    // k-middle loop order keeps the inner loop contiguous in B and C
    for (int i = 0; i < A.rows; ++i) {
        auto* crow = &C.a[static_cast<std::size_t>(i) * C.cols];
        for (int k = 0; k < A.cols; ++k) {
            const std::complex<double> aik = A.at(i, k);
            if (aik == 0.0) continue;
            const auto* brow = &B.a[static_cast<std::size_t>(k) * B.cols];
            for (int j = 0; j < B.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return C;
}

/// A * A^dagger.
inline ComplexMatrix times_adjoint(const ComplexMatrix& A) {
    ComplexMatrix C(A.rows, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j <= i; ++j) {
            std::complex<double> s = 0.0;
            const auto* ri = &A.a[static_cast<std::size_t>(i) * A.cols];
            const auto* rj = &A.a[static_cast<std::size_t>(j) * A.cols];
            for (int k = 0; k < A.cols; ++k) s += ri[k] * std::conj(rj[k]);
            C.at(i, j) = s;
            C.at(j, i) = std::conj(s);
        }
    return C;
}

inline std::complex<double> trace(const ComplexMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("trace: matrix not square");
    std::complex<double> t = 0.0;
    for (int i = 0; i < A.rows; ++i) t += A.at(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& A) {
    double s = 0.0;
    for (const auto& z : A.a) s += std::norm(z);
    return std::sqrt(s);
}

inline double hermiticity_defect(const ComplexMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("hermiticity_defect: matrix not square");
    double s = 0.0;
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) s += std::norm(A.at(i, j) - std::conj(A.at(j, i)));
    return std::sqrt(s);
}

inline ComplexMatrix scale(const ComplexMatrix& A, double factor) {
    ComplexMatrix B = A;
    for (auto& z : B.a) z *= factor;
    return B;
}

/// Partial transpose on the second factor of C^m (x) C^n.
inline ComplexMatrix partial_transpose(const ComplexMatrix& A, int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("partial_transpose: dimensions must be positive");
    if (A.rows != m * n || A.cols != m * n)
        throw std::invalid_argument("partial_transpose: matrix is not (mn) x (mn)");
    ComplexMatrix B(A.rows, A.cols);
    for (int x = 0; x < m; ++x)
        for (int xp = 0; xp < m; ++xp)
            for (int y = 0; y < n; ++y)
                for (int yp = 0; yp < n; ++yp)
                    B.at(x * n + y, xp * n + yp) = A.at(x * n + yp, xp * n + y);
    return B;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// tol_factor * ||A||_F.
inline std::vector<double> jacobi_eigenvalues(const ComplexMatrix& input,
                                              double tol_factor = 1e-12,
                                              double hermitian_tol = 1e-9) {
    const int d = input.rows;
    if (input.cols != d) throw std::invalid_argument("jacobi_eigenvalues: matrix not square");
    double fro = frobenius_norm(input);
    if (fro > 0 && hermiticity_defect(input) > hermitian_tol * std::max(1.0, fro))
        throw std::invalid_argument("jacobi_eigenvalues: matrix is not Hermitian");

    ComplexMatrix A = input;
    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j) s += std::norm(A.at(i, j));
        return std::sqrt(s);
    };

    const double target = tol_factor * std::max(fro, 1e-300);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                std::complex<double> apq = A.at(p, q);
                double r = std::abs(apq);
                if (r <= target / d) continue;
                double app = A.at(p, p).real();
                double aqq = A.at(q, q).real();
                // phase strip, then a real rotation by theta
                std::complex<double> phase = apq / r;  // e^{i phi}
                double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                double c = std::cos(theta), s = std::sin(theta);
                // U = I except U(p,p)=c, U(q,p)=s*conj(phase), U(p,q)=-s, U(q,q)=c*conj(phase)
                std::complex<double> up_p = s * std::conj(phase);
                std::complex<double> uq_q = c * std::conj(phase);
                // A <- U^* A U: columns first, then rows
                for (int k = 0; k < d; ++k) {
                    std::complex<double> akp = A.at(k, p), akq = A.at(k, q);
                    A.at(k, p) = akp * c + akq * up_p;
                    A.at(k, q) = -akp * s + akq * uq_q;
                }
                for (int k = 0; k < d; ++k) {
                    std::complex<double> apk = A.at(p, k), aqk = A.at(q, k);
                    A.at(p, k) = apk * c + aqk * std::conj(up_p);
                    A.at(q, k) = -apk * s + aqk * std::conj(uq_q);
                }
                A.at(p, q) = std::conj(A.at(q, p));  // enforce symmetry of the pivot pair
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) eig[static_cast<std::size_t>(i)] = A.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace ptmoments
