#pragma once

// Reference routines for the tests. Written without Eigen so they stay
// independent of the code paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "lindet/linalg.hpp"

namespace oracle {

using lindet::Complex;
using lindet::ComplexMatrix;

inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

inline std::vector<Complex> naive_apply(const ComplexMatrix& a, const std::vector<Complex>& x) {
    std::vector<Complex> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
    }
    return y;
}

inline ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    }
    return t;
}

/// Cyclic Jacobi on a real symmetric matrix stored row-major; returns eigenvalues descending.
inline std::vector<double> jacobi_symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
        }
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(at(p, q)) < 1e-300) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

/**
 * Eigenvalues of a Hermitian matrix via its real 2n x 2n embedding
 * [[Re, -Im], [Im, Re]], whose spectrum is that of A with every value doubled.
 */
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    const std::size_t m = 2 * n;
    std::vector<double> real(m * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            real[i * m + j] = h(i, j).real();
            real[i * m + j + n] = -h(i, j).imag();
            real[(i + n) * m + j] = h(i, j).imag();
            real[(i + n) * m + j + n] = h(i, j).real();
        }
    }
    const std::vector<double> doubled = jacobi_symmetric_eigenvalues(std::move(real), m);
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = doubled[2 * i];
    return eig;
}

/// Singular values from the eigenvalues of the naively formed A^H A.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    std::vector<double> eig = oracle::hermitian_eigenvalues(naive_product(naive_adjoint(a), a));
    for (double& v : eig) v = std::sqrt(std::max(v, 0.0));
    return eig;
}

inline double identity_residual(const ComplexMatrix& q) {
    const ComplexMatrix p = naive_product(naive_adjoint(q), q);
    double s = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) s += std::norm(p(i, j) - (i == j ? 1.0 : 0.0));
    }
    return std::sqrt(s);
}

} // namespace oracle
