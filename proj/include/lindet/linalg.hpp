#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lindet {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/**
 * Dense complex matrix, row-major.
 *
 * Thin value type over an Eigen matrix. The element accessors never check
 * finiteness; operations that need finite input (svd, inverse, ...) validate
 * on entry and throw InvalidArgumentError.
 */
class ComplexMatrix {
public:
    using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    explicit ComplexMatrix(Storage m);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::span<const Complex> values);

    std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
    bool is_square() const noexcept { return m_.rows() == m_.cols(); }

    Complex& operator()(std::size_t r, std::size_t c) { return m_(r, c); }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    /// Row-major view of all entries.
    std::span<const Complex> entries() const noexcept {
        return {m_.data(), static_cast<std::size_t>(m_.size())};
    }

    bool all_finite() const noexcept;
    double frobenius_norm() const { return m_.norm(); }

    /// Hermitian transpose.
    ComplexMatrix adjoint() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex s) { return lhs *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix rhs) { return rhs *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
    friend ComplexVector operator*(const ComplexMatrix& lhs, std::span<const Complex> rhs);

    const Storage& eigen() const noexcept { return m_; }

private:
    Storage m_;
};

/// Descending sequence of nonnegative reals (singular values, Gram eigenvalues).
class Spectrum {
public:
    Spectrum() = default;
    /// Throws InvalidArgumentError unless values are finite, nonnegative and descending.
    explicit Spectrum(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double first() const { return values_.front(); }
    double last() const { return values_.back(); }
    std::span<const double> values() const noexcept { return values_; }

    /// Elementwise squares, still descending.
    Spectrum squared() const;
    Spectrum scaled(double factor) const;

private:
    std::vector<double> values_;
};

struct SvdResult {
    ComplexMatrix left_basis;
    Spectrum spectrum;
    ComplexMatrix right_basis;
};

/// Relative threshold below which a matrix is treated as singular.
inline constexpr double kSingularityThreshold = 1e-12;

/// Full SVD A = U diag(s) V^H of a square matrix.
SvdResult svd(const ComplexMatrix& a);

/// Singular values only; cheaper than svd() for large matrices.
Spectrum singular_values(const ComplexMatrix& a);

/// A^H A.
ComplexMatrix gram(const ComplexMatrix& a);

/// Throws SingularMatrixError when sigma_min <= kSingularityThreshold * sigma_max.
ComplexMatrix inverse(const ComplexMatrix& a);

/// sigma_max / sigma_min.
double condition_number(const ComplexMatrix& a);

/// Eigenvalues of a Hermitian matrix in descending order (may be negative).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

} // namespace lindet
