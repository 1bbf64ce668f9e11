#include "lindet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "lindet/errors.hpp"

namespace lindet {

namespace {

void require_square_finite(const ComplexMatrix& a, const char* op) {
    if (a.rows() == 0 || !a.is_square()) {
        std::ostringstream msg;
        msg << op << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
        throw DimensionError(msg.str());
    }
    if (!a.all_finite()) {
        throw InvalidArgumentError(std::string(op) + ": matrix has non-finite entries");
    }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

// Eigen returns singular values sorted, but tiny negative round-off is impossible
// and ties may come back in any order; clamp and sort to keep Spectrum's invariant.
Spectrum make_spectrum(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    for (double& v : values) v = std::max(v, 0.0);
    return Spectrum(std::move(values));
}

void require_nonsingular(const Spectrum& s, const char* op) {
    const double ratio = s.first() > 0.0 ? s.last() / s.first() : 0.0;
    if (!(ratio > kSingularityThreshold)) {
        std::ostringstream msg;
        msg << op << ": matrix is numerically singular (sigma_min/sigma_max = " << ratio << ")";
        throw SingularMatrixError(msg.str(), ratio);
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : m_(Storage::Zero(rows, cols)) {}

ComplexMatrix::ComplexMatrix(Storage m) : m_(std::move(m)) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    m_.resize(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ComplexMatrix: ragged initializer");
        std::size_t j = 0;
        for (const auto& v : row) m_(i, j++) = v;
        ++i;
    }
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    return ComplexMatrix(Storage::Identity(n, n));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix d(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
    return d;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix d(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
    return d;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(m_.data(), m_.data() + m_.size(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix ComplexMatrix::adjoint() const {
    return ComplexMatrix(Storage(m_.adjoint()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows() != rhs.rows() || cols() != rhs.cols()) throw DimensionError("matrix sum: shape mismatch");
    m_ += rhs.m_;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows() != rhs.rows() || cols() != rhs.cols()) throw DimensionError("matrix difference: shape mismatch");
    m_ -= rhs.m_;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    m_ *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw DimensionError("matrix product: inner dimensions differ");
    return ComplexMatrix(ComplexMatrix::Storage(lhs.m_ * rhs.m_));
}

ComplexVector operator*(const ComplexMatrix& lhs, std::span<const Complex> rhs) {
    if (lhs.cols() != rhs.size()) throw DimensionError("matrix-vector product: dimensions differ");
    ComplexVector out(lhs.rows());
    Eigen::Map<const Eigen::VectorXcd> x(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::Map<Eigen::VectorXcd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    y.noalias() = lhs.m_ * x;
    return out;
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
            throw InvalidArgumentError("Spectrum: values must be finite and nonnegative");
        }
        if (i > 0 && values_[i] > values_[i - 1]) {
            throw InvalidArgumentError("Spectrum: values must be descending");
        }
    }
}

Spectrum Spectrum::squared() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](double v) { return v * v; });
    return Spectrum(std::move(out));
}

Spectrum Spectrum::scaled(double factor) const {
    if (!(factor >= 0.0) || !std::isfinite(factor)) {
        throw InvalidArgumentError("Spectrum::scaled: factor must be finite and nonnegative");
    }
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [factor](double v) { return v * factor; });
    return Spectrum(std::move(out));
}

SvdResult svd(const ComplexMatrix& a) {
    require_square_finite(a, "svd");
    Eigen::JacobiSVD<ComplexMatrix::Storage> solver(a.eigen(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    // JacobiSVD already sorts in decreasing order, so the bases stay aligned with the spectrum.
    std::vector<double> s = to_vector(solver.singularValues());
    for (double& v : s) v = std::max(v, 0.0);
    return SvdResult{ComplexMatrix(ComplexMatrix::Storage(solver.matrixU())), Spectrum(std::move(s)),
                     ComplexMatrix(ComplexMatrix::Storage(solver.matrixV()))};
}

Spectrum singular_values(const ComplexMatrix& a) {
    require_square_finite(a, "singular_values");
    if (a.rows() <= 16) {
        Eigen::JacobiSVD<ComplexMatrix::Storage> solver(a.eigen());
        return make_spectrum(to_vector(solver.singularValues()));
    }
    Eigen::BDCSVD<ComplexMatrix::Storage> solver(a.eigen());
    return make_spectrum(to_vector(solver.singularValues()));
}

ComplexMatrix gram(const ComplexMatrix& a) {
    if (!a.all_finite()) throw InvalidArgumentError("gram: matrix has non-finite entries");
    ComplexMatrix::Storage g = a.eigen().adjoint() * a.eigen();
    // Force exact Hermitian symmetry; the product is only Hermitian up to round-off.
    g = (0.5 * (g + g.adjoint())).eval();
    return ComplexMatrix(std::move(g));
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    SvdResult f = svd(a);
    require_nonsingular(f.spectrum, "inverse");
    // A^{-1} = V diag(1/s) U^H
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::VectorXd inv_s(n);
    for (Eigen::Index i = 0; i < n; ++i) inv_s(i) = 1.0 / f.spectrum[static_cast<std::size_t>(i)];
    ComplexMatrix::Storage out = f.right_basis.eigen() * inv_s.asDiagonal() * f.left_basis.eigen().adjoint();
    return ComplexMatrix(std::move(out));
}

double condition_number(const ComplexMatrix& a) {
    Spectrum s = singular_values(a);
    require_nonsingular(s, "condition_number");
    return s.first() / s.last();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    require_square_finite(a, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix::Storage> solver(a.eigen(), Eigen::EigenvaluesOnly);
    std::vector<double> values = to_vector(solver.eigenvalues());
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

} // namespace lindet
