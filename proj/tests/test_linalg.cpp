#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "lindet/channel.hpp"
#include "lindet/errors.hpp"
#include "lindet/linalg.hpp"
#include "lindet/rng.hpp"
#include "oracles.hpp"

using namespace lindet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t index) {
    return sample_standard_gaussian(n, RngStream{2024, index});
}

double residual(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

} // namespace

TEST_CASE("svd of identity and diagonal matrices", "[linalg]") {
    const SvdResult id = svd(ComplexMatrix::identity(2));
    CHECK(id.spectrum[0] == 1.0);
    CHECK(id.spectrum[1] == 1.0);

    const std::vector<double> d{1.0, 2.0};
    const SvdResult diag = svd(ComplexMatrix::diagonal(std::span<const double>(d)));
    CHECK_THAT(diag.spectrum[0], WithinAbs(2.0, 1e-15));
    CHECK_THAT(diag.spectrum[1], WithinAbs(1.0, 1e-15));
}

TEST_CASE("svd factors reconstruct a fixed-seed 3x3 matrix", "[linalg]") {
    const ComplexMatrix a = random_matrix(3, 1);
    const SvdResult f = svd(a);
    const ComplexMatrix back = oracle::naive_product(
        oracle::naive_product(f.left_basis, ComplexMatrix::diagonal(f.spectrum.values())),
        oracle::naive_adjoint(f.right_basis));
    CHECK(residual(back, a) <= 1e-10 * a.frobenius_norm());
}

TEST_CASE("svd invariants over 200 random matrices", "[linalg][property]") {
    const std::size_t dims[] = {2, 4, 8};
    for (std::uint64_t t = 0; t < 200; ++t) {
        const std::size_t n = dims[t % 3];
        const ComplexMatrix a = random_matrix(n, 100 + t);
        const SvdResult f = svd(a);
        INFO("sample " << t << " n=" << n);
        REQUIRE(f.spectrum.size() == n);
        for (std::size_t i = 1; i < n; ++i) CHECK(f.spectrum[i - 1] >= f.spectrum[i]);
        CHECK(oracle::identity_residual(f.left_basis) <= 1e-10 * static_cast<double>(n));
        CHECK(oracle::identity_residual(f.right_basis) <= 1e-10 * static_cast<double>(n));
        const ComplexMatrix back = oracle::naive_product(
            oracle::naive_product(f.left_basis, ComplexMatrix::diagonal(f.spectrum.values())),
            oracle::naive_adjoint(f.right_basis));
        CHECK(residual(back, a) <= 1e-10 * a.frobenius_norm());

        // Independent route: square roots of the Jacobi eigenvalues of A^H A.
        const std::vector<double> ref = oracle::singular_values(a);
        for (std::size_t i = 0; i < n; ++i) CHECK_THAT(f.spectrum[i], WithinRel(ref[i], 1e-8));
    }
}

TEST_CASE("svd rejects bad input", "[linalg]") {
    CHECK_THROWS_AS(svd(ComplexMatrix(2, 3)), DimensionError);
    ComplexMatrix a = ComplexMatrix::identity(2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(a), InvalidArgumentError);
}

TEST_CASE("gram of diagonal and unitary matrices", "[linalg]") {
    const std::vector<double> d{2.0, 1.0};
    const ComplexMatrix g = gram(ComplexMatrix::diagonal(std::span<const double>(d)));
    CHECK(g(0, 0) == Complex(4.0));
    CHECK(g(1, 1) == Complex(1.0));
    CHECK(g(0, 1) == Complex(0.0));

    Rng rng(RngStream{7, 7});
    const ComplexMatrix u = haar_unitary(5, rng);
    CHECK(residual(gram(u), ComplexMatrix::identity(5)) <= 1e-12);
}

TEST_CASE("gram eigenvalues equal squared singular values", "[linalg][property]") {
    const std::size_t dims[] = {2, 4, 8};
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ComplexMatrix h = random_matrix(dims[t % 3], 500 + t);
        const Spectrum s2 = svd(h).spectrum.squared();
        const ComplexMatrix g = gram(h);
        const std::vector<double> lib = hermitian_eigenvalues(g);
        const std::vector<double> ref = oracle::hermitian_eigenvalues(g);
        for (std::size_t i = 0; i < s2.size(); ++i) {
            CHECK_THAT(ref[i], WithinRel(s2[i], 1e-9));
            CHECK_THAT(lib[i], WithinRel(s2[i], 1e-9));
        }
        // Hermitian up to the last bit.
        CHECK(residual(g, g.adjoint()) == 0.0);
    }
}

TEST_CASE("inverse of simple matrices", "[linalg]") {
    CHECK(residual(inverse(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) <= 1e-15);
    const std::vector<double> d{2.0, 4.0};
    const std::vector<double> inv_d{0.5, 0.25};
    CHECK(residual(inverse(ComplexMatrix::diagonal(std::span<const double>(d))),
                   ComplexMatrix::diagonal(std::span<const double>(inv_d))) <= 1e-15);
}

TEST_CASE("inverse residual on a fixed-seed 4x4", "[linalg]") {
    const ComplexMatrix a = random_matrix(4, 9);
    const ComplexMatrix p = oracle::naive_product(a, inverse(a));
    CHECK(residual(p, ComplexMatrix::identity(4)) <= 1e-9 * 4);
}

TEST_CASE("inverse reports singular matrices with their sigma ratio", "[linalg]") {
    const ComplexMatrix rank_one{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(inverse(rank_one), SingularMatrixError);

    const std::vector<double> d{1.0, 1e-13};
    try {
        inverse(ComplexMatrix::diagonal(std::span<const double>(d)));
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK_THAT(e.sigma_ratio(), WithinRel(1e-13, 1e-9));
    }
    CHECK_THROWS_AS(condition_number(rank_one), SingularMatrixError);
}

TEST_CASE("condition number basics", "[linalg]") {
    Rng rng(RngStream{3, 3});
    CHECK_THAT(condition_number(haar_unitary(4, rng)), WithinAbs(1.0, 1e-12));
    const std::vector<double> d{2.0, 1.0};
    CHECK_THAT(condition_number(ComplexMatrix::diagonal(std::span<const double>(d))), WithinAbs(2.0, 1e-15));
}

TEST_CASE("cond(A) equals cond(inverse(A))", "[linalg][property]") {
    const std::size_t dims[] = {2, 4, 8};
    for (std::uint64_t t = 0; t < 200; ++t) {
        const ComplexMatrix a = random_matrix(dims[t % 3], 900 + t);
        const double c = condition_number(a);
        CHECK(c >= 1.0);
        CHECK_THAT(condition_number(inverse(a)), WithinRel(c, 1e-8));
    }
}

TEST_CASE("Spectrum enforces its invariants", "[linalg]") {
    CHECK_THROWS_AS(Spectrum({1.0, 2.0}), InvalidArgumentError);
    CHECK_THROWS_AS(Spectrum({1.0, -0.5}), InvalidArgumentError);
    CHECK_NOTHROW(Spectrum({2.0, 2.0, 0.0}));
    const Spectrum s({3.0, 1.0});
    CHECK(s.squared()[0] == 9.0);
    CHECK(s.scaled(2.0)[1] == 2.0);
}

TEST_CASE("singular_values agrees with svd at every size", "[linalg]") {
    for (std::size_t n : {2u, 8u, 17u, 32u}) {
        const ComplexMatrix a = random_matrix(n, 4000 + n);
        const Spectrum fast = singular_values(a);
        const Spectrum full = svd(a).spectrum;
        for (std::size_t i = 0; i < n; ++i) CHECK_THAT(fast[i], WithinRel(full[i], 1e-10));
    }
}
