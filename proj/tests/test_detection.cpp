#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lindet/channel.hpp"
#include "lindet/detection.hpp"
#include "lindet/errors.hpp"
#include "oracles.hpp"

using namespace lindet;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
    return m;
}

} // namespace

TEST_CASE("bit blocks reject odd lengths and non-binary values", "[detection]") {
    CHECK_THROWS_AS(BitBlock({0, 1, 1}), FramingError);
    CHECK_THROWS_AS(BitBlock({0, 2}), InvalidArgumentError);
    const BitBlock b({0, 1, 1, 0});
    CHECK(b.size() == 4);
    CHECK(b.symbol_count() == 2);
}

TEST_CASE("qpsk constellation points", "[detection]") {
    const double h = 1.0 / std::sqrt(2.0);
    const ComplexVector x = qpsk_modulate(BitBlock({0, 0, 0, 1, 1, 0, 1, 1}));
    REQUIRE(x.size() == 4);
    CHECK(std::abs(x[0] - Complex(h, h)) < 1e-15);
    CHECK(std::abs(x[1] - Complex(h, -h)) < 1e-15);
    CHECK(std::abs(x[2] - Complex(-h, h)) < 1e-15);
    CHECK(std::abs(x[3] - Complex(-h, -h)) < 1e-15);
    for (const Complex& z : x) CHECK_THAT(std::norm(z), WithinAbs(1.0, 1e-15));
}

TEST_CASE("qpsk slicing inverts modulation and breaks ties toward bit 0", "[detection]") {
    Rng rng(RngStream{1, 0});
    for (int t = 0; t < 100; ++t) {
        const BitBlock bits = BitBlock::random(8, rng);
        const ComplexVector x = qpsk_modulate(bits);
        CHECK(qpsk_slice(x) == bits);
    }
    const ComplexVector ties{Complex(0.0, 0.0), Complex(-0.0, -0.0)};
    CHECK(qpsk_slice(ties) == BitBlock({0, 0, 0, 0}));
}

TEST_CASE("zf filter inverts the channel", "[detection]") {
    const ComplexMatrix h = sample_standard_gaussian(4, RngStream{2, 0});
    const FilterMatrix w = zf_filter(h);
    CHECK(w.kind == FilterKind::zero_forcing);
    CHECK(max_abs_diff(oracle::naive_product(w.matrix, h), ComplexMatrix::identity(4)) <= 1e-10);
}

TEST_CASE("mmse filter matches its closed form", "[detection]") {
    const ComplexMatrix h = sample_standard_gaussian(3, RngStream{3, 0});
    const double v = 0.3;
    const FilterMatrix w = mmse_filter(h, NoiseModel(v));
    CHECK(w.kind == FilterKind::mmse);
    CHECK(w.noise_variance == v);
    // (H^H H + v I) W = H^H, checked with naive products.
    ComplexMatrix lhs = oracle::naive_product(oracle::naive_adjoint(h), h);
    for (std::size_t i = 0; i < 3; ++i) lhs(i, i) += v;
    CHECK(max_abs_diff(oracle::naive_product(lhs, w.matrix), oracle::naive_adjoint(h)) <= 1e-10);
}

TEST_CASE("mmse with zero noise equals zf", "[detection]") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        const ComplexMatrix h = sample_standard_gaussian(2 + t % 5, RngStream{4, t});
        CHECK(max_abs_diff(mmse_filter(h, NoiseModel(0.0)).matrix, zf_filter(h).matrix) <= 1e-9);
    }
}

TEST_CASE("zf detection on the identity channel without noise is error free", "[detection]") {
    Rng rng(RngStream{5, 0});
    const ComplexMatrix h = ComplexMatrix::identity(4);
    const FilterMatrix w = zf_filter(h);
    for (int t = 0; t < 100; ++t) {
        const BitBlock bits = BitBlock::random(4, rng);
        const ComplexVector r = transmit(h, qpsk_modulate(bits), ComplexVector(4));
        CHECK(count_bit_errors(bits, equalize_and_slice(w, r)) == 0);
    }
}

TEST_CASE("singular channels raise SingularMatrixError", "[detection]") {
    const ComplexMatrix h{{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(zf_filter(h), SingularMatrixError);
    CHECK_NOTHROW(mmse_filter(h, NoiseModel(0.1)));
    CHECK_THROWS_AS(zf_filter(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("bit error counting", "[detection]") {
    CHECK(count_bit_errors(BitBlock({0, 1, 1, 0}), BitBlock({1, 1, 0, 0})) == 2);
    CHECK_THROWS_AS(count_bit_errors(BitBlock({0, 1}), BitBlock({0, 1, 1, 0})), DimensionError);
}
