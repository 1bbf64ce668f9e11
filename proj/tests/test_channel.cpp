#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "lindet/channel.hpp"
#include "lindet/errors.hpp"
#include "lindet/rng.hpp"
#include "oracles.hpp"

using namespace lindet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("substreams are deterministic and distinct", "[rng]") {
    const RngStream root{42, 0};
    CHECK(root.substream(1) == root.substream(1));
    CHECK_FALSE(root.substream(1) == root.substream(2));
    CHECK_FALSE(root.substream(1).substream(2) == root.substream(2).substream(1));
    CHECK(stream_tag("table1") != stream_tag("gain"));

    Rng a(root.substream(5));
    Rng b(root.substream(5));
    for (int i = 0; i < 100; ++i) CHECK(a.standard_normal() == b.standard_normal());
}

TEST_CASE("complex normal moments over 1e6 draws", "[rng][channel]") {
    Rng rng(RngStream{11, 0});
    const std::size_t draws = 1'000'000;
    double sum_re = 0.0;
    double sum_im = 0.0;
    double sum_re2 = 0.0;
    double sum_im2 = 0.0;
    double sum_cross = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const Complex z = rng.complex_normal();
        sum_re += z.real();
        sum_im += z.imag();
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
        sum_cross += z.real() * z.imag();
    }
    const double n = static_cast<double>(draws);
    // Standard errors are about 7e-4 for the means and 7e-4 for the second moments.
    CHECK_THAT(sum_re / n, WithinAbs(0.0, 4e-3));
    CHECK_THAT(sum_im / n, WithinAbs(0.0, 4e-3));
    CHECK_THAT(sum_re2 / n, WithinAbs(0.5, 4e-3));
    CHECK_THAT(sum_im2 / n, WithinAbs(0.5, 4e-3));
    CHECK_THAT((sum_re2 + sum_im2) / n, WithinAbs(1.0, 6e-3));
    CHECK_THAT(sum_cross / n, WithinAbs(0.0, 4e-3));
}

TEST_CASE("random bits are balanced", "[rng]") {
    Rng rng(RngStream{12, 0});
    std::size_t ones = 0;
    for (int i = 0; i < 100000; ++i) ones += rng.bit();
    CHECK_THAT(static_cast<double>(ones) / 1e5, WithinAbs(0.5, 0.01));
}

TEST_CASE("normalize scales to Frobenius norm N", "[channel]") {
    for (std::size_t n : {2u, 4u, 8u}) {
        const ChannelRealization c = normalize(sample_standard_gaussian(n, RngStream{5, n}));
        CHECK_THAT(c.matrix.frobenius_norm(), WithinRel(static_cast<double>(n), 1e-12));
        double energy = 0.0;
        for (double s : c.spectrum.values()) energy += s * s;
        CHECK_THAT(energy, WithinRel(static_cast<double>(n * n), 1e-10));
        CHECK(std::holds_alternative<provenance::Normalized>(c.provenance));
    }
    CHECK_THROWS_AS(normalize(ComplexMatrix(3, 3)), DegenerateInputError);
    CHECK_THROWS_AS(normalize(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("floored sampling respects the floor", "[channel]") {
    Rng rng(RngStream{6, 0});
    for (int t = 0; t < 200; ++t) {
        const ChannelRealization c = sample_floored(4, 0.3, rng);
        CHECK(c.spectrum.last() >= 0.3);
        REQUIRE(std::holds_alternative<provenance::Floored>(c.provenance));
        CHECK(std::get<provenance::Floored>(c.provenance).sigma_min == 0.3);
    }
}

TEST_CASE("floored acceptance rate matches the empirical minimum singular value distribution", "[channel]") {
    // P[sigma_N >= 0.3] for normalized 4x4 channels, estimated from unconditioned draws.
    Rng probe(RngStream{13, 0});
    const int probes = 20000;
    int above = 0;
    for (int t = 0; t < probes; ++t) {
        if (normalize(sample_standard_gaussian(4, probe)).spectrum.last() >= 0.3) ++above;
    }
    const double p = static_cast<double>(above) / probes;

    Rng rng(RngStream{13, 1});
    const int accepted = 5000;
    std::size_t total_attempts = 0;
    for (int t = 0; t < accepted; ++t) {
        std::size_t used = 0;
        sample_floored(4, 0.3, rng, kDefaultMaxAttempts, &used);
        total_attempts += used;
    }
    const double rate = static_cast<double>(accepted) / static_cast<double>(total_attempts);
    // Both estimates carry roughly 0.5% relative error.
    CHECK_THAT(rate, WithinRel(p, 0.04));
}

TEST_CASE("floored sampling reports exhaustion", "[channel]") {
    Rng rng(RngStream{7, 0});
    CHECK_THROWS_AS(sample_floored(4, 5.0, rng, 100), SamplingExhaustedError);
    CHECK_THROWS_AS(sample_floored(4, -1.0, rng), InvalidArgumentError);
}

TEST_CASE("haar unitaries are unitary with uniform entry power", "[channel]") {
    Rng rng(RngStream{8, 0});
    const std::size_t n = 4;
    std::vector<double> power(n * n, 0.0);
    const int draws = 4000;
    for (int t = 0; t < draws; ++t) {
        const ComplexMatrix u = haar_unitary(n, rng);
        REQUIRE(oracle::identity_residual(u) <= 1e-12);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) power[i * n + j] += std::norm(u(i, j));
        }
    }
    // E|U_ij|^2 = 1/n; standard error about 0.003 at this draw count.
    for (double p : power) CHECK_THAT(p / draws, WithinAbs(0.25, 0.015));
}

TEST_CASE("synthesized channels carry the designed spectrum", "[channel]") {
    Rng rng(RngStream{9, 0});
    for (auto profile : {SpectrumProfile::geometric, SpectrumProfile::two_level}) {
        const ChannelRealization c = synthesize_spectrum(4, 15.0, 0.1, rng, profile);
        const Spectrum measured = svd(c.matrix).spectrum;
        for (std::size_t i = 0; i < 4; ++i) CHECK_THAT(measured[i], WithinRel(c.spectrum[i], 1e-10));
        CHECK_THAT(measured.first(), WithinRel(1.5, 1e-10));
        CHECK_THAT(measured.last(), WithinRel(0.1, 1e-10));
        CHECK_THAT(condition_number(c.matrix), WithinRel(15.0, 1e-9));
    }
}

TEST_CASE("designed spectrum profiles", "[channel]") {
    const Spectrum g = designed_spectrum(3, 4.0, 0.5, SpectrumProfile::geometric);
    CHECK_THAT(g[0], WithinRel(2.0, 1e-15));
    CHECK_THAT(g[1], WithinRel(1.0, 1e-15));
    CHECK_THAT(g[2], WithinRel(0.5, 1e-15));

    const Spectrum t = designed_spectrum(5, 10.0, 0.2, SpectrumProfile::two_level);
    CHECK(t[0] == 2.0);
    CHECK(t[2] == 2.0);
    CHECK(t[3] == 0.2);
    CHECK(t[4] == 0.2);

    CHECK_THROWS_AS(designed_spectrum(4, 0.5, 0.1, SpectrumProfile::geometric), InvalidArgumentError);
    CHECK_THROWS_AS(designed_spectrum(4, 2.0, 0.0, SpectrumProfile::geometric), InvalidArgumentError);
}

TEST_CASE("noise sampling and transmission", "[channel]") {
    Rng rng(RngStream{10, 0});
    const ComplexVector zero = sample_noise(3, NoiseModel(0.0), rng);
    for (const Complex& z : zero) CHECK(z == Complex(0.0));

    double power = 0.0;
    const int draws = 50000;
    for (int t = 0; t < draws; ++t) {
        for (const Complex& z : sample_noise(2, NoiseModel(0.25), rng)) power += std::norm(z);
    }
    CHECK_THAT(power / (2.0 * draws), WithinRel(0.25, 0.02));

    const ComplexMatrix h{{1.0, 2.0}, {0.0, Complex(0.0, 1.0)}};
    const ComplexVector x{Complex(1.0, 1.0), Complex(-1.0, 0.0)};
    const ComplexVector n{Complex(0.5, 0.0), Complex(0.0, -0.5)};
    const ComplexVector r = transmit(h, x, n);
    const ComplexVector ref = oracle::naive_apply(h, x);
    CHECK(std::abs(r[0] - (ref[0] + n[0])) < 1e-15);
    CHECK(std::abs(r[1] - (ref[1] + n[1])) < 1e-15);
    CHECK_THROWS_AS(transmit(h, x, ComplexVector(3)), DimensionError);
    CHECK_THROWS_AS(NoiseModel(-1.0), InvalidArgumentError);
}
