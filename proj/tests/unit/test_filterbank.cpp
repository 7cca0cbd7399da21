#include <doctest.h>

#include <cmath>
#include <numeric>

#include "juniward/errors.hpp"
#include "juniward/filterbank.hpp"
#include "support/test_support.hpp"

using namespace juniward;
using juniward::testing::brute_force_correlate;
using juniward::testing::max_abs_difference;
using juniward::testing::random_matrix;

namespace {

const FilterBank& fb() { return default_filter_bank(); }

RealMatrix delta_kernel(std::size_t a, std::size_t b) {
    RealMatrix k(kFilterTaps, kFilterTaps);
    k(a, b) = 1.0;
    return k;
}

// Valid-region 1-D correlation of taps with s[i] = i^p, in long double so the
// check measures the filter rather than cancellation in the test itself.
long double worst_polynomial_response(const Taps& taps, int degree) {
    long double worst = 0.0L;
    for (int start = 0; start < 32; ++start) {
        long double sum = 0.0L;
        for (std::size_t i = 0; i < kFilterTaps; ++i)
            sum += static_cast<long double>(taps[i]) * std::pow(static_cast<long double>(start + static_cast<int>(i)), degree);
        worst = std::max(worst, std::fabs(sum));
    }
    return worst;
}

}  // namespace

TEST_CASE("db8 pair normalization") {
    const double sum_h = std::accumulate(fb().lowpass.begin(), fb().lowpass.end(), 0.0);
    const double sum_g = std::accumulate(fb().highpass.begin(), fb().highpass.end(), 0.0);
    const double energy = std::inner_product(fb().lowpass.begin(), fb().lowpass.end(), fb().lowpass.begin(), 0.0);
    CHECK(std::abs(sum_g) <= 1e-10);
    CHECK(std::abs(sum_h - std::sqrt(2.0)) <= 1e-10);
    CHECK(std::abs(energy - 1.0) <= 1e-10);

    // Orthogonality to even shifts.
    for (std::size_t s = 2; s < kFilterTaps; s += 2) {
        double dot = 0.0;
        for (std::size_t i = 0; i + s < kFilterTaps; ++i) dot += fb().lowpass[i] * fb().lowpass[i + s];
        CHECK(std::abs(dot) <= 1e-10);
    }
}

TEST_CASE("highpass is the alternating flip of the lowpass") {
    for (std::size_t i = 0; i < kFilterTaps; ++i) {
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        CHECK(fb().highpass[i] == sign * fb().lowpass[kFilterTaps - 1 - i]);
    }
}

TEST_CASE("highpass annihilates polynomials up to degree 7") {
    for (int p = 0; p <= 7; ++p) {
        CAPTURE(p);
        // Relative to the size of the inputs (up to 47^p).
        const long double scale = std::max(1.0L, std::pow(47.0L, p));
        CHECK(static_cast<double>(worst_polynomial_response(fb().highpass, p) / scale) <= 1e-6);
    }
    // A single length-16 sequence s[i] = i^p, absolute.
    for (int p = 0; p <= 7; ++p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < kFilterTaps; ++i) sum += fb().highpass[i] * std::pow(static_cast<double>(i), p);
        CHECK(std::abs(sum) <= 1e-6);
    }
    // Degree 8 is no longer annihilated.
    CHECK(static_cast<double>(worst_polynomial_response(fb().highpass, 8)) > 1.0);
}

TEST_CASE("kernels are the declared outer products and sum to zero") {
    const auto& h = fb().lowpass;
    const auto& g = fb().highpass;
    for (std::size_t a = 0; a < kFilterTaps; ++a) {
        for (std::size_t b = 0; b < kFilterTaps; ++b) {
            CHECK(fb().kernel(Direction::LH)(a, b) == h[a] * g[b]);
            CHECK(fb().kernel(Direction::HL)(a, b) == g[a] * h[b]);
            CHECK(fb().kernel(Direction::HH)(a, b) == g[a] * g[b]);
        }
    }
    for (const auto& k : fb().kernels) {
        CHECK(k.rows() == 16);
        CHECK(k.cols() == 16);
        CHECK(std::abs(std::accumulate(k.values().begin(), k.values().end(), 0.0)) <= 1e-10);
    }
}

TEST_CASE("symmetric padding") {
    CHECK(pad_symmetric(RealMatrix(8, 8, 1.0), kResidualPadding).rows() == 40);
    CHECK(pad_symmetric(RealMatrix(8, 8, 1.0), kResidualPadding).cols() == 40);

    RealMatrix small(2, 2);
    small(0, 0) = 1;
    small(0, 1) = 2;
    small(1, 0) = 3;
    small(1, 1) = 4;
    const RealMatrix p = pad_symmetric(small, 1);
    const std::vector<double> expected = {1, 1, 2, 2, 1, 1, 2, 2, 3, 3, 4, 4, 3, 3, 4, 4};
    CHECK(std::vector<double>(p.values().begin(), p.values().end()) == expected);

    const RealMatrix flat = pad_symmetric(RealMatrix(8, 16, 3.5), 16);
    for (double x : flat.values()) CHECK(x == 3.5);

    // Edge sample repeated, then inward.
    const RealMatrix img = random_matrix(8, 8, 5);
    const RealMatrix big = pad_symmetric(img, 16);
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(big(15, 16 + j) == img(0, j));
        CHECK(big(14, 16 + j) == img(1, j));
        CHECK(big(24, 16 + j) == img(7, j));
        CHECK(big(25, 16 + j) == img(6, j));
        // Beyond one image height the reflection continues periodically.
        CHECK(big(7, 16 + j) == img(7, j));
        CHECK(big(0, 16 + j) == img(0, j));
    }
    CHECK_THROWS_AS(pad_symmetric(RealMatrix(), 1), ValidationError);
}

TEST_CASE("delta kernel at the anchor is the identity") {
    const RealMatrix img = random_matrix(24, 20, 1);
    CHECK(correlate_same(img, delta_kernel(7, 7)) == img);
}

TEST_CASE("correlate_same matches the textbook double loop") {
    const RealMatrix img = random_matrix(24, 24, 2);
    for (const auto& k : fb().kernels) CHECK(max_abs_difference(correlate_same(img, k), brute_force_correlate(img, k, 24, 24, 7, 7)) <= 1e-12);
    const RealMatrix rnd = random_matrix(16, 16, 3);
    CHECK(max_abs_difference(correlate_same(img, rnd), brute_force_correlate(img, rnd, 24, 24, 7, 7)) <= 1e-12);
    CHECK(max_abs_difference(correlate_full(img, rnd), brute_force_correlate(img, rnd, 39, 39, 15, 15)) <= 1e-12);
}

TEST_CASE("first output touched by a real pixel is (8,8)") {
    // Padded 8x8 cover; which outputs depend on the original 8x8 region [16,24)?
    const RealMatrix padded(40, 40, 0.0);
    RealMatrix probe = padded;
    const RealMatrix& k = fb().kernel(Direction::HH);
    std::size_t first_row = 40, first_col = 40;
    for (std::size_t r = 16; r < 24; ++r) {
        for (std::size_t c = 16; c < 24; ++c) {
            probe(r, c) = 1.0;
            const RealMatrix out = correlate_same(probe, k);
            probe(r, c) = 0.0;
            for (std::size_t i = 0; i < 40; ++i)
                for (std::size_t j = 0; j < 40; ++j)
                    if (out(i, j) != 0.0) {
                        first_row = std::min(first_row, i);
                        first_col = std::min(first_col, j);
                    }
        }
    }
    CHECK(first_row == 8);
    CHECK(first_col == 8);

    // Outputs at index >= 7 (and <= 40-9) read only padded-cover samples.
    const RealMatrix ones = correlate_same(RealMatrix(40, 40, 1.0), k);
    CHECK(std::abs(ones(7, 7)) <= 1e-15);
    CHECK(std::abs(ones(31, 31)) <= 1e-15);
    CHECK(std::abs(ones(6, 6)) > 1e-6);
    CHECK(std::abs(ones(32, 32)) > 1e-12);
}

TEST_CASE("residuals of a constant cover vanish away from the zero padding") {
    const Residuals w = residuals(RealMatrix(16, 24, 100.0));
    for (const auto& plane : w) {
        REQUIRE(plane.rows() == 48);
        REQUIRE(plane.cols() == 56);
        double worst = 0.0;
        for (std::size_t i = 7; i + 8 < plane.rows(); ++i)
            for (std::size_t j = 7; j + 8 < plane.cols(); ++j) worst = std::max(worst, std::abs(plane(i, j)));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("a cover varying only down the columns silences the row high-pass kernels") {
    RealMatrix cover(16, 16);
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c) cover(r, c) = std::sin(0.7 * static_cast<double>(r)) * 50.0;
    const Residuals w = residuals(cover);
    for (Direction d : {Direction::LH, Direction::HH}) {
        const auto& plane = w[static_cast<std::size_t>(d)];
        double worst = 0.0;
        for (std::size_t i = 7; i + 8 < plane.rows(); ++i)
            for (std::size_t j = 7; j + 8 < plane.cols(); ++j) worst = std::max(worst, std::abs(plane(i, j)));
        CHECK(worst <= 1e-10);
    }
    // HL (high-pass down the rows) does respond.
    CHECK(std::abs(w[1](24, 24)) > 1e-3);
}

TEST_CASE("residuals are linear") {
    const RealMatrix x = random_matrix(16, 24, 7, 0, 255);
    const RealMatrix y = random_matrix(16, 24, 8, 0, 255);
    RealMatrix xy = x;
    for (std::size_t i = 0; i < xy.size(); ++i) xy.values()[i] += y.values()[i];
    const Residuals wx = residuals(x), wy = residuals(y), wxy = residuals(xy);
    for (std::size_t k = 0; k < kDirections; ++k) {
        RealMatrix sum = wx[k];
        for (std::size_t i = 0; i < sum.size(); ++i) sum.values()[i] += wy[k].values()[i];
        CHECK(max_abs_difference(sum, wxy[k]) <= 1e-10);
    }
}

TEST_CASE("separable residuals equal direct 2-D correlation") {
    const RealMatrix cover = random_matrix(24, 16, 9, 0, 255);
    const RealMatrix padded = pad_symmetric(cover, kResidualPadding);
    const Residuals w = residuals(cover, fb(), 3);
    for (std::size_t k = 0; k < kDirections; ++k) CHECK(max_abs_difference(w[k], correlate_same(padded, fb().kernels[k])) <= 1e-10);
    CHECK(residuals(cover, fb(), 1)[2] == w[2]);
}

TEST_CASE("flipping the sign of g only flips residual signs") {
    FilterBank flipped = build_filter_bank();
    for (double& x : flipped.highpass) x = -x;
    for (std::size_t k = 0; k < 2; ++k)
        for (double& x : flipped.kernels[k].values()) x = -x;
    const RealMatrix cover = random_matrix(16, 16, 10, 0, 255);
    const Residuals a = residuals(cover), b = residuals(cover, flipped);
    for (std::size_t k = 0; k < kDirections; ++k)
        for (std::size_t i = 0; i < a[k].size(); ++i) CHECK(std::abs(a[k].values()[i]) == std::abs(b[k].values()[i]));
}
