#include <doctest.h>

#include <cmath>

#include "juniward/analysis.hpp"
#include "juniward/errors.hpp"
#include "support/test_support.hpp"

using namespace juniward;

namespace {

SynthOptions stripes(std::uint64_t seed, int quality = 75) {
    SynthOptions o;
    o.seed = seed;
    o.quality = quality;
    return o;
}

}  // namespace

TEST_CASE("constant cover: zero diff, diagonal scatter, no payload") {
    SynthOptions flat = stripes(1);
    flat.contrast = 0.0;
    const DctContainer c = synth_cover(flat);
    CHECK(count_nzac(c) == 0);
    const AnalysisReport rep = compare(c, {}, 0.4);
    for (double d : rep.block_diff.values()) CHECK(d == 0.0);
    for (const auto& [a, b] : rep.scatter_blocks) CHECK(a == b);
    for (const auto& [a, b] : rep.scatter_probs) CHECK(a == b);
    CHECK(rep.summary.max_abs_diff == 0.0);
    CHECK(rep.summary.max_block_cost == doctest::Approx(101568.0).epsilon(1e-12));
    CHECK(std::isinf(rep.probs_fixed.lambda));
    CHECK_THROWS_AS(compare(c, {}, 0.0), ValidationError);
}

TEST_CASE("report grids are consistent") {
    const DctContainer c = synth_cover(stripes(2));
    const AnalysisReport rep = compare(c, {}, 0.4);
    REQUIRE(rep.block_diff.rows() == 5);
    REQUIRE(rep.block_diff.cols() == 25);
    for (std::size_t i = 0; i < rep.block_diff.size(); ++i)
        CHECK(rep.block_diff.values()[i] == rep.block_orig.values()[i] - rep.block_fixed.values()[i]);
    CHECK(rep.scatter_blocks.size() == 125);
    CHECK(rep.scatter_probs.size() == c.coeffs.size());
    CHECK(rep.block_fixed == block_costs(c, WindowMode::Fixed));
    CHECK(rep.block_orig == block_costs(c, WindowMode::Original));
}

TEST_CASE("diff changes sign across stripe edges") {
    const auto roles = stripe_column_roles(200);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (int q : {75, 95}) {
            CAPTURE(seed);
            CAPTURE(q);
            const RealMatrix diff = compare(synth_cover(stripes(seed, q)), {}, 0.4).block_diff;
            for (std::size_t bc = 0; bc < roles.size(); ++bc) {
                for (std::size_t br = 0; br < diff.rows(); ++br) {
                    if (roles[bc] == ColumnRole::SmoothToTextured) CHECK(diff(br, bc) < 0.0);
                    if (roles[bc] == ColumnRole::TexturedToSmooth) CHECK(diff(br, bc) > 0.0);
                }
            }
        }
    }
}

TEST_CASE("smooth stripe interiors show no difference at all") {
    const auto roles = stripe_column_roles(200);
    const RealMatrix diff = compare(synth_cover(stripes(4)), {}, 0.4).block_diff;
    for (std::size_t bc = 0; bc < roles.size(); ++bc) {
        if (roles[bc] != ColumnRole::Interior || stripe_band(8 * bc, 200) % 2 == 1) continue;
        for (std::size_t br = 0; br < diff.rows(); ++br) CHECK(diff(br, bc) == 0.0);
    }
}

TEST_CASE("column roles of a 200-wide stripe cover") {
    const auto roles = stripe_column_roles(200);
    REQUIRE(roles.size() == 25);
    for (std::size_t bc : {4u, 5u, 14u, 15u}) CHECK(roles[bc] == ColumnRole::SmoothToTextured);
    for (std::size_t bc : {9u, 10u, 19u, 20u}) CHECK(roles[bc] == ColumnRole::TexturedToSmooth);
    for (std::size_t bc : {0u, 7u, 12u, 17u, 22u, 24u}) CHECK(roles[bc] == ColumnRole::Interior);
    CHECK(roles[3] == ColumnRole::Mixed);
    CHECK_THROWS_AS(stripe_column_roles(36), ValidationError);
}

TEST_CASE("stripe bands") {
    SynthOptions o = stripes(5);
    o.contrast = 1.0;
    const SpatialImage img = synth_image(o);
    for (std::size_t c = 0; c < 200; ++c) {
        const bool textured = stripe_band(c, 200) % 2 == 1;
        CHECK(is_textured(StripePattern::Horizontal, 0, c, 40, 200) == textured);
        if (!textured) CHECK(img(17, c) == 128.0);
    }
    // Decompressed band means stay near 128.
    const SpatialImage y = decompress(synth_cover(o));
    for (std::size_t band = 0; band < 5; ++band) {
        double sum = 0.0;
        for (std::size_t r = 0; r < 40; ++r)
            for (std::size_t c = 40 * band; c < 40 * (band + 1); ++c) sum += y(r, c);
        CHECK(std::abs(sum / (40.0 * 40.0) - 128.0) <= 8.0);
    }

    SynthOptions grid = o;
    grid.pattern = StripePattern::TwoD;
    grid.height = 40;
    CHECK(is_textured(StripePattern::TwoD, 0, 0, 40, 200) == false);
    CHECK(is_textured(StripePattern::TwoD, 0, 40, 40, 200) == true);
    CHECK(is_textured(StripePattern::TwoD, 8, 40, 40, 200) == false);
    CHECK(synth_image(grid)(0, 0) == 128.0);

    CHECK(parse_pattern("stripes_2d") == StripePattern::TwoD);
    CHECK(pattern_name(StripePattern::Horizontal) == "stripes_h");
    CHECK_THROWS_AS(parse_pattern("checker"), ValidationError);
}

TEST_CASE("synthetic cover validation and determinism") {
    CHECK(synth_cover(stripes(6)) == synth_cover(stripes(6)));
    CHECK_FALSE(synth_cover(stripes(6)) == synth_cover(stripes(7)));

    SynthOptions bad = stripes(1);
    bad.width = 36;
    CHECK_THROWS_AS(synth_cover(bad), ValidationError);
    bad = stripes(1);
    bad.height = 12;
    CHECK_THROWS_AS(synth_cover(bad), ValidationError);
    bad = stripes(1);
    bad.pattern = StripePattern::TwoD;
    bad.height = 32;
    CHECK_THROWS_AS(synth_cover(bad), ValidationError);
    bad = stripes(1);
    bad.contrast = -1.0;
    CHECK_THROWS_AS(synth_cover(bad), ValidationError);
    bad = stripes(1);
    bad.quality = 0;
    CHECK_THROWS_AS(synth_cover(bad), ValidationError);
}

TEST_CASE("quality sweep") {
    const std::vector<int> qualities = {30, 75, 95};
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto rows = quality_sweep(stripes(seed), qualities);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].quality == 30);
        CHECK(rows[0].mean_block_cost_fixed > rows[1].mean_block_cost_fixed);
        CHECK(rows[1].mean_block_cost_fixed > rows[2].mean_block_cost_fixed);
        for (const auto& row : rows) CHECK(row.mean_abs_block_diff / row.mean_block_cost_fixed < 0.05);
    }
    CHECK(quality_sweep(stripes(1), std::vector<int>{50}).size() == 1);
    CHECK_THROWS_AS(quality_sweep(stripes(1), std::vector<int>{}), ValidationError);
    CHECK_THROWS_AS(quality_sweep(stripes(1), std::vector<int>{30, 101}), ValidationError);
}

TEST_CASE("probabilities deviate from the diagonal more than block costs") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const AnalysisReport rep = compare(synth_cover(stripes(seed)), {}, 0.4);
        CHECK(max_relative_deviation(rep.scatter_probs) >= max_relative_deviation(rep.scatter_blocks));
    }
}

TEST_CASE("mirroring the stripes mirrors the diff with opposite sign") {
    // Reversing the column order swaps the two edge types and the (+1,+1)
    // shift now points the other way, so boundary signs flip.
    SynthOptions o = stripes(8);
    const SpatialImage img = synth_image(o);
    SpatialImage mirrored(img.rows(), img.cols());
    for (std::size_t r = 0; r < img.rows(); ++r)
        for (std::size_t c = 0; c < img.cols(); ++c) mirrored(r, c) = img(r, img.cols() - 1 - c);
    const QuantTable q = quality_table(75);
    const RealMatrix a = compare(forward_quantize(img, q), {}, 0.4).block_diff;
    const RealMatrix b = compare(forward_quantize(mirrored, q), {}, 0.4).block_diff;
    const auto roles = stripe_column_roles(200);
    for (std::size_t bc = 0; bc < roles.size(); ++bc) {
        if (roles[bc] != ColumnRole::SmoothToTextured && roles[bc] != ColumnRole::TexturedToSmooth) continue;
        const std::size_t mirror_bc = roles.size() - 1 - bc;
        for (std::size_t br = 0; br < a.rows(); ++br) CHECK(std::signbit(a(br, bc)) != std::signbit(b(br, mirror_bc)));
    }
}

TEST_CASE("analysis is independent of the thread count") {
    const DctContainer c = synth_cover(stripes(9));
    const AnalysisReport a = compare(c, {}, 0.4, 1);
    const AnalysisReport b = compare(c, {}, 0.4, 4);
    CHECK(a.block_diff == b.block_diff);
    CHECK(a.probs_fixed.p == b.probs_fixed.p);
    CHECK(a.probs_orig.lambda == b.probs_orig.lambda);
}
