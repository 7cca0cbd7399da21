#include "juniward/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "juniward/errors.hpp"
#include "juniward/filterbank.hpp"
#include "juniward/rng.hpp"

namespace juniward {

namespace {

double mean(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

// Image column read through symmetric padding.
std::size_t reflect_column(std::ptrdiff_t col, std::size_t width) {
    const auto n = static_cast<std::ptrdiff_t>(width);
    const std::ptrdiff_t period = 2 * n;
    std::ptrdiff_t idx = col % period;
    if (idx < 0) idx += period;
    if (idx >= n) idx = period - 1 - idx;
    return static_cast<std::size_t>(idx);
}

}  // namespace

AnalysisReport compare(const DctContainer& c, const CostParams& params, double payload, std::size_t threads) {
    const auto& fb = default_filter_bank();
    const Residuals w = residuals(decompress(c, threads), fb, threads);
    const ImpactLut lut = build_impact_lut(c.quant, fb);

    AnalysisReport rep;
    rep.sigma = params.sigma;
    rep.payload = payload;
    rep.block_orig = block_costs_from_residuals(w, c.block_rows(), c.block_cols(), WindowMode::Original, params.sigma);
    rep.block_fixed = block_costs_from_residuals(w, c.block_rows(), c.block_cols(), WindowMode::Fixed, params.sigma);
    rep.block_diff = RealMatrix(c.block_rows(), c.block_cols());

    double abs_sum = 0.0;
    for (std::size_t br = 0; br < c.block_rows(); ++br) {
        for (std::size_t bc = 0; bc < c.block_cols(); ++bc) {
            const double orig = rep.block_orig(br, bc);
            const double fixed = rep.block_fixed(br, bc);
            const double diff = orig - fixed;
            rep.block_diff(br, bc) = diff;
            rep.scatter_blocks.push_back({orig, fixed});
            rep.summary.max_abs_diff = std::max(rep.summary.max_abs_diff, std::abs(diff));
            rep.summary.max_block_cost = std::max({rep.summary.max_block_cost, orig, fixed});
            abs_sum += std::abs(diff);
        }
    }
    rep.summary.mean_abs_diff = abs_sum / static_cast<double>(rep.block_diff.size());

    const CostMap cm_orig = costmap_from_residuals(c, w, lut, WindowMode::Original, params, threads);
    const CostMap cm_fixed = costmap_from_residuals(c, w, lut, WindowMode::Fixed, params, threads);
    rep.nzac = cm_fixed.nzac;
    if (rep.nzac == 0) {
        // Zero target bits: nothing changes, lambda is effectively infinite.
        validate_payload(payload);
        for (ProbMap* pm : {&rep.probs_orig, &rep.probs_fixed}) {
            pm->p = RealMatrix(c.height(), c.width(), 0.0);
            pm->lambda = std::numeric_limits<double>::infinity();
        }
    } else {
        rep.probs_orig = solve_lambda(cm_orig, payload);
        rep.probs_fixed = solve_lambda(cm_fixed, payload);
    }

    for (std::size_t r = 0; r < c.height(); ++r) {
        for (std::size_t col = 0; col < c.width(); ++col) {
            if (cm_fixed.is_wet(r, col)) continue;
            rep.scatter_probs.push_back({rep.probs_orig.p(r, col), rep.probs_fixed.p(r, col)});
        }
    }
    return rep;
}

double max_relative_deviation(std::span<const std::array<double, 2>> rows) {
    double worst = 0.0;
    for (const auto& [a, b] : rows) {
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
    }
    return worst;
}

StripePattern parse_pattern(std::string_view name) {
    if (name == "stripes_h") return StripePattern::Horizontal;
    if (name == "stripes_2d") return StripePattern::TwoD;
    throw ValidationError("unknown pattern '" + std::string(name) + "' (expected stripes_h or stripes_2d)");
}

std::string_view pattern_name(StripePattern p) {
    return p == StripePattern::Horizontal ? "stripes_h" : "stripes_2d";
}

std::size_t stripe_band(std::size_t pos, std::size_t extent) {
    return pos * kStripeCount / extent;
}

bool is_textured(StripePattern p, std::size_t row, std::size_t col, std::size_t height, std::size_t width) {
    const std::size_t col_band = stripe_band(col, width);
    if (p == StripePattern::Horizontal) return col_band % 2 == 1;
    return (stripe_band(row, height) + col_band) % 2 == 1;
}

SpatialImage synth_image(const SynthOptions& opts) {
    constexpr std::size_t min_extent = kStripeCount * kBlockSize;
    if (opts.height % kBlockSize != 0 || opts.width % kBlockSize != 0) {
        throw ValidationError("synthetic cover dimensions must be multiples of 8");
    }
    if (opts.width < min_extent || opts.height < kBlockSize ||
        (opts.pattern == StripePattern::TwoD && opts.height < min_extent)) {
        throw ValidationError("synthetic cover too small for 5 bands of at least 8 pixels");
    }
    if (!(opts.contrast >= 0.0)) throw ValidationError("texture contrast must be non-negative");

    SpatialImage img(opts.height, opts.width, kSmoothLevel);
    for (std::size_t r = 0; r < opts.height; ++r) {
        for (std::size_t c = 0; c < opts.width; ++c) {
            if (!is_textured(opts.pattern, r, c, opts.height, opts.width)) continue;
            const double u = uniform_at(opts.seed, static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                                        RngStream::Texture);
            img(r, c) = kSmoothLevel + opts.contrast * (255.0 * u - kSmoothLevel);
        }
    }
    return img;
}

DctContainer synth_cover(const SynthOptions& opts) {
    const QuantTable q = quality_table(opts.quality);
    return forward_quantize(synth_image(opts), q);
}

std::vector<ColumnRole> stripe_column_roles(std::size_t width) {
    if (width % kBlockSize != 0 || width < kStripeCount * kBlockSize) {
        throw ValidationError("width must be a multiple of 8 and at least 40");
    }
    const std::size_t block_cols = width / kBlockSize;
    std::vector<ColumnRole> roles(block_cols, ColumnRole::Mixed);

    // Union of both windows reads padded columns [8bc+1, 8bc+39], i.e. image
    // columns [8bc-15, 8bc+23].
    for (std::size_t bc = 0; bc < block_cols; ++bc) {
        const auto first = static_cast<std::ptrdiff_t>(kBlockSize * bc) - 15;
        const std::size_t band = stripe_band(reflect_column(first, width), width);
        bool uniform = true;
        for (std::ptrdiff_t col = first; col <= first + 38; ++col) {
            if (stripe_band(reflect_column(col, width), width) != band) {
                uniform = false;
                break;
            }
        }
        if (uniform) roles[bc] = ColumnRole::Interior;
    }

    for (std::size_t band = 1; band < static_cast<std::size_t>(kStripeCount); ++band) {
        const std::size_t edge = (band * width + kStripeCount - 1) / kStripeCount;  // first column of band
        const ColumnRole role = band % 2 == 1 ? ColumnRole::SmoothToTextured : ColumnRole::TexturedToSmooth;
        roles[(edge - 1) / kBlockSize] = role;
        roles[edge / kBlockSize] = role;
    }
    return roles;
}

std::vector<SweepRow> quality_sweep(const SynthOptions& base, std::span<const int> qualities,
                                    const CostParams& params, std::size_t threads) {
    if (qualities.empty()) throw ValidationError("quality list is empty");
    for (int q : qualities) quality_table(q);

    const SpatialImage img = synth_image(base);
    std::vector<SweepRow> rows;
    for (int q : qualities) {
        const DctContainer c = forward_quantize(img, quality_table(q));
        const Residuals w = residuals(decompress(c, threads), default_filter_bank(), threads);
        const RealMatrix fixed =
            block_costs_from_residuals(w, c.block_rows(), c.block_cols(), WindowMode::Fixed, params.sigma);
        const RealMatrix orig =
            block_costs_from_residuals(w, c.block_rows(), c.block_cols(), WindowMode::Original, params.sigma);
        std::vector<double> abs_diff(fixed.size());
        for (std::size_t i = 0; i < fixed.size(); ++i) abs_diff[i] = std::abs(orig.values()[i] - fixed.values()[i]);
        rows.push_back({q, mean(fixed.values()), mean(abs_diff)});
    }
    return rows;
}

}  // namespace juniward
