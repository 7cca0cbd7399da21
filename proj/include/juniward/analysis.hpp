#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "juniward/container_io.hpp"
#include "juniward/costmap.hpp"
#include "juniward/embed.hpp"
#include "juniward/jpeg_model.hpp"

namespace juniward {

struct AnalysisSummary {
    double max_abs_diff = 0.0;
    double mean_abs_diff = 0.0;
    double max_block_cost = 0.0;
};

struct AnalysisReport {
    RealMatrix block_orig;
    RealMatrix block_fixed;
    RealMatrix block_diff;  // block_orig - block_fixed
    std::vector<std::array<double, 2>> scatter_blocks;  // (orig_cost, fixed_cost) per block
    std::vector<std::array<double, 2>> scatter_probs;   // (orig_p, fixed_p) per non-wet coefficient
    AnalysisSummary summary;

    std::size_t nzac = 0;
    double sigma = 0.0;
    double payload = 0.0;
    ProbMap probs_orig;
    ProbMap probs_fixed;
};

/// A cover without nonzero ACs carries no payload: p is 0 and lambda infinite.
AnalysisReport compare(const DctContainer& c, const CostParams& params, double payload,
                       std::size_t threads = 0);

/// Largest |a-b| / max(|a|,|b|) over scatter rows.
double max_relative_deviation(std::span<const std::array<double, 2>> rows);

enum class StripePattern { Horizontal, TwoD };

StripePattern parse_pattern(std::string_view name);
std::string_view pattern_name(StripePattern p);

inline constexpr int kStripeCount = 5;
inline constexpr double kSmoothLevel = 128.0;

struct SynthOptions {
    StripePattern pattern = StripePattern::Horizontal;
    std::size_t height = 40;
    std::size_t width = 200;
    int quality = 75;
    std::uint64_t seed = 0;
    /// Textured pixels are 128 + contrast * (255 r - 128), r ~ U[0,1).
    /// contrast 1 gives uniform noise on [0, 255); 0 gives a constant image.
    /// The default (std ~7.4 gray levels) is on the order of mid-quality
    /// quantization steps, so quality changes visibly smooth the texture.
    double contrast = 0.1;
};

/// Band index of a pixel column (or row) when an extent is split in 5 bands.
std::size_t stripe_band(std::size_t pos, std::size_t extent);
/// Odd bands are textured. For stripes_2d a cell is textured when the row and
/// column bands have different parity.
bool is_textured(StripePattern p, std::size_t row, std::size_t col, std::size_t height, std::size_t width);

SpatialImage synth_image(const SynthOptions& opts);
DctContainer synth_cover(const SynthOptions& opts);

enum class ColumnRole { SmoothToTextured, TexturedToSmooth, Interior, Mixed };

/// Classifies each block column of a stripes_h cover. The two block columns
/// on either side of a band edge are boundary columns; a column is interior
/// when every image column that feeds either of its residual windows lies in
/// one band.
std::vector<ColumnRole> stripe_column_roles(std::size_t width);

struct SweepRow {
    int quality;
    double mean_block_cost_fixed;
    double mean_abs_block_diff;
};

/// Quantizes one synthetic spatial image at each quality and reports block stats.
std::vector<SweepRow> quality_sweep(const SynthOptions& base, std::span<const int> qualities,
                                    const CostParams& params = {}, std::size_t threads = 0);

}  // namespace juniward
