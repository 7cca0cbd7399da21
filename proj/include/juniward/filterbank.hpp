#pragma once

#include <array>
#include <cstddef>

#include "juniward/jpeg_model.hpp"
#include "juniward/matrix.hpp"

namespace juniward {

inline constexpr std::size_t kFilterTaps = 16;
/// Symmetric padding applied around the cover before filtering.
inline constexpr std::size_t kResidualPadding = 16;

/// Directional kernels. LH responds to horizontal texture, HL to vertical,
/// HH to diagonal.
enum class Direction : std::size_t { LH = 0, HL = 1, HH = 2 };
inline constexpr std::size_t kDirections = 3;

using Taps = std::array<double, kFilterTaps>;

struct FilterBank {
    Taps lowpass;   // h, Daubechies-8 decomposition low-pass
    Taps highpass;  // g[i] = (-1)^i h[15-i]
    std::array<RealMatrix, kDirections> kernels;

    const RealMatrix& kernel(Direction d) const { return kernels[static_cast<std::size_t>(d)]; }

    /// Separable factors of a kernel: K(a,b) = column(a) * row(b).
    const Taps& column_factor(Direction d) const { return d == Direction::LH ? lowpass : highpass; }
    const Taps& row_factor(Direction d) const { return d == Direction::HL ? lowpass : highpass; }
};

/// K[LH] = outer(h, g), K[HL] = outer(g, h), K[HH] = outer(g, g); the first
/// factor runs down the rows.
FilterBank build_filter_bank();

/// Process-wide instance built on first use.
const FilterBank& default_filter_bank();

/// Half-sample symmetric extension (edge sample repeated). Pads larger than the
/// image keep reflecting, so the result is well defined for any pad.
RealMatrix pad_symmetric(const RealMatrix& img, std::size_t pad);

/// Same-size cross-correlation with zero padding. The kernel anchor is
/// (rows-1)/2, (cols-1)/2, i.e. 7 for 16 taps:
///   out(i,j) = sum_{a,b} K(a,b) * img(i+a-7, j+b-7).
RealMatrix correlate_same(const RealMatrix& img, const RealMatrix& kernel);

/// Full cross-correlation, output (n+m-1) per axis:
///   out(i,j) = sum_{a,b} K(a,b) * img(i+a-(m-1), j+b-(m-1)).
RealMatrix correlate_full(const RealMatrix& img, const RealMatrix& kernel);

/// Wavelet residual planes of a cover, each (n1+32) x (n2+32).
using Residuals = std::array<RealMatrix, kDirections>;

/// W[k] = correlate_same(pad_symmetric(cover, 16), K[k]), evaluated separably.
Residuals residuals(const SpatialImage& cover, const FilterBank& fb = default_filter_bank(),
                    std::size_t threads = 0);

/// Residuals of an already padded image.
Residuals residuals_of_padded(const RealMatrix& padded, const FilterBank& fb = default_filter_bank(),
                              std::size_t threads = 0);

}  // namespace juniward
