#pragma once

#include <array>
#include <cstddef>

#include "juniward/container_io.hpp"
#include "juniward/matrix.hpp"

namespace juniward {

/// Spatial-domain image: unrounded, unclamped, no level shift.
using SpatialImage = RealMatrix;

/// Orthonormal 2-D DCT-II basis function for frequency (u,v), indexed [i][j]
/// over the 8x8 block.
using BasisBlock = std::array<std::array<double, 8>, 8>;

/// Inverse transform of a unit coefficient at (u,v).
const BasisBlock& dct_basis(int u, int v);

/// IJG luminance base table (Annex K), natural order.
extern const QuantTable kLuminanceBaseTable;

/// IJG quality scaling of the luminance base table. quality in [1, 100].
QuantTable quality_table(int quality);

/// Per block: pixels = sum_{u,v} coeff(u,v) * q(u,v) * B_uv.
SpatialImage decompress(const DctContainer& c, std::size_t threads = 0);

/// Unquantized block DCT coefficients of img in block layout.
RealMatrix forward_dct(const SpatialImage& img);

/// round(<block, B_uv> / q(u,v)), ties away from zero, clamped to [-1024, 1023].
DctContainer forward_quantize(const SpatialImage& img, const QuantTable& q);

}  // namespace juniward
