#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "juniward/container_io.hpp"
#include "juniward/filterbank.hpp"
#include "juniward/matrix.hpp"

namespace juniward {

/// Which residual window the per-block denominator reads.
///   Fixed:    the window a block change actually affects, rows/cols [8b+8, 8b+30].
///   Original: the reference implementation's window, shifted by (+1,+1).
enum class WindowMode { Original, Fixed };

inline constexpr std::size_t kImpactSize = 23;  // 8 + 16 - 1
inline constexpr std::size_t kImpactArea = kImpactSize * kImpactSize;

struct CostParams {
    double sigma = 0x1.0p-6;
    double wet_cost = 1e13;
    /// Coefficients with |X| >= threshold get wet_cost. nullopt disables.
    std::optional<int> wet_threshold = 1023;

    static CostParams unwetted(double sigma = 0x1.0p-6) { return {sigma, 1e13, std::nullopt}; }
};

/// |wavelet-domain impact| of a +1 change to each DCT mode, per kernel.
class ImpactLut {
public:
    ImpactLut() : values_(kDirections * 64 * kImpactArea, 0.0) {}

    /// 23x23 row-major table for kernel k, mode (u,v).
    std::span<const double> table(std::size_t k, int u, int v) const {
        return {values_.data() + offset(k, u, v), kImpactArea};
    }
    std::span<double> table(std::size_t k, int u, int v) {
        return {values_.data() + offset(k, u, v), kImpactArea};
    }
    double operator()(std::size_t k, int u, int v, std::size_t a, std::size_t b) const {
        return values_[offset(k, u, v) + a * kImpactSize + b];
    }

private:
    static std::size_t offset(std::size_t k, int u, int v) {
        return (k * 64 + static_cast<std::size_t>(u * 8 + v)) * kImpactArea;
    }
    std::vector<double> values_;
};

ImpactLut build_impact_lut(const QuantTable& q, const FilterBank& fb = default_filter_bank());

/// Inclusive index range.
struct IndexRange {
    std::size_t first, last;
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct WindowBounds {
    IndexRange rows, cols;
    friend bool operator==(const WindowBounds&, const WindowBounds&) = default;
};

/// Denominator window of block (br,bc) in padded-residual coordinates.
WindowBounds window_bounds(std::size_t br, std::size_t bc, WindowMode mode);

struct CostMap {
    RealMatrix rho;
    WindowMode mode = WindowMode::Fixed;
    std::size_t nzac = 0;
    /// Set when wet handling was enabled; entries equal to it are wet.
    std::optional<double> wet_cost;

    bool is_wet(std::size_t row, std::size_t col) const { return wet_cost && rho(row, col) == *wet_cost; }
};

/// Number of nonzero AC coefficients.
std::size_t count_nzac(const DctContainer& c);

/// Fast path: impact LUT over the cover residual, one denominator window per block.
CostMap compute_costmap(const DctContainer& c, WindowMode mode, const CostParams& params = {},
                        std::size_t threads = 0);

/// Fast path with caller-supplied residual planes and LUT. Residual planes
/// must be at least (n1+32) x (n2+32).
CostMap costmap_from_residuals(const DctContainer& c, const Residuals& w, const ImpactLut& lut,
                               WindowMode mode, const CostParams& params = {}, std::size_t threads = 0);

struct OracleOptions {
    /// Mirror the stego change into the symmetric padding as a literal
    /// re-pad of Y would. The fast path never does this, so boundary blocks
    /// then diverge from it.
    bool reflect_change = false;
    /// Sum only over the affected 23x23 window instead of the whole plane.
    bool restrict_to_window = false;
};

/// Naive evaluation: one full residual recomputation per coefficient. Both
/// modes share the stego residuals, so they are produced together.
struct OracleCostMaps {
    CostMap original;
    CostMap fixed;
};
OracleCostMaps costmap_oracle_both(const DctContainer& c, const CostParams& params = {},
                                   const OracleOptions& opts = {});

CostMap costmap_oracle(const DctContainer& c, WindowMode mode, const CostParams& params = {},
                       const OracleOptions& opts = {});

/// Per-block cost with the numerator set to 1:
///   B(br,bc) = sum_k sum_{(i,j) in window} 1 / (sigma + |W_k(i,j)|).
RealMatrix block_costs(const DctContainer& c, WindowMode mode, const CostParams& params = {},
                       std::size_t threads = 0);

RealMatrix block_costs_from_residuals(const Residuals& w, std::size_t block_rows, std::size_t block_cols,
                                      WindowMode mode, double sigma);

}  // namespace juniward
