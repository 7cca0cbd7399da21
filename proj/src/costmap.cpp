#include "juniward/costmap.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "juniward/errors.hpp"
#include "juniward/jpeg_model.hpp"
#include "juniward/parallel.hpp"

namespace juniward {

namespace {

// A residual sample reads inputs [i-7, i+8], so the first sample touched by a
// block starting at padded row 16+8*br is 8 rows earlier.
constexpr std::size_t kWindowOffset = kResidualPadding - 8;

void require_params(const CostParams& p) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) throw ValidationError("sigma must be positive and finite");
}

bool is_wet(int coeff, const CostParams& p) {
    return p.wet_threshold && std::abs(coeff) >= *p.wet_threshold;
}

void require_residuals(const Residuals& w, const DctContainer& c) {
    for (const auto& plane : w) {
        if (plane.rows() < c.height() + 2 * kResidualPadding || plane.cols() < c.width() + 2 * kResidualPadding) {
            throw ValidationError("residual planes smaller than the padded cover");
        }
    }
}

/// 1 / (sigma + |W_k|) over a block's window, k-major then row-major.
using InverseWindow = std::array<double, kDirections * kImpactArea>;

void inverse_window(const Residuals& w, const WindowBounds& win, double sigma, InverseWindow& out) {
    for (std::size_t k = 0; k < kDirections; ++k) {
        double* dst = out.data() + k * kImpactArea;
        for (std::size_t a = 0; a < kImpactSize; ++a) {
            const double* src = w[k].row(win.rows.first + a).data() + win.cols.first;
            for (std::size_t b = 0; b < kImpactSize; ++b) dst[a * kImpactSize + b] = 1.0 / (sigma + std::abs(src[b]));
        }
    }
}

}  // namespace

ImpactLut build_impact_lut(const QuantTable& q, const FilterBank& fb) {
    ImpactLut lut;
    RealMatrix spatial(kBlockSize, kBlockSize);
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            const auto& basis = dct_basis(u, v);
            const double step = q(u, v);
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j) spatial(i, j) = step * basis[i][j];

            for (std::size_t k = 0; k < kDirections; ++k) {
                const RealMatrix impact = correlate_full(spatial, fb.kernels[k]);
                auto dst = lut.table(k, u, v);
                for (std::size_t i = 0; i < kImpactArea; ++i) dst[i] = std::abs(impact.values()[i]);
            }
        }
    }
    return lut;
}

WindowBounds window_bounds(std::size_t br, std::size_t bc, WindowMode mode) {
    const std::size_t shift = mode == WindowMode::Original ? 1 : 0;
    const std::size_t r0 = kBlockSize * br + kWindowOffset + shift;
    const std::size_t c0 = kBlockSize * bc + kWindowOffset + shift;
    return {{r0, r0 + kImpactSize - 1}, {c0, c0 + kImpactSize - 1}};
}

std::size_t count_nzac(const DctContainer& c) {
    std::size_t n = 0;
    for (std::size_t r = 0; r < c.height(); ++r) {
        for (std::size_t col = 0; col < c.width(); ++col) {
            const bool dc = r % kBlockSize == 0 && col % kBlockSize == 0;
            if (!dc && c.coeffs(r, col) != 0) ++n;
        }
    }
    return n;
}

CostMap costmap_from_residuals(const DctContainer& c, const Residuals& w, const ImpactLut& lut, WindowMode mode,
                               const CostParams& params, std::size_t threads) {
    validate(c);
    require_params(params);
    require_residuals(w, c);

    CostMap cm;
    cm.mode = mode;
    cm.nzac = count_nzac(c);
    cm.rho = RealMatrix(c.height(), c.width());
    if (params.wet_threshold) cm.wet_cost = params.wet_cost;
    const std::size_t block_cols = c.block_cols();

    parallel_for(c.block_rows() * block_cols, threads, [&](std::size_t block) {
        const std::size_t br = block / block_cols;
        const std::size_t bc = block % block_cols;
        InverseWindow inv;
        inverse_window(w, window_bounds(br, bc, mode), params.sigma, inv);

        for (int u = 0; u < 8; ++u) {
            for (int v = 0; v < 8; ++v) {
                const auto [row, col] = block_position({br, bc, u, v});
                if (is_wet(c.coeffs(row, col), params)) {
                    cm.rho(row, col) = params.wet_cost;
                    continue;
                }
                double rho = 0.0;
                for (std::size_t k = 0; k < kDirections; ++k) {
                    const auto numer = lut.table(k, u, v);
                    const double* denom = inv.data() + k * kImpactArea;
                    for (std::size_t i = 0; i < kImpactArea; ++i) rho += numer[i] * denom[i];
                }
                cm.rho(row, col) = rho;
            }
        }
    });
    return cm;
}

CostMap compute_costmap(const DctContainer& c, WindowMode mode, const CostParams& params, std::size_t threads) {
    const auto& fb = default_filter_bank();
    const Residuals w = residuals(decompress(c, threads), fb, threads);
    return costmap_from_residuals(c, w, build_impact_lut(c.quant, fb), mode, params, threads);
}

OracleCostMaps costmap_oracle_both(const DctContainer& c, const CostParams& params, const OracleOptions& opts) {
    validate(c);
    require_params(params);
    const auto& fb = default_filter_bank();

    const SpatialImage cover = decompress(c, 1);
    const RealMatrix padded_cover = pad_symmetric(cover, kResidualPadding);
    Residuals w_cover;
    for (std::size_t k = 0; k < kDirections; ++k) w_cover[k] = correlate_same(padded_cover, fb.kernels[k]);

    OracleCostMaps out;
    out.original = {RealMatrix(c.height(), c.width()), WindowMode::Original, count_nzac(c), std::nullopt};
    out.fixed = {RealMatrix(c.height(), c.width()), WindowMode::Fixed, out.original.nzac, std::nullopt};
    if (params.wet_threshold) {
        out.original.wet_cost = params.wet_cost;
        out.fixed.wet_cost = params.wet_cost;
    }

    const std::size_t plane_rows = padded_cover.rows();
    const std::size_t plane_cols = padded_cover.cols();
    const double sigma = params.sigma;

    for (std::size_t row = 0; row < c.height(); ++row) {
        for (std::size_t col = 0; col < c.width(); ++col) {
            const int x = c.coeffs(row, col);
            if (is_wet(x, params)) {
                out.original.rho(row, col) = params.wet_cost;
                out.fixed.rho(row, col) = params.wet_cost;
                continue;
            }
            // +1 and -1 cost the same; step down only where +1 would leave the range.
            DctContainer stego = c;
            stego.coeffs(row, col) = x < kCoeffMax ? x + 1 : x - 1;
            const SpatialImage stego_spatial = decompress(stego, 1);

            RealMatrix padded_stego;
            if (opts.reflect_change) {
                padded_stego = pad_symmetric(stego_spatial, kResidualPadding);
            } else {
                padded_stego = padded_cover;
                for (std::size_t i = 0; i < stego_spatial.rows(); ++i)
                    for (std::size_t j = 0; j < stego_spatial.cols(); ++j)
                        padded_stego(i + kResidualPadding, j + kResidualPadding) = stego_spatial(i, j);
            }

            const BlockIndex bi = block_index(row, col);
            const WindowBounds affected = window_bounds(bi.br, bi.bc, WindowMode::Fixed);
            const IndexRange rows = opts.restrict_to_window ? affected.rows : IndexRange{0, plane_rows - 1};
            const IndexRange cols = opts.restrict_to_window ? affected.cols : IndexRange{0, plane_cols - 1};

            double rho_fixed = 0.0;
            double rho_original = 0.0;
            for (std::size_t k = 0; k < kDirections; ++k) {
                const RealMatrix w_stego = correlate_same(padded_stego, fb.kernels[k]);
                const RealMatrix& wc = w_cover[k];
                for (std::size_t i = rows.first; i <= rows.last; ++i) {
                    for (std::size_t j = cols.first; j <= cols.last; ++j) {
                        const double numer = std::abs(wc(i, j) - w_stego(i, j));
                        if (numer == 0.0) continue;
                        rho_fixed += numer / (sigma + std::abs(wc(i, j)));
                        // The reference reads the denominator one sample down and right.
                        if (i + 1 < plane_rows && j + 1 < plane_cols) {
                            rho_original += numer / (sigma + std::abs(wc(i + 1, j + 1)));
                        }
                    }
                }
            }
            out.fixed.rho(row, col) = rho_fixed;
            out.original.rho(row, col) = rho_original;
        }
    }
    return out;
}

CostMap costmap_oracle(const DctContainer& c, WindowMode mode, const CostParams& params, const OracleOptions& opts) {
    auto both = costmap_oracle_both(c, params, opts);
    return mode == WindowMode::Original ? std::move(both.original) : std::move(both.fixed);
}

RealMatrix block_costs_from_residuals(const Residuals& w, std::size_t block_rows, std::size_t block_cols,
                                      WindowMode mode, double sigma) {
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    for (const auto& plane : w) {
        if (plane.rows() < kBlockSize * block_rows + 2 * kResidualPadding ||
            plane.cols() < kBlockSize * block_cols + 2 * kResidualPadding) {
            throw ValidationError("residual planes smaller than the padded cover");
        }
    }
    RealMatrix out(block_rows, block_cols);
    for (std::size_t br = 0; br < block_rows; ++br) {
        for (std::size_t bc = 0; bc < block_cols; ++bc) {
            const WindowBounds win = window_bounds(br, bc, mode);
            double sum = 0.0;
            for (std::size_t k = 0; k < kDirections; ++k)
                for (std::size_t i = win.rows.first; i <= win.rows.last; ++i)
                    for (std::size_t j = win.cols.first; j <= win.cols.last; ++j)
                        sum += 1.0 / (sigma + std::abs(w[k](i, j)));
            out(br, bc) = sum;
        }
    }
    return out;
}

RealMatrix block_costs(const DctContainer& c, WindowMode mode, const CostParams& params, std::size_t threads) {
    require_params(params);
    const Residuals w = residuals(decompress(c, threads), default_filter_bank(), threads);
    return block_costs_from_residuals(w, c.block_rows(), c.block_cols(), mode, params.sigma);
}

}  // namespace juniward
