#include "juniward/jpeg_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "juniward/errors.hpp"
#include "juniward/parallel.hpp"

namespace juniward {

namespace {

using BasisTable = std::array<BasisBlock, 64>;

BasisTable make_basis_table() {
    BasisTable table{};
    for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
            // c(0)^2 = 1/8 must come out exact for the DC block.
            double scale = 0.25;
            if (u == 0 && v == 0) {
                scale *= 0.5;
            } else if (u == 0 || v == 0) {
                scale *= std::numbers::sqrt2 / 2.0;
            }
            auto& block = table[static_cast<std::size_t>(u * 8 + v)];
            for (int i = 0; i < 8; ++i) {
                const double cu = std::cos((2 * i + 1) * u * std::numbers::pi / 16.0);
                for (int j = 0; j < 8; ++j) {
                    const double cv = std::cos((2 * j + 1) * v * std::numbers::pi / 16.0);
                    block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = scale * cu * cv;
                }
            }
        }
    }
    return table;
}

const BasisTable& basis_table() {
    static const BasisTable table = make_basis_table();
    return table;
}

void require_block_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || rows % kBlockSize != 0 || cols % kBlockSize != 0) {
        throw ValidationError("image size " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " is not a positive multiple of 8");
    }
}

}  // namespace

const QuantTable kLuminanceBaseTable{{
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
}};

const BasisBlock& dct_basis(int u, int v) {
    if (u < 0 || u > 7 || v < 0 || v > 7) throw ValidationError("DCT mode index out of range");
    return basis_table()[static_cast<std::size_t>(u * 8 + v)];
}

QuantTable quality_table(int quality) {
    if (quality < 1 || quality > 100) {
        throw ValidationError("JPEG quality " + std::to_string(quality) + " outside [1, 100]");
    }
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    QuantTable q;
    for (std::size_t i = 0; i < q.steps.size(); ++i) {
        const int scaled = (kLuminanceBaseTable.steps[i] * scale + 50) / 100;
        q.steps[i] = std::clamp(scaled, 1, 255);
    }
    return q;
}

SpatialImage decompress(const DctContainer& c, std::size_t threads) {
    validate(c);
    const auto& basis = basis_table();
    SpatialImage img(c.height(), c.width());
    const std::size_t block_cols = c.block_cols();

    parallel_for(c.block_rows() * block_cols, threads, [&](std::size_t block) {
        const std::size_t r0 = (block / block_cols) * kBlockSize;
        const std::size_t c0 = (block % block_cols) * kBlockSize;
        BasisBlock acc{};
        for (int u = 0; u < 8; ++u) {
            for (int v = 0; v < 8; ++v) {
                const int x = c.coeffs(r0 + static_cast<std::size_t>(u), c0 + static_cast<std::size_t>(v));
                if (x == 0) continue;
                const double amplitude = static_cast<double>(x) * c.quant(u, v);
                const auto& b = basis[static_cast<std::size_t>(u * 8 + v)];
                for (std::size_t i = 0; i < 8; ++i)
                    for (std::size_t j = 0; j < 8; ++j) acc[i][j] += amplitude * b[i][j];
            }
        }
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) img(r0 + i, c0 + j) = acc[i][j];
    });
    return img;
}

RealMatrix forward_dct(const SpatialImage& img) {
    require_block_dims(img.rows(), img.cols());
    const auto& basis = basis_table();
    RealMatrix out(img.rows(), img.cols());
    for (std::size_t r0 = 0; r0 < img.rows(); r0 += kBlockSize) {
        for (std::size_t c0 = 0; c0 < img.cols(); c0 += kBlockSize) {
            for (int u = 0; u < 8; ++u) {
                for (int v = 0; v < 8; ++v) {
                    const auto& b = basis[static_cast<std::size_t>(u * 8 + v)];
                    double sum = 0.0;
                    for (std::size_t i = 0; i < 8; ++i)
                        for (std::size_t j = 0; j < 8; ++j) sum += img(r0 + i, c0 + j) * b[i][j];
                    out(r0 + static_cast<std::size_t>(u), c0 + static_cast<std::size_t>(v)) = sum;
                }
            }
        }
    }
    return out;
}

DctContainer forward_quantize(const SpatialImage& img, const QuantTable& q) {
    const RealMatrix dct = forward_dct(img);
    DctContainer c;
    c.quant = q;
    c.coeffs = IntMatrix(img.rows(), img.cols());
    for (std::size_t r = 0; r < img.rows(); ++r) {
        for (std::size_t col = 0; col < img.cols(); ++col) {
            const int step = q(static_cast<int>(r % kBlockSize), static_cast<int>(col % kBlockSize));
            const double level = std::round(dct(r, col) / step);
            c.coeffs(r, col) = static_cast<int>(std::clamp(level, double{kCoeffMin}, double{kCoeffMax}));
        }
    }
    return c;
}

}  // namespace juniward
