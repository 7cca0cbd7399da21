#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "juniward/matrix.hpp"

namespace juniward {

inline constexpr int kBlockSize = 8;
inline constexpr int kCoeffMin = -1024;
inline constexpr int kCoeffMax = 1023;

/// 8x8 quantization steps in natural (row-major, u major) order.
struct QuantTable {
    std::array<int, 64> steps{};

    int operator()(int u, int v) const noexcept { return steps[static_cast<std::size_t>(u * 8 + v)]; }
    int& operator()(int u, int v) noexcept { return steps[static_cast<std::size_t>(u * 8 + v)]; }

    static QuantTable uniform(int step) {
        QuantTable q;
        q.steps.fill(step);
        return q;
    }

    friend bool operator==(const QuantTable&, const QuantTable&) = default;
};

/// Quantized luminance DCT plane. Coefficient (u,v) of block (br,bc) sits at
/// coeffs(8*br+u, 8*bc+v).
struct DctContainer {
    QuantTable quant;
    IntMatrix coeffs;

    std::size_t height() const noexcept { return coeffs.rows(); }
    std::size_t width() const noexcept { return coeffs.cols(); }
    std::size_t block_rows() const noexcept { return height() / kBlockSize; }
    std::size_t block_cols() const noexcept { return width() / kBlockSize; }

    friend bool operator==(const DctContainer&, const DctContainer&) = default;
};

struct BlockIndex {
    std::size_t br, bc;
    int u, v;

    friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

inline BlockIndex block_index(std::size_t row, std::size_t col) noexcept {
    return {row / kBlockSize, col / kBlockSize, static_cast<int>(row % kBlockSize),
            static_cast<int>(col % kBlockSize)};
}

inline std::pair<std::size_t, std::size_t> block_position(const BlockIndex& b) noexcept {
    return {b.br * kBlockSize + static_cast<std::size_t>(b.u),
            b.bc * kBlockSize + static_cast<std::size_t>(b.v)};
}

/// Throws ValidationError naming the first violated invariant.
void validate(const DctContainer& c);

// DCTC v1 JSON container.
DctContainer parse_container(std::string_view text);
std::string serialize_container(const DctContainer& c);
DctContainer read_container(const std::filesystem::path& path);
void write_container(const DctContainer& c, const std::filesystem::path& path);

enum class GridFormat { Tsv, Pgm };

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double value);

std::string grid_to_tsv(const RealMatrix& grid);
/// Binary P5, min->0 and max->255 linearly; a constant grid maps to 0.
std::vector<std::uint8_t> grid_to_pgm(const RealMatrix& grid);
RealMatrix parse_tsv(std::string_view text);

void write_grid(const RealMatrix& grid, const std::filesystem::path& path, GridFormat format);
RealMatrix read_tsv(const std::filesystem::path& path);

/// Comma-separated, header row first.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
void write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
               const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view contents);
std::string read_text(const std::filesystem::path& path);

}  // namespace juniward
