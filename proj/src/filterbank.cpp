#include "juniward/filterbank.hpp"

#include <algorithm>
#include <string>

#include "juniward/errors.hpp"
#include "juniward/parallel.hpp"

namespace juniward {

namespace {

// Daubechies-8 decomposition low-pass filter (16 taps, 8 vanishing moments).
constexpr Taps kDb8Lowpass = {
    -0.00011747678412476953, 0.0006754494064505693,  -0.00039174037337694705, -0.004870352993451574,
    0.008746094047405777,    0.013981027917398282,   -0.044088253930794755,   -0.017369301001807547,
    0.12874742662047847,     0.0004724845739132828,  -0.2840155429615469,     -0.015829105256349306,
    0.5853546836542067,      0.6756307362972898,     0.31287159091429995,     0.05441584224310401,
};

RealMatrix outer(const Taps& column, const Taps& row) {
    RealMatrix k(kFilterTaps, kFilterTaps);
    for (std::size_t a = 0; a < kFilterTaps; ++a)
        for (std::size_t b = 0; b < kFilterTaps; ++b) k(a, b) = column[a] * row[b];
    return k;
}

// out(i,j) = sum_{a,b} K(a,b) * img(i+a-off_r, j+b-off_c), zero outside img.
RealMatrix correlate(const RealMatrix& img, const RealMatrix& kernel, std::size_t out_rows,
                     std::size_t out_cols, std::ptrdiff_t off_r, std::ptrdiff_t off_c) {
    RealMatrix out(out_rows, out_cols);
    const auto n_rows = static_cast<std::ptrdiff_t>(img.rows());
    const auto n_cols = static_cast<std::ptrdiff_t>(img.cols());
    const auto o_cols = static_cast<std::ptrdiff_t>(out_cols);

    for (std::size_t i = 0; i < out_rows; ++i) {
        double* dst = out.row(i).data();
        for (std::size_t a = 0; a < kernel.rows(); ++a) {
            const std::ptrdiff_t src_row = static_cast<std::ptrdiff_t>(i + a) - off_r;
            if (src_row < 0 || src_row >= n_rows) continue;
            const double* src = img.row(static_cast<std::size_t>(src_row)).data();
            for (std::size_t b = 0; b < kernel.cols(); ++b) {
                const double k = kernel(a, b);
                const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(b) - off_c;
                // Output columns j with 0 <= j + shift < n_cols.
                const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, -shift);
                const std::ptrdiff_t j1 = std::min(o_cols, n_cols - shift);
                for (std::ptrdiff_t j = j0; j < j1; ++j) dst[j] += k * src[j + shift];
            }
        }
    }
    return out;
}

// Same-size correlation with outer(column, row), anchored at 7.
RealMatrix correlate_separable(const RealMatrix& img, const Taps& column, const Taps& row) {
    constexpr std::ptrdiff_t anchor = (kFilterTaps - 1) / 2;
    const auto n_rows = static_cast<std::ptrdiff_t>(img.rows());
    const auto n_cols = static_cast<std::ptrdiff_t>(img.cols());

    RealMatrix horizontal(img.rows(), img.cols());
    for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
        const double* src = img.row(static_cast<std::size_t>(i)).data();
        double* dst = horizontal.row(static_cast<std::size_t>(i)).data();
        for (std::ptrdiff_t j = 0; j < n_cols; ++j) {
            double sum = 0.0;
            for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(kFilterTaps); ++b) {
                const std::ptrdiff_t c = j + b - anchor;
                if (c >= 0 && c < n_cols) sum += row[static_cast<std::size_t>(b)] * src[c];
            }
            dst[j] = sum;
        }
    }

    RealMatrix out(img.rows(), img.cols());
    for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
        double* dst = out.row(static_cast<std::size_t>(i)).data();
        for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(kFilterTaps); ++a) {
            const std::ptrdiff_t r = i + a - anchor;
            if (r < 0 || r >= n_rows) continue;
            const double k = column[static_cast<std::size_t>(a)];
            const double* src = horizontal.row(static_cast<std::size_t>(r)).data();
            for (std::ptrdiff_t j = 0; j < n_cols; ++j) dst[j] += k * src[j];
        }
    }
    return out;
}

}  // namespace

FilterBank build_filter_bank() {
    FilterBank fb;
    fb.lowpass = kDb8Lowpass;
    for (std::size_t i = 0; i < kFilterTaps; ++i) {
        const double sign = i % 2 == 0 ? 1.0 : -1.0;
        fb.highpass[i] = sign * kDb8Lowpass[kFilterTaps - 1 - i];
    }
    for (Direction d : {Direction::LH, Direction::HL, Direction::HH}) {
        fb.kernels[static_cast<std::size_t>(d)] = outer(fb.column_factor(d), fb.row_factor(d));
    }
    return fb;
}

const FilterBank& default_filter_bank() {
    static const FilterBank fb = build_filter_bank();
    return fb;
}

RealMatrix pad_symmetric(const RealMatrix& img, std::size_t pad) {
    if (img.empty()) throw ValidationError("cannot pad an empty image");

    // Source index for padded coordinate p - pad; the pattern repeats every 2n.
    auto reflect = [pad](std::size_t p, std::size_t n) {
        const auto period = static_cast<std::ptrdiff_t>(2 * n);
        std::ptrdiff_t idx = (static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(pad)) % period;
        if (idx < 0) idx += period;
        if (idx >= static_cast<std::ptrdiff_t>(n)) idx = period - 1 - idx;
        return static_cast<std::size_t>(idx);
    };

    RealMatrix out(img.rows() + 2 * pad, img.cols() + 2 * pad);
    std::vector<std::size_t> col_src(out.cols());
    for (std::size_t c = 0; c < out.cols(); ++c) col_src[c] = reflect(c, img.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        const auto src = img.row(reflect(r, img.rows()));
        auto dst = out.row(r);
        for (std::size_t c = 0; c < out.cols(); ++c) dst[c] = src[col_src[c]];
    }
    return out;
}

RealMatrix correlate_same(const RealMatrix& img, const RealMatrix& kernel) {
    if (kernel.empty()) throw ValidationError("empty correlation kernel");
    return correlate(img, kernel, img.rows(), img.cols(), static_cast<std::ptrdiff_t>((kernel.rows() - 1) / 2),
                     static_cast<std::ptrdiff_t>((kernel.cols() - 1) / 2));
}

RealMatrix correlate_full(const RealMatrix& img, const RealMatrix& kernel) {
    if (kernel.empty()) throw ValidationError("empty correlation kernel");
    return correlate(img, kernel, img.rows() + kernel.rows() - 1, img.cols() + kernel.cols() - 1,
                     static_cast<std::ptrdiff_t>(kernel.rows() - 1), static_cast<std::ptrdiff_t>(kernel.cols() - 1));
}

Residuals residuals_of_padded(const RealMatrix& padded, const FilterBank& fb, std::size_t threads) {
    Residuals w;
    parallel_for(kDirections, threads, [&](std::size_t k) {
        const auto d = static_cast<Direction>(k);
        w[k] = correlate_separable(padded, fb.column_factor(d), fb.row_factor(d));
    });
    return w;
}

Residuals residuals(const SpatialImage& cover, const FilterBank& fb, std::size_t threads) {
    return residuals_of_padded(pad_symmetric(cover, kResidualPadding), fb, threads);
}

}  // namespace juniward
