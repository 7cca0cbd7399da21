#include "juniward/container_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>

#include <json.hpp>

#include "juniward/errors.hpp"

namespace juniward {

namespace {

using nlohmann::json;

std::string at_index(std::string_view field, std::size_t i) {
    return std::string(field) + "[" + std::to_string(i) + "]";
}

std::string at_index(std::string_view field, std::size_t i, std::size_t j) {
    return at_index(field, i) + "[" + std::to_string(j) + "]";
}

int require_int(const json& value, const std::string& location) {
    if (!value.is_number_integer()) throw FormatError(location, "expected an integer");
    const auto wide = value.get<std::int64_t>();
    if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
        throw FormatError(location, "integer out of range");
    }
    return static_cast<int>(wide);
}

const json& require_field(const json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) throw FormatError(name, "missing field");
    return *it;
}

void append_int_array(std::string& out, std::span<const int> values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

}  // namespace

void validate(const DctContainer& c) {
    if (c.height() == 0 || c.width() == 0) throw ValidationError("container is empty");
    if (c.height() % kBlockSize != 0) {
        throw ValidationError("height " + std::to_string(c.height()) + " is not a multiple of 8");
    }
    if (c.width() % kBlockSize != 0) {
        throw ValidationError("width " + std::to_string(c.width()) + " is not a multiple of 8");
    }
    for (std::size_t i = 0; i < c.quant.steps.size(); ++i) {
        if (c.quant.steps[i] < 1) {
            throw ValidationError(at_index("quant", i) + ": quantization step " +
                                  std::to_string(c.quant.steps[i]) + " < 1");
        }
    }
    for (std::size_t r = 0; r < c.height(); ++r) {
        for (std::size_t col = 0; col < c.width(); ++col) {
            const int x = c.coeffs(r, col);
            if (x < kCoeffMin || x > kCoeffMax) {
                throw ValidationError(at_index("coeffs", r, col) + ": coefficient " + std::to_string(x) +
                                      " outside [-1024, 1023]");
            }
        }
    }
}

DctContainer parse_container(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("byte " + std::to_string(e.byte), "malformed JSON");
    }
    if (!doc.is_object()) throw FormatError("document", "expected a JSON object");

    if (require_int(require_field(doc, "dctc_version"), "dctc_version") != 1) {
        throw FormatError("dctc_version", "unsupported version");
    }
    const int height = require_int(require_field(doc, "height"), "height");
    const int width = require_int(require_field(doc, "width"), "width");
    if (height <= 0) throw FormatError("height", "must be positive");
    if (width <= 0) throw FormatError("width", "must be positive");
    if (height % kBlockSize != 0) throw FormatError("height", std::to_string(height) + " is not a multiple of 8");
    if (width % kBlockSize != 0) throw FormatError("width", std::to_string(width) + " is not a multiple of 8");

    DctContainer c;
    const json& quant = require_field(doc, "quant");
    if (!quant.is_array() || quant.size() != 64) throw FormatError("quant", "expected an array of 64 integers");
    for (std::size_t i = 0; i < 64; ++i) {
        const int q = require_int(quant[i], at_index("quant", i));
        if (q < 1) throw FormatError(at_index("quant", i), "quantization step " + std::to_string(q) + " < 1");
        c.quant.steps[i] = q;
    }

    const json& rows = require_field(doc, "coeffs");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(height)) {
        throw FormatError("coeffs", "expected " + std::to_string(height) + " rows");
    }
    c.coeffs = IntMatrix(static_cast<std::size_t>(height), static_cast<std::size_t>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(width)) {
            throw FormatError(at_index("coeffs", r), "expected " + std::to_string(width) + " columns");
        }
        for (std::size_t col = 0; col < row.size(); ++col) {
            const auto loc = at_index("coeffs", r, col);
            const int x = require_int(row[col], loc);
            if (x < kCoeffMin || x > kCoeffMax) {
                throw FormatError(loc, "coefficient " + std::to_string(x) + " outside [-1024, 1023]");
            }
            c.coeffs(r, col) = x;
        }
    }
    return c;
}

std::string serialize_container(const DctContainer& c) {
    validate(c);
    // Keys in sorted order, one coefficient row per line.
    std::string out = "{\n\"coeffs\": [\n";
    for (std::size_t r = 0; r < c.height(); ++r) {
        append_int_array(out, c.coeffs.row(r));
        out += r + 1 < c.height() ? ",\n" : "\n";
    }
    out += "],\n\"dctc_version\": 1,\n\"height\": " + std::to_string(c.height()) + ",\n\"quant\": ";
    append_int_array(out, c.quant.steps);
    out += ",\n\"width\": " + std::to_string(c.width()) + "\n}\n";
    return out;
}

DctContainer read_container(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        return parse_container(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.location(), e.detail());
    }
}

void write_container(const DctContainer& c, const std::filesystem::path& path) {
    write_text(path, serialize_container(c));
}

std::string format_real(double value) {
    char buf[32];
    const auto res = std::to_chars(std::begin(buf), std::end(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

void require_finite(const RealMatrix& grid) {
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            if (!std::isfinite(grid(r, c))) {
                throw ValidationError("grid(" + std::to_string(r) + ", " + std::to_string(c) +
                                      "): non-finite value");
            }
        }
    }
}

}  // namespace

std::string grid_to_tsv(const RealMatrix& grid) {
    require_finite(grid);
    std::string out;
    for (std::size_t r = 0; r < grid.rows(); ++r) {
        for (std::size_t c = 0; c < grid.cols(); ++c) {
            if (c) out += '\t';
            out += format_real(grid(r, c));
        }
        out += '\n';
    }
    return out;
}

std::vector<std::uint8_t> grid_to_pgm(const RealMatrix& grid) {
    require_finite(grid);
    const std::string header =
        "P5\n" + std::to_string(grid.cols()) + " " + std::to_string(grid.rows()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + grid.size());
    if (grid.empty()) return out;

    const auto [lo, hi] = std::minmax_element(grid.values().begin(), grid.values().end());
    const double min = *lo;
    const double range = *hi - *lo;
    for (double x : grid.values()) {
        const long level = range > 0.0 ? std::lround((x - min) / range * 255.0) : 0;
        out.push_back(static_cast<std::uint8_t>(std::clamp(level, 0L, 255L)));
    }
    return out;
}

RealMatrix parse_tsv(std::string_view text) {
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t fields = 0;
        while (true) {
            const auto tab = line.find('\t');
            const std::string_view field = line.substr(0, tab);
            double v = 0.0;
            const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
            if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
                throw FormatError("line " + std::to_string(line_no) + " field " + std::to_string(fields + 1),
                                  "not a number");
            }
            values.push_back(v);
            ++fields;
            if (tab == std::string_view::npos) break;
            line.remove_prefix(tab + 1);
        }
        if (rows == 0) {
            cols = fields;
        } else if (fields != cols) {
            throw FormatError("line " + std::to_string(line_no),
                              "expected " + std::to_string(cols) + " fields, got " + std::to_string(fields));
        }
        ++rows;
    }
    RealMatrix grid(rows, cols);
    std::copy(values.begin(), values.end(), grid.values().begin());
    return grid;
}

void write_grid(const RealMatrix& grid, const std::filesystem::path& path, GridFormat format) {
    if (format == GridFormat::Tsv) {
        write_text(path, grid_to_tsv(grid));
        return;
    }
    const auto bytes = grid_to_pgm(grid);
    write_text(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

RealMatrix read_tsv(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        return parse_tsv(text);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.location(), e.detail());
    }
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_real(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
               const std::filesystem::path& path) {
    write_text(path, to_csv(header, rows));
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading " + path.string());
    return buf.str();
}

}  // namespace juniward
