#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "juniward/analysis.hpp"
#include "juniward/container_io.hpp"
#include "juniward/costmap.hpp"
#include "juniward/embed.hpp"
#include "juniward/errors.hpp"
#include "juniward/filterbank.hpp"
#include "juniward/jpeg_model.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace juniward;

namespace {

template <typename T>
py::array_t<T> to_array(const Matrix<T>& m) {
    py::array_t<T> out({m.rows(), m.cols()});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

template <typename T>
Matrix<T> from_array(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ValidationError("expected a 2-D array");
    Matrix<T> m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.values().begin());
    return m;
}

py::array_t<int> quant_to_array(const QuantTable& q) {
    py::array_t<int> out({8, 8});
    std::copy(q.steps.begin(), q.steps.end(), out.mutable_data());
    return out;
}

QuantTable quant_from_array(const py::array_t<int, py::array::c_style | py::array::forcecast>& a) {
    if (a.size() != 64) throw ValidationError("quantization table must have 64 entries");
    QuantTable q;
    std::copy(a.data(), a.data() + 64, q.steps.begin());
    return q;
}

CostParams params_for(double sigma, bool wet) {
    return wet ? CostParams{sigma} : CostParams::unwetted(sigma);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "J-UNIWARD costmaps with the original and the corrected residual window";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<WindowMode>(m, "WindowMode")
        .value("Original", WindowMode::Original)
        .value("Fixed", WindowMode::Fixed);

    py::class_<DctContainer>(m, "DctContainer")
        .def(py::init([](const py::array_t<int, py::array::c_style | py::array::forcecast>& coeffs,
                         const py::array_t<int, py::array::c_style | py::array::forcecast>& quant) {
                 DctContainer c{quant_from_array(quant), from_array<int>(coeffs)};
                 validate(c);
                 return c;
             }),
             "coeffs"_a, "quant"_a)
        .def_property_readonly("coeffs", [](const DctContainer& c) { return to_array(c.coeffs); })
        .def_property_readonly("quant", [](const DctContainer& c) { return quant_to_array(c.quant); })
        .def_property_readonly("height", &DctContainer::height)
        .def_property_readonly("width", &DctContainer::width)
        .def("__eq__", [](const DctContainer& a, const DctContainer& b) { return a == b; })
        .def("to_json", &serialize_container);

    m.def("read_container", [](const std::string& path) { return read_container(path); }, "path"_a);
    m.def("write_container", [](const DctContainer& c, const std::string& path) { write_container(c, path); },
          "container"_a, "path"_a);

    m.def("quality_table", [](int q) { return quant_to_array(quality_table(q)); }, "quality"_a);
    m.def("decompress", [](const DctContainer& c) { return to_array(decompress(c)); }, "container"_a);
    m.def(
        "forward_quantize",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const py::array_t<int, py::array::c_style | py::array::forcecast>& quant) {
            return forward_quantize(from_array<double>(img), quant_from_array(quant));
        },
        "image"_a, "quant"_a);

    m.def("filter_bank", [] {
        const FilterBank& fb = default_filter_bank();
        py::dict d;
        d["lowpass"] = std::vector<double>(fb.lowpass.begin(), fb.lowpass.end());
        d["highpass"] = std::vector<double>(fb.highpass.begin(), fb.highpass.end());
        d["LH"] = to_array(fb.kernel(Direction::LH));
        d["HL"] = to_array(fb.kernel(Direction::HL));
        d["HH"] = to_array(fb.kernel(Direction::HH));
        return d;
    });

    m.def(
        "window_bounds",
        [](std::size_t br, std::size_t bc, WindowMode mode) {
            const auto w = window_bounds(br, bc, mode);
            return py::make_tuple(py::make_tuple(w.rows.first, w.rows.last), py::make_tuple(w.cols.first, w.cols.last));
        },
        "block_row"_a, "block_col"_a, "mode"_a);

    py::class_<CostMap>(m, "CostMap")
        .def_property_readonly("rho", [](const CostMap& cm) { return to_array(cm.rho); })
        .def_readonly("mode", &CostMap::mode)
        .def_readonly("nzac", &CostMap::nzac);

    m.def(
        "compute_costmap",
        [](const DctContainer& c, WindowMode mode, double sigma, bool wet) {
            py::gil_scoped_release release;
            return compute_costmap(c, mode, params_for(sigma, wet));
        },
        "container"_a, "mode"_a = WindowMode::Fixed, "sigma"_a = 0x1.0p-6, "wet"_a = true);
    m.def(
        "costmap_oracle",
        [](const DctContainer& c, WindowMode mode, double sigma, bool wet) {
            py::gil_scoped_release release;
            return costmap_oracle(c, mode, params_for(sigma, wet));
        },
        "container"_a, "mode"_a = WindowMode::Fixed, "sigma"_a = 0x1.0p-6, "wet"_a = true);
    m.def(
        "block_costs",
        [](const DctContainer& c, WindowMode mode, double sigma) {
            return to_array(block_costs(c, mode, CostParams{sigma}));
        },
        "container"_a, "mode"_a = WindowMode::Fixed, "sigma"_a = 0x1.0p-6);

    py::class_<ProbMap>(m, "ProbMap")
        .def_property_readonly("p", [](const ProbMap& pm) { return to_array(pm.p); })
        .def_readonly("lambda_", &ProbMap::lambda)
        .def_readonly("target_payload", &ProbMap::target_payload)
        .def_readonly("achieved_payload", &ProbMap::achieved_payload);

    m.def("solve_lambda", [](const CostMap& cm, double payload) { return solve_lambda(cm, payload); }, "costmap"_a,
          "payload"_a);
    m.def(
        "simulate",
        [](const ProbMap& pm, const DctContainer& c, std::uint64_t seed) { return simulate(pm, c, seed); },
        "probs"_a, "container"_a, "seed"_a = 0);

    m.def(
        "synth_cover",
        [](const std::string& pattern, std::size_t height, std::size_t width, int quality, std::uint64_t seed,
           double contrast) {
            return synth_cover({parse_pattern(pattern), height, width, quality, seed, contrast});
        },
        "pattern"_a = "stripes_h", "height"_a = 40, "width"_a = 200, "quality"_a = 75, "seed"_a = 0,
        "contrast"_a = SynthOptions{}.contrast);

    m.def(
        "compare",
        [](const DctContainer& c, double payload, double sigma) {
            const AnalysisReport rep = compare(c, CostParams{sigma}, payload);
            py::dict d;
            d["block_orig"] = to_array(rep.block_orig);
            d["block_fixed"] = to_array(rep.block_fixed);
            d["block_diff"] = to_array(rep.block_diff);
            d["scatter_blocks"] = rep.scatter_blocks;
            d["scatter_probs"] = rep.scatter_probs;
            d["max_abs_diff"] = rep.summary.max_abs_diff;
            d["mean_abs_diff"] = rep.summary.mean_abs_diff;
            d["max_block_cost"] = rep.summary.max_block_cost;
            d["nzac"] = rep.nzac;
            d["lambda_original"] = rep.probs_orig.lambda;
            d["lambda_fixed"] = rep.probs_fixed.lambda;
            return d;
        },
        "container"_a, "payload"_a = 0.4, "sigma"_a = 0x1.0p-6);

    m.def(
        "quality_sweep",
        [](const std::vector<int>& qualities, const std::string& pattern, std::size_t height, std::size_t width,
           std::uint64_t seed, double contrast) {
            const auto rows = quality_sweep({parse_pattern(pattern), height, width, qualities.empty() ? 75 : qualities.front(), seed, contrast},
                                            qualities);
            std::vector<py::tuple> out;
            for (const auto& r : rows) out.push_back(py::make_tuple(r.quality, r.mean_block_cost_fixed, r.mean_abs_block_diff));
            return out;
        },
        "qualities"_a, "pattern"_a = "stripes_h", "height"_a = 40, "width"_a = 200, "seed"_a = 0,
        "contrast"_a = SynthOptions{}.contrast);
}
