#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>

#include "apsp/access_model.hpp"
#include "apsp/io.hpp"
#include "apsp/kernels.hpp"
#include "apsp/scheduler.hpp"
#include "apsp/tiling.hpp"

namespace py = pybind11;

namespace {

apsp::DistanceMatrix matrix_from_array(py::array_t<float, py::array::c_style |
                                                              py::array::forcecast> arr) {
  if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1) || arr.shape(0) < 1)
    throw std::invalid_argument("expected a square 2-D array");
  apsp::DistanceMatrix m;
  m.layout = apsp::Layout::RowMajor;
  m.n = static_cast<std::uint64_t>(arr.shape(0));
  m.dim = m.n;
  m.data.resize(m.n * m.n);
  std::memcpy(m.data.data(), arr.data(), m.data.size() * sizeof(float));
  return m;
}

py::array_t<float> array_from_matrix(const apsp::DistanceMatrix& m) {
  py::array_t<float> arr(std::vector<py::ssize_t>{
      static_cast<py::ssize_t>(m.n), static_cast<py::ssize_t>(m.n)});
  std::memcpy(arr.mutable_data(), m.data.data(), m.data.size() * sizeof(float));
  return arr;
}

apsp::TileConfig make_config(std::uint32_t tile_size, std::uint32_t inner,
                             std::uint32_t stage_width) {
  apsp::TileConfig cfg;
  cfg.outer = tile_size;
  cfg.inner = inner;
  cfg.stage_width = stage_width;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_apsp, m) {
  m.doc() = "Blocked all-pairs shortest paths engine with a GPU memory-access model";

  m.def(
      "shortest_paths",
      [](py::array_t<float, py::array::c_style | py::array::forcecast> weights,
         const std::string& algorithm, unsigned workers, std::uint32_t tile_size,
         std::uint32_t inner, std::uint32_t stage_width) {
        apsp::DistanceMatrix input = matrix_from_array(weights);
        if (algorithm == "naive") {
          apsp::fw_naive(input);
          return array_from_matrix(input);
        }
        const auto variant = algorithm == "staged" ? apsp::DoublyVariant::Staged
                             : algorithm == "blocked"
                                 ? apsp::DoublyVariant::Unstaged
                                 : throw std::invalid_argument(
                                       "algorithm must be naive, blocked, or staged");
        const apsp::TileConfig cfg = make_config(tile_size, inner, stage_width);
        return array_from_matrix(apsp::fw_blocked(input, cfg, workers, variant));
      },
      py::arg("weights"), py::arg("algorithm") = "staged", py::arg("workers") = 1,
      py::arg("tile_size") = 32, py::arg("inner") = 4, py::arg("stage_width") = 4,
      "All-pairs shortest path lengths of a dense weight matrix "
      "(float32, +inf = no edge).");

  m.def(
      "random_graph",
      [](std::uint64_t n, double density, float lo, float hi, std::uint64_t seed,
         bool integer_weights) {
        return array_from_matrix(
            apsp::random_graph(n, density, lo, hi, seed, integer_weights));
      },
      py::arg("n"), py::arg("density") = 0.5, py::arg("lo") = 0.0f,
      py::arg("hi") = 100.0f, py::arg("seed") = 1, py::arg("integer_weights") = false);

  m.def(
      "negative_cycle_vertex",
      [](py::array_t<float, py::array::c_style | py::array::forcecast> weights)
          -> py::object {
        const apsp::DistanceMatrix m = matrix_from_array(weights);
        if (auto v = apsp::check_negative_cycle(m)) return py::int_(*v);
        return py::none();
      },
      py::arg("weights"));

  m.def(
      "checksum",
      [](py::array_t<float, py::array::c_style | py::array::forcecast> weights) {
        return apsp::matrix_checksum(matrix_from_array(weights));
      },
      py::arg("weights"));

  m.def("load_graph",
        [](const std::string& path, const std::string& format) {
          return array_from_matrix(apsp::load_graph_file(
              path, format == "binary" ? apsp::GraphFormat::DenseBinary
                                       : apsp::GraphFormat::EdgeListText));
        },
        py::arg("path"), py::arg("format") = "edgelist");

  m.def("save_matrix",
        [](py::array_t<float, py::array::c_style | py::array::forcecast> weights,
           const std::string& path) {
          apsp::save_matrix_file(matrix_from_array(weights), path);
        },
        py::arg("weights"), py::arg("path"));

  m.def(
      "tiled_offset",
      [](std::uint64_t i, std::uint64_t j, std::uint32_t tile_size,
         std::uint32_t inner, std::uint64_t padded_n) {
        apsp::TileConfig cfg;
        cfg.outer = tile_size;
        cfg.inner = inner;
        return apsp::tiled_offset(i, j, cfg, padded_n);
      },
      py::arg("i"), py::arg("j"), py::arg("tile_size") = 32, py::arg("inner") = 4,
      py::arg("padded_n") = 32,
      "Linear offset of element (i, j) in the doubly tiled data order.");

  m.def(
      "shared_bytes",
      [](const std::string& variant, std::uint32_t tile_size,
         std::uint32_t stage_width) {
        apsp::TileConfig cfg;
        cfg.outer = tile_size;
        cfg.stage_width = stage_width;
        const auto v = variant == "three-tiles" ? apsp::SharedVariant::ThreeTiles
                       : variant == "two-tiles"
                           ? apsp::SharedVariant::TwoTilesRegisters
                           : apsp::SharedVariant::Staged;
        return apsp::shared_bytes(v, cfg);
      },
      py::arg("variant"), py::arg("tile_size") = 32, py::arg("stage_width") = 4);

  m.def(
      "blocks_per_mp",
      [](std::uint32_t shared_bytes_per_block, std::uint32_t registers_per_block,
         std::uint32_t threads_per_block) {
        apsp::KernelBudget budget;
        budget.shared_bytes_per_block = shared_bytes_per_block;
        budget.registers_per_block = registers_per_block;
        budget.threads_per_block = threads_per_block;
        return apsp::blocks_per_mp(budget);
      },
      py::arg("shared_bytes_per_block"), py::arg("registers_per_block") = 0,
      py::arg("threads_per_block") = 0);

  m.def(
      "conflict_degree",
      [](const std::string& layout, const std::string& tile,
         const std::string& order, std::uint32_t k_step) {
        const auto l = layout == "tiled" ? apsp::DataLayout::DoublyTiled
                                         : apsp::DataLayout::RowMajor;
        const auto t = tile == "i-aligned" ? apsp::SliceTile::IAligned
                                           : apsp::SliceTile::JAligned;
        const auto o = order == "staggered" ? apsp::KOrder::Staggered
                                            : apsp::KOrder::Natural;
        return apsp::conflict_degree(
            apsp::slice_access_pattern(l, t, o, apsp::TileConfig{}, k_step));
      },
      py::arg("layout"), py::arg("tile") = "i-aligned",
      py::arg("order") = "natural", py::arg("k_step") = 0);

  m.def(
      "roofline_tasks_per_sec",
      [](double bytes_per_task, double bandwidth_bytes_per_sec,
         double flops_per_task, double peak_flops_per_sec) {
        const auto bounds = apsp::roofline_tasks_per_sec(
            {bytes_per_task, bandwidth_bytes_per_sec, flops_per_task,
             peak_flops_per_sec});
        return py::make_tuple(bounds.bandwidth_bound, bounds.compute_bound);
      },
      py::arg("bytes_per_task"), py::arg("bandwidth_bytes_per_sec"),
      py::arg("flops_per_task") = 1.0, py::arg("peak_flops_per_sec") = 933e9);
}
