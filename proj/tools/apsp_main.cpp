// apsp: blocked all-pairs-shortest-paths driver.
//
//   apsp run      solve one instance with a chosen kernel
//   apsp bench    seeded random instances across sizes, CSV output
//   apsp analyze  memory-model report: conflicts, coalescing, occupancy,
//                 roofline bounds

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apsp/access_model.hpp"
#include "apsp/io.hpp"
#include "apsp/kernels.hpp"
#include "apsp/scheduler.hpp"
#include "apsp/tiling.hpp"

namespace {

// Exit codes: 0 ok, 1 usage, 2 I/O or validation failure, 3 negative cycle.
constexpr int kExitUsage = 1;
constexpr int kExitError = 2;
constexpr int kExitNegativeCycle = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct KernelChoice {
  std::string name = "staged";

  apsp::DistanceMatrix solve(const apsp::DistanceMatrix& input,
                             const apsp::TileConfig& cfg, unsigned workers,
                             bool include_conversion, double& kernel_seconds,
                             std::vector<apsp::TraceEvent>* trace) const {
    if (name == "naive") {
      apsp::DistanceMatrix m = input;
      const auto start = Clock::now();
      apsp::fw_naive(m);
      kernel_seconds = seconds_since(start);
      return m;
    }
    const auto variant = name == "staged" ? apsp::DoublyVariant::Staged
                                          : apsp::DoublyVariant::Unstaged;
    const auto outer_start = Clock::now();
    apsp::DistanceMatrix tiled = apsp::to_tiled(input, cfg);
    const auto kernel_start = Clock::now();
    apsp::run_blocked(tiled, cfg, workers, variant, trace);
    const double kernel_only = seconds_since(kernel_start);
    apsp::DistanceMatrix result = apsp::from_tiled(tiled, input.n);
    kernel_seconds = include_conversion ? seconds_since(outer_start) : kernel_only;
    return result;
  }
};

int cmd_run(const std::string& input_path, const std::string& format_name,
            KernelChoice kernel, const apsp::TileConfig& cfg, unsigned workers,
            bool include_conversion, const std::string& output_path,
            const std::string& trace_path) {
  const apsp::GraphFormat format = format_name == "binary"
                                       ? apsp::GraphFormat::DenseBinary
                                       : apsp::GraphFormat::EdgeListText;
  apsp::DistanceMatrix input;
  try {
    input = apsp::load_graph_file(input_path, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  std::vector<apsp::TraceEvent> trace;
  double kernel_seconds = 0;
  apsp::DistanceMatrix result =
      kernel.solve(input, cfg, workers, include_conversion, kernel_seconds,
                   trace_path.empty() ? nullptr : &trace);

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    apsp::write_trace(trace, out);
  }
  if (!output_path.empty()) {
    try {
      apsp::save_matrix_file(result, output_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

  const double n3 = static_cast<double>(input.n) * input.n * input.n;
  std::cout << "n=" << input.n << " algorithm=" << kernel.name
            << " workers=" << workers << " wall_seconds=" << kernel_seconds
            << " tasks_per_second=" << (kernel_seconds > 0 ? n3 / kernel_seconds : 0)
            << " checksum=" << apsp::matrix_checksum(result) << "\n";

  if (auto vertex = apsp::check_negative_cycle(result)) {
    std::cerr << "negative cycle detected through vertex " << *vertex << "\n";
    return kExitNegativeCycle;
  }
  return 0;
}

int cmd_bench(const std::vector<std::uint64_t>& sizes,
              const std::vector<std::string>& algorithms,
              const apsp::TileConfig& cfg, unsigned workers,
              std::uint64_t seed, unsigned reps, double density,
              const std::string& csv_path) {
  std::ofstream csv;
  std::ostream* csv_out = nullptr;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) {
      std::cerr << "error: cannot open " << csv_path << " for writing\n";
      return kExitError;
    }
    csv_out = &csv;
  }
  std::ostream& table = csv_out ? *csv_out : std::cout;
  table << "n,algorithm,workers,wall_seconds,tasks_per_second,checksum\n";

  for (std::uint64_t n : sizes) {
    const apsp::DistanceMatrix instance =
        apsp::random_graph(n, density, 0.0f, 101.0f, seed, /*integer=*/true);
    for (const std::string& name : algorithms) {
      KernelChoice kernel{name};
      std::vector<double> times;
      std::uint64_t checksum = 0;
      bool failed = false;
      for (unsigned rep = 0; rep < reps; ++rep) {
        try {
          double secs = 0;
          apsp::DistanceMatrix result =
              kernel.solve(instance, cfg, workers, false, secs, nullptr);
          times.push_back(secs);
          checksum = apsp::matrix_checksum(result);
        } catch (const std::exception& e) {
          std::cerr << "bench cell (n=" << n << ", " << name
                    << ") failed: " << e.what() << "\n";
          failed = true;
          break;
        }
      }
      if (failed || times.empty()) {
        table << n << "," << name << "," << workers << ",failed,failed,failed\n";
        continue;
      }
      std::sort(times.begin(), times.end());
      const double mean =
          std::accumulate(times.begin(), times.end(), 0.0) / times.size();
      const double median = times[times.size() / 2];
      const double n3 = static_cast<double>(n) * n * n;
      table << n << "," << name << "," << workers << "," << mean << ","
            << n3 / mean << "," << checksum << "\n";
      std::cout << "n=" << n << " algorithm=" << name << " min=" << times.front()
                << "s median=" << median << "s mean=" << mean << "s"
                << " tasks/s=" << n3 / mean << "\n";
    }
  }
  return 0;
}

int cmd_analyze(const std::string& variant_name, const std::string& layout_name,
                const std::string& order_name, bool as_json) {
  using namespace apsp;
  const TileConfig cfg;
  nlohmann::json report;

  const auto variant = variant_name == "three-tiles" ? SharedVariant::ThreeTiles
                       : variant_name == "two-tiles" ? SharedVariant::TwoTilesRegisters
                                                     : SharedVariant::Staged;
  const std::uint32_t bytes = shared_bytes(variant, cfg);
  KernelBudget budget;
  budget.shared_bytes_per_block = bytes;
  budget.threads_per_block = variant == SharedVariant::Staged ? 64 : 256;
  const std::uint32_t blocks = blocks_per_mp(budget);
  report["variant"] = variant_name;
  report["shared_bytes_per_block"] = bytes;
  report["threads_per_block"] = budget.threads_per_block;
  report["blocks_per_mp"] = blocks;

  const DataLayout layout =
      layout_name == "tiled" ? DataLayout::DoublyTiled : DataLayout::RowMajor;
  const KOrder order =
      order_name == "staggered" ? KOrder::Staggered : KOrder::Natural;
  if (layout == DataLayout::RowMajor && order == KOrder::Staggered) {
    std::cerr << "error: --order staggered requires --layout tiled\n";
    return kExitUsage;
  }
  std::uint32_t worst = 1;
  for (SliceTile tile : {SliceTile::IAligned, SliceTile::JAligned})
    for (std::uint32_t k = 0; k < cfg.stage_width; ++k)
      worst = std::max(worst,
                       conflict_degree(slice_access_pattern(layout, tile, order, cfg, k)));
  report["layout"] = layout_name;
  report["order"] = order_name;
  report["conflict_degree"] = worst;
  report["conflict_verdict"] =
      worst == 1 ? "conflict-free" : std::to_string(worst) + "-way conflict";
  report["coalesced_segments"] = {
      {"row_slice", coalesced_segments(layout, SliceShape::RowSlice, cfg)},
      {"col_slice", coalesced_segments(layout, SliceShape::ColSlice, cfg)}};

  // Tesla C1060 figures: 77 GB/s measured copy bandwidth, 933 GFLOP/s peak.
  const double bandwidth = 77e9, peak = 933e9;
  const RooflineBounds naive = roofline_tasks_per_sec({16.0, bandwidth, 1.0, peak});
  const RooflineBounds blocked = roofline_tasks_per_sec({0.5, bandwidth, 1.0, peak});
  report["roofline"] = {
      {"naive_bandwidth_bound_tasks_per_sec", naive.bandwidth_bound},
      {"blocked_bandwidth_bound_tasks_per_sec", blocked.bandwidth_bound},
      {"implied_flops_per_task_at_14.9e9", 933e9 / 14.9e9}};

  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::cout << "variant " << variant_name << ": shared bytes " << bytes
            << ", blocks per MP " << blocks << "\n";
  std::cout << "layout " << layout_name << ", order " << order_name << ": "
            << report["conflict_verdict"].get<std::string>()
            << " (degree " << worst << ")\n";
  std::cout << "coalesced segments per half-warp read: row slice "
            << report["coalesced_segments"]["row_slice"] << ", col slice "
            << report["coalesced_segments"]["col_slice"] << "\n";
  std::cout << "roofline: 16 B/task @ 77 GB/s -> " << naive.bandwidth_bound
            << " tasks/s; 0.5 B/task -> " << blocked.bandwidth_bound
            << " tasks/s; implied FLOPs/task at 14.9e9 tasks/s: "
            << 933e9 / 14.9e9 << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocked all-pairs shortest paths engine"};
  app.require_subcommand(1);

  apsp::TileConfig cfg;
  unsigned workers = apsp::default_workers();

  auto add_tile_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tile-size", cfg.outer, "outer tile edge length");
    cmd->add_option("--inner", cfg.inner, "inner tile edge length");
    cmd->add_option("--stage-width", cfg.stage_width, "k-iterations per stage");
    cmd->add_option("--workers", workers, "worker thread count");
  };

  // run
  std::string input_path, format_name = "edgelist", output_path, trace_path;
  KernelChoice kernel;
  bool include_conversion = false;
  CLI::App* run = app.add_subcommand("run", "solve a single instance");
  run->add_option("--input", input_path, "graph file")->required();
  run->add_option("--format", format_name, "input format")
      ->check(CLI::IsMember({"edgelist", "binary"}));
  run->add_option("--algorithm", kernel.name, "kernel to run")
      ->check(CLI::IsMember({"naive", "blocked", "staged"}));
  run->add_option("--output", output_path, "write result matrix (binary)");
  run->add_option("--trace", trace_path, "write schedule trace (JSON lines)");
  run->add_flag("--include-conversion", include_conversion,
                "time layout conversion along with the kernel");
  add_tile_flags(run);

  // bench
  std::vector<std::uint64_t> sizes;
  std::vector<std::string> algorithms{"naive", "staged"};
  std::uint64_t seed = 1;
  unsigned reps = 3;
  double density = 0.5;
  std::string csv_path;
  CLI::App* bench = app.add_subcommand("bench", "benchmark across sizes");
  bench->add_option("--sizes", sizes, "vertex counts")->required()->delimiter(',');
  bench->add_option("--algorithms", algorithms, "kernels to compare")->delimiter(',');
  bench->add_option("--seed", seed, "instance seed");
  bench->add_option("--reps", reps, "repetitions per cell");
  bench->add_option("--density", density, "edge density");
  bench->add_option("--csv", csv_path, "CSV output path");
  add_tile_flags(bench);

  // analyze
  std::string variant_name = "staged", layout_name = "tiled",
              order_name = "staggered";
  bool as_json = false;
  CLI::App* analyze = app.add_subcommand("analyze", "memory model report");
  analyze->add_option("--variant", variant_name, "shared memory variant")
      ->check(CLI::IsMember({"three-tiles", "two-tiles", "staged"}));
  analyze->add_option("--layout", layout_name, "data layout")
      ->check(CLI::IsMember({"row-major", "tiled"}));
  analyze->add_option("--order", order_name, "k-iteration order")
      ->check(CLI::IsMember({"natural", "staggered"}));
  analyze->add_flag("--json", as_json, "emit JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    if (run->parsed())
      return cmd_run(input_path, format_name, kernel, cfg, workers,
                     include_conversion, output_path, trace_path);
    if (bench->parsed())
      return cmd_bench(sizes, algorithms, cfg, workers, seed, reps, density,
                       csv_path);
    return cmd_analyze(variant_name, layout_name, order_name, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
