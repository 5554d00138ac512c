// Acceptance suite: runs every release criterion and prints one line each.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "apsp/access_model.hpp"
#include "apsp/io.hpp"
#include "apsp/kernels.hpp"
#include "apsp/scheduler.hpp"
#include "apsp/tiling.hpp"

using namespace apsp;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::cout << "criterion " << number << " [" << name << "]: "
            << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

DistanceMatrix naive_result(const DistanceMatrix& m) {
  DistanceMatrix copy = m;
  fw_naive(copy);
  return copy;
}

// 1. Bitwise oracle equivalence over 200 seeded integer-weight instances.
void criterion_oracle_equivalence() {
  const TileConfig cfg;
  const std::array<double, 3> densities{0.1, 0.5, 1.0};
  int checked = 0;
  bool pass = true;
  std::string detail;
  for (int idx = 0; idx < 200 && pass; ++idx) {
    const std::uint64_t n = 1 + (static_cast<std::uint64_t>(idx) * 37 + 13) % 160;
    const double density = densities[idx % densities.size()];
    DistanceMatrix m =
        random_graph(n, density, 0.0f, 101.0f, 1000 + idx, /*integer=*/true);
    DistanceMatrix oracle = naive_result(m);
    if (!matrices_equal_bitwise(fw_blocked(m, cfg, 2, DoublyVariant::Unstaged),
                                oracle) ||
        !matrices_equal_bitwise(fw_blocked(m, cfg, 2, DoublyVariant::Staged),
                                oracle)) {
      pass = false;
      detail = "mismatch at n=" + std::to_string(n) +
               ", density=" + std::to_string(density);
    }
    ++checked;
  }
  if (pass) detail = std::to_string(checked) + " instances, bitwise equal";
  report(1, "oracle equivalence", pass, detail);
}

// 2. Negative weights within tolerance; constructed cycles detected.
void criterion_negative_weights() {
  const TileConfig cfg;
  bool pass = true;
  std::string detail;
  int accepted = 0;
  std::uint64_t seed = 5000;
  while (accepted < 50 && pass) {
    const std::uint64_t n = 8 + (seed % 120);
    DistanceMatrix m = random_graph(n, 0.3, -8.0f, 100.0f, seed++);
    DistanceMatrix oracle = naive_result(m);
    if (check_negative_cycle(oracle)) continue;  // pre-screened out
    ++accepted;
    DistanceMatrix staged = fw_blocked(m, cfg, 2, DoublyVariant::Staged);
    for (std::uint64_t i = 0; i < n && pass; ++i)
      for (std::uint64_t j = 0; j < n && pass; ++j) {
        const float a = oracle.at(i, j), b = staged.at(i, j);
        if (reachable(a) != reachable(b)) {
          pass = false;
          detail = "reachability mismatch";
        } else if (reachable(a) &&
                   std::abs(a - b) > 1e-5f * std::max(1.0f, std::abs(a))) {
          pass = false;
          detail = "tolerance exceeded at n=" + std::to_string(n);
        }
      }
  }
  // Constructed negative-cycle fixtures.
  {
    DistanceMatrix two = DistanceMatrix::unconnected(2);
    two.at(0, 1) = 1.0f;
    two.at(1, 0) = -3.0f;
    DistanceMatrix r = fw_blocked(two, cfg, 1, DoublyVariant::Staged);
    auto v = check_negative_cycle(r);
    if (!v || *v != 0) {
      pass = false;
      detail = "2-cycle not detected";
    }

    DistanceMatrix ring = DistanceMatrix::unconnected(40);
    ring.at(10, 20) = 2.0f;
    ring.at(20, 30) = 1.0f;
    ring.at(30, 10) = -5.0f;
    if (!check_negative_cycle(fw_blocked(ring, cfg, 2, DoublyVariant::Staged))) {
      pass = false;
      detail = "3-cycle not detected";
    }
  }
  if (pass) detail = "50 pre-screened instances within 1e-5; fixtures detected";
  report(2, "negative-weight handling", pass, detail);
}

// 3. Exact reproduction of the published budget and roofline constants.
void criterion_paper_constants() {
  const TileConfig cfg;
  bool pass = true;
  pass &= shared_bytes(SharedVariant::ThreeTiles, cfg) == 12320;
  pass &= shared_bytes(SharedVariant::TwoTilesRegisters, cfg) == 8224;
  pass &= shared_bytes(SharedVariant::Staged, cfg) == 1056;
  pass &= blocks_per_mp({12320, 0, 0}) == 1;
  pass &= blocks_per_mp({8224, 0, 0}) == 1;
  pass &= blocks_per_mp({1056, 0, 0}) == 15;
  const RooflineBounds naive = roofline_tasks_per_sec({16.0, 77e9, 1.0, 933e9});
  pass &= std::abs(naive.bandwidth_bound - 4.8125e9) < 1e3;
  const RooflineBounds blocked = roofline_tasks_per_sec({0.5, 77e9, 1.0, 933e9});
  pass &= std::abs(blocked.bandwidth_bound - 154e9) < 1e3;
  pass &= std::abs(933e9 / 14.9e9 - 62.7) <= 0.5;
  report(3, "budget and roofline constants", pass,
         "12320 / 8224 / 1056 bytes; 1 / 1 / 15 blocks; 4.8125e9 and 154e9 "
         "tasks/s; 62.6 FLOPs/task");
}

// 4. Bank-conflict and coalescing verdicts.
void criterion_conflict_verdicts() {
  const TileConfig cfg;
  bool pass = true;
  for (SliceTile tile : {SliceTile::IAligned, SliceTile::JAligned}) {
    pass &= conflict_degree(slice_access_pattern(DataLayout::RowMajor, tile,
                                                 KOrder::Natural, cfg, 0)) == 1;
    for (std::uint32_t k = 0; k < 4; ++k) {
      pass &= conflict_degree(slice_access_pattern(DataLayout::DoublyTiled, tile,
                                                   KOrder::Natural, cfg, k)) == 4;
      pass &= conflict_degree(slice_access_pattern(DataLayout::DoublyTiled, tile,
                                                   KOrder::Staggered, cfg, k)) == 1;
    }
  }
  pass &= coalesced_segments(DataLayout::RowMajor, SliceShape::RowSlice, cfg) == 1;
  pass &= coalesced_segments(DataLayout::RowMajor, SliceShape::ColSlice, cfg) == 16;
  pass &= coalesced_segments(DataLayout::DoublyTiled, SliceShape::ColSlice, cfg) == 1;
  report(4, "bank-conflict verdicts", pass,
         "row-major 1; tiled natural 4; tiled staggered 1; segments 1/16/1");
}

// 5. Layout bijection and round-trip identity.
void criterion_layout_bijection() {
  const TileConfig cfg;
  bool pass = true;
  for (std::uint64_t padded_n : {32ull, 64ull, 128ull}) {
    std::vector<bool> hit(padded_n * padded_n, false);
    for (std::uint64_t i = 0; i < padded_n && pass; ++i)
      for (std::uint64_t j = 0; j < padded_n; ++j) {
        const std::uint64_t off = tiled_offset(i, j, cfg, padded_n);
        if (off >= hit.size() || hit[off]) {
          pass = false;
          break;
        }
        hit[off] = true;
      }
  }
  for (std::uint64_t n : {1ull, 33ull, 64ull, 97ull}) {
    DistanceMatrix m = random_graph(n, 0.5, -2.0f, 70.0f, n + 3);
    if (!matrices_equal_bitwise(m, from_tiled(to_tiled(m, cfg), n))) pass = false;
  }
  report(5, "layout bijection", pass,
         "permutation of [0, padded_n^2) for 32/64/128; round trips incl. padding");
}

// 6. Barrier soundness over 20 traced runs; identical results across workers.
void criterion_schedule_soundness() {
  const TileConfig cfg;
  bool pass = true;
  std::string detail;
  DistanceMatrix m = random_graph(160, 0.4, 0.0f, 80.0f, 42, /*integer=*/true);
  DistanceMatrix tiled_ref = to_tiled(m, cfg);
  DistanceMatrix reference = tiled_ref;
  run_blocked(reference, cfg, 1, DoublyVariant::Staged);

  const std::array<unsigned, 3> worker_counts{2, 4, 8};
  for (int run = 0; run < 20 && pass; ++run) {
    const unsigned workers = worker_counts[run % worker_counts.size()];
    DistanceMatrix work = tiled_ref;
    std::vector<TraceEvent> trace;
    run_blocked(work, cfg, workers, DoublyVariant::Staged, &trace);
    if (!matrices_equal_bitwise(work, reference)) {
      pass = false;
      detail = "result differs at workers=" + std::to_string(workers);
      break;
    }
    std::map<std::uint32_t, std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>>
        spans;
    for (const TraceEvent& ev : trace) {
      auto [it, fresh] =
          spans[ev.round].try_emplace(ev.phase, ev.start_ns, ev.end_ns);
      if (!fresh) {
        it->second.first = std::min(it->second.first, ev.start_ns);
        it->second.second = std::max(it->second.second, ev.end_ns);
      }
    }
    for (const auto& [round, phases] : spans) {
      for (std::uint32_t p = 0; p + 1 < 3; ++p) {
        if (phases.at(p).second > phases.at(p + 1).first) {
          pass = false;
          detail = "phase overlap in round " + std::to_string(round);
        }
      }
    }
  }
  if (pass) detail = "20 traced runs at workers in {2,4,8}";
  report(6, "schedule soundness", pass, detail);
}

// 7. Hardware-relative performance ordering at n = 2048.
void criterion_performance_ordering() {
  const TileConfig cfg;
  const std::uint64_t n = 2048;
  const unsigned cores = std::thread::hardware_concurrency();
  const unsigned workers = std::max(4u, cores);
  std::cout << "  [perf] available cores: " << cores
            << (cores < 4 ? " (criterion assumes >= 4; running anyway)" : "")
            << std::endl;

  DistanceMatrix m = random_graph(n, 0.5, 0.0f, 101.0f, 7, /*integer=*/true);
  const double n3 = static_cast<double>(n) * n * n;

  using Clock = std::chrono::steady_clock;
  auto time_naive = [&] {
    DistanceMatrix copy = m;
    const auto start = Clock::now();
    fw_naive(copy);
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  auto time_staged = [&](unsigned w) {
    DistanceMatrix tiled = to_tiled(m, cfg);
    const auto start = Clock::now();
    run_blocked(tiled, cfg, w, DoublyVariant::Staged);
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  const double naive_secs = time_naive();
  std::cout << "  [perf] naive: " << naive_secs << " s, "
            << n3 / naive_secs << " tasks/s" << std::endl;

  std::vector<double> staged_rate(5, 0.0);
  for (unsigned w = 1; w <= 4; ++w) {
    double best = 1e300;
    for (int rep = 0; rep < 2; ++rep) best = std::min(best, time_staged(w));
    staged_rate[w] = n3 / best;
    std::cout << "  [perf] staged workers=" << w << ": " << best << " s, "
              << staged_rate[w] << " tasks/s" << std::endl;
  }
  const double full_rate = n3 / time_staged(workers);
  std::cout << "  [perf] staged workers=" << workers << ": " << full_rate
            << " tasks/s" << std::endl;

  const bool speedup_ok = full_rate >= 2.0 * (n3 / naive_secs);
  bool monotone_ok = true;
  // 5% allowance for wall-clock jitter.
  for (unsigned w = 1; w < 4; ++w)
    if (staged_rate[w + 1] < 0.95 * staged_rate[w]) monotone_ok = false;

  std::ostringstream detail;
  detail << "staged/naive = " << full_rate / (n3 / naive_secs)
         << "x (need >= 2); tasks/s by workers 1..4: " << staged_rate[1] << ", "
         << staged_rate[2] << ", " << staged_rate[3] << ", " << staged_rate[4];
  report(7, "performance ordering", speedup_ok && monotone_ok, detail.str());
}

// 8. End-to-end CLI behavior.
#ifndef APSP_CLI_PATH
#define APSP_CLI_PATH "apsp"
#endif

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(APSP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string output;
  char buf[512];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe))
    output.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string extract_field(const std::string& output, const std::string& key) {
  const auto pos = output.find(key + "=");
  if (pos == std::string::npos) return "";
  const auto start = pos + key.size() + 1;
  const auto end = output.find_first_of(" \n", start);
  return output.substr(start, end - start);
}

void criterion_cli() {
  bool pass = true;
  std::string detail;

  const std::string fixture = "acceptance_fixture.txt";
  {
    std::ofstream out(fixture);
    DistanceMatrix m = random_graph(70, 0.4, 0.0f, 50.0f, 99, /*integer=*/true);
    std::uint64_t edges = 0;
    std::ostringstream body;
    for (std::uint64_t i = 0; i < m.n; ++i)
      for (std::uint64_t j = 0; j < m.n; ++j)
        if (i != j && reachable(m.at(i, j))) {
          body << i << " " << j << " " << m.at(i, j) << "\n";
          ++edges;
        }
    out << m.n << " " << edges << "\n" << body.str();
  }

  // Checksum equality across algorithms.
  std::vector<std::string> checksums;
  for (const std::string algo : {"naive", "blocked", "staged"}) {
    auto [status, output] =
        run_cli("run --input " + fixture + " --algorithm " + algo + " --workers 2");
    if (status != 0) {
      pass = false;
      detail = algo + " exited with " + std::to_string(status);
    }
    checksums.push_back(extract_field(output, "checksum"));
  }
  if (pass && (checksums[0].empty() || checksums[0] != checksums[1] ||
               checksums[1] != checksums[2])) {
    pass = false;
    detail = "checksums differ across algorithms";
  }

  // Negative cycle: distinct exit code, names a vertex.
  {
    {
      std::ofstream out("acceptance_negcycle.txt");
      out << "3 3\n0 1 1\n1 0 -3\n2 0 1\n";
    }
    auto [status, output] = run_cli("run --input acceptance_negcycle.txt");
    if (status != 3 || output.find("vertex") == std::string::npos) {
      pass = false;
      detail = "negative cycle exit " + std::to_string(status);
    }
  }

  // Bench: schema, determinism, tasks/s arithmetic.
  {
    const std::string bench_args =
        "bench --sizes 24,40 --algorithms naive,staged --seed 5 --reps 2 "
        "--workers 1 --csv ";
    run_cli(bench_args + "acceptance_bench1.csv");
    run_cli(bench_args + "acceptance_bench2.csv");
    std::ifstream csv1("acceptance_bench1.csv"), csv2("acceptance_bench2.csv");
    std::string header;
    std::getline(csv1, header);
    if (header != "n,algorithm,workers,wall_seconds,tasks_per_second,checksum") {
      pass = false;
      detail = "bad CSV header";
    }
    std::string skip;
    std::getline(csv2, skip);
    std::string row1, row2;
    int rows = 0;
    while (std::getline(csv1, row1) && std::getline(csv2, row2)) {
      ++rows;
      auto parse = [](const std::string& row) {
        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        return fields;
      };
      const auto f1 = parse(row1), f2 = parse(row2);
      if (f1.size() != 6 || f2.size() != 6 || f1[5] != f2[5]) {
        pass = false;
        detail = "checksums not deterministic across bench runs";
        break;
      }
      const double n = std::stod(f1[0]), wall = std::stod(f1[3]),
                   rate = std::stod(f1[4]);
      if (std::abs(rate - n * n * n / wall) > 1e-3 * rate) {
        pass = false;
        detail = "tasks_per_second arithmetic off";
        break;
      }
    }
    if (rows != 4 && pass) {
      pass = false;
      detail = "expected 4 bench rows, got " + std::to_string(rows);
    }
  }

  if (pass) detail = "checksums equal; negative-cycle exit 3; CSV schema stable";
  report(8, "end-to-end CLI", pass, detail);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_negative_weights();
  criterion_paper_constants();
  criterion_conflict_verdicts();
  criterion_layout_bijection();
  criterion_schedule_soundness();
  criterion_performance_ordering();
  criterion_cli();
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
