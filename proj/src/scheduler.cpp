#include "apsp/scheduler.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "apsp/tiling.hpp"

namespace apsp {

RoundPlan plan_round(std::uint32_t b, const TileConfig& cfg,
                     std::uint64_t padded_n) {
  cfg.validate();
  if (padded_n % cfg.outer != 0)
    throw std::invalid_argument("padded_n must be a multiple of the tile size");
  const std::uint32_t tiles = static_cast<std::uint32_t>(padded_n / cfg.outer);
  if (b >= tiles) throw std::out_of_range("round index out of range");

  RoundPlan plan;
  plan.b = b;
  plan.independent = {b, b};
  plan.singly.reserve(2 * (tiles - 1));
  plan.doubly.reserve(static_cast<std::size_t>(tiles - 1) * (tiles - 1));
  for (std::uint32_t c = 0; c < tiles; ++c) {
    if (c == b) continue;
    plan.singly.push_back({{b, c}, PhaseKind::SinglyDependentIAligned});
    plan.singly.push_back({{c, b}, PhaseKind::SinglyDependentJAligned});
  }
  for (std::uint32_t r = 0; r < tiles; ++r) {
    if (r == b) continue;
    for (std::uint32_t c = 0; c < tiles; ++c) {
      if (c == b) continue;
      plan.doubly.push_back({r, c});
    }
  }
  return plan;
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ns_since(Clock::time_point origin) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - origin)
          .count());
}

struct PhaseContext {
  std::uint32_t round;
  std::uint32_t phase;
  Clock::time_point origin;
  std::vector<TraceEvent>* trace;
  std::mutex mutex;  // guards trace and failure
  std::exception_ptr failure;
  BlockCoord failed_block;
};

/// Runs one block, recording timing and capturing the first failure.
template <typename Fn>
void run_task(PhaseContext& ctx, BlockCoord block, Fn&& fn) {
  const std::uint64_t start = ns_since(ctx.origin);
  try {
    fn(block);
  } catch (...) {
    std::lock_guard lock(ctx.mutex);
    if (!ctx.failure) {
      ctx.failure = std::current_exception();
      ctx.failed_block = block;
    }
    return;
  }
  if (ctx.trace) {
    TraceEvent ev{ctx.round, ctx.phase, block, start, ns_since(ctx.origin)};
    std::lock_guard lock(ctx.mutex);
    ctx.trace->push_back(ev);
  }
}

/// Fans the blocks of one phase out to `workers` threads and joins them;
/// the join is the phase barrier. Rethrows a captured worker failure with
/// (round, phase, block) context.
template <typename Fn>
void run_phase(std::uint32_t round, std::uint32_t phase,
               const std::vector<BlockCoord>& blocks, unsigned workers,
               Clock::time_point origin, std::vector<TraceEvent>* trace,
               Fn&& fn) {
  PhaseContext ctx{round, phase, origin, trace, {}, nullptr, {}};
  if (workers <= 1 || blocks.size() <= 1) {
    for (BlockCoord block : blocks) {
      run_task(ctx, block, fn);
      if (ctx.failure) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    const unsigned count = static_cast<unsigned>(
        std::min<std::size_t>(workers, blocks.size()));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
          if (idx >= blocks.size()) return;
          run_task(ctx, blocks[idx], fn);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  if (ctx.failure) {
    try {
      std::rethrow_exception(ctx.failure);
    } catch (const std::exception& e) {
      throw std::runtime_error(
          "round " + std::to_string(round) + ", phase " + std::to_string(phase) +
          ", block (" + std::to_string(ctx.failed_block.row_block) + ", " +
          std::to_string(ctx.failed_block.col_block) + "): " + e.what());
    }
  }
}

}  // namespace

void run_blocked(DistanceMatrix& m, const TileConfig& cfg, unsigned workers,
                 DoublyVariant variant, std::vector<TraceEvent>* trace) {
  cfg.validate();
  if (m.layout != Layout::DoublyTiled || m.tile_outer != cfg.outer ||
      m.tile_inner != cfg.inner)
    throw std::invalid_argument("run_blocked requires a matching doubly tiled matrix");

  const std::uint32_t rounds = static_cast<std::uint32_t>(m.dim / cfg.outer);
  const Clock::time_point origin = Clock::now();

  for (std::uint32_t b = 0; b < rounds; ++b) {
    const RoundPlan plan = plan_round(b, cfg, m.dim);

    run_phase(b, 0, {plan.independent}, 1, origin, trace,
              [&](BlockCoord) { process_independent(m, b, cfg); });

    std::vector<BlockCoord> singly_blocks;
    singly_blocks.reserve(plan.singly.size());
    for (const auto& [block, kind] : plan.singly) singly_blocks.push_back(block);
    run_phase(b, 1, singly_blocks, workers, origin, trace, [&](BlockCoord block) {
      const PhaseKind kind = block.row_block == b
                                 ? PhaseKind::SinglyDependentIAligned
                                 : PhaseKind::SinglyDependentJAligned;
      process_singly_dependent(m, b, block, kind, cfg);
    });

    run_phase(b, 2, plan.doubly, workers, origin, trace, [&](BlockCoord block) {
      if (variant == DoublyVariant::Staged)
        process_doubly_dependent_staged(m, b, block, cfg);
      else
        process_doubly_dependent(m, b, block, cfg);
    });
  }
}

DistanceMatrix fw_blocked(const DistanceMatrix& m, const TileConfig& cfg,
                          unsigned workers, DoublyVariant variant) {
  DistanceMatrix tiled = to_tiled(m, cfg);
  run_blocked(tiled, cfg, workers, variant);
  return from_tiled(tiled, m.n);
}

void write_trace(const std::vector<TraceEvent>& trace, std::ostream& out) {
  for (const TraceEvent& ev : trace) {
    out << "{\"round\":" << ev.round << ",\"phase\":" << ev.phase
        << ",\"block\":[" << ev.block.row_block << "," << ev.block.col_block
        << "],\"start_ns\":" << ev.start_ns << ",\"end_ns\":" << ev.end_ns
        << "}\n";
  }
}

unsigned default_workers() {
  if (const char* env = std::getenv("APSP_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace apsp
