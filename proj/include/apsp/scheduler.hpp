#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "apsp/kernels.hpp"

namespace apsp {

/// Partition of all outer tiles for one round b.
struct RoundPlan {
  std::uint32_t b = 0;
  BlockCoord independent;
  std::vector<std::pair<BlockCoord, PhaseKind>> singly;
  std::vector<BlockCoord> doubly;
};

RoundPlan plan_round(std::uint32_t b, const TileConfig& cfg,
                     std::uint64_t padded_n);

enum class DoublyVariant { Unstaged, Staged };

/// One processed block, timestamped against the start of the run.
/// phase: 0 independent, 1 singly dependent, 2 doubly dependent.
struct TraceEvent {
  std::uint32_t round = 0;
  std::uint32_t phase = 0;
  BlockCoord block;
  std::uint64_t start_ns = 0;
  std::uint64_t end_ns = 0;
};

/// Runs every round of the blocked algorithm over a doubly tiled matrix.
/// Within a round the three phases are separated by full barriers; blocks of
/// one phase are fanned out to `workers` threads (1 = sequential in the
/// calling thread). A failing block aborts the run with a diagnostic naming
/// (round, phase, block). Results are identical for any worker count.
void run_blocked(DistanceMatrix& m, const TileConfig& cfg, unsigned workers,
                 DoublyVariant variant,
                 std::vector<TraceEvent>* trace = nullptr);

/// Blocked algorithm end to end on a row-major matrix: tile, run, untile.
DistanceMatrix fw_blocked(const DistanceMatrix& m, const TileConfig& cfg,
                          unsigned workers,
                          DoublyVariant variant = DoublyVariant::Unstaged);

/// JSON-lines dump: {"round":..,"phase":..,"block":[r,c],"start_ns":..,"end_ns":..}
void write_trace(const std::vector<TraceEvent>& trace, std::ostream& out);

unsigned default_workers();

}  // namespace apsp
