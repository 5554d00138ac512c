#include "apsp/access_model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace apsp {

std::uint32_t conflict_degree(const HalfWarpAccess& access) {
  const std::uint32_t first = access.addresses[0];
  if (std::all_of(access.addresses.begin(), access.addresses.end(),
                  [&](std::uint32_t a) { return a == first; }))
    return 1;  // broadcast
  std::array<std::set<std::uint32_t>, kBanks> per_bank;
  for (std::uint32_t addr : access.addresses)
    per_bank[addr % kBanks].insert(addr);
  std::uint32_t degree = 1;
  for (const auto& bank : per_bank)
    degree = std::max(degree, static_cast<std::uint32_t>(bank.size()));
  return degree;
}

HalfWarpAccess slice_access_pattern(DataLayout layout, SliceTile tile,
                                    KOrder order, const TileConfig& cfg,
                                    std::uint32_t k_step) {
  cfg.validate();
  if (k_step >= cfg.stage_width)
    throw std::invalid_argument("k_step must be below the stage width");

  HalfWarpAccess access;

  if (layout == DataLayout::RowMajor) {
    if (order == KOrder::Staggered)
      throw std::invalid_argument(
          "staggered order applies to the doubly tiled layout only");
    for (std::uint32_t lane = 0; lane < kHalfWarp; ++lane) {
      if (tile == SliceTile::IAligned) {
        // Whole half warp shares its i index: one element, broadcast.
        access.addresses[lane] = k_step;
      } else {
        // Row-major m*t slice; lane reads element (k_step, lane).
        access.addresses[lane] = k_step * cfg.outer + lane;
      }
    }
    return access;
  }

  if (cfg.inner != 4 || cfg.stage_width != 4)
    throw std::invalid_argument(
        "tiled access patterns are defined for inner = stage width = 4");

  // Lane l owns inner tile (ti, tj) = (l/4, l%4); dependency slices are
  // stored in tiled order, one contiguous 16-word group per inner tile.
  for (std::uint32_t lane = 0; lane < kHalfWarp; ++lane) {
    const std::uint32_t ti = lane / 4, tj = lane % 4;
    std::uint32_t r = 0, c = 0, k = k_step;
    if (order == KOrder::Staggered) {
      // First task of a lane sits at (tile row + tile column) mod 4; lanes
      // advance through the stage from that offset in lockstep.
      r = ti;
      c = tj;
      k = (ti + tj + k_step) % 4;
    }
    if (tile == SliceTile::IAligned) {
      access.addresses[lane] = ti * 16 + r * 4 + k;  // element (4*ti + r, k)
    } else {
      access.addresses[lane] = tj * 16 + k * 4 + c;  // element (k, 4*tj + c)
    }
  }
  return access;
}

std::uint32_t coalesced_segments(DataLayout layout, SliceShape slice,
                                 const TileConfig& cfg) {
  cfg.validate();
  // Addresses of one half-warp read while loading a 4-wide slice.
  std::array<std::uint32_t, kHalfWarp> addr{};
  const std::uint32_t stride = std::max<std::uint32_t>(cfg.outer, kHalfWarp);
  for (std::uint32_t lane = 0; lane < kHalfWarp; ++lane) {
    if (layout == DataLayout::RowMajor) {
      // RowSlice: 16 words along one row. ColSlice: one word per row.
      addr[lane] = slice == SliceShape::RowSlice ? lane : lane * stride;
    } else {
      // Either orientation reads whole inner tiles, which are contiguous
      // 16-word groups in the tiled order.
      addr[lane] = lane;
    }
  }
  std::set<std::uint32_t> segments;
  for (std::uint32_t a : addr) segments.insert(a / kHalfWarp);
  return static_cast<std::uint32_t>(segments.size());
}

std::uint32_t shared_bytes(SharedVariant variant, const TileConfig& cfg) {
  cfg.validate();
  const std::uint32_t t = cfg.outer, m = cfg.stage_width;
  constexpr std::uint32_t kParamBytes = 32;
  switch (variant) {
    case SharedVariant::ThreeTiles:
      return 3 * t * t * kWordBytes + kParamBytes;
    case SharedVariant::TwoTilesRegisters:
      return 2 * t * t * kWordBytes + kParamBytes;
    case SharedVariant::Staged:
      return 2 * t * m * kWordBytes + kParamBytes;
  }
  throw std::invalid_argument("unknown shared memory variant");
}

std::uint32_t blocks_per_mp(const KernelBudget& budget) {
  if (budget.shared_bytes_per_block == 0)
    throw std::invalid_argument("shared bytes per block must be positive");
  std::uint32_t blocks = budget.shared_bytes_per_mp / budget.shared_bytes_per_block;
  if (budget.registers_per_block > 0)
    blocks = std::min(blocks, budget.registers_per_mp / budget.registers_per_block);
  if (budget.threads_per_block > 0)
    blocks = std::min(blocks, budget.threads_per_mp / budget.threads_per_block);
  return blocks;
}

RooflineBounds roofline_tasks_per_sec(const RooflineInput& input) {
  if (input.bytes_per_task <= 0 || input.bandwidth_bytes_per_sec <= 0 ||
      input.flops_per_task <= 0 || input.peak_flops_per_sec <= 0)
    throw std::invalid_argument("roofline inputs must be positive");
  return {input.bandwidth_bytes_per_sec / input.bytes_per_task,
          input.peak_flops_per_sec / input.flops_per_task};
}

}  // namespace apsp
