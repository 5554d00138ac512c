#pragma once

#include <array>
#include <cstdint>

#include "apsp/tiling.hpp"

namespace apsp {

inline constexpr std::uint32_t kBanks = 16;
inline constexpr std::uint32_t kHalfWarp = 16;
inline constexpr std::uint32_t kWordBytes = 4;

/// The 16 word-granular addresses one half warp reads at a single step.
struct HalfWarpAccess {
  std::array<std::uint32_t, kHalfWarp> addresses{};
};

/// Serialization degree of a half-warp shared-memory read: 1 when all lanes
/// read the same word (broadcast), otherwise the maximum number of distinct
/// words falling on one of the 16 banks. Always in [1, 16]; invariant under
/// lane permutation.
std::uint32_t conflict_degree(const HalfWarpAccess& access);

enum class DataLayout { RowMajor, DoublyTiled };
enum class SliceTile { IAligned, JAligned };
enum class KOrder { Natural, Staggered };

/// Shared-memory addresses generated by lanes 0..15 when reading the staged
/// dependency slice of a singly dependent tile at k-offset k_step.
///
/// Lane-to-element ownership follows the kernels: with the row-major layout
/// a half warp owns a row of 16 elements; with the doubly tiled layout each
/// lane owns one inner tile of the 4x4 grid covered by the half warp, and
/// slices are stored in their tiled data order (one 16-word group per inner
/// tile). Staggered order starts each lane's k-visit at the sum of its tile
/// indexes modulo inner; it is only defined for the tiled layout with
/// inner = 4.
HalfWarpAccess slice_access_pattern(DataLayout layout, SliceTile tile,
                                    KOrder order, const TileConfig& cfg,
                                    std::uint32_t k_step);

enum class SliceShape { RowSlice, ColSlice };

/// Distinct aligned 16-word global-memory segments touched by one half-warp
/// read of a 4-wide dependency slice; 1 means fully coalesced.
std::uint32_t coalesced_segments(DataLayout layout, SliceShape slice,
                                 const TileConfig& cfg);

enum class SharedVariant { ThreeTiles, TwoTilesRegisters, Staged };

/// Shared-memory bytes per thread block, including the fixed 32 parameter
/// bytes: 3*t^2 words for the all-tiles kernel, 2*t^2 with the target tile
/// in registers, 2*t*m with staged dependency slices.
std::uint32_t shared_bytes(SharedVariant variant, const TileConfig& cfg);

/// Per-block resource budget against compute-capability-1.3 device limits.
/// A zero registers_per_block or threads_per_block means "not limiting".
struct KernelBudget {
  std::uint32_t shared_bytes_per_block = 0;
  std::uint32_t registers_per_block = 0;
  std::uint32_t threads_per_block = 0;
  std::uint32_t shared_bytes_per_mp = 16384;
  std::uint32_t registers_per_mp = 16384;
  std::uint32_t threads_per_mp = 1024;
};

/// Blocks that fit on one multiprocessor: the minimum of the three resource
/// quotients under floor division.
std::uint32_t blocks_per_mp(const KernelBudget& budget);

struct RooflineInput {
  double bytes_per_task = 0;
  double bandwidth_bytes_per_sec = 0;
  double flops_per_task = 0;
  double peak_flops_per_sec = 0;
};

struct RooflineBounds {
  double bandwidth_bound = 0;  // tasks/sec limited by the memory bus
  double compute_bound = 0;    // tasks/sec limited by arithmetic throughput
};

RooflineBounds roofline_tasks_per_sec(const RooflineInput& input);

}  // namespace apsp
