#pragma once

#include <cstdint>

#include "apsp/matrix.hpp"

namespace apsp {

/// Tile geometry for the blocked kernels and the doubly tiled data order.
///
/// outer: edge length t of an outer tile; inner: edge length of a sub-tile;
/// stage_width: k-iterations per stage of the staged kernel; block_workers:
/// tasks-per-worker divisor h (each of h workers owns outer*outer/h elements
/// of a block).
struct TileConfig {
  std::uint32_t outer = 32;
  std::uint32_t inner = 4;
  std::uint32_t stage_width = 4;
  std::uint32_t block_workers = 64;

  void validate() const;
  std::uint64_t padded(std::uint64_t n) const {
    return (n + outer - 1) / outer * outer;
  }
};

struct TiledIndex {
  std::uint32_t outer_row = 0, outer_col = 0;
  std::uint32_t inner_row = 0, inner_col = 0;
  std::uint32_t sub_row = 0, sub_col = 0;
};

/// Linear offset of an element in the doubly tiled order: outer tiles
/// row-major across the matrix, inner tiles row-major within an outer tile,
/// elements row-major within an inner tile. Bijective onto [0, padded_n^2),
/// strictly monotone in lexicographic TiledIndex order.
std::uint64_t linear_offset(const TiledIndex& idx, const TileConfig& cfg,
                            std::uint64_t padded_n);

TiledIndex tiled_index_of(std::uint64_t i, std::uint64_t j,
                          const TileConfig& cfg);

/// Offset of logical element (i, j) in a doubly tiled matrix.
std::uint64_t tiled_offset(std::uint64_t i, std::uint64_t j,
                           const TileConfig& cfg, std::uint64_t padded_n);

/// Reorders a row-major matrix into the doubly tiled layout, padding up to a
/// multiple of cfg.outer with unreachable off-diagonal entries and a zero
/// diagonal; min-plus arithmetic leaves the padding inert.
DistanceMatrix to_tiled(const DistanceMatrix& m, const TileConfig& cfg);

/// Inverse of to_tiled: strips padding back down to an n-by-n row-major
/// matrix. Throws std::out_of_range if n exceeds the padded dimension.
DistanceMatrix from_tiled(const DistanceMatrix& m, std::uint64_t n);

}  // namespace apsp
