#pragma once

#include <cstdint>

#include "apsp/matrix.hpp"
#include "apsp/tiling.hpp"

namespace apsp {

/// Outer-tile coordinates of a block within round b.
struct BlockCoord {
  std::uint32_t row_block = 0;
  std::uint32_t col_block = 0;
};

enum class PhaseKind {
  Independent,
  SinglyDependentIAligned,  // shares its row of tiles with the diagonal block
  SinglyDependentJAligned,  // shares its column of tiles with the diagonal block
  DoublyDependent,
};

/// Classic triple-loop Floyd-Warshall on a row-major matrix, in place.
/// Correctness oracle for every blocked kernel.
void fw_naive(DistanceMatrix& m);

/// Round b diagonal block (b, b): t k-iterations with k outermost.
void process_independent(DistanceMatrix& m, std::uint32_t b,
                         const TileConfig& cfg);

/// Round b row/column block update, reading the completed (b, b) tile.
/// kind selects the family; target must lie in row b (i-aligned) or column b
/// (j-aligned), and must not be the diagonal block itself.
void process_singly_dependent(DistanceMatrix& m, std::uint32_t b,
                              BlockCoord target, PhaseKind kind,
                              const TileConfig& cfg);

/// Round b off-row/off-column block update with k innermost, reading the two
/// completed singly dependent tiles (target.row, b) and (b, target.col).
void process_doubly_dependent(DistanceMatrix& m, std::uint32_t b,
                              BlockCoord target, const TileConfig& cfg);

/// Staged variant: dependencies are consumed in slices of stage_width
/// k-values; within a stage each element's k-visit order starts at
/// (i + j) mod inner and wraps. Result is identical to the unstaged kernel.
void process_doubly_dependent_staged(DistanceMatrix& m, std::uint32_t b,
                                     BlockCoord target, const TileConfig& cfg);

}  // namespace apsp
