#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace apsp {

// Path lengths live in the min-plus semiring: "addition" is min, and
// +infinity (unreachable) is absorbing under + and the identity of min.
using Weight = float;

inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::infinity();

inline bool reachable(Weight w) { return w != kUnreachable; }

enum class Layout { RowMajor, DoublyTiled };

struct Edge {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  Weight weight = 0.0f;
};

/// Edge-list description of a weighted directed graph, 0-based vertex ids.
struct GraphSpec {
  std::uint64_t n = 0;
  std::vector<Edge> edges;
};

/// Dense n-by-n matrix of path lengths.
///
/// `dim` is the physical edge length of the stored square: equal to `n` for
/// RowMajor, and the padded (multiple-of-tile) dimension for DoublyTiled.
/// Tiled matrices remember the tile geometry they were built with.
struct DistanceMatrix {
  Layout layout = Layout::RowMajor;
  std::uint64_t n = 0;
  std::uint64_t dim = 0;
  std::uint32_t tile_outer = 0;  // DoublyTiled only
  std::uint32_t tile_inner = 0;  // DoublyTiled only
  std::vector<Weight> data;

  static DistanceMatrix unconnected(std::uint64_t n);

  Weight& at(std::uint64_t i, std::uint64_t j) { return data[i * dim + j]; }
  Weight at(std::uint64_t i, std::uint64_t j) const { return data[i * dim + j]; }
};

/// Builds a row-major matrix from an edge list: w_uv = min over parallel
/// edges, w_ii = 0 (self-loops ignored), absent pairs unreachable.
/// Throws std::out_of_range on a vertex id >= n.
DistanceMatrix from_spec(const GraphSpec& spec);

/// Smallest vertex with a negative diagonal entry, if any. A negative
/// diagonal after a full run marks a vertex on a negative cycle.
std::optional<std::uint64_t> check_negative_cycle(const DistanceMatrix& m);

/// Order- and layout-independent 64-bit digest of the logical n*n entries:
/// wrapping sum of the bit patterns of finite values, mixed with the count
/// of unreachable entries. Row-major input only.
std::uint64_t matrix_checksum(const DistanceMatrix& m);

bool matrices_equal_bitwise(const DistanceMatrix& a, const DistanceMatrix& b);

}  // namespace apsp
