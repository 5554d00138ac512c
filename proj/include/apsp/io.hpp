#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "apsp/matrix.hpp"

namespace apsp {

enum class GraphFormat { EdgeListText, DenseBinary };

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// EdgeListText: first line "n m", then m lines "u v w".
/// DenseBinary: magic "APSP", version byte 0x01, n as u64 little-endian,
/// then n*n little-endian IEEE-754 binary32 values in row-major order.
DistanceMatrix load_graph(std::istream& in, GraphFormat format);

/// Writes the DenseBinary encoding; load_graph(save_matrix(m)) is a
/// value-level identity including the infinity bit pattern.
/// Row-major matrices only.
void save_matrix(const DistanceMatrix& m, std::ostream& out);

DistanceMatrix load_graph_file(const std::string& path, GraphFormat format);
void save_matrix_file(const DistanceMatrix& m, const std::string& path);

/// Deterministic seeded random instance: each off-diagonal entry is finite
/// with probability `density`, drawn uniformly from [lo, hi]; diagonal 0.
/// With `integer_weights`, finite entries are rounded down to whole numbers.
DistanceMatrix random_graph(std::uint64_t n, double density, Weight lo,
                            Weight hi, std::uint64_t seed,
                            bool integer_weights = false);

}  // namespace apsp
