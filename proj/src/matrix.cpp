#include "apsp/matrix.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

namespace apsp {

DistanceMatrix DistanceMatrix::unconnected(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("vertex count must be >= 1");
  DistanceMatrix m;
  m.layout = Layout::RowMajor;
  m.n = n;
  m.dim = n;
  m.data.assign(n * n, kUnreachable);
  for (std::uint64_t i = 0; i < n; ++i) m.at(i, i) = 0.0f;
  return m;
}

DistanceMatrix from_spec(const GraphSpec& spec) {
  DistanceMatrix m = DistanceMatrix::unconnected(spec.n);
  for (const Edge& e : spec.edges) {
    if (e.from >= spec.n || e.to >= spec.n) {
      throw std::out_of_range("edge (" + std::to_string(e.from) + ", " +
                              std::to_string(e.to) + ") out of range for n=" +
                              std::to_string(spec.n));
    }
    if (e.from == e.to) continue;  // diagonal is pinned to 0
    Weight& slot = m.at(e.from, e.to);
    if (e.weight < slot) slot = e.weight;
  }
  return m;
}

std::optional<std::uint64_t> check_negative_cycle(const DistanceMatrix& m) {
  for (std::uint64_t i = 0; i < m.n; ++i) {
    if (m.data[i * m.dim + i] < 0.0f) return i;
  }
  return std::nullopt;
}

std::uint64_t matrix_checksum(const DistanceMatrix& m) {
  if (m.layout != Layout::RowMajor)
    throw std::invalid_argument("matrix_checksum requires a row-major matrix");
  std::uint64_t sum = 0;
  std::uint64_t unreachable_count = 0;
  for (std::uint64_t i = 0; i < m.n; ++i) {
    for (std::uint64_t j = 0; j < m.n; ++j) {
      Weight w = m.at(i, j);
      if (reachable(w)) {
        sum += std::bit_cast<std::uint32_t>(w);
      } else {
        ++unreachable_count;
      }
    }
  }
  return sum ^ (unreachable_count * 0x9E3779B97F4A7C15ull);
}

bool matrices_equal_bitwise(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.n != b.n || a.layout != b.layout || a.dim != b.dim) return false;
  return std::memcmp(a.data.data(), b.data.data(),
                     a.data.size() * sizeof(Weight)) == 0;
}

}  // namespace apsp
