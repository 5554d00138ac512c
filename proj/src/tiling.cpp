#include "apsp/tiling.hpp"

#include <stdexcept>

namespace apsp {

void TileConfig::validate() const {
  if (outer == 0 || inner == 0 || stage_width == 0 || block_workers == 0)
    throw std::invalid_argument("tile parameters must be positive");
  if (outer % inner != 0)
    throw std::invalid_argument("inner tile size must divide outer tile size");
  if (outer % stage_width != 0)
    throw std::invalid_argument("stage width must divide outer tile size");
  if ((static_cast<std::uint64_t>(outer) * outer) % block_workers != 0)
    throw std::invalid_argument("block workers must divide outer^2");
}

std::uint64_t linear_offset(const TiledIndex& idx, const TileConfig& cfg,
                            std::uint64_t padded_n) {
  const std::uint64_t outer_tiles = padded_n / cfg.outer;
  const std::uint64_t inner_tiles = cfg.outer / cfg.inner;
  const std::uint64_t outer_id = idx.outer_row * outer_tiles + idx.outer_col;
  const std::uint64_t inner_id = idx.inner_row * inner_tiles + idx.inner_col;
  const std::uint64_t sub_id = idx.sub_row * cfg.inner + idx.sub_col;
  return outer_id * cfg.outer * cfg.outer + inner_id * cfg.inner * cfg.inner +
         sub_id;
}

TiledIndex tiled_index_of(std::uint64_t i, std::uint64_t j,
                          const TileConfig& cfg) {
  TiledIndex idx;
  idx.outer_row = static_cast<std::uint32_t>(i / cfg.outer);
  idx.outer_col = static_cast<std::uint32_t>(j / cfg.outer);
  const std::uint32_t ri = static_cast<std::uint32_t>(i % cfg.outer);
  const std::uint32_t rj = static_cast<std::uint32_t>(j % cfg.outer);
  idx.inner_row = ri / cfg.inner;
  idx.inner_col = rj / cfg.inner;
  idx.sub_row = ri % cfg.inner;
  idx.sub_col = rj % cfg.inner;
  return idx;
}

std::uint64_t tiled_offset(std::uint64_t i, std::uint64_t j,
                           const TileConfig& cfg, std::uint64_t padded_n) {
  return linear_offset(tiled_index_of(i, j, cfg), cfg, padded_n);
}

DistanceMatrix to_tiled(const DistanceMatrix& m, const TileConfig& cfg) {
  if (m.layout != Layout::RowMajor)
    throw std::invalid_argument("to_tiled requires a row-major matrix");
  cfg.validate();

  const std::uint64_t padded = cfg.padded(m.n);
  DistanceMatrix out;
  out.layout = Layout::DoublyTiled;
  out.n = m.n;
  out.dim = padded;
  out.tile_outer = cfg.outer;
  out.tile_inner = cfg.inner;
  out.data.assign(padded * padded, kUnreachable);

  for (std::uint64_t i = m.n; i < padded; ++i)
    out.data[tiled_offset(i, i, cfg, padded)] = 0.0f;
  for (std::uint64_t i = 0; i < m.n; ++i)
    for (std::uint64_t j = 0; j < m.n; ++j)
      out.data[tiled_offset(i, j, cfg, padded)] = m.at(i, j);
  return out;
}

DistanceMatrix from_tiled(const DistanceMatrix& m, std::uint64_t n) {
  if (m.layout != Layout::DoublyTiled)
    throw std::invalid_argument("from_tiled requires a doubly tiled matrix");
  if (n > m.dim)
    throw std::out_of_range("requested size exceeds padded dimension");

  TileConfig cfg;
  cfg.outer = m.tile_outer;
  cfg.inner = m.tile_inner;

  DistanceMatrix out;
  out.layout = Layout::RowMajor;
  out.n = n;
  out.dim = n;
  out.data.resize(n * n);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      out.at(i, j) = m.data[tiled_offset(i, j, cfg, m.dim)];
  return out;
}

}  // namespace apsp
