#include "apsp/kernels.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <vector>

#if defined(__SSE2__)
#include <immintrin.h>
#endif

namespace apsp {

namespace {

Weight* tile_base(DistanceMatrix& m, const TileConfig& cfg, std::uint32_t ob,
                  std::uint32_t oc) {
  const std::uint64_t tiles = m.dim / cfg.outer;
  return m.data.data() +
         (static_cast<std::uint64_t>(ob) * tiles + oc) * cfg.outer * cfg.outer;
}

// Tiled tile -> dense t x t row-major scratch (the CPU stand-in for a
// shared-memory or register copy) and back.
void unpack_tile(const Weight* tile, const TileConfig& cfg, Weight* dense) {
  const std::uint32_t t = cfg.outer, in = cfg.inner, row = t / in;
  for (std::uint32_t it = 0; it < row; ++it)
    for (std::uint32_t jt = 0; jt < row; ++jt) {
      const Weight* src = tile + (it * row + jt) * in * in;
      for (std::uint32_t r = 0; r < in; ++r)
        std::memcpy(dense + (it * in + r) * t + jt * in, src + r * in,
                    in * sizeof(Weight));
    }
}

void pack_tile(const Weight* dense, const TileConfig& cfg, Weight* tile) {
  const std::uint32_t t = cfg.outer, in = cfg.inner, row = t / in;
  for (std::uint32_t it = 0; it < row; ++it)
    for (std::uint32_t jt = 0; jt < row; ++jt) {
      Weight* dst = tile + (it * row + jt) * in * in;
      for (std::uint32_t r = 0; r < in; ++r)
        std::memcpy(dst + r * in, dense + (it * in + r) * t + jt * in,
                    in * sizeof(Weight));
    }
}

void require_tiled(const DistanceMatrix& m, const TileConfig& cfg) {
  if (m.layout != Layout::DoublyTiled || m.tile_outer != cfg.outer ||
      m.tile_inner != cfg.inner || m.dim % cfg.outer != 0)
    throw std::invalid_argument("matrix layout does not match tile config");
}

}  // namespace

void fw_naive(DistanceMatrix& m) {
  if (m.layout != Layout::RowMajor)
    throw std::invalid_argument("fw_naive requires a row-major matrix");
  const std::uint64_t n = m.n;
  Weight* w = m.data.data();
  for (std::uint64_t k = 0; k < n; ++k) {
    const Weight* row_k = w + k * n;
    for (std::uint64_t i = 0; i < n; ++i) {
      Weight* row_i = w + i * n;
      const Weight w_ik = row_i[k];
      if (!reachable(w_ik)) continue;
      for (std::uint64_t j = 0; j < n; ++j)
        row_i[j] = std::min(row_i[j], w_ik + row_k[j]);
    }
  }
}

void process_independent(DistanceMatrix& m, std::uint32_t b,
                         const TileConfig& cfg) {
  require_tiled(m, cfg);
  const std::uint32_t t = cfg.outer;
  Weight* tile = tile_base(m, cfg, b, b);
  std::vector<Weight> buf(t * t);
  unpack_tile(tile, cfg, buf.data());
  for (std::uint32_t k = 0; k < t; ++k)
    for (std::uint32_t i = 0; i < t; ++i) {
      const Weight w_ik = buf[i * t + k];
      for (std::uint32_t j = 0; j < t; ++j)
        buf[i * t + j] = std::min(buf[i * t + j], w_ik + buf[k * t + j]);
    }
  pack_tile(buf.data(), cfg, tile);
}

void process_singly_dependent(DistanceMatrix& m, std::uint32_t b,
                              BlockCoord target, PhaseKind kind,
                              const TileConfig& cfg) {
  require_tiled(m, cfg);
  const bool i_aligned = kind == PhaseKind::SinglyDependentIAligned;
  if (!i_aligned && kind != PhaseKind::SinglyDependentJAligned)
    throw std::invalid_argument("kind must name a singly dependent family");
  if (i_aligned && (target.row_block != b || target.col_block == b))
    throw std::logic_error("i-aligned target must lie in tile row b, off the diagonal");
  if (!i_aligned && (target.col_block != b || target.row_block == b))
    throw std::logic_error("j-aligned target must lie in tile column b, off the diagonal");

  const std::uint32_t t = cfg.outer;
  Weight* tile = tile_base(m, cfg, target.row_block, target.col_block);
  std::vector<Weight> buf(t * t), dep(t * t);
  unpack_tile(tile, cfg, buf.data());
  unpack_tile(tile_base(m, cfg, b, b), cfg, dep.data());

  if (i_aligned) {
    // w_ik comes from the diagonal tile, w_kj from the target itself.
    for (std::uint32_t k = 0; k < t; ++k)
      for (std::uint32_t i = 0; i < t; ++i) {
        const Weight w_ik = dep[i * t + k];
        for (std::uint32_t j = 0; j < t; ++j)
          buf[i * t + j] = std::min(buf[i * t + j], w_ik + buf[k * t + j]);
      }
  } else {
    // w_ik comes from the target, w_kj from the diagonal tile.
    for (std::uint32_t k = 0; k < t; ++k)
      for (std::uint32_t i = 0; i < t; ++i) {
        const Weight w_ik = buf[i * t + k];
        for (std::uint32_t j = 0; j < t; ++j)
          buf[i * t + j] = std::min(buf[i * t + j], w_ik + dep[k * t + j]);
      }
  }
  pack_tile(buf.data(), cfg, tile);
}

namespace {

void check_doubly(std::uint32_t b, BlockCoord target) {
  if (target.row_block == b || target.col_block == b)
    throw std::logic_error("doubly dependent target must avoid tile row/column b");
}

}  // namespace

void process_doubly_dependent(DistanceMatrix& m, std::uint32_t b,
                              BlockCoord target, const TileConfig& cfg) {
  require_tiled(m, cfg);
  check_doubly(b, target);
  const std::uint32_t t = cfg.outer;
  Weight* tile = tile_base(m, cfg, target.row_block, target.col_block);
  thread_local std::vector<Weight> buf, row_dep, col_dep, col_t;
  buf.resize(t * t);
  row_dep.resize(t * t);
  col_dep.resize(t * t);
  col_t.resize(t * t);
  unpack_tile(tile, cfg, buf.data());
  unpack_tile(tile_base(m, cfg, target.row_block, b), cfg, row_dep.data());
  unpack_tile(tile_base(m, cfg, b, target.col_block), cfg, col_dep.data());

  // Transposed copy of the column dependency so the k-innermost loop reads
  // two contiguous streams.
  for (std::uint32_t k = 0; k < t; ++k)
    for (std::uint32_t j = 0; j < t; ++j)
      col_t[j * t + k] = col_dep[k * t + j];

  // No dependencies inside the block, so k runs innermost.
  for (std::uint32_t i = 0; i < t; ++i)
    for (std::uint32_t j = 0; j < t; ++j) {
      Weight best = buf[i * t + j];
      const Weight* row = &row_dep[i * t];
      const Weight* col = &col_t[j * t];
      for (std::uint32_t k = 0; k < t; ++k)
        best = std::min(best, row[k] + col[k]);
      buf[i * t + j] = best;
    }
  pack_tile(buf.data(), cfg, tile);
}

void process_doubly_dependent_staged(DistanceMatrix& m, std::uint32_t b,
                                     BlockCoord target, const TileConfig& cfg) {
  require_tiled(m, cfg);
  check_doubly(b, target);
  const std::uint32_t t = cfg.outer, ms = cfg.stage_width;
  Weight* tile = tile_base(m, cfg, target.row_block, target.col_block);
  const Weight* row_tile = tile_base(m, cfg, target.row_block, b);
  const Weight* col_tile = tile_base(m, cfg, b, target.col_block);

  // Private copy of the target tile, held across all stages (the stand-in
  // for the tile-in-registers mapping).
  thread_local std::vector<Weight> buf;
  buf.resize(t * t);
  unpack_tile(tile, cfg, buf.data());

  if (cfg.inner == 4 && ms == 4 && t % 8 == 0) {
    // Each stage consumes one column of inner tiles from the row dependency
    // and one row of inner tiles from the column dependency, so both slices
    // read straight out of the tiled layout.  For a fixed shift s, element
    // (i, j) at a given step reads k offset q = (j + s) mod m where
    // s = (i + step) mod m; precomputing the shifted column slice per s makes
    // the inner loop contiguous and modulo-free while visiting each element's
    // k values in the staggered order.
    const std::uint32_t nt = t / 4;
    thread_local std::vector<Weight> mix;
    mix.resize(4 * t);
    for (std::uint32_t kt = 0; kt < nt; ++kt) {
      for (std::uint32_t jt = 0; jt < nt; ++jt) {
        const Weight* src = col_tile + (kt * nt + jt) * 16;
        for (std::uint32_t s = 0; s < 4; ++s)
          for (std::uint32_t c = 0; c < 4; ++c)
            mix[s * t + jt * 4 + c] = src[((c + s) & 3u) * 4 + c];
      }
      for (std::uint32_t i = 0; i < t; ++i) {
        const Weight* rsrc =
            row_tile + ((i >> 2) * nt + kt) * 16 + (i & 3u) * 4;
        Weight rot[16];
        for (std::uint32_t s = 0; s < 4; ++s)
          for (std::uint32_t u = 0; u < 4; ++u)
            rot[s * 4 + u] = rsrc[(u + s) & 3u];
        Weight* __restrict row = &buf[i * t];
        for (std::uint32_t step = 0; step < 4; ++step) {
          const std::uint32_t s = (i + step) & 3u;
          const Weight* __restrict shifted = &mix[s * t];
          const Weight* a = rot + s * 4;
#if defined(__AVX__)
          const __m128 av = _mm_loadu_ps(a);
          const __m256 av8 = _mm256_set_m128(av, av);
          for (std::uint32_t j = 0; j < t; j += 8) {
            const __m256 cand =
                _mm256_add_ps(av8, _mm256_loadu_ps(shifted + j));
            _mm256_storeu_ps(row + j,
                             _mm256_min_ps(cand, _mm256_loadu_ps(row + j)));
          }
#elif defined(__SSE2__)
          const __m128 av = _mm_loadu_ps(a);
          for (std::uint32_t j = 0; j < t; j += 4) {
            const __m128 cand = _mm_add_ps(av, _mm_loadu_ps(shifted + j));
            _mm_storeu_ps(row + j, _mm_min_ps(cand, _mm_loadu_ps(row + j)));
          }
#else
          for (std::uint32_t j = 0; j < t; ++j)
            row[j] = std::min(row[j], a[j & 3u] + shifted[j]);
#endif
        }
      }
    }
  } else {
    thread_local std::vector<Weight> row_dep, col_dep, row_slice, col_slice;
    row_dep.resize(t * t);
    col_dep.resize(t * t);
    row_slice.resize(t * ms);
    col_slice.resize(ms * t);
    unpack_tile(row_tile, cfg, row_dep.data());
    unpack_tile(col_tile, cfg, col_dep.data());

    for (std::uint32_t stage = 0; stage < t / ms; ++stage) {
      const std::uint32_t k0 = stage * ms;
      // Load the t*m and m*t dependency slices for this stage.
      for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t q = 0; q < ms; ++q)
          row_slice[i * ms + q] = row_dep[i * t + k0 + q];
      for (std::uint32_t q = 0; q < ms; ++q)
        for (std::uint32_t j = 0; j < t; ++j)
          col_slice[q * t + j] = col_dep[(k0 + q) * t + j];

      for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = 0; j < t; ++j) {
          Weight best = buf[i * t + j];
          const std::uint32_t start = ((i + j) % cfg.inner) % ms;
          for (std::uint32_t step = 0; step < ms; ++step) {
            const std::uint32_t q = (start + step) % ms;
            best = std::min(best, row_slice[i * ms + q] + col_slice[q * t + j]);
          }
          buf[i * t + j] = best;
        }
    }
  }
  pack_tile(buf.data(), cfg, tile);
}

}  // namespace apsp
