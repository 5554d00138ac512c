#include "apsp/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace apsp {

namespace {

void put_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw ParseError("truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

constexpr char kMagic[4] = {'A', 'P', 'S', 'P'};
constexpr unsigned char kVersion = 0x01;

DistanceMatrix load_edge_list(std::istream& in) {
  std::string line;
  std::uint64_t line_no = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("line 1: missing \"n m\" header");
  std::uint64_t n = 0, edge_count = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n >> edge_count) || n < 1)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected \"n m\" with n >= 1");
  }

  GraphSpec spec;
  spec.n = n;
  spec.edges.reserve(edge_count);
  for (std::uint64_t e = 0; e < edge_count; ++e) {
    if (!next_line())
      throw ParseError("line " + std::to_string(line_no + 1) +
                       ": expected " + std::to_string(edge_count) +
                       " edges, got " + std::to_string(e));
    std::istringstream ss(line);
    Edge edge;
    double w;
    if (!(ss >> edge.from >> edge.to >> w))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected \"u v w\"");
    if (std::isnan(w))
      throw ParseError("line " + std::to_string(line_no) + ": NaN weight");
    if (edge.from >= n || edge.to >= n)
      throw ParseError("line " + std::to_string(line_no) +
                       ": vertex id out of range for n=" + std::to_string(n));
    edge.weight = static_cast<Weight>(w);
    spec.edges.push_back(edge);
  }
  return from_spec(spec);
}

DistanceMatrix load_dense_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("bad magic; not a dense matrix file");
  char version;
  in.get(version);
  if (!in || static_cast<unsigned char>(version) != kVersion)
    throw ParseError("unsupported version byte");
  std::uint64_t n = get_u64_le(in);
  if (n < 1) throw ParseError("vertex count must be >= 1");

  DistanceMatrix m;
  m.layout = Layout::RowMajor;
  m.n = n;
  m.dim = n;
  m.data.resize(n * n);
  for (Weight& w : m.data) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw ParseError("truncated matrix payload");
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) bits |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    w = std::bit_cast<Weight>(bits);
  }
  return m;
}

}  // namespace

DistanceMatrix load_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::EdgeListText: return load_edge_list(in);
    case GraphFormat::DenseBinary: return load_dense_binary(in);
  }
  throw std::invalid_argument("unknown graph format");
}

void save_matrix(const DistanceMatrix& m, std::ostream& out) {
  if (m.layout != Layout::RowMajor)
    throw std::invalid_argument("save_matrix requires a row-major matrix");
  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  put_u64_le(out, m.n);
  for (Weight w : m.data) {
    std::uint32_t bits = std::bit_cast<std::uint32_t>(w);
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
  }
  if (!out) throw std::runtime_error("write failure while saving matrix");
}

DistanceMatrix load_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_graph(in, format);
}

void save_matrix_file(const DistanceMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_matrix(m, out);
}

DistanceMatrix random_graph(std::uint64_t n, double density, Weight lo,
                            Weight hi, std::uint64_t seed,
                            bool integer_weights) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(density > 0.0 && density <= 1.0))
    throw std::invalid_argument("density must be in (0, 1]");
  if (lo > hi) throw std::invalid_argument("weight range must have lo <= hi");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> weight(lo, hi);

  DistanceMatrix m = DistanceMatrix::unconnected(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (coin(rng) <= density) {
        double w = weight(rng);
        if (integer_weights) w = std::floor(w);
        m.at(i, j) = static_cast<Weight>(w);
      }
    }
  }
  return m;
}

}  // namespace apsp
