#pragma once

// Binary label store. All integers are big-endian.
//
//   "FTCL"  u16 version (1)
//   u32 n, u32 m, u32 f, u32 q, u32 w, u64 modulus_low, u64 K, u32 h,
//   u8 mode (0 deterministic, 1 randomized), u32 c_net, [u64 seed if randomized]
//   m × (u32 u, u32 v)                              original edges, u < v
//   (h+1) × (u32 count, count × u32 edge index)     hierarchy levels E_0..E_h
//   n × (start, end)                                vertex labels, ⌈q/8⌉ bytes each
//   m × (upper start, upper end, lower start, lower end, (h+1) × 2K elements)
//
// Field elements take ⌈w/8⌉ bytes. Every edge label carries the full 2K
// coordinates per level; in memory only the first 2·min(K, |E_i|) are kept.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ftc/bits.hpp"
#include "ftc/errors.hpp"
#include "ftc/scheme.hpp"

namespace ftc {

inline constexpr char store_magic[4] = {'F', 'T', 'C', 'L'};
inline constexpr std::uint16_t store_version = 1;

namespace detail {

inline void put_label(ByteWriter& out, const AncestryLabel& a, std::size_t bytes) {
  out.put_uint(a.start, bytes);
  out.put_uint(a.end, bytes);
}

inline AncestryLabel get_label(ByteReader& in, std::size_t bytes, std::uint64_t n_aux) {
  AncestryLabel a;
  a.start = static_cast<std::uint32_t>(in.get_uint(bytes));
  a.end = static_cast<std::uint32_t>(in.get_uint(bytes));
  if (a.start >= a.end || a.end > n_aux) throw parse_error("ancestry label out of range");
  return a;
}

/// Columns per pass when filling label tails; bounds the n′ × block buffer.
inline constexpr std::size_t tail_block = 1024;

}  // namespace detail

/// Writes the labels of `c`. The stream must be seekable.
inline void write_store(std::ostream& os, const SchemeConstruction& c) {
  const LabelSet& labels = c.labels;
  const SchemeParams& p = labels.params;
  const FieldSpec field = p.field();
  const std::size_t qb = bytes_for_bits(p.q);
  const std::size_t wb = field.byte_width();
  ByteWriter out(os);

  out.put_bytes(store_magic, 4);
  out.put_u16(store_version);
  out.put_u32(p.n);
  out.put_u32(p.m);
  out.put_u32(p.f);
  out.put_u32(p.q);
  out.put_u32(p.w);
  out.put_u64(p.modulus_low);
  out.put_u64(p.K);
  out.put_u32(p.h);
  out.put_u8(static_cast<std::uint8_t>(p.mode));
  out.put_u32(p.c_net);
  if (p.mode == HierarchyMode::randomized) out.put_u64(p.seed);
  for (const auto& e : labels.edge_list) {
    out.put_u32(e.u);
    out.put_u32(e.v);
  }
  for (const auto& level : labels.hierarchy) {
    out.put_u32(static_cast<std::uint32_t>(level.size()));
    for (const auto e : level) out.put_u32(e);
  }
  for (const auto& v : labels.vertices) detail::put_label(out, v.ancestry, qb);

  const auto base = os.tellp();
  const std::size_t level_bytes = 2 * p.K * wb;
  const std::size_t record = 4 * qb + (std::size_t{p.h} + 1) * level_bytes;
  for (const auto& e : labels.edges) {
    detail::put_label(out, e.upper, qb);
    detail::put_label(out, e.lower, qb);
    for (std::size_t i = 0; i <= p.h; ++i) {
      const auto coords = e.level(p, i);
      for (const auto x : coords) write_element(out, field, x);
      for (std::size_t j = coords.size(); j < 2 * p.K; ++j) write_element(out, field, FieldSpec::zero());
    }
  }
  const auto end = os.tellp();

  // Tails beyond 2·|E_i|: recompute the subtree sums column block by column block.
  const RootedTree& tree = c.aux.tree;
  const std::size_t n_aux = tree.size();
  std::vector<FieldElement> acc;
  std::vector<FieldElement> row;
  for (std::size_t i = 0; i <= p.h; ++i) {
    const std::size_t from = 2 * p.level_k(i);
    const auto& level = c.hierarchy.levels[i];
    if (from == 2 * p.K || level.empty()) continue;
    for (std::size_t j0 = from; j0 < 2 * p.K; j0 += detail::tail_block) {
      const std::size_t len = std::min<std::size_t>(detail::tail_block, 2 * p.K - j0);
      acc.assign(n_aux * len, FieldSpec::zero());
      row.resize(len);
      auto slot = [&](vertex_id v) { return std::span(acc).subspan(std::size_t{v} * len, len); };
      for (const auto e : level) {
        FieldElement x = field.pow(c.locators[e], j0);
        for (auto& r : row) {
          r = x;
          x = field.mul(x, c.locators[e]);
        }
        for (const vertex_id v : {c.aux.nontree[e].midpoint, c.aux.nontree[e].far}) {
          auto dst = slot(v);
          for (std::size_t j = 0; j < len; ++j) dst[j] += row[j];
        }
      }
      for (std::size_t pos = n_aux; pos-- > 1;) {
        const vertex_id v = tree.at_preorder(static_cast<std::uint32_t>(pos));
        auto src = slot(v);
        auto dst = slot(tree.parent(v));
        for (std::size_t j = 0; j < len; ++j) dst[j] += src[j];
      }
      for (edge_id e = 0; e < p.m; ++e) {
        os.seekp(base + static_cast<std::streamoff>(e * record + 4 * qb + i * level_bytes + j0 * wb));
        for (const auto x : slot(c.aux.sigma[e])) write_element(out, field, x);
      }
    }
  }
  os.seekp(end);
  if (!os) throw std::runtime_error("failed to write label store");
}

inline LabelSet read_store(std::istream& is) {
  ByteReader in(is);
  if (in.get_bytes(4) != std::string(store_magic, 4)) throw parse_error("not a label store (bad magic)");
  if (const auto version = in.get_u16(); version != store_version) {
    throw parse_error("unsupported label store version " + std::to_string(version));
  }
  LabelSet labels;
  SchemeParams& p = labels.params;
  p.n = in.get_u32();
  p.m = in.get_u32();
  p.f = in.get_u32();
  p.q = in.get_u32();
  p.w = in.get_u32();
  p.modulus_low = in.get_u64();
  p.K = in.get_u64();
  p.h = in.get_u32();
  const auto mode = in.get_u8();
  if (mode > 1) throw parse_error("unknown hierarchy mode " + std::to_string(mode));
  p.mode = static_cast<HierarchyMode>(mode);
  p.c_net = in.get_u32();
  if (p.mode == HierarchyMode::randomized) p.seed = in.get_u64();

  if (p.n == 0 || p.m + 1 < p.n || p.f == 0) throw parse_error("inconsistent store header");
  if (p.q != ancestry_width(static_cast<std::uint32_t>(p.n_aux()))) throw parse_error("ancestry width mismatch");
  if (p.w < 2 * p.q + 1) throw parse_error("field too narrow for edge locators");
  FieldSpec field = [&] {
    try {
      return p.field();
    } catch (const config_error& e) {
      throw parse_error(std::string("bad field in store header: ") + e.what());
    }
  }();
  if (p.h > 64 || p.K == 0) throw parse_error("inconsistent store header");

  labels.edge_list.reserve(p.m);
  for (std::uint32_t e = 0; e < p.m; ++e) {
    const auto u = in.get_u32();
    const auto v = in.get_u32();
    if (u >= v || v >= p.n) throw parse_error("edge " + std::to_string(e) + " out of range");
    labels.edge_list.push_back({u, v});
  }
  for (std::uint32_t i = 0; i <= p.h; ++i) {
    const auto count = in.get_u32();
    if (count > p.m) throw parse_error("hierarchy level larger than the edge set");
    std::vector<std::uint32_t> level(count);
    for (auto& e : level) {
      e = in.get_u32();
      if (e >= p.m) throw parse_error("hierarchy edge index out of range");
    }
    if (!std::is_sorted(level.begin(), level.end())) throw parse_error("hierarchy level not sorted");
    p.level_sizes.push_back(count);
    labels.hierarchy.push_back(std::move(level));
  }
  if (!labels.hierarchy.back().empty()) throw parse_error("top hierarchy level must be empty");

  const std::size_t qb = bytes_for_bits(p.q);
  labels.vertices.resize(p.n);
  for (auto& v : labels.vertices) v.ancestry = detail::get_label(in, qb, p.n_aux());
  labels.edges.resize(p.m);
  const std::size_t total = p.syndrome_length();
  for (auto& e : labels.edges) {
    e.upper = detail::get_label(in, qb, p.n_aux());
    e.lower = detail::get_label(in, qb, p.n_aux());
    e.syndromes.reserve(total);
    for (std::size_t i = 0; i <= p.h; ++i) {
      const std::uint64_t keep = 2 * p.level_k(i);
      for (std::uint64_t j = 0; j < 2 * p.K; ++j) {
        const FieldElement x = read_element(in, field);
        if (j < keep) e.syndromes.push_back(x);
      }
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) throw parse_error("trailing bytes after label store");
  return labels;
}

inline void write_store_file(const std::string& path, const SchemeConstruction& c) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_store(out, c);
}

inline LabelSet read_store_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_store(in);
}

}  // namespace ftc
