#pragma once

// Interval ancestry labels: a vertex is labeled with the half-open range of
// preorder indices covered by its subtree.

#include <cstdint>
#include <vector>

#include "ftc/bits.hpp"
#include "ftc/graph.hpp"

namespace ftc {

struct AncestryLabel {
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  constexpr bool contains(std::uint32_t position) const noexcept { return start <= position && position < end; }
  friend constexpr bool operator==(const AncestryLabel&, const AncestryLabel&) = default;
};

/// Field width q of each label half for a tree with `vertex_count` vertices.
constexpr unsigned ancestry_width(std::uint32_t vertex_count) noexcept {
  return ceil_log2(static_cast<std::uint64_t>(vertex_count) + 1);
}

inline std::vector<AncestryLabel> assign_ancestry(const RootedTree& t) {
  std::vector<AncestryLabel> labels(t.size());
  for (vertex_id v = 0; v < t.size(); ++v) labels[v] = {t.preorder(v), t.subtree_end(v)};
  return labels;
}

/// +1 if a is a proper ancestor of b, -1 if b is a proper ancestor of a,
/// 0 otherwise (including a == b).
constexpr int ancestry_decode(const AncestryLabel& a, const AncestryLabel& b) noexcept {
  if (a == b) return 0;
  if (a.start <= b.start && b.end <= a.end) return 1;
  if (b.start <= a.start && a.end <= b.end) return -1;
  return 0;
}

}  // namespace ftc
