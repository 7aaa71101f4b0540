#pragma once

// Geometric sparsification: non-tree edges become points (c(a), c(b)) in the
// plane, eps-nets for rectangles thin them out level by level, and the result
// is a nested hierarchy E_0 ⊇ E_1 ⊇ ... ⊇ E_h = ∅.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ftc/bits.hpp"
#include "ftc/errors.hpp"
#include "ftc/graph.hpp"

namespace ftc {

struct PlanePoint {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  /// Index of the originating edge in the non-tree list.
  std::uint32_t payload = 0;

  friend constexpr bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline std::vector<PlanePoint> map_edges(const EulerCoords& coords, std::span<const NonTreeHalf> nontree) {
  std::vector<PlanePoint> points;
  points.reserve(nontree.size());
  for (std::uint32_t i = 0; i < nontree.size(); ++i) {
    const auto a = coords(nontree[i].midpoint);
    const auto b = coords(nontree[i].far);
    points.push_back({std::min(a, b), std::max(a, b), i});
  }
  return points;
}

/// Which vertical border of the ambient range the rectangles touch.
enum class Anchor { left, right };

namespace detail {

/// Slabs of `slab_size` consecutive points in (y, x, payload) order; one
/// extreme-x representative per slab. Hits every anchored rectangle holding
/// at least 2·slab_size − 1 points.
inline std::vector<PlanePoint> slab_net(std::span<const PlanePoint> points, Anchor anchor, std::size_t slab_size) {
  std::vector<PlanePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const PlanePoint& a, const PlanePoint& b) {
    return std::tie(a.y, a.x, a.payload) < std::tie(b.y, b.x, b.payload);
  });
  std::vector<PlanePoint> net;
  for (std::size_t begin = 0; begin < sorted.size(); begin += slab_size) {
    const auto first = sorted.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = sorted.begin() + static_cast<std::ptrdiff_t>(std::min(sorted.size(), begin + slab_size));
    auto pick = first;
    for (auto it = first; it != last; ++it) {
      const bool better = anchor == Anchor::right ? it->x > pick->x : it->x < pick->x;
      if (better) pick = it;
    }
    net.push_back(*pick);
  }
  return net;
}

}  // namespace detail

/// eps-net for rectangles anchored on the given border: hits every such
/// rectangle containing at least eps·|points| points; at most ⌈4/eps⌉ points.
inline std::vector<PlanePoint> three_sided_net(std::span<const PlanePoint> points, Anchor anchor, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw config_error("eps must lie in (0, 1]");
  const auto slab = static_cast<std::size_t>(std::ceil(eps * static_cast<double>(points.size()) / 4.0));
  return detail::slab_net(points, anchor, std::max<std::size_t>(slab, 1));
}

enum class NetBackend { slab, optimal };

struct NetFindConfig {
  /// Base case: |P| <= base_factor·⌈log2 N⌉ returns ∅.
  unsigned base_factor = 4;
  /// Each half gets a net for anchored rectangles with side_factor·⌈log2 N⌉ points.
  unsigned side_factor = 16;
  NetBackend backend = NetBackend::slab;

  /// Rectangles with at least this many points are hit by netfind.
  std::uint64_t hitting_threshold(std::uint64_t n) const { return 2ull * side_factor * log_points(n); }

  /// ⌈log2 N⌉, at least 1 so that a single point still reaches the base case.
  static std::uint64_t log_points(std::uint64_t n) { return std::max(1u, ceil_log2(n)); }
};

namespace detail {

inline void netfind_rec(std::span<const PlanePoint> sorted, std::uint64_t log_n, const NetFindConfig& cfg,
                        std::vector<PlanePoint>& out) {
  if (sorted.size() <= cfg.base_factor * log_n) return;
  const std::size_t half = (sorted.size() + 1) / 2;
  const auto p0 = sorted.first(half);
  const auto p1 = sorted.subspan(half);
  netfind_rec(p0, log_n, cfg, out);
  netfind_rec(p1, log_n, cfg, out);
  const std::uint64_t side = cfg.side_factor * log_n;
  const auto slab = static_cast<std::size_t>(std::max<std::uint64_t>((side + 3) / 4, 1));
  // A side with fewer than `side` points holds no rectangle the net must hit.
  if (p0.size() >= side) {
    const auto net = slab_net(p0, Anchor::right, slab);
    out.insert(out.end(), net.begin(), net.end());
  }
  if (p1.size() >= side) {
    const auto net = slab_net(p1, Anchor::left, slab);
    out.insert(out.end(), net.begin(), net.end());
  }
}

}  // namespace detail

/// Net for axis-aligned rectangles: every rectangle with at least
/// cfg.hitting_threshold(n) points of `points` contains an output point.
/// Output is sorted by payload with no duplicates.
inline std::vector<PlanePoint> netfind(std::span<const PlanePoint> points, std::uint64_t n,
                                       const NetFindConfig& cfg = {}) {
  if (cfg.backend == NetBackend::optimal) {
    throw config_error("the O(log log N) net backend is not available; use the slab backend");
  }
  std::vector<PlanePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const PlanePoint& a, const PlanePoint& b) {
    return std::tie(a.x, a.y, a.payload) < std::tie(b.x, b.y, b.payload);
  });
  std::vector<PlanePoint> out;
  detail::netfind_rec(sorted, NetFindConfig::log_points(n), cfg, out);
  std::sort(out.begin(), out.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.payload < b.payload; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const PlanePoint& a, const PlanePoint& b) { return a.payload == b.payload; }),
            out.end());
  return out;
}

enum class HierarchyMode : std::uint8_t { deterministic = 0, randomized = 1 };

struct Hierarchy {
  /// levels[i] = E_i as sorted payloads; levels.back() is empty.
  std::vector<std::vector<std::uint32_t>> levels;
  /// K, the per-level decode budget.
  std::uint64_t threshold = 0;
  HierarchyMode mode = HierarchyMode::deterministic;
  std::uint32_t c_net = 32;
  std::uint64_t seed = 0;

  std::uint32_t h() const noexcept { return static_cast<std::uint32_t>(levels.size() - 1); }
};

/// ⌈log2 n′⌉, at least 1.
inline std::uint64_t log_vertices(std::uint64_t n_aux) { return ceil_log2(std::max<std::uint64_t>(n_aux, 2)); }

inline std::uint64_t deterministic_threshold(std::uint64_t f, std::uint64_t n_aux, std::uint32_t c_net) {
  return std::uint64_t{c_net} * (2 * f + 1) * (2 * f + 1) * log_vertices(n_aux);
}

inline std::uint64_t randomized_threshold(std::uint64_t f, std::uint64_t n_aux) { return 5 * f * log_vertices(n_aux); }

inline Hierarchy build_hierarchy_det(std::span<const PlanePoint> points, std::uint64_t f, std::uint64_t n_aux,
                                     std::uint32_t c_net = 32, const NetFindConfig& cfg = {}) {
  if (c_net == 0) throw config_error("c_net must be at least 1");
  if (cfg.backend == NetBackend::optimal) {
    throw config_error("the O(log log N) net backend is not available; use the slab backend");
  }
  Hierarchy hier;
  hier.threshold = deterministic_threshold(f, n_aux, c_net);
  hier.mode = HierarchyMode::deterministic;
  hier.c_net = c_net;

  std::vector<PlanePoint> current(points.begin(), points.end());
  std::sort(current.begin(), current.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.payload < b.payload; });
  while (true) {
    std::vector<std::uint32_t> level;
    level.reserve(current.size());
    for (const auto& p : current) level.push_back(p.payload);
    hier.levels.push_back(std::move(level));
    if (current.empty()) break;
    current = netfind(current, current.size(), cfg);
  }
  return hier;
}

inline Hierarchy build_hierarchy_rand(std::span<const PlanePoint> points, std::uint64_t f, std::uint64_t n_aux,
                                      std::uint64_t seed) {
  Hierarchy hier;
  hier.threshold = randomized_threshold(f, n_aux);
  hier.mode = HierarchyMode::randomized;
  hier.seed = seed;

  std::vector<std::uint32_t> current;
  current.reserve(points.size());
  for (const auto& p : points) current.push_back(p.payload);
  std::sort(current.begin(), current.end());
  std::mt19937_64 rng(seed);
  while (true) {
    hier.levels.push_back(current);
    if (current.empty()) break;
    if (current.size() <= hier.threshold) {
      current.clear();
      continue;
    }
    std::vector<std::uint32_t> next;
    for (const auto e : current) {
      if (rng() & 1u) next.push_back(e);
    }
    current = std::move(next);
  }
  return hier;
}

struct GoodnessReport {
  std::size_t sets_checked = 0;
  std::size_t violations = 0;
  /// Largest |∂_{E_i}(S)| seen at a level i where ∂_{E_{i+1}}(S) is empty
  /// and ∂_{E_i}(S) is not: the smallest K for which the sample is good.
  std::size_t tight_threshold = 0;
};

/// Checks the goodness implication |∂_{E_i}(S)| > K  =>  ∂_{E_{i+1}}(S) ≠ ∅
/// for each vertex set S (membership over V(G′)) at every level.
inline GoodnessReport verify_goodness(const Hierarchy& hier, std::span<const NonTreeHalf> nontree,
                                      std::span<const std::vector<bool>> samples) {
  GoodnessReport report;
  std::vector<bool> crossing(nontree.size());
  for (const auto& in_s : samples) {
    ++report.sets_checked;
    for (std::size_t e = 0; e < nontree.size(); ++e) crossing[e] = in_s[nontree[e].midpoint] != in_s[nontree[e].far];
    std::vector<std::size_t> boundary(hier.levels.size(), 0);
    for (std::size_t i = 0; i < hier.levels.size(); ++i) {
      for (const auto e : hier.levels[i]) boundary[i] += crossing[e] ? 1 : 0;
    }
    bool bad = false;
    for (std::size_t i = 0; i + 1 < hier.levels.size(); ++i) {
      if (boundary[i] > 0 && boundary[i + 1] == 0) {
        report.tight_threshold = std::max(report.tight_threshold, boundary[i]);
        if (boundary[i] > hier.threshold) bad = true;
      }
    }
    report.violations += bad ? 1 : 0;
  }
  return report;
}

}  // namespace ftc
