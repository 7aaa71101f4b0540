#pragma once

// The f-fault-tolerant connectivity labeling scheme. Non-tree edges are
// subdivided so that every fault becomes a tree edge of T′; each tree edge is
// labeled with the ancestry labels of its endpoints and, per hierarchy level,
// the summed outdetect labels of the subtree below it. A query cuts T′ into
// fragments at the faults and merges fragments along recovered edges.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftc/ancestry.hpp"
#include "ftc/errors.hpp"
#include "ftc/gf2e.hpp"
#include "ftc/graph.hpp"
#include "ftc/rs_outdetect.hpp"
#include "ftc/sparsify.hpp"
#include "ftc/union_find.hpp"

namespace ftc {

struct SchemeConfig {
  HierarchyMode mode = HierarchyMode::deterministic;
  std::uint32_t c_net = 32;
  /// Randomized mode only.
  std::uint64_t seed = 0;
  NetFindConfig netfind{};
};

struct SchemeParams {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t f = 0;
  /// Ancestry field width.
  std::uint32_t q = 0;
  std::uint32_t w = 0;
  std::uint64_t modulus_low = 0;
  /// Per-level decode budget K.
  std::uint64_t K = 0;
  std::uint32_t h = 0;
  HierarchyMode mode = HierarchyMode::deterministic;
  std::uint32_t c_net = 32;
  std::uint64_t seed = 0;
  /// |E_i| for i = 0..h.
  std::vector<std::uint32_t> level_sizes;

  /// Vertices of the subdivided graph: T′ has one edge per original edge.
  std::uint64_t n_aux() const noexcept { return std::uint64_t{m} + 1; }

  /// Coordinates kept per level: 2·min(K, |E_i|). Longer prefixes of a
  /// level-i aggregate are determined by these (its support has at most
  /// |E_i| locators).
  std::uint64_t level_k(std::size_t i) const { return std::min<std::uint64_t>(K, level_sizes.at(i)); }
  std::size_t level_offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < i; ++j) off += 2 * level_k(j);
    return off;
  }
  std::size_t syndrome_length() const { return level_offset(level_sizes.size()); }

  FieldSpec field() const { return FieldSpec(w, modulus_low); }
  LocatorFormat format() const { return LocatorFormat(q, n_aux()); }

  std::uint64_t vertex_label_bits() const noexcept { return 2ull * q; }
  std::uint64_t edge_label_bits() const noexcept { return 4ull * q + (std::uint64_t{h} + 1) * 2 * K * w; }

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

struct VertexLabel {
  AncestryLabel ancestry;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct EdgeLabel {
  /// Endpoints of the corresponding tree edge of T′.
  AncestryLabel upper;
  AncestryLabel lower;
  /// Per-level subtree aggregates, level i at params.level_offset(i).
  std::vector<FieldElement> syndromes;

  std::span<const FieldElement> level(const SchemeParams& p, std::size_t i) const {
    return std::span(syndromes).subspan(p.level_offset(i), 2 * p.level_k(i));
  }
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct LabelSet {
  SchemeParams params;
  /// Indexed by original vertex.
  std::vector<VertexLabel> vertices;
  /// Indexed by original edge.
  std::vector<EdgeLabel> edges;
  std::vector<Edge> edge_list;
  /// Hierarchy levels as sorted original edge indices.
  std::vector<std::vector<std::uint32_t>> hierarchy;

  std::optional<edge_id> find_edge(vertex_id a, vertex_id b) const {
    const Edge key = Edge::normalized(a, b);
    const auto it = std::find(edge_list.begin(), edge_list.end(), key);
    if (it == edge_list.end()) return std::nullopt;
    return static_cast<edge_id>(it - edge_list.begin());
  }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

/// Everything computed while labeling, kept for inspection.
struct SchemeConstruction {
  AuxiliaryGraph aux;
  std::vector<AncestryLabel> ancestry;
  EulerCoords euler;
  std::vector<PlanePoint> points;
  Hierarchy hierarchy;
  /// Locator of each non-tree edge of G′, indexed like aux.nontree.
  std::vector<FieldElement> locators;
  LabelSet labels;
};

inline SchemeConstruction construct_scheme(const Graph& g, std::uint32_t f, const SchemeConfig& cfg = {}) {
  if (f == 0) throw config_error("f must be at least 1");
  if (cfg.c_net == 0) throw config_error("c_net must be at least 1");

  SchemeConstruction c;
  const RootedTree t = build_spanning_tree(g);
  c.aux = subdivide(g, t);
  const RootedTree& tree = c.aux.tree;
  const auto n_aux = tree.size();
  c.ancestry = assign_ancestry(tree);
  c.euler = euler_coordinates(tree);
  c.points = map_edges(c.euler, c.aux.nontree);
  c.hierarchy = cfg.mode == HierarchyMode::deterministic
                    ? build_hierarchy_det(c.points, f, n_aux, cfg.c_net, cfg.netfind)
                    : build_hierarchy_rand(c.points, f, n_aux, cfg.seed);

  SchemeParams& p = c.labels.params;
  p.n = g.vertex_count();
  p.m = static_cast<std::uint32_t>(g.edge_count());
  p.f = f;
  p.q = ancestry_width(n_aux);
  const LocatorFormat format(p.q, n_aux);
  const FieldSpec field = FieldSpec::for_bits(format.bits());
  p.w = field.width();
  p.modulus_low = field.modulus_low();
  p.K = c.hierarchy.threshold;
  p.h = c.hierarchy.h();
  p.mode = cfg.mode;
  p.c_net = cfg.c_net;
  p.seed = cfg.mode == HierarchyMode::randomized ? cfg.seed : 0;
  for (const auto& level : c.hierarchy.levels) p.level_sizes.push_back(static_cast<std::uint32_t>(level.size()));

  c.locators.reserve(c.aux.nontree.size());
  for (const auto& e : c.aux.nontree) {
    c.locators.push_back(FieldElement{format.encode(tree.preorder(e.midpoint), tree.preorder(e.far))});
  }

  LabelSet& labels = c.labels;
  labels.edge_list.assign(g.edges().begin(), g.edges().end());
  for (vertex_id v = 0; v < p.n; ++v) labels.vertices.push_back({c.ancestry[v]});
  labels.edges.resize(p.m);
  const std::size_t total = p.syndrome_length();
  for (edge_id e = 0; e < p.m; ++e) {
    const vertex_id lower = c.aux.sigma[e];
    labels.edges[e].upper = c.ancestry[tree.parent(lower)];
    labels.edges[e].lower = c.ancestry[lower];
    labels.edges[e].syndromes.assign(total, FieldSpec::zero());
  }
  for (const auto& level : c.hierarchy.levels) {
    std::vector<std::uint32_t> originals;
    for (const auto e : level) originals.push_back(c.aux.nontree[e].original);
    std::sort(originals.begin(), originals.end());
    labels.hierarchy.push_back(std::move(originals));
  }

  // Per level: vertex labels of G′ restricted to E_i, summed bottom-up.
  std::vector<FieldElement> acc;
  std::vector<FieldElement> row;
  for (std::size_t i = 0; i < c.hierarchy.levels.size(); ++i) {
    const std::size_t len = 2 * p.level_k(i);
    if (len == 0) continue;
    acc.assign(std::size_t{n_aux} * len, FieldSpec::zero());
    row.resize(len);
    auto slot = [&](vertex_id v) { return std::span(acc).subspan(std::size_t{v} * len, len); };
    for (const auto e : c.hierarchy.levels[i]) {
      std::fill(row.begin(), row.end(), FieldSpec::zero());
      accumulate_powers(field, c.locators[e], row);
      for (const vertex_id v : {c.aux.nontree[e].midpoint, c.aux.nontree[e].far}) {
        auto dst = slot(v);
        for (std::size_t j = 0; j < len; ++j) dst[j] += row[j];
      }
    }
    for (std::uint32_t pos = n_aux; pos-- > 1;) {
      const vertex_id v = tree.at_preorder(pos);
      auto src = slot(v);
      auto dst = slot(tree.parent(v));
      for (std::size_t j = 0; j < len; ++j) dst[j] += src[j];
    }
    const std::size_t off = p.level_offset(i);
    for (edge_id e = 0; e < p.m; ++e) {
      const auto src = slot(c.aux.sigma[e]);
      std::copy(src.begin(), src.end(), labels.edges[e].syndromes.begin() + static_cast<std::ptrdiff_t>(off));
    }
  }
  return c;
}

inline LabelSet build_labels(const Graph& g, std::uint32_t f, const SchemeConfig& cfg = {}) {
  return construct_scheme(g, f, cfg).labels;
}

/// Subset of the fault list, one bit per fault.
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  FaultSet& operator^=(const FaultSet& other) {
    for (std::size_t j = 0; j < words_.size(); ++j) words_[j] ^= other.words_[j];
    return *this;
  }
  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (const auto w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }
  friend bool operator==(const FaultSet&, const FaultSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct Fragment {
  static constexpr std::uint32_t root_id = 0xffffffffu;

  /// Index of the identifying fault in FragmentTable::faults, or root_id.
  std::uint32_t fault = root_id;
  /// ∂_{T′} of the fragment.
  FaultSet cutset;
  std::uint32_t cut_size = 0;
  /// Per-level syndrome, same layout as EdgeLabel::syndromes.
  std::vector<FieldElement> syndrome;
};

struct FaultEntry {
  const EdgeLabel* label = nullptr;
  /// Fragment whose cutset also holds this fault (the enclosing one).
  std::uint32_t parent_fragment = 0;
};

class FragmentTable {
 public:
  /// Faults sorted by lower-endpoint preorder start.
  std::vector<FaultEntry> faults;
  /// fragments[0] is the root fragment; fragments[j + 1] is identified by faults[j].
  std::vector<Fragment> fragments;
  std::uint32_t s_fragment = 0;
  std::uint32_t t_fragment = 0;

  /// Fragment of the vertex at preorder position `pos`.
  std::uint32_t locate(std::uint32_t pos) const {
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), pos);
    return segment_fragment_[static_cast<std::size_t>(it - boundaries_.begin()) - 1];
  }

  bool immediate() const noexcept { return s_fragment == t_fragment; }

 private:
  friend FragmentTable build_fragment_table(const SchemeParams&, std::span<const EdgeLabel* const>, const VertexLabel&,
                                            const VertexLabel&);
  std::vector<std::uint32_t> boundaries_;
  std::vector<std::uint32_t> segment_fragment_;
};

namespace detail {

inline void check_interval(const SchemeParams& p, const AncestryLabel& a) {
  if (a.start >= a.end || a.end > p.n_aux()) throw validation_error("malformed ancestry label");
}

}  // namespace detail

inline FragmentTable build_fragment_table(const SchemeParams& p, std::span<const EdgeLabel* const> faults,
                                          const VertexLabel& s, const VertexLabel& t) {
  if (faults.size() > p.f) {
    throw validation_error("fault budget exceeded: " + std::to_string(faults.size()) + " faults, f = " +
                           std::to_string(p.f));
  }
  detail::check_interval(p, s.ancestry);
  detail::check_interval(p, t.ancestry);
  const std::size_t total = p.syndrome_length();
  for (const EdgeLabel* e : faults) {
    detail::check_interval(p, e->upper);
    detail::check_interval(p, e->lower);
    if (ancestry_decode(e->upper, e->lower) != 1 || e->syndromes.size() != total) {
      throw validation_error("malformed edge label");
    }
  }

  FragmentTable table;
  table.faults.reserve(faults.size());
  for (const EdgeLabel* e : faults) table.faults.push_back({e, 0});
  std::sort(table.faults.begin(), table.faults.end(),
            [](const FaultEntry& a, const FaultEntry& b) { return a.label->lower.start < b.label->lower.start; });
  for (std::size_t j = 1; j < table.faults.size(); ++j) {
    if (table.faults[j].label->lower.start == table.faults[j - 1].label->lower.start) {
      throw validation_error("duplicate fault edge");
    }
  }

  const std::size_t nf = table.faults.size();
  table.fragments.resize(nf + 1);
  for (std::size_t j = 0; j <= nf; ++j) {
    table.fragments[j].fault = j == 0 ? Fragment::root_id : static_cast<std::uint32_t>(j - 1);
    table.fragments[j].cutset = FaultSet(nf);
  }

  // Laminar parents, and the elementary segments between interval endpoints.
  std::vector<std::uint32_t> points{0};
  for (const auto& fe : table.faults) {
    points.push_back(fe.label->lower.start);
    points.push_back(fe.label->lower.end);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<std::uint32_t> open;
  std::size_t next = 0;
  for (const auto b : points) {
    while (!open.empty() && table.faults[open.back()].label->lower.end <= b) open.pop_back();
    if (next < nf && table.faults[next].label->lower.start == b) {
      table.faults[next].parent_fragment = open.empty() ? 0 : open.back() + 1;
      open.push_back(static_cast<std::uint32_t>(next++));
    }
    table.boundaries_.push_back(b);
    table.segment_fragment_.push_back(open.empty() ? 0 : open.back() + 1);
  }

  for (std::size_t j = 0; j < nf; ++j) {
    table.fragments[j + 1].cutset.set(j);
    table.fragments[table.faults[j].parent_fragment].cutset.set(j);
  }
  for (auto& frag : table.fragments) {
    frag.cut_size = frag.cutset.count();
    frag.syndrome.assign(total, FieldSpec::zero());
    for (std::size_t j = 0; j < nf; ++j) {
      if (!frag.cutset.test(j)) continue;
      const auto& src = table.faults[j].label->syndromes;
      for (std::size_t x = 0; x < total; ++x) frag.syndrome[x] += src[x];
    }
  }
  table.s_fragment = table.locate(s.ancestry.start);
  table.t_fragment = table.locate(t.ancestry.start);
  return table;
}

struct DecodeProbe {
  std::uint32_t cut_size = 0;
  /// k′ used for this decode.
  std::uint64_t budget = 0;
  /// Largest number of coordinates read at any level.
  std::uint64_t consulted = 0;
};

struct QueryStats {
  std::uint32_t merges = 0;
  std::uint32_t discards = 0;
  std::uint32_t heap_pops = 0;
  std::uint32_t heap_pushes = 0;
  std::vector<DecodeProbe> probes;
};

/// k′ for a set with `cut_size` fault edges on its tree boundary.
inline std::uint64_t adaptive_budget(const SchemeParams& p, std::uint32_t cut_size) {
  if (p.mode == HierarchyMode::randomized) return p.K;
  return std::min(p.K, deterministic_threshold(cut_size, p.n_aux(), p.c_net));
}

/// One boundary edge locator of the set whose per-level syndrome is given,
/// scanning levels top-down; nullopt when the set has no outgoing edge.
inline std::optional<FieldElement> outdetect_query(const SchemeParams& p, const FieldSpec& field,
                                                   const LocatorFormat& format,
                                                   std::span<const FieldElement> syndrome, std::uint32_t cut_size,
                                                   QueryStats* stats = nullptr) {
  const std::uint64_t budget = adaptive_budget(p, cut_size);
  DecodeProbe probe{cut_size, budget, 0};
  std::optional<FieldElement> found;
  for (std::size_t i = p.level_sizes.size(); i-- > 0;) {
    const std::uint64_t kk = std::min(budget, p.level_k(i));
    const auto coords = syndrome.subspan(p.level_offset(i), 2 * kk);
    probe.consulted = std::max<std::uint64_t>(probe.consulted, coords.size());
    const DecodeResult r = decode_power_sums(field, coords, &format);
    if (r.kind == DecodeResult::Kind::empty) continue;
    if (r.kind == DecodeResult::Kind::overflow) {
      throw invariant_error("outdetect decode overflowed at level " + std::to_string(i) + " with budget " +
                            std::to_string(kk));
    }
    found = r.locators.front();
    break;
  }
  if (stats != nullptr) stats->probes.push_back(probe);
  return found;
}

namespace detail {

/// Fragment on the far side of the recovered edge, given membership of the current set.
template <class InSet>
std::uint32_t far_fragment(const FragmentTable& table, const LocatorFormat& format, FieldElement locator,
                           InSet&& in_set) {
  const auto ends = format.decode(locator.value);
  if (!ends) throw invariant_error("recovered locator is not an edge");
  const std::uint32_t a = table.locate(ends->first);
  const std::uint32_t b = table.locate(ends->second);
  const bool ia = in_set(a);
  const bool ib = in_set(b);
  if (ia == ib) throw invariant_error("recovered edge does not leave the current set");
  return ia ? b : a;
}

inline void add_into(std::vector<FieldElement>& dst, const std::vector<FieldElement>& src) {
  for (std::size_t x = 0; x < dst.size(); ++x) dst[x] += src[x];
}

}  // namespace detail

/// Grows the component of s one recovered edge at a time.
inline bool query_basic(const SchemeParams& p, const VertexLabel& s, const VertexLabel& t,
                        std::span<const EdgeLabel* const> faults, QueryStats* stats = nullptr) {
  const FragmentTable table = build_fragment_table(p, faults, s, t);
  if (table.immediate()) return true;
  const FieldSpec field = p.field();
  const LocatorFormat format = p.format();

  std::vector<bool> in_set(table.fragments.size(), false);
  in_set[table.s_fragment] = true;
  const Fragment& start = table.fragments[table.s_fragment];
  std::vector<FieldElement> syndrome = start.syndrome;
  FaultSet cut = start.cutset;
  while (true) {
    const auto loc = outdetect_query(p, field, format, syndrome, cut.count(), stats);
    if (!loc) return false;
    const std::uint32_t other =
        detail::far_fragment(table, format, *loc, [&](std::uint32_t x) { return static_cast<bool>(in_set[x]); });
    in_set[other] = true;
    detail::add_into(syndrome, table.fragments[other].syndrome);
    cut ^= table.fragments[other].cutset;
    if (stats != nullptr) ++stats->merges;
    if (other == table.t_fragment) return true;
  }
}

/// Always works on the live component with the smallest tree cut.
inline bool query_fast(const SchemeParams& p, const VertexLabel& s, const VertexLabel& t,
                       std::span<const EdgeLabel* const> faults, QueryStats* stats = nullptr) {
  FragmentTable table = build_fragment_table(p, faults, s, t);
  if (table.immediate()) return true;
  const FieldSpec field = p.field();
  const LocatorFormat format = p.format();

  const auto count = static_cast<std::uint32_t>(table.fragments.size());
  UnionFind uf(count);
  std::set<std::pair<std::uint32_t, std::uint32_t>> heap;
  for (std::uint32_t x = 0; x < count; ++x) heap.emplace(table.fragments[x].cut_size, x);

  while (heap.size() > 1) {
    const auto [cut_size, id] = *heap.begin();
    heap.erase(heap.begin());
    if (stats != nullptr) ++stats->heap_pops;
    Fragment& comp = table.fragments[id];
    const auto loc = outdetect_query(p, field, format, comp.syndrome, cut_size, stats);
    if (!loc) {
      if (stats != nullptr) ++stats->discards;
      if (uf.same(id, table.s_fragment) || uf.same(id, table.t_fragment)) return false;
      continue;
    }
    const std::uint32_t other_fragment =
        detail::far_fragment(table, format, *loc, [&](std::uint32_t x) { return uf.find(x) == id; });
    const std::uint32_t other = uf.find(other_fragment);
    heap.erase({table.fragments[other].cut_size, other});
    const std::uint32_t root = uf.unite(id, other);
    const std::uint32_t gone = root == id ? other : id;
    Fragment& keep = table.fragments[root];
    Fragment& drop = table.fragments[gone];
    detail::add_into(keep.syndrome, drop.syndrome);
    keep.cutset ^= drop.cutset;
    keep.cut_size = keep.cutset.count();
    drop.syndrome.clear();
    if (stats != nullptr) ++stats->merges;
    if (uf.same(table.s_fragment, table.t_fragment)) return true;
    heap.emplace(keep.cut_size, root);
    if (stats != nullptr) ++stats->heap_pushes;
  }
  return false;
}

enum class Engine { basic, fast };

namespace detail {

inline std::vector<const EdgeLabel*> fault_labels(const LabelSet& labels, std::span<const edge_id> faults) {
  std::vector<const EdgeLabel*> out;
  out.reserve(faults.size());
  for (const auto e : faults) {
    if (e >= labels.edges.size()) throw validation_error("unknown edge index " + std::to_string(e));
    out.push_back(&labels.edges[e]);
  }
  return out;
}

inline const VertexLabel& vertex_label_of(const LabelSet& labels, vertex_id v) {
  if (v >= labels.vertices.size()) throw validation_error("vertex " + std::to_string(v) + " is not in the graph");
  return labels.vertices[v];
}

}  // namespace detail

/// Query by original vertex and edge indices.
inline bool query(const LabelSet& labels, vertex_id s, vertex_id t, std::span<const edge_id> faults,
                  Engine engine = Engine::fast, QueryStats* stats = nullptr) {
  const auto& sl = detail::vertex_label_of(labels, s);
  const auto& tl = detail::vertex_label_of(labels, t);
  const auto fl = detail::fault_labels(labels, faults);
  return engine == Engine::basic ? query_basic(labels.params, sl, tl, fl, stats)
                                 : query_fast(labels.params, sl, tl, fl, stats);
}

}  // namespace ftc
