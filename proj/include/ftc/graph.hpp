#pragma once

// Undirected simple graphs, canonical DFS spanning trees, Euler-tour
// coordinates and the subdivision of non-tree edges.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftc/errors.hpp"

namespace ftc {

using vertex_id = std::uint32_t;
using edge_id = std::uint32_t;

inline constexpr vertex_id no_vertex = std::numeric_limits<vertex_id>::max();

/// Unordered vertex pair stored with u < v.
struct Edge {
  vertex_id u = 0;
  vertex_id v = 0;

  static constexpr Edge normalized(vertex_id a, vertex_id b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  constexpr vertex_id other(vertex_id x) const noexcept { return x == u ? v : u; }

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

struct Incidence {
  vertex_id neighbor;
  edge_id edge;
};

/// Connected simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw validation_error("graph has no vertices");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto& e = edges_[i];
      if (e.u >= n_ || e.v >= n_) {
        throw validation_error("edge " + std::to_string(i) + " has an endpoint outside [0, " +
                               std::to_string(n_) + ")");
      }
      if (e.u == e.v) {
        throw validation_error("edge " + std::to_string(i) + " is a self-loop at vertex " +
                               std::to_string(e.u));
      }
      e = Edge::normalized(e.u, e.v);
    }
    build_adjacency();
    for (vertex_id v = 0; v < n_; ++v) {
      const auto nb = neighbors(v);
      for (std::size_t j = 1; j < nb.size(); ++j) {
        if (nb[j].neighbor == nb[j - 1].neighbor) {
          throw validation_error("duplicate edge " + std::to_string(v) + "-" +
                                 std::to_string(nb[j].neighbor));
        }
      }
    }
    const auto unreached = first_unreachable();
    if (unreached) {
      throw validation_error("graph is disconnected: vertex " + std::to_string(*unreached) +
                             " is not reachable from vertex 0");
    }
  }

  std::uint32_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(edge_id e) const { return edges_.at(e); }

  /// Incident edges of v ordered by neighbor index.
  std::span<const Incidence> neighbors(vertex_id v) const {
    return std::span<const Incidence>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
  }

  std::optional<edge_id> find_edge(vertex_id a, vertex_id b) const {
    if (a >= n_ || b >= n_) return std::nullopt;
    const auto nb = neighbors(a);
    auto it = std::lower_bound(nb.begin(), nb.end(), b,
                               [](const Incidence& x, vertex_id key) { return x.neighbor < key; });
    if (it == nb.end() || it->neighbor != b) return std::nullopt;
    return it->edge;
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adjacency_.resize(offsets_[n_]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (edge_id i = 0; i < edges_.size(); ++i) {
      adjacency_[fill[edges_[i].u]++] = {edges_[i].v, i};
      adjacency_[fill[edges_[i].v]++] = {edges_[i].u, i};
    }
    for (vertex_id v = 0; v < n_; ++v) {
      std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
                [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    }
  }

  std::optional<vertex_id> first_unreachable() const {
    std::vector<bool> seen(n_, false);
    std::vector<vertex_id> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const vertex_id v = stack.back();
      stack.pop_back();
      for (const auto& inc : neighbors(v)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = true;
          stack.push_back(inc.neighbor);
        }
      }
    }
    for (vertex_id v = 0; v < n_; ++v) {
      if (!seen[v]) return v;
    }
    return std::nullopt;
  }

  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Incidence> adjacency_;
};

/// Parses the edge-list format: first data line n, then one "u v" pair per
/// line. Lines whose first non-blank character is '#' and blank lines are
/// ignored. Errors name the offending line.
inline Graph load_graph(std::string_view text) {
  std::uint32_t n = 0;
  bool have_n = false;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::size_t line_no = 0;

  auto parse_fields = [](std::string_view line, std::size_t line_no) {
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      std::uint64_t value = 0;
      const auto* first = line.data() + i;
      const auto* last = line.data() + j;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last) {
        throw parse_error("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                          std::string(line.substr(i, j - i)) + "'");
      }
      out.push_back(value);
      i = j;
    }
    return out;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    const auto fields = parse_fields(line, line_no);
    if (!have_n) {
      if (fields.size() != 1) {
        throw parse_error("line " + std::to_string(line_no) + ": expected the vertex count n");
      }
      if (fields[0] == 0 || fields[0] > std::numeric_limits<std::uint32_t>::max() / 4) {
        throw validation_error("line " + std::to_string(line_no) + ": vertex count out of range");
      }
      n = static_cast<std::uint32_t>(fields[0]);
      have_n = true;
      continue;
    }
    if (fields.size() != 2) {
      throw parse_error("line " + std::to_string(line_no) + ": expected an edge 'u v'");
    }
    if (fields[0] >= n || fields[1] >= n) {
      throw validation_error("line " + std::to_string(line_no) + ": endpoint outside [0, " +
                             std::to_string(n) + ")");
    }
    if (fields[0] == fields[1]) {
      throw validation_error("line " + std::to_string(line_no) + ": self-loop at vertex " +
                             std::to_string(fields[0]));
    }
    edges.push_back(Edge::normalized(static_cast<vertex_id>(fields[0]), static_cast<vertex_id>(fields[1])));
    edge_line.push_back(line_no);
  }
  if (!have_n) throw parse_error("missing vertex count");

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return edges[a] != edges[b] ? edges[a] < edges[b] : a < b;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      throw validation_error("line " + std::to_string(edge_line[order[i]]) + ": duplicate edge " +
                             std::to_string(edges[order[i]].u) + "-" + std::to_string(edges[order[i]].v) +
                             " (first on line " + std::to_string(edge_line[order[i - 1]]) + ")");
    }
  }
  return Graph(n, std::move(edges));
}

inline Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

/// Rooted tree over vertices 0..size-1 with children kept in increasing
/// vertex order and a preorder numbering that follows that order.
class RootedTree {
 public:
  RootedTree() = default;

  /// parent[root] must equal root.
  static RootedTree from_parents(vertex_id root, std::vector<vertex_id> parent) {
    RootedTree t;
    const auto n = static_cast<std::uint32_t>(parent.size());
    if (root >= n || parent[root] != root) throw validation_error("invalid tree root");
    t.root_ = root;
    t.parent_ = std::move(parent);
    t.child_offsets_.assign(n + 1, 0);
    for (vertex_id v = 0; v < n; ++v) {
      if (v == root) continue;
      if (t.parent_[v] >= n || t.parent_[v] == v) throw validation_error("invalid parent pointer");
      ++t.child_offsets_[t.parent_[v] + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) t.child_offsets_[v + 1] += t.child_offsets_[v];
    t.children_.resize(t.child_offsets_[n]);
    std::vector<std::uint32_t> fill(t.child_offsets_.begin(), t.child_offsets_.end() - 1);
    for (vertex_id v = 0; v < n; ++v) {
      if (v != root) t.children_[fill[t.parent_[v]]++] = v;
    }

    t.preorder_.assign(n, no_vertex);
    t.order_.reserve(n);
    t.end_.assign(n, 0);
    // Iterative preorder; children are already ascending since v is scanned in order.
    std::vector<std::pair<vertex_id, std::uint32_t>> stack{{root, 0}};
    t.preorder_[root] = 0;
    t.order_.push_back(root);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto kids = t.children(v);
      if (next < kids.size()) {
        const vertex_id c = kids[next++];
        t.preorder_[c] = static_cast<std::uint32_t>(t.order_.size());
        t.order_.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        t.end_[v] = static_cast<std::uint32_t>(t.order_.size());
        stack.pop_back();
      }
    }
    if (t.order_.size() != n) throw validation_error("parent pointers do not form a tree");
    return t;
  }

  vertex_id root() const noexcept { return root_; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(parent_.size()); }
  vertex_id parent(vertex_id v) const { return parent_[v]; }
  std::span<const vertex_id> parents() const noexcept { return parent_; }
  std::span<const vertex_id> children(vertex_id v) const {
    return std::span<const vertex_id>(children_).subspan(child_offsets_[v],
                                                         child_offsets_[v + 1] - child_offsets_[v]);
  }
  std::uint32_t preorder(vertex_id v) const { return preorder_[v]; }
  /// One past the last preorder index of the subtree of v.
  std::uint32_t subtree_end(vertex_id v) const { return end_[v]; }
  vertex_id at_preorder(std::uint32_t i) const { return order_[i]; }
  std::span<const vertex_id> preorder_sequence() const noexcept { return order_; }

  bool is_tree_edge(const Edge& e) const {
    return (e.u != root_ && parent_[e.u] == e.v) || (e.v != root_ && parent_[e.v] == e.u);
  }
  /// Lower endpoint of a tree edge.
  vertex_id lower(const Edge& e) const { return (e.u != root_ && parent_[e.u] == e.v) ? e.u : e.v; }

 private:
  vertex_id root_ = 0;
  std::vector<vertex_id> parent_;
  std::vector<std::uint32_t> child_offsets_;
  std::vector<vertex_id> children_;
  std::vector<std::uint32_t> preorder_;
  std::vector<vertex_id> order_;
  std::vector<std::uint32_t> end_;
};

/// Depth-first spanning tree that always follows the lowest-index unvisited
/// neighbor first.
inline RootedTree build_spanning_tree(const Graph& g, vertex_id root = 0) {
  const auto n = g.vertex_count();
  if (root >= n) throw validation_error("root outside the vertex range");
  std::vector<vertex_id> parent(n, no_vertex);
  parent[root] = root;
  std::vector<std::pair<vertex_id, std::uint32_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto nb = g.neighbors(v);
    while (next < nb.size() && parent[nb[next].neighbor] != no_vertex) ++next;
    if (next == nb.size()) {
      stack.pop_back();
      continue;
    }
    const vertex_id w = nb[next++].neighbor;
    parent[w] = v;
    stack.emplace_back(w, 0);
  }
  return RootedTree::from_parents(root, std::move(parent));
}

/// Non-tree edge of the subdivided graph: (midpoint, far) where midpoint is
/// the subdivision vertex of `original`.
struct NonTreeHalf {
  vertex_id midpoint;
  vertex_id far;
  edge_id original;
};

/// G' obtained by subdividing every non-tree edge (u, v), u < v, into the tree
/// edge (u, m_e) and the non-tree edge (m_e, v). Subdivision vertices are
/// numbered n, n+1, ... in original edge order.
struct AuxiliaryGraph {
  Graph graph;
  RootedTree tree;
  /// Original edge -> lower endpoint of its image tree edge in T'.
  std::vector<vertex_id> sigma;
  /// Original edge -> subdivision vertex, or no_vertex for tree edges.
  std::vector<vertex_id> midpoint;
  std::vector<NonTreeHalf> nontree;
  std::uint32_t original_vertex_count = 0;
};

inline AuxiliaryGraph subdivide(const Graph& g, const RootedTree& t) {
  const auto n = g.vertex_count();
  if (t.size() != n) throw validation_error("tree does not span the graph");
  for (vertex_id v = 0; v < n; ++v) {
    if (v != t.root() && !g.find_edge(v, t.parent(v))) {
      throw validation_error("tree edge " + std::to_string(t.parent(v)) + "-" + std::to_string(v) +
                             " is not an edge of the graph");
    }
  }

  AuxiliaryGraph aux;
  aux.original_vertex_count = n;
  const auto m = static_cast<edge_id>(g.edge_count());
  aux.sigma.assign(m, no_vertex);
  aux.midpoint.assign(m, no_vertex);

  std::vector<vertex_id> parent(t.parents().begin(), t.parents().end());
  std::vector<Edge> edges;
  edges.reserve(m + (m - (n - 1)));
  vertex_id next = n;
  for (edge_id i = 0; i < m; ++i) {
    const Edge& e = g.edge(i);
    if (t.is_tree_edge(e)) {
      aux.sigma[i] = t.lower(e);
      edges.push_back(e);
    } else {
      const vertex_id mid = next++;
      aux.midpoint[i] = mid;
      aux.sigma[i] = mid;
      parent.push_back(e.u);
      edges.push_back(Edge{e.u, mid});
      edges.push_back(Edge{e.v, mid});
      aux.nontree.push_back(NonTreeHalf{mid, e.v, i});
    }
  }
  aux.graph = Graph(next, std::move(edges));
  aux.tree = RootedTree::from_parents(t.root(), std::move(parent));
  return aux;
}

/// c(v): 1-based Euler-tour position of the directed edge parent(v) -> v.
/// `up[v]` is the position of v -> parent(v). Both are 0 for the root.
struct EulerCoords {
  std::vector<std::uint32_t> down;
  std::vector<std::uint32_t> up;

  std::uint32_t operator()(vertex_id v) const { return down[v]; }
};

inline EulerCoords euler_coordinates(const RootedTree& t) {
  EulerCoords c;
  c.down.assign(t.size(), 0);
  c.up.assign(t.size(), 0);
  std::uint32_t pos = 0;
  std::vector<std::pair<vertex_id, std::uint32_t>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = t.children(v);
    if (next < kids.size()) {
      const vertex_id w = kids[next++];
      c.down[w] = ++pos;
      stack.emplace_back(w, 0);
    } else {
      if (v != t.root()) c.up[v] = ++pos;
      stack.pop_back();
    }
  }
  return c;
}

/// Ground truth: are s and t connected in g minus the given edges?
inline bool oracle_connected(const Graph& g, vertex_id s, vertex_id t, std::span<const edge_id> faults) {
  if (s == t) return true;
  std::vector<bool> removed(g.edge_count(), false);
  for (const auto e : faults) removed.at(e) = true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<vertex_id> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const vertex_id v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.neighbors(v)) {
      if (removed[inc.edge] || seen[inc.neighbor]) continue;
      if (inc.neighbor == t) return true;
      seen[inc.neighbor] = true;
      stack.push_back(inc.neighbor);
    }
  }
  return false;
}

}  // namespace ftc
