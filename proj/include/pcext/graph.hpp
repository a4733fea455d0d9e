#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pcext {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool touches(Vertex x) const { return u == x || v == x; }
  bool shares_vertex(const Edge& o) const { return touches(o.u) || touches(o.v); }
  Vertex other(Vertex x) const { return x == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

// Path length in hops, or the infinite marker for disconnected pairs.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(std::size_t hops) : hops_(hops) {}
  static constexpr Distance infinite() { return Distance(kInf); }

  constexpr bool is_infinite() const { return hops_ == kInf; }
  std::size_t value() const;

  constexpr Distance operator+(Distance o) const {
    return (is_infinite() || o.is_infinite()) ? infinite() : Distance(hops_ + o.hops_);
  }
  constexpr auto operator<=>(const Distance&) const = default;
  constexpr bool operator==(std::size_t n) const { return hops_ == n; }
  constexpr bool operator<(std::size_t n) const { return hops_ < n; }
  constexpr bool operator>=(std::size_t n) const { return hops_ >= n; }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::size_t hops_ = 0;
};

std::string to_string(Distance d);

class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::size_t n);
  SimpleGraph(std::size_t n, std::span<const Edge> edges);

  // Throws InvalidInput on loops or duplicate edges. Endpoints must be in range.
  void add_edge(Vertex a, Vertex b);

  std::size_t order() const { return adjacency_.size(); }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_vertex(Vertex v) const { return v < order(); }
  bool has_edge(Vertex a, Vertex b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }
  // Position of e in edges(), if present.
  std::optional<std::size_t> edge_index(const Edge& e) const;
  std::size_t edge_index_or_throw(const Edge& e) const;

  std::size_t max_degree() const;
  std::size_t min_degree() const;

  // Same vertex count and edge set; insertion order does not matter.
  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    for (const auto& [e, i] : a.index_)
      if (!b.index_.contains(e)) return false;
    return true;
  }

 private:
  void check_vertex(Vertex v) const;

  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::map<Edge, std::size_t> index_;
};

// Edge coloring of a simple graph. Colors are 0-based.
struct EdgeColoring {
  std::map<Edge, Color> assignment;
  Color palette_size = 0;

  std::optional<Color> color_of(const Edge& e) const;
  // Colors aligned with g.edges(); throws InvalidInput if any edge is missing.
  std::vector<Color> aligned(const SimpleGraph& g) const;
  static EdgeColoring from_aligned(const SimpleGraph& g, std::span<const Color> colors,
                                   Color palette);
};

// True iff no two edges sharing a vertex carry the same color and every color is in range.
bool is_proper(const SimpleGraph& g, const EdgeColoring& c);

// Single-source BFS distances.
std::vector<Distance> bfs_distances(const SimpleGraph& g, Vertex source);

Distance vertex_distance(const SimpleGraph& g, Vertex u, Vertex v);
Distance edge_distance(const SimpleGraph& g, const Edge& e, const Edge& f);
bool is_distance_k_matching(const SimpleGraph& g, std::span<const Edge> edges, std::size_t k);

// All-pairs hop distances; meant for the small factor graphs.
class DistanceTable {
 public:
  DistanceTable() = default;
  explicit DistanceTable(const SimpleGraph& g);

  Distance operator()(Vertex u, Vertex v) const { return table_[u * n_ + v]; }
  Distance edge(const Edge& e, const Edge& f) const;
  std::size_t order() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Distance> table_;
};

struct StructureReport {
  std::size_t max_degree = 0;
  bool is_regular = true;
  bool is_bipartite = true;
  // Component id per vertex, numbered in order of smallest member.
  std::vector<std::size_t> component_of;
  std::size_t component_count = 0;
  // Side (0/1) per vertex from the BFS 2-coloring; meaningful only when bipartite.
  std::vector<std::uint8_t> side;
};

StructureReport structure_report(const SimpleGraph& g);

// Small graph families used throughout the tests and the CLI.
namespace families {
SimpleGraph path(std::size_t n);
SimpleGraph cycle(std::size_t n);
SimpleGraph complete(std::size_t n);
SimpleGraph complete_bipartite(std::size_t a, std::size_t b);
SimpleGraph star(std::size_t leaves);
}  // namespace families

}  // namespace pcext

template <>
struct std::hash<pcext::Edge> {
  std::size_t operator()(const pcext::Edge& e) const noexcept {
    return (static_cast<std::size_t>(e.u) << 32) ^ e.v;
  }
};
