#include "pcext/graph.hpp"

#include <algorithm>
#include <deque>

#include "pcext/errors.hpp"

namespace pcext {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

std::size_t Distance::value() const {
  if (is_infinite()) throw InvalidInput("value() on an infinite distance");
  return hops_;
}

std::string to_string(Distance d) {
  return d.is_infinite() ? std::string("inf") : std::to_string(d.value());
}

SimpleGraph::SimpleGraph(std::size_t n) : adjacency_(n) {}

SimpleGraph::SimpleGraph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

void SimpleGraph::check_vertex(Vertex v) const {
  if (v >= order()) {
    throw InvalidInput("vertex " + std::to_string(v) + " out of range (order " +
                       std::to_string(order()) + ")");
  }
}

void SimpleGraph::add_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw InvalidInput("self-loop at vertex " + std::to_string(a));
  Edge e(a, b);
  if (index_.contains(e)) throw InvalidInput("duplicate edge " + to_string(e));
  index_.emplace(e, edges_.size());
  edges_.push_back(e);
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
}

std::span<const Vertex> SimpleGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

bool SimpleGraph::has_edge(Vertex a, Vertex b) const {
  if (a == b || a >= order() || b >= order()) return false;
  return index_.contains(Edge(a, b));
}

std::optional<std::size_t> SimpleGraph::edge_index(const Edge& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SimpleGraph::edge_index_or_throw(const Edge& e) const {
  auto idx = edge_index(e);
  if (!idx) throw InvalidInput("edge " + to_string(e) + " is not in the graph");
  return *idx;
}

std::size_t SimpleGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

std::size_t SimpleGraph::min_degree() const {
  if (adjacency_.empty()) return 0;
  std::size_t best = adjacency_.front().size();
  for (const auto& adj : adjacency_) best = std::min(best, adj.size());
  return best;
}

std::optional<Color> EdgeColoring::color_of(const Edge& e) const {
  auto it = assignment.find(e);
  if (it == assignment.end()) return std::nullopt;
  return it->second;
}

std::vector<Color> EdgeColoring::aligned(const SimpleGraph& g) const {
  std::vector<Color> out;
  out.reserve(g.size());
  for (const Edge& e : g.edges()) {
    auto c = color_of(e);
    if (!c) throw InvalidInput("coloring misses edge " + to_string(e));
    out.push_back(*c);
  }
  return out;
}

EdgeColoring EdgeColoring::from_aligned(const SimpleGraph& g, std::span<const Color> colors,
                                        Color palette) {
  if (colors.size() != g.size()) throw InvalidInput("aligned coloring has wrong length");
  EdgeColoring out;
  out.palette_size = palette;
  for (std::size_t i = 0; i < colors.size(); ++i) out.assignment.emplace(g.edges()[i], colors[i]);
  return out;
}

bool is_proper(const SimpleGraph& g, const EdgeColoring& c) {
  for (const auto& [e, color] : c.assignment) {
    if (color >= c.palette_size || !g.has_edge(e)) return false;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Color> seen;
    for (Vertex w : g.neighbors(v)) {
      if (auto col = c.color_of(Edge(v, w))) seen.push_back(*col);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

std::vector<Distance> bfs_distances(const SimpleGraph& g, Vertex source) {
  std::vector<Distance> dist(g.order(), Distance::infinite());
  if (!g.has_vertex(source)) {
    throw InvalidInput("vertex " + std::to_string(source) + " out of range");
  }
  std::deque<Vertex> queue{source};
  dist[source] = Distance(0);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w].is_infinite()) {
        dist[w] = Distance(dist[v].value() + 1);
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Distance vertex_distance(const SimpleGraph& g, Vertex u, Vertex v) {
  if (!g.has_vertex(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
  return bfs_distances(g, u)[v];
}

Distance edge_distance(const SimpleGraph& g, const Edge& e, const Edge& f) {
  g.edge_index_or_throw(e);
  g.edge_index_or_throw(f);
  auto from_u = bfs_distances(g, e.u);
  auto from_v = bfs_distances(g, e.v);
  return std::min({from_u[f.u], from_u[f.v], from_v[f.u], from_v[f.v]});
}

bool is_distance_k_matching(const SimpleGraph& g, std::span<const Edge> edges, std::size_t k) {
  for (const Edge& e : edges) g.edge_index_or_throw(e);
  if (edges.size() < 2) return true;
  DistanceTable table(g);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (table.edge(edges[i], edges[j]) < k) return false;
    }
  }
  return true;
}

DistanceTable::DistanceTable(const SimpleGraph& g) : n_(g.order()) {
  table_.reserve(n_ * n_);
  for (Vertex v = 0; v < n_; ++v) {
    auto row = bfs_distances(g, v);
    table_.insert(table_.end(), row.begin(), row.end());
  }
}

Distance DistanceTable::edge(const Edge& e, const Edge& f) const {
  return std::min({(*this)(e.u, f.u), (*this)(e.u, f.v), (*this)(e.v, f.u), (*this)(e.v, f.v)});
}

StructureReport structure_report(const SimpleGraph& g) {
  StructureReport r;
  r.max_degree = g.max_degree();
  r.is_regular = g.order() == 0 || g.min_degree() == r.max_degree;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  r.component_of.assign(g.order(), kUnseen);
  r.side.assign(g.order(), 0);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (r.component_of[s] != kUnseen) continue;
    const std::size_t id = r.component_count++;
    std::deque<Vertex> queue{s};
    r.component_of[s] = id;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (r.component_of[w] == kUnseen) {
          r.component_of[w] = id;
          r.side[w] = r.side[v] ^ 1;
          queue.push_back(w);
        } else if (r.side[w] == r.side[v]) {
          r.is_bipartite = false;
        }
      }
    }
  }
  return r;
}

namespace families {

SimpleGraph path(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

SimpleGraph cycle(std::size_t n) {
  if (n < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  SimpleGraph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

SimpleGraph complete(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

SimpleGraph complete_bipartite(std::size_t a, std::size_t b) {
  SimpleGraph g(a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

SimpleGraph star(std::size_t leaves) { return complete_bipartite(1, leaves); }

}  // namespace families

}  // namespace pcext
