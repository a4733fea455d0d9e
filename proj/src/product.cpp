#include "pcext/product.hpp"

#include <algorithm>
#include <numeric>

#include "pcext/errors.hpp"

namespace pcext {

std::string to_string(const Coords& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out + ")";
}

ProductEdge::ProductEdge(Coords at, std::size_t axis_index, Edge fe)
    : base(std::move(at)), axis(axis_index), factor_edge(fe) {
  if (axis >= base.size()) throw InvalidInput("product edge axis out of range");
  base[axis] = factor_edge.u;
}

ProductEdge ProductEdge::between(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) throw InvalidInput("coordinate tuples of different length");
  std::size_t axis = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (axis != a.size()) {
      throw InvalidInput(to_string(a) + " and " + to_string(b) + " differ in several coordinates");
    }
    axis = i;
  }
  if (axis == a.size()) throw InvalidInput("identical endpoints " + to_string(a));
  return ProductEdge(a, axis, Edge(a[axis], b[axis]));
}

Coords ProductEdge::head() const {
  Coords h = base;
  h[axis] = factor_edge.v;
  return h;
}

bool ProductEdge::touches(const Coords& v) const {
  if (v.size() != base.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == axis) {
      if (!factor_edge.touches(v[i])) return false;
    } else if (v[i] != base[i]) {
      return false;
    }
  }
  return true;
}

std::string to_string(const ProductEdge& e) { return to_string(e.tail()) + "-" + to_string(e.head()); }

Square Square::make(Coords at, std::size_t axis_a, Edge edge_a, std::size_t axis_b, Edge edge_b) {
  if (axis_a == axis_b) throw InvalidInput("a square needs two different axes");
  Square s;
  if (axis_a > axis_b) {
    std::swap(axis_a, axis_b);
    std::swap(edge_a, edge_b);
  }
  s.axis_i = axis_a;
  s.axis_j = axis_b;
  s.edge_i = edge_a;
  s.edge_j = edge_b;
  s.base = std::move(at);
  s.base[s.axis_i] = s.edge_i.u;
  s.base[s.axis_j] = s.edge_j.u;
  return s;
}

std::array<Coords, 4> Square::corners() const {
  auto at = [&](Vertex a, Vertex b) {
    Coords c = base;
    c[axis_i] = a;
    c[axis_j] = b;
    return c;
  };
  return {at(edge_i.u, edge_j.u), at(edge_i.v, edge_j.u), at(edge_i.v, edge_j.v),
          at(edge_i.u, edge_j.v)};
}

std::array<ProductEdge, 4> Square::edges() const {
  auto c = corners();
  return {ProductEdge(c[0], axis_i, edge_i), ProductEdge(c[1], axis_j, edge_j),
          ProductEdge(c[3], axis_i, edge_i), ProductEdge(c[0], axis_j, edge_j)};
}

Coords BrickNeighborhood::at(Vertex path_vertex, Vertex rung_vertex) const {
  Coords c = base;
  c[path_axis] = path_vertex;
  c[rung_axis] = rung_vertex;
  return c;
}

ProductEdge BrickNeighborhood::path_edge(Vertex a, Vertex b, Vertex rung_vertex) const {
  return ProductEdge(at(a, rung_vertex), path_axis, Edge(a, b));
}

ProductEdge BrickNeighborhood::rung_edge(Vertex path_vertex) const {
  return ProductEdge(at(path_vertex, rung_near), rung_axis, Edge(rung_near, rung_far));
}

ProductEdge BrickNeighborhood::precolored_edge() const {
  return path_edge(path[1], path[2], rung_near);
}

std::array<ProductEdge, 6> BrickNeighborhood::internal_edges() const {
  const auto [x, y, z, w] = path;
  return {precolored_edge(),         path_edge(y, z, rung_far), path_edge(x, y, rung_near),
          path_edge(z, w, rung_near), rung_edge(y),              rung_edge(z)};
}

std::array<ProductEdge, 4> BrickNeighborhood::external_edges() const {
  const auto [x, y, z, w] = path;
  return {path_edge(x, y, rung_far), path_edge(z, w, rung_far), rung_edge(x), rung_edge(w)};
}

std::vector<ProductEdge> BrickNeighborhood::all_edges() const {
  std::vector<ProductEdge> out;
  for (const auto& e : internal_edges()) out.push_back(e);
  for (const auto& e : external_edges()) out.push_back(e);
  return out;
}

std::array<Square, 3> BrickNeighborhood::squares() const {
  const Edge rung(rung_near, rung_far);
  auto sq = [&](Vertex a, Vertex b) {
    return Square::make(base, path_axis, Edge(a, b), rung_axis, rung);
  };
  return {sq(path[0], path[1]), sq(path[1], path[2]), sq(path[2], path[3])};
}

void for_each_product_edge(std::span<const SimpleGraph> factors,
                           const std::function<void(const ProductEdge&)>& fn) {
  const std::size_t k = factors.size();
  for (std::size_t axis = 0; axis < k; ++axis) {
    // Odometer over the other axes.
    Coords c(k, 0);
    bool empty = false;
    for (std::size_t i = 0; i < k; ++i)
      if (i != axis && factors[i].order() == 0) empty = true;
    if (empty) continue;
    while (true) {
      for (const Edge& fe : factors[axis].edges()) fn(ProductEdge(c, axis, fe));
      std::size_t i = k;
      while (i-- > 0) {
        if (i == axis) continue;
        if (++c[i] < factors[i].order()) break;
        c[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
}

std::vector<ProductEdge> incident_edges(std::span<const SimpleGraph> factors, const Coords& v) {
  std::vector<ProductEdge> out;
  for (std::size_t axis = 0; axis < factors.size(); ++axis) {
    for (Vertex w : factors[axis].neighbors(v[axis])) {
      out.emplace_back(v, axis, Edge(v[axis], w));
    }
  }
  return out;
}

bool product_contains(std::span<const SimpleGraph> factors, const ProductEdge& e) {
  if (e.base.size() != factors.size() || e.axis >= factors.size()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (e.base[i] >= factors[i].order()) return false;
  }
  return factors[e.axis].has_edge(e.factor_edge);
}

ProductMetric::ProductMetric(std::span<const SimpleGraph> factors) {
  for (const auto& g : factors) tables_.emplace_back(g);
}

Distance ProductMetric::vertices(const Coords& a, const Coords& b) const {
  Distance d(0);
  for (std::size_t i = 0; i < tables_.size(); ++i) d = d + tables_[i](a[i], b[i]);
  return d;
}

Distance ProductMetric::edges(const ProductEdge& e, const ProductEdge& f) const {
  const Coords et = e.tail(), eh = e.head(), ft = f.tail(), fh = f.head();
  return std::min({vertices(et, ft), vertices(et, fh), vertices(eh, ft), vertices(eh, fh)});
}

MaterializedProduct::MaterializedProduct(std::span<const SimpleGraph> factors) {
  std::size_t total = 1;
  for (const auto& g : factors) {
    orders_.push_back(g.order());
    total *= g.order();
  }
  graph_ = SimpleGraph(total);
  for_each_product_edge(factors, [&](const ProductEdge& e) {
    graph_.add_edge(encode(e.tail()), encode(e.head()));
  });
}

Vertex MaterializedProduct::encode(const Coords& c) const {
  std::size_t id = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) id = id * orders_[i] + c[i];
  return static_cast<Vertex>(id);
}

Coords MaterializedProduct::decode(Vertex v) const {
  Coords c(orders_.size());
  std::size_t id = v;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    c[i] = static_cast<Vertex>(id % orders_[i]);
    id /= orders_[i];
  }
  return c;
}

Edge MaterializedProduct::edge_of(const ProductEdge& e) const {
  return Edge(encode(e.tail()), encode(e.head()));
}

ProductEdge MaterializedProduct::product_edge(const Edge& e) const {
  return ProductEdge::between(decode(e.u), decode(e.v));
}

ProductSpace::ProductSpace(std::vector<Factor> factors) : originals_(std::move(factors)) {
  offsets_.push_back(0);
  for (const Factor& f : originals_) {
    regular_.push_back(regularize(f));
    regular_graphs_.push_back(regular_.back().factor.graph());
    original_graphs_.push_back(f.graph());
    offsets_.push_back(offsets_.back() + f.delta());
  }
}

std::size_t ProductSpace::band_of(Color c) const {
  for (std::size_t i = 0; i < dims(); ++i) {
    if (c >= offsets_[i] && c < offsets_[i + 1]) return i;
  }
  throw InvalidInput("color " + std::to_string(c) + " outside the palette of " +
                     std::to_string(total_colors()));
}

bool ProductSpace::contains(const ProductEdge& e) const {
  return product_contains(regular_graphs_, e);
}

bool ProductSpace::is_original(const ProductEdge& e) const {
  return product_contains(original_graphs_, e);
}

bool ProductSpace::is_original(const Coords& v) const {
  if (v.size() != dims()) return false;
  for (std::size_t i = 0; i < dims(); ++i)
    if (!regular_[i].is_original(v[i])) return false;
  return true;
}

Color ProductSpace::canonical_color(const ProductEdge& e) const {
  if (!contains(e)) throw InvalidInput("edge " + to_string(e) + " is not in the product");
  return offsets_[e.axis] + regular_[e.axis].factor.color_of(e.factor_edge);
}

std::optional<Vertex> ProductSpace::color_neighbor(const Coords& v, std::size_t axis,
                                                   Color c) const {
  if (axis >= dims() || c < offsets_[axis] || c >= offsets_[axis + 1]) return std::nullopt;
  return regular_[axis].factor.color_neighbor(v[axis], c - offsets_[axis]);
}

Color canonical_color(const ProductSpace& space, const ProductEdge& e) {
  return space.canonical_color(e);
}

SparseColoring::SparseColoring(std::shared_ptr<const ProductSpace> space)
    : space_(std::move(space)) {}

Color SparseColoring::color_of(const ProductEdge& e) const {
  auto it = overrides_.find(e);
  if (it != overrides_.end()) return it->second;
  return space_->canonical_color(e);
}

void SparseColoring::set_color(const ProductEdge& e, Color c) {
  if (c >= space_->total_colors()) throw InvalidInput("color outside the palette");
  if (space_->canonical_color(e) == c) {
    overrides_.erase(e);
  } else {
    overrides_[e] = c;
  }
}

bool SparseColoring::is_rotatable(const Square& s) const {
  auto edges = s.edges();
  const Color a = color_of(edges[0]);
  const Color b = color_of(edges[1]);
  return a != b && color_of(edges[2]) == a && color_of(edges[3]) == b;
}

void SparseColoring::rotate(const Square& s) {
  if (!is_rotatable(s)) {
    throw InvariantError("square at " + to_string(s.base) +
                         " is not 2-colored with equal opposite edges");
  }
  auto edges = s.edges();
  const Color a = color_of(edges[0]);
  const Color b = color_of(edges[1]);
  set_color(edges[0], b);
  set_color(edges[2], b);
  set_color(edges[1], a);
  set_color(edges[3], a);
}

std::vector<BrickNeighborhood> enumerate_bricks(const ProductSpace& space, const ProductEdge& e,
                                                Color desired_path_color,
                                                Color desired_rung_color) {
  std::vector<BrickNeighborhood> out;
  if (!space.contains(e)) return out;
  if (desired_path_color >= space.total_colors() || desired_rung_color >= space.total_colors()) {
    return out;
  }
  const std::size_t j = e.axis;
  if (space.band_of(desired_path_color) != j) return out;
  const std::size_t i = space.band_of(desired_rung_color);
  if (i == j) return out;

  const Vertex y = e.factor_edge.u;
  const Vertex z = e.factor_edge.v;
  auto x = space.color_neighbor(e.base, j, desired_path_color);
  Coords at_z = e.head();
  auto w = space.color_neighbor(at_z, j, desired_path_color);
  auto p = space.color_neighbor(e.base, i, desired_rung_color);
  if (!x || !w || !p) return out;
  if (*x == z || *w == y || *x == *w) return out;

  BrickNeighborhood b;
  b.path_axis = j;
  b.path = {*x, y, z, *w};
  b.rung_axis = i;
  b.rung_near = e.base[i];
  b.rung_far = *p;
  b.base = e.base;
  out.push_back(std::move(b));
  return out;
}

PropernessReport local_properness_check(const SparseColoring& c, std::span<const Coords> touched) {
  PropernessReport report;
  for (const Coords& v : touched) {
    auto edges = incident_edges(c.space().regular_graphs(), v);
    std::map<Color, const ProductEdge*> seen;
    for (const auto& e : edges) {
      const Color col = c.color_of(e);
      auto [it, fresh] = seen.emplace(col, &e);
      if (!fresh) report.violations.push_back({v, *it->second, e, col});
    }
  }
  return report;
}

ProductColoring::ProductColoring(std::vector<SimpleGraph> factors,
                                 std::vector<std::vector<Color>> axis_colors, Color palette)
    : factors_(std::move(factors)), axis_colors_(std::move(axis_colors)), palette_(palette) {
  if (axis_colors_.size() != factors_.size()) throw InvalidInput("one color table per axis");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (axis_colors_[i].size() != factors_[i].size()) {
      throw InvalidInput("axis color table does not match the factor's edges");
    }
  }
}

Color ProductColoring::baseline_color(const ProductEdge& e) const {
  if (!contains(e)) throw InvalidInput("edge " + to_string(e) + " is not in the product");
  return axis_colors_[e.axis][factors_[e.axis].edge_index_or_throw(e.factor_edge)];
}

Color ProductColoring::color_of(const ProductEdge& e) const {
  auto it = overrides_.find(e);
  if (it != overrides_.end()) return it->second;
  return baseline_color(e);
}

void ProductColoring::set_color(const ProductEdge& e, Color c) {
  if (baseline_color(e) == c) {
    overrides_.erase(e);
  } else {
    overrides_[e] = c;
  }
}

std::vector<ProductEdge> ProductColoring::diff() const {
  std::vector<ProductEdge> out;
  out.reserve(overrides_.size());
  for (const auto& [e, c] : overrides_) out.push_back(e);
  return out;
}

std::size_t ProductColoring::edge_count() const {
  std::size_t vertices = 1;
  for (const auto& g : factors_) vertices *= g.order();
  std::size_t total = 0;
  for (const auto& g : factors_) {
    if (g.order() == 0) return 0;
    total += g.size() * (vertices / g.order());
  }
  return total;
}

}  // namespace pcext
