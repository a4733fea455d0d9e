#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pcext/factor.hpp"
#include "pcext/graph.hpp"

namespace pcext {

// A vertex of a Cartesian product: one coordinate per factor.
using Coords = std::vector<Vertex>;

std::string to_string(const Coords& c);

// Edge of a Cartesian product. Endpoints agree everywhere except on `axis`, where they
// are the endpoints of `factor_edge`. Normalized so that base[axis] == factor_edge.u.
struct ProductEdge {
  Coords base;
  std::size_t axis = 0;
  Edge factor_edge;

  ProductEdge() = default;
  ProductEdge(Coords at, std::size_t axis_index, Edge fe);
  // Throws InvalidInput unless a and b differ in exactly one coordinate.
  static ProductEdge between(const Coords& a, const Coords& b);

  Coords tail() const { return base; }
  Coords head() const;
  bool touches(const Coords& v) const;
  // The coordinate on `axis_index`, which is only unambiguous off the edge's own axis.
  Vertex coord(std::size_t axis_index) const { return base[axis_index]; }

  auto operator<=>(const ProductEdge&) const = default;
};

std::string to_string(const ProductEdge& e);

// The 4-cycle edge_i x edge_j. Axes are stored with axis_i < axis_j.
struct Square {
  std::size_t axis_i = 0;
  std::size_t axis_j = 1;
  Edge edge_i;
  Edge edge_j;
  Coords base;  // base[axis_i] == edge_i.u and base[axis_j] == edge_j.u

  static Square make(Coords at, std::size_t axis_a, Edge edge_a, std::size_t axis_b, Edge edge_b);

  // Cyclic order; entries 0 and 2 lie on axis_i, entries 1 and 3 on axis_j.
  std::array<ProductEdge, 4> edges() const;
  std::array<Coords, 4> corners() const;

  auto operator<=>(const Square&) const = default;
};

// Brick-neighborhood xyzw x pq of the precolored edge (y,z) at rung coordinate q.
struct BrickNeighborhood {
  std::size_t path_axis = 0;
  std::array<Vertex, 4> path{};  // x, y, z, w
  std::size_t rung_axis = 1;
  Vertex rung_near = 0;  // q: the precolored edge lives here
  Vertex rung_far = 0;   // p
  Coords base;           // coordinates on every other axis

  ProductEdge precolored_edge() const;
  std::array<ProductEdge, 6> internal_edges() const;
  std::array<ProductEdge, 4> external_edges() const;
  std::vector<ProductEdge> all_edges() const;
  // xy x pq, yz x pq, zw x pq
  std::array<Square, 3> squares() const;

  auto operator<=>(const BrickNeighborhood&) const = default;

 private:
  Coords at(Vertex path_vertex, Vertex rung_vertex) const;
  ProductEdge path_edge(Vertex a, Vertex b, Vertex rung_vertex) const;
  ProductEdge rung_edge(Vertex path_vertex) const;
};

// Calls fn for every edge of the product of `factors`, axis by axis.
void for_each_product_edge(std::span<const SimpleGraph> factors,
                           const std::function<void(const ProductEdge&)>& fn);

// Incident product edges of v.
std::vector<ProductEdge> incident_edges(std::span<const SimpleGraph> factors, const Coords& v);

bool product_contains(std::span<const SimpleGraph> factors, const ProductEdge& e);

// Hop distances in a product: the sum of the per-factor distances.
class ProductMetric {
 public:
  explicit ProductMetric(std::span<const SimpleGraph> factors);

  Distance vertices(const Coords& a, const Coords& b) const;
  Distance edges(const ProductEdge& e, const ProductEdge& f) const;

 private:
  std::vector<DistanceTable> tables_;
};

// The product written out as a SimpleGraph with mixed-radix vertex ids (axis 0 most
// significant). Only for products small enough to enumerate.
class MaterializedProduct {
 public:
  explicit MaterializedProduct(std::span<const SimpleGraph> factors);

  const SimpleGraph& graph() const { return graph_; }
  Vertex encode(const Coords& c) const;
  Coords decode(Vertex v) const;
  Edge edge_of(const ProductEdge& e) const;
  ProductEdge product_edge(const Edge& e) const;

 private:
  std::vector<std::size_t> orders_;
  SimpleGraph graph_;
};

// The factors of a product, each regularized, with disjoint color bands.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<Factor> factors);

  std::size_t dims() const { return originals_.size(); }
  const RegularizedFactor& factor(std::size_t axis) const { return regular_[axis]; }
  const Factor& original(std::size_t axis) const { return originals_[axis]; }
  const std::vector<SimpleGraph>& regular_graphs() const { return regular_graphs_; }
  const std::vector<SimpleGraph>& original_graphs() const { return original_graphs_; }
  Color offset(std::size_t axis) const { return offsets_[axis]; }
  Color total_colors() const { return offsets_.back(); }

  // Axis whose band holds global color c.
  std::size_t band_of(Color c) const;
  Color local_color(Color c) const { return c - offset(band_of(c)); }

  bool contains(const ProductEdge& e) const;
  bool is_original(const ProductEdge& e) const;
  bool is_original(const Coords& v) const;

  // offset(axis) + factor color of the edge. Throws InvalidInput for foreign edges.
  Color canonical_color(const ProductEdge& e) const;

  // The neighbor of v along `axis` through the edge of global color c, if any.
  std::optional<Vertex> color_neighbor(const Coords& v, std::size_t axis, Color c) const;

 private:
  std::vector<Factor> originals_;
  std::vector<RegularizedFactor> regular_;
  std::vector<SimpleGraph> regular_graphs_;
  std::vector<SimpleGraph> original_graphs_;
  std::vector<Color> offsets_;  // dims()+1 prefix sums
};

// Canonical coloring plus a finite override map. Overrides equal to the canonical color
// are never stored.
class SparseColoring {
 public:
  explicit SparseColoring(std::shared_ptr<const ProductSpace> space);

  const ProductSpace& space() const { return *space_; }
  std::shared_ptr<const ProductSpace> shared_space() const { return space_; }

  Color color_of(const ProductEdge& e) const;
  void set_color(const ProductEdge& e, Color c);
  const std::map<ProductEdge, Color>& overrides() const { return overrides_; }

  // Swaps the two colors of a square whose opposite edges agree. Throws InvariantError
  // when the square is not 2-colored in that pattern.
  void rotate(const Square& s);
  bool is_rotatable(const Square& s) const;

 private:
  std::shared_ptr<const ProductSpace> space_;
  std::map<ProductEdge, Color> overrides_;
};

Color canonical_color(const ProductSpace& space, const ProductEdge& e);

// Bricks around e whose flanking path edges carry path_color and whose rung carries
// rung_color. Empty when the colors do not fit (same band, wrong axis, ...).
std::vector<BrickNeighborhood> enumerate_bricks(const ProductSpace& space, const ProductEdge& e,
                                                Color desired_path_color,
                                                Color desired_rung_color);

struct PropernessViolation {
  Coords vertex;
  ProductEdge first;
  ProductEdge second;
  Color color = 0;
};

struct PropernessReport {
  std::vector<PropernessViolation> violations;
  bool ok() const { return violations.empty(); }
};

PropernessReport local_properness_check(const SparseColoring& c, std::span<const Coords> touched);

// A full coloring of an (unregularized) product: per-axis baseline colors for every factor
// edge, plus overrides. This is the common output format of every extension algorithm.
class ProductColoring {
 public:
  ProductColoring() = default;
  ProductColoring(std::vector<SimpleGraph> factors, std::vector<std::vector<Color>> axis_colors,
                  Color palette);

  const std::vector<SimpleGraph>& factors() const { return factors_; }
  Color palette() const { return palette_; }
  bool contains(const ProductEdge& e) const { return product_contains(factors_, e); }

  Color baseline_color(const ProductEdge& e) const;
  Color color_of(const ProductEdge& e) const;
  void set_color(const ProductEdge& e, Color c);
  const std::map<ProductEdge, Color>& overrides() const { return overrides_; }
  // Edges whose color differs from the baseline, in sorted order.
  std::vector<ProductEdge> diff() const;

  std::size_t edge_count() const;

 private:
  std::vector<SimpleGraph> factors_;
  std::vector<std::vector<Color>> axis_colors_;
  Color palette_ = 0;
  std::map<ProductEdge, Color> overrides_;
};

}  // namespace pcext
