#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcext/graph.hpp"

namespace pcext {

enum class FactorFamily { kBipartite, kEvenCycle, kUserSupplied };

std::string to_string(FactorFamily f);
std::optional<FactorFamily> parse_family(const std::string& s);

// A Class 1 graph together with a proper coloring that uses exactly delta colors.
// Only the factory functions below create one, so the invariants always hold.
class Factor {
 public:
  const SimpleGraph& graph() const { return graph_; }
  Color delta() const { return delta_; }
  FactorFamily family() const { return family_; }
  // Colors aligned with graph().edges().
  const std::vector<Color>& edge_colors() const { return colors_; }
  Color color_of(const Edge& e) const { return colors_[graph_.edge_index_or_throw(e)]; }
  EdgeColoring coloring() const;

  // The neighbor of v along the edge colored c, if v has one.
  std::optional<Vertex> color_neighbor(Vertex v, Color c) const;

 private:
  friend Factor make_factor(SimpleGraph g, std::vector<Color> colors, FactorFamily family);

  SimpleGraph graph_;
  Color delta_ = 0;
  FactorFamily family_ = FactorFamily::kUserSupplied;
  std::vector<Color> colors_;
  // color_neighbor_[v * delta + c]
  std::vector<std::optional<Vertex>> color_neighbor_;
};

// Validates and builds; throws InvalidInput when the coloring is not a proper delta-coloring.
Factor make_factor(SimpleGraph g, std::vector<Color> colors, FactorFamily family);

// Konig-style bipartite edge coloring with exactly max-degree colors. Throws on odd cycles.
EdgeColoring color_bipartite(const SimpleGraph& g);

// Alternating 2-coloring of a single even cycle.
EdgeColoring color_even_cycle(const SimpleGraph& g);

// Accepts any Class 1 graph whose total coloring is proper within delta colors.
Factor validate_factor(const SimpleGraph& g, const EdgeColoring& coloring,
                       FactorFamily family = FactorFamily::kUserSupplied);

Factor bipartite_factor(const SimpleGraph& g);
Factor even_cycle_factor(const SimpleGraph& g);

struct RegularizedFactor {
  Factor factor;
  // Original vertex v maps to embedding[v]. The doubling keeps originals at 0..n-1,
  // so this is the identity, but callers should not rely on that.
  std::vector<Vertex> embedding;
  std::size_t original_vertex_count = 0;
  std::size_t doublings = 0;

  bool is_original(Vertex v) const { return v < original_vertex_count; }
};

// Doubles the graph until it is delta-regular; rungs take the smallest color free at both ends.
RegularizedFactor regularize(const Factor& f);

// Test utility: every pair of edges at distance >= 3 in f x partner stays at distance >= 3
// in rf x partner. Exhaustive over all pairs of original product edges.
bool distance_preservation_check(const Factor& f, const RegularizedFactor& rf,
                                 const SimpleGraph& partner);

}  // namespace pcext
