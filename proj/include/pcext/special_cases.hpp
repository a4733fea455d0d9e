#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pcext/extension.hpp"
#include "pcext/graph.hpp"

namespace pcext {

// Color lists per edge of a bipartite graph.
struct ListAssignment {
  std::map<Edge, std::set<Color>> lists;
};

// Record of one color round of the kernel method.
struct KernelRound {
  Color color = 0;
  std::size_t candidates = 0;  // uncolored edges whose list holds `color`
  std::vector<Edge> kernel;
  bool independent = false;
  bool absorbing = false;
};

struct GalvinTrace {
  std::vector<KernelRound> rounds;
};

// Proper coloring of g with every edge colored from its own list. Conflicts are oriented by
// the reference coloring: at a left-side vertex the higher reference color dominates, at a
// right-side vertex the lower one. Each round finds a kernel of the edges that still hold the
// round's color by deferred acceptance (left proposes by descending reference color, right
// keeps the lowest), colors it and strips the color from the rest.
// Throws InvalidInput when g is not bipartite or the reference is improper, and when a list
// is too small for the orientation. Throws InvariantError if a kernel check fails.
EdgeColoring galvin_list_color(const SimpleGraph& g, const ListAssignment& lists,
                               const EdgeColoring& reference, GalvinTrace* trace = nullptr);

// G x K2 with at most delta(G)+1 colors: axis 0 is G, axis 1 is K2 (vertices 0 and 1).
// reference defaults to color_bipartite(g).
ExtensionResult extend_bipartite_k2(const SimpleGraph& g, const Precoloring& pre,
                                    const std::optional<EdgeColoring>& reference = std::nullopt,
                                    GalvinTrace* trace = nullptr);

// C_n x K2 for odd n with 3 colors; the cycle's lists are colored greedily.
ExtensionResult extend_odd_cycle_k2(const SimpleGraph& cycle, const Precoloring& pre);

// G x K2^alpha with delta(G)+alpha colors: axis 0 is G, axes 1..alpha are K2.
// For alpha = 0 a nonempty precoloring is decided by exact search on G, and an
// unextendable one raises HypothesisError.
ExtensionResult extend_k2_power(const SimpleGraph& g, std::size_t alpha, const Precoloring& pre);

// C_{2k+1} x C_{2l+1}, vertices (i, j) with i in 0..2k, j in 0..2l, cyclic adjacency.
struct TorusInstance {
  std::size_t k = 1;
  std::size_t l = 1;

  std::size_t rows() const { return 2 * k + 1; }
  std::size_t cols() const { return 2 * l + 1; }
  std::vector<SimpleGraph> factors() const;
};

// Squares of the torus that are not one of the three squares of any brick-neighborhood of
// any precolored edge, in lexicographic order of (row edge, column edge).
std::vector<Square> free_squares(const TorusInstance& inst, const Precoloring& pre);

// Five-color extension on the odd torus.
ExtensionResult extend_odd_odd(const TorusInstance& inst, const Precoloring& pre);

// Debug hook for the odd x odd algorithm: the coloring right after the wrap edges are set to
// the fifth color, before any repair. Everything is in the instance's labels, not the
// relabeled ones the algorithm works in.
struct OddOddTrace {
  ProductColoring before_repair;
  Square corner;  // the free square that plays the corner
  Color fifth = 0;
  // Improper vertices observed before the repairs; all must be corners of `corner`.
  std::vector<Coords> conflict_vertices;
};

ExtensionResult extend_odd_odd(const TorusInstance& inst, const Precoloring& pre,
                               OddOddTrace* trace);

}  // namespace pcext
