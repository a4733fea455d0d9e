#include <algorithm>
#include <functional>

#include "pcext/errors.hpp"
#include "pcext/oracle.hpp"
#include "pcext/special_cases.hpp"

namespace pcext {

namespace {

SimpleGraph k2() { return families::path(2); }

constexpr std::uint64_t kAlphaZeroBudget = 10'000'000;

// The list-coloring instance obtained from a precoloring of G x K2. Level-precolored edges
// leave G and their colors leave the neighboring lists. Rung colors leave the lists at
// their vertex.
struct K2Reduction {
  SimpleGraph reduced;
  ListAssignment lists;
  std::map<Edge, Color> level_fixed;
  std::map<Vertex, Color> rung_fixed;
};

K2Reduction reduce(const SimpleGraph& g, const Precoloring& pre, Color palette) {
  K2Reduction r;
  for (const auto& entry : pre.entries) {
    if (entry.edge.axis == 0) {
      r.level_fixed[entry.edge.factor_edge] = entry.color;
    } else {
      r.rung_fixed[entry.edge.base[0]] = entry.color;
    }
  }
  std::map<Edge, std::set<Color>> lists;
  for (const Edge& e : g.edges()) {
    std::set<Color> all;
    for (Color c = 0; c < palette; ++c) all.insert(c);
    lists[e] = std::move(all);
  }
  for (const auto& [fixed, c] : r.level_fixed) {
    for (Vertex end : {fixed.u, fixed.v}) {
      for (Vertex w : g.neighbors(end)) {
        Edge f(end, w);
        if (f != fixed) lists[f].erase(c);
      }
    }
  }
  for (const auto& [u, c] : r.rung_fixed) {
    for (Vertex w : g.neighbors(u)) lists[Edge(u, w)].erase(c);
  }
  r.reduced = SimpleGraph(g.order());
  for (const Edge& e : g.edges()) {
    if (r.level_fixed.contains(e)) continue;
    r.reduced.add_edge(e.u, e.v);
    r.lists.lists[e] = lists[e];
  }
  return r;
}

void check_k2_instance(const SimpleGraph& g, const Precoloring& pre, Color palette) {
  HypothesisReport report;
  std::vector<SimpleGraph> factors{g, k2()};
  check_precoloring(factors, pre, palette, 3, report);
  if (!report.ok()) throw HypothesisError(report.summary());
}

// Reassembles G x K2 from a coloring of the reduced graph: both levels get the same colors
// and every rung takes the color its endpoint misses.
ExtensionResult assemble(const SimpleGraph& g, const K2Reduction& r, const EdgeColoring& reduced,
                         const EdgeColoring& baseline, Color palette, const std::string& method) {
  std::map<Edge, Color> level;
  for (const Edge& e : g.edges()) {
    auto fixed = r.level_fixed.find(e);
    if (fixed != r.level_fixed.end()) {
      level[e] = fixed->second;
    } else {
      auto c = reduced.color_of(e);
      if (!c) throw InvariantError("reduced coloring misses " + to_string(e));
      level[e] = *c;
    }
  }
  std::vector<Color> rung(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    std::vector<bool> used(palette, false);
    for (Vertex w : g.neighbors(u)) {
      const Color c = level[Edge(u, w)];
      if (c >= palette || used[c]) {
        throw InvariantError("level coloring is improper at vertex " + std::to_string(u));
      }
      used[c] = true;
    }
    auto want = r.rung_fixed.find(u);
    if (want != r.rung_fixed.end()) {
      if (used[want->second]) {
        throw InvariantError("prescribed rung color already used at vertex " + std::to_string(u));
      }
      rung[u] = want->second;
    } else {
      auto it = std::find(used.begin(), used.end(), false);
      if (it == used.end()) throw InvariantError("no color left for rung at " + std::to_string(u));
      rung[u] = static_cast<Color>(it - used.begin());
    }
  }

  std::vector<Color> base_colors = baseline.aligned(g);
  const Color delta = static_cast<Color>(g.max_degree());
  ProductColoring coloring({g, k2()}, {base_colors, {delta}}, palette);
  for (Vertex side = 0; side < 2; ++side) {
    for (const Edge& e : g.edges()) {
      coloring.set_color(ProductEdge(Coords{e.u, side}, 0, e), level[e]);
    }
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    coloring.set_color(ProductEdge(Coords{u, 0}, 1, Edge(0, 1)), rung[u]);
  }
  ExtensionResult result;
  result.coloring = std::move(coloring);
  result.diff = result.coloring.diff();
  result.method = method;
  result.stats.components = structure_report(g).component_count;
  return result;
}

}  // namespace

ExtensionResult extend_bipartite_k2(const SimpleGraph& g, const Precoloring& pre,
                                    const std::optional<EdgeColoring>& reference,
                                    GalvinTrace* trace) {
  if (!structure_report(g).is_bipartite) {
    throw HypothesisError(to_string(HypothesisKind::kShape) + ": factor is not bipartite");
  }
  const Color palette = static_cast<Color>(g.max_degree() + 1);
  check_k2_instance(g, pre, palette);
  const EdgeColoring ref = reference ? *reference : color_bipartite(g);
  if (!is_proper(g, ref) || ref.assignment.size() != g.size()) {
    throw InvalidInput("reference coloring is not a proper total coloring");
  }

  K2Reduction r = reduce(g, pre, palette);
  EdgeColoring reduced_ref;
  reduced_ref.palette_size = ref.palette_size;
  for (const Edge& e : r.reduced.edges()) reduced_ref.assignment[e] = ref.assignment.at(e);
  EdgeColoring reduced = galvin_list_color(r.reduced, r.lists, reduced_ref, trace);
  return assemble(g, r, reduced, ref, palette, "bipartite-k2");
}

ExtensionResult extend_odd_cycle_k2(const SimpleGraph& cycle, const Precoloring& pre) {
  const std::size_t n = cycle.order();
  if (n < 3 || n % 2 == 0 || cycle.size() != n || cycle.min_degree() != 2 ||
      cycle.max_degree() != 2 || structure_report(cycle).component_count != 1) {
    throw HypothesisError(to_string(HypothesisKind::kShape) + ": factor is not an odd cycle");
  }
  constexpr Color kPalette = 3;
  check_k2_instance(cycle, pre, kPalette);
  K2Reduction r = reduce(cycle, pre, kPalette);

  // Cyclic edge order starting at vertex 0.
  std::vector<Edge> ring;
  {
    Vertex prev = 0;
    Vertex cur = cycle.neighbors(0)[0];
    ring.emplace_back(prev, cur);
    while (cur != 0) {
      auto nb = cycle.neighbors(cur);
      Vertex next = nb[0] == prev ? nb[1] : nb[0];
      ring.emplace_back(cur, next);
      prev = cur;
      cur = next;
    }
  }
  // Start right after a removed edge, or after an edge with a full list when none was
  // removed, so every edge has at most one colored neighbor except possibly the last one,
  // which then has three colors to choose from.
  std::size_t start = ring.size();
  for (std::size_t t = 0; t < ring.size() && start == ring.size(); ++t)
    if (r.level_fixed.contains(ring[t])) start = (t + 1) % ring.size();
  for (std::size_t t = 0; t < ring.size() && start == ring.size(); ++t)
    if (r.lists.lists.at(ring[t]).size() >= kPalette) start = (t + 1) % ring.size();
  if (start == ring.size()) throw InvariantError("every list of the odd cycle lost a color");

  EdgeColoring reduced;
  reduced.palette_size = kPalette;
  for (std::size_t step = 0; step < ring.size(); ++step) {
    const Edge& e = ring[(start + step) % ring.size()];
    if (r.level_fixed.contains(e)) continue;
    std::set<Color> blocked;
    for (Vertex end : {e.u, e.v}) {
      for (Vertex w : cycle.neighbors(end)) {
        if (auto c = reduced.color_of(Edge(end, w))) blocked.insert(*c);
      }
    }
    bool done = false;
    for (Color c : r.lists.lists.at(e)) {
      if (!blocked.contains(c)) {
        reduced.assignment[e] = c;
        done = true;
        break;
      }
    }
    if (!done) throw InvariantError("greedy list coloring stuck at " + to_string(e));
  }

  // Baseline: alternate 0/1 around the cycle, closing edge 2.
  EdgeColoring baseline;
  baseline.palette_size = kPalette;
  for (std::size_t t = 0; t < ring.size(); ++t) {
    baseline.assignment[ring[t]] = t + 1 == ring.size() ? 2 : static_cast<Color>(t % 2);
  }
  return assemble(cycle, r, reduced, baseline, kPalette, "odd-cycle-k2");
}

namespace {

std::vector<SimpleGraph> power_factors(const SimpleGraph& g, std::size_t alpha) {
  std::vector<SimpleGraph> out{g};
  for (std::size_t t = 0; t < alpha; ++t) out.push_back(k2());
  return out;
}

}  // namespace

ExtensionResult extend_k2_power(const SimpleGraph& g, std::size_t alpha, const Precoloring& pre) {
  if (!structure_report(g).is_bipartite) {
    throw HypothesisError(to_string(HypothesisKind::kShape) + ": factor is not bipartite");
  }
  const Color delta = static_cast<Color>(g.max_degree());
  const Color palette = delta + static_cast<Color>(alpha);
  const auto factors = power_factors(g, alpha);
  {
    HypothesisReport report;
    check_precoloring(factors, pre, palette, 3, report);
    if (!report.ok()) throw HypothesisError(report.summary());
  }
  const EdgeColoring base_ref = color_bipartite(g);

  // Baseline over G x K2^alpha: G keeps its coloring, K2 axis t gets color delta + t - 1.
  std::vector<std::vector<Color>> axis_colors{base_ref.aligned(g)};
  for (std::size_t t = 1; t <= alpha; ++t) axis_colors.push_back({delta + static_cast<Color>(t - 1)});

  if (alpha == 0) {
    ProductColoring coloring(factors, axis_colors, palette);
    if (!pre.entries.empty()) {
      // No K2 is left to absorb the prescriptions, so this is plain precoloring extension
      // on g with delta colors, which can fail even at distance 3. Decide it exactly.
      std::vector<std::pair<Edge, Color>> fixed;
      for (const auto& entry : pre.entries) fixed.emplace_back(entry.edge.factor_edge, entry.color);
      const OracleResult exact = brute_force_extend(g, fixed, palette, kAlphaZeroBudget);
      if (exact.status != OracleStatus::kExtendable) {
        throw HypothesisError("alpha = 0: the precoloring of the factor is " +
                              to_string(exact.status));
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Edge& e = g.edges()[i];
        coloring.set_color(ProductEdge(Coords{e.u}, 0, e), (*exact.coloring)[i]);
      }
    }
    ExtensionResult result;
    result.coloring = std::move(coloring);
    result.diff = result.coloring.diff();
    result.method = "k2-power";
    return result;
  }

  // Peel one K2 at a time: H_t = G x K2^t, each level colored by the G x K2 theorem from the
  // previous level's coloring. The last level carries the precoloring.
  SimpleGraph level_graph = g;
  EdgeColoring level_ref = base_ref;
  for (std::size_t t = 1; t < alpha; ++t) {
    ExtensionResult step = extend_bipartite_k2(level_graph, Precoloring{{}, 0}, level_ref);
    MaterializedProduct next(power_factors(g, t));
    MaterializedProduct prev(power_factors(g, t - 1));
    EdgeColoring next_ref;
    next_ref.palette_size = delta + static_cast<Color>(t);
    for (const Edge& e : next.graph().edges()) {
      ProductEdge pe = next.product_edge(e);
      Coords head = pe.head();
      Coords inner_tail(pe.base.begin(), pe.base.end() - 1);
      Coords inner_head(head.begin(), head.end() - 1);
      ProductEdge lifted = pe.axis == t
          ? ProductEdge(Coords{prev.encode(inner_tail), 0}, 1, Edge(0, 1))
          : ProductEdge(Coords{prev.encode(inner_tail), pe.base[t]}, 0,
                        Edge(prev.encode(inner_tail), prev.encode(inner_head)));
      next_ref.assignment[e] = step.coloring.color_of(lifted);
    }
    if (!is_proper(next.graph(), next_ref)) {
      throw InvariantError("level " + std::to_string(t) + " coloring is improper");
    }
    level_graph = next.graph();
    level_ref = std::move(next_ref);
  }

  MaterializedProduct inner(power_factors(g, alpha - 1));
  auto to_level = [&](const ProductEdge& pe) {
    Coords head = pe.head();
    Coords inner_tail(pe.base.begin(), pe.base.end() - 1);
    Coords inner_head(head.begin(), head.end() - 1);
    if (pe.axis == alpha) return ProductEdge(Coords{inner.encode(inner_tail), 0}, 1, Edge(0, 1));
    return ProductEdge(Coords{inner.encode(inner_tail), pe.base[alpha]}, 0,
                       Edge(inner.encode(inner_tail), inner.encode(inner_head)));
  };
  Precoloring lifted_pre{{}, palette};
  for (const auto& entry : pre.entries) lifted_pre.entries.push_back({to_level(entry.edge), entry.color});
  ExtensionResult top = extend_bipartite_k2(level_graph, lifted_pre, level_ref);

  ProductColoring coloring(factors, axis_colors, palette);
  for_each_product_edge(factors, [&](const ProductEdge& pe) {
    coloring.set_color(pe, top.coloring.color_of(to_level(pe)));
  });
  ExtensionResult result;
  result.coloring = std::move(coloring);
  result.diff = result.coloring.diff();
  result.method = "k2-power";
  result.stats.components = top.stats.components;
  return result;
}

}  // namespace pcext
