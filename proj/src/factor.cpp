#include "pcext/factor.hpp"

#include <algorithm>
#include <set>

#include "pcext/errors.hpp"

namespace pcext {

std::string to_string(FactorFamily f) {
  switch (f) {
    case FactorFamily::kBipartite:
      return "bipartite";
    case FactorFamily::kEvenCycle:
      return "even_cycle";
    case FactorFamily::kUserSupplied:
      return "user_supplied";
  }
  return "user_supplied";
}

std::optional<FactorFamily> parse_family(const std::string& s) {
  if (s == "bipartite") return FactorFamily::kBipartite;
  if (s == "even_cycle") return FactorFamily::kEvenCycle;
  if (s == "user_supplied") return FactorFamily::kUserSupplied;
  return std::nullopt;
}

EdgeColoring Factor::coloring() const {
  return EdgeColoring::from_aligned(graph_, colors_, delta_);
}

std::optional<Vertex> Factor::color_neighbor(Vertex v, Color c) const {
  if (v >= graph_.order() || c >= delta_) return std::nullopt;
  return color_neighbor_[static_cast<std::size_t>(v) * delta_ + c];
}

Factor make_factor(SimpleGraph g, std::vector<Color> colors, FactorFamily family) {
  if (colors.size() != g.size()) {
    throw InvalidInput("partial coloring: " + std::to_string(colors.size()) + " colors for " +
                       std::to_string(g.size()) + " edges");
  }
  const Color delta = static_cast<Color>(g.max_degree());
  Factor f;
  f.delta_ = delta;
  f.family_ = family;
  f.color_neighbor_.assign(g.order() * delta, std::nullopt);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Edge& e = g.edges()[i];
    const Color c = colors[i];
    if (c >= delta) {
      throw InvalidInput("palette exceeds max degree " + std::to_string(delta) + ": edge " +
                         to_string(e) + " has color " + std::to_string(c));
    }
    auto& at_u = f.color_neighbor_[static_cast<std::size_t>(e.u) * delta + c];
    auto& at_v = f.color_neighbor_[static_cast<std::size_t>(e.v) * delta + c];
    if (at_u || at_v) {
      throw InvalidInput("improper coloring: color " + std::to_string(c) + " repeats next to " +
                         to_string(e));
    }
    at_u = e.v;
    at_v = e.u;
  }
  f.graph_ = std::move(g);
  f.colors_ = std::move(colors);
  return f;
}

EdgeColoring color_bipartite(const SimpleGraph& g) {
  if (!structure_report(g).is_bipartite) throw InvalidInput("graph is not bipartite");
  const std::size_t delta = g.max_degree();
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  // at[v * delta + c] is the neighbor of v through color c.
  std::vector<Vertex> at(g.order() * delta, kNone);
  auto slot = [&](Vertex v, Color c) -> Vertex& { return at[static_cast<std::size_t>(v) * delta + c]; };
  auto free_color = [&](Vertex v) {
    for (Color c = 0; c < delta; ++c)
      if (slot(v, c) == kNone) return c;
    throw InvariantError("no free color at a vertex of degree <= delta");
  };

  for (const Edge& e : g.edges()) {
    const Color a = free_color(e.u);
    if (slot(e.v, a) != kNone) {
      const Color b = free_color(e.v);
      // Swap a/b along the alternating path leaving e.v through color a. It cannot reach e.u.
      std::vector<Vertex> path{e.v};
      Color next = a;
      while (slot(path.back(), next) != kNone) {
        path.push_back(slot(path.back(), next));
        next = next == a ? b : a;
      }
      std::vector<std::pair<Edge, Color>> recolor;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Color old = (i % 2 == 0) ? a : b;
        recolor.emplace_back(Edge(path[i], path[i + 1]), old);
      }
      for (const auto& [pe, old] : recolor) {
        slot(pe.u, old) = kNone;
        slot(pe.v, old) = kNone;
      }
      for (const auto& [pe, old] : recolor) {
        const Color fresh = old == a ? b : a;
        slot(pe.u, fresh) = pe.v;
        slot(pe.v, fresh) = pe.u;
      }
    }
    slot(e.u, a) = e.v;
    slot(e.v, a) = e.u;
  }

  EdgeColoring out;
  out.palette_size = static_cast<Color>(delta);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Color c = 0; c < delta; ++c) {
      if (slot(v, c) != kNone && v < slot(v, c)) out.assignment.emplace(Edge(v, slot(v, c)), c);
    }
  }
  return out;
}

EdgeColoring color_even_cycle(const SimpleGraph& g) {
  const std::size_t n = g.order();
  if (n < 3 || g.size() != n || g.min_degree() != 2 || g.max_degree() != 2 ||
      structure_report(g).component_count != 1) {
    throw InvalidInput("graph is not a cycle");
  }
  if (n % 2 != 0) throw InvalidInput("cycle has odd length " + std::to_string(n));
  EdgeColoring out;
  out.palette_size = 2;
  auto nb = g.neighbors(0);
  Vertex prev = 0;
  Vertex cur = std::min(nb[0], nb[1]);
  out.assignment.emplace(Edge(prev, cur), 0);
  for (std::size_t step = 1; step < n; ++step) {
    auto around = g.neighbors(cur);
    Vertex next = around[0] == prev ? around[1] : around[0];
    out.assignment.emplace(Edge(cur, next), static_cast<Color>(step % 2));
    prev = cur;
    cur = next;
  }
  return out;
}

Factor validate_factor(const SimpleGraph& g, const EdgeColoring& coloring, FactorFamily family) {
  for (const auto& [e, c] : coloring.assignment) {
    if (!g.has_edge(e)) throw InvalidInput("coloring names edge " + to_string(e) + " not in graph");
  }
  std::vector<Color> colors;
  colors.reserve(g.size());
  for (const Edge& e : g.edges()) {
    auto c = coloring.color_of(e);
    if (!c) throw InvalidInput("partial coloring: edge " + to_string(e) + " is uncolored");
    colors.push_back(*c);
  }
  return make_factor(g, std::move(colors), family);
}

Factor bipartite_factor(const SimpleGraph& g) {
  return validate_factor(g, color_bipartite(g), FactorFamily::kBipartite);
}

Factor even_cycle_factor(const SimpleGraph& g) {
  return validate_factor(g, color_even_cycle(g), FactorFamily::kEvenCycle);
}

RegularizedFactor regularize(const Factor& f) {
  RegularizedFactor out;
  const std::size_t n0 = f.graph().order();
  out.original_vertex_count = n0;
  out.embedding.resize(n0);
  for (Vertex v = 0; v < n0; ++v) out.embedding[v] = v;

  const Color delta = f.delta();
  SimpleGraph g = f.graph();
  std::vector<Color> colors = f.edge_colors();
  while (g.order() > 0 && g.min_degree() < delta) {
    if (out.doublings >= delta) {
      throw InvariantError("regularization did not finish within delta doublings");
    }
    const std::size_t n = g.order();
    SimpleGraph doubled(2 * n);
    std::vector<Color> doubled_colors;
    doubled_colors.reserve(2 * g.size() + n);
    for (int copy = 0; copy < 2; ++copy) {
      const Vertex shift = static_cast<Vertex>(copy * n);
      for (std::size_t i = 0; i < g.size(); ++i) {
        doubled.add_edge(g.edges()[i].u + shift, g.edges()[i].v + shift);
        doubled_colors.push_back(colors[i]);
      }
    }
    std::vector<std::vector<bool>> used(n, std::vector<bool>(delta, false));
    for (std::size_t i = 0; i < g.size(); ++i) {
      used[g.edges()[i].u][colors[i]] = true;
      used[g.edges()[i].v][colors[i]] = true;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) >= delta) continue;
      // Both copies of v miss the same colors, so the smallest missing one fits the rung.
      auto it = std::find(used[v].begin(), used[v].end(), false);
      doubled.add_edge(v, static_cast<Vertex>(v + n));
      doubled_colors.push_back(static_cast<Color>(it - used[v].begin()));
    }
    g = std::move(doubled);
    colors = std::move(doubled_colors);
    ++out.doublings;
  }
  out.factor = make_factor(std::move(g), std::move(colors), f.family());
  return out;
}

namespace {

struct PairEdge {
  Vertex a0, a1;  // first-axis coordinates of the endpoints
  Vertex b0, b1;  // second-axis coordinates
};

std::vector<PairEdge> product_edges(const SimpleGraph& first, std::size_t first_order,
                                    const SimpleGraph& second, std::size_t second_order) {
  std::vector<PairEdge> out;
  for (const Edge& e : first.edges()) {
    if (e.u >= first_order || e.v >= first_order) continue;
    for (Vertex b = 0; b < second_order; ++b) out.push_back({e.u, e.v, b, b});
  }
  for (const Edge& e : second.edges()) {
    if (e.u >= second_order || e.v >= second_order) continue;
    for (Vertex a = 0; a < first_order; ++a) out.push_back({a, a, e.u, e.v});
  }
  return out;
}

Distance pair_distance(const DistanceTable& first, const DistanceTable& second, const PairEdge& x,
                       const PairEdge& y) {
  auto vd = [&](Vertex a, Vertex b, Vertex c, Vertex d) { return first(a, c) + second(b, d); };
  return std::min({vd(x.a0, x.b0, y.a0, y.b0), vd(x.a0, x.b0, y.a1, y.b1),
                   vd(x.a1, x.b1, y.a0, y.b0), vd(x.a1, x.b1, y.a1, y.b1)});
}

}  // namespace

bool distance_preservation_check(const Factor& f, const RegularizedFactor& rf,
                                 const SimpleGraph& partner) {
  const std::size_t n0 = f.graph().order();
  DistanceTable before(f.graph());
  DistanceTable after(rf.factor.graph());
  DistanceTable other(partner);
  auto edges = product_edges(f.graph(), n0, partner, partner.order());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (pair_distance(before, other, edges[i], edges[j]) < 3) continue;
      PairEdge x = edges[i];
      PairEdge y = edges[j];
      for (PairEdge* p : {&x, &y}) {
        p->a0 = rf.embedding[p->a0];
        p->a1 = rf.embedding[p->a1];
      }
      if (pair_distance(after, other, x, y) < 3) return false;
    }
  }
  return true;
}

}  // namespace pcext
