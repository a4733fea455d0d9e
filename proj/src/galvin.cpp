#include <algorithm>
#include <deque>

#include "pcext/errors.hpp"
#include "pcext/special_cases.hpp"

namespace pcext {

namespace {

// Oriented conflict structure of the line graph, fixed by the reference coloring.
struct Orientation {
  const SimpleGraph& g;
  const std::vector<std::uint8_t>& side;  // 0 = left, 1 = right
  const std::map<Edge, Color>& ref;

  Vertex left_end(const Edge& e) const { return side[e.u] == 0 ? e.u : e.v; }
  Vertex right_end(const Edge& e) const { return side[e.u] == 0 ? e.v : e.u; }

  // True when e points at f, i.e. f dominates e at their shared vertex.
  bool points_at(const Edge& e, const Edge& f) const {
    if (e == f) return false;
    if (left_end(e) == left_end(f)) return ref.at(f) > ref.at(e);
    if (right_end(e) == right_end(f)) return ref.at(f) < ref.at(e);
    return false;
  }

  std::size_t out_degree(const Edge& e, const std::set<Edge>& alive) const {
    std::size_t d = 0;
    for (Vertex end : {e.u, e.v}) {
      for (Vertex w : g.neighbors(end)) {
        Edge f(end, w);
        if (alive.contains(f) && points_at(e, f)) ++d;
      }
    }
    return d;
  }
};

// Deferred acceptance: left vertices propose along their candidate edges by descending
// reference color; right vertices keep the lowest reference color offered.
std::vector<Edge> kernel_by_deferred_acceptance(const Orientation& o,
                                                const std::vector<Edge>& candidates) {
  std::map<Vertex, std::vector<Edge>> proposals;  // per left vertex, best first
  for (const Edge& e : candidates) proposals[o.left_end(e)].push_back(e);
  for (auto& [v, list] : proposals) {
    std::sort(list.begin(), list.end(),
              [&](const Edge& a, const Edge& b) { return o.ref.at(a) > o.ref.at(b); });
  }
  std::map<Vertex, std::size_t> next_choice;
  std::map<Vertex, Edge> held;  // right vertex -> edge it keeps
  std::deque<Vertex> free_left;
  for (const auto& [v, list] : proposals) free_left.push_back(v);
  while (!free_left.empty()) {
    const Vertex u = free_left.front();
    free_left.pop_front();
    auto& idx = next_choice[u];
    const auto& list = proposals[u];
    if (idx >= list.size()) continue;
    const Edge e = list[idx++];
    const Vertex r = o.right_end(e);
    auto it = held.find(r);
    if (it == held.end()) {
      held.emplace(r, e);
    } else if (o.ref.at(e) < o.ref.at(it->second)) {
      free_left.push_back(o.left_end(it->second));
      it->second = e;
    } else {
      free_left.push_back(u);
    }
  }
  std::vector<Edge> kernel;
  for (const auto& [r, e] : held) kernel.push_back(e);
  std::sort(kernel.begin(), kernel.end());
  return kernel;
}

}  // namespace

EdgeColoring galvin_list_color(const SimpleGraph& g, const ListAssignment& lists,
                               const EdgeColoring& reference, GalvinTrace* trace) {
  const StructureReport sr = structure_report(g);
  if (!sr.is_bipartite) throw InvalidInput("list edge coloring needs a bipartite graph");
  for (const Edge& e : g.edges()) {
    if (!reference.color_of(e)) throw InvalidInput("reference coloring misses " + to_string(e));
  }
  if (!is_proper(g, reference)) throw InvalidInput("reference coloring is not proper");

  const Orientation o{g, sr.side, reference.assignment};
  const std::size_t delta = g.max_degree();
  std::map<Edge, std::set<Color>> remaining;
  std::set<Edge> alive(g.edges().begin(), g.edges().end());
  std::set<Color> all_colors;
  for (const Edge& e : g.edges()) {
    auto it = lists.lists.find(e);
    if (it == lists.lists.end()) throw InvalidInput("no list for edge " + to_string(e));
    const std::size_t need = std::max(delta, o.out_degree(e, alive) + 1);
    if (it->second.size() < need) {
      throw InvalidInput("list too small at " + to_string(e) + ": " +
                         std::to_string(it->second.size()) + " < " + std::to_string(need));
    }
    remaining[e] = it->second;
    all_colors.insert(it->second.begin(), it->second.end());
  }

  EdgeColoring out;
  for (Color alpha : all_colors) {
    std::vector<Edge> candidates;
    for (const Edge& e : alive)
      if (remaining[e].contains(alpha)) candidates.push_back(e);
    if (candidates.empty()) continue;

    KernelRound round;
    round.color = alpha;
    round.candidates = candidates.size();
    round.kernel = kernel_by_deferred_acceptance(o, candidates);

    std::set<Vertex> covered;
    round.independent = true;
    for (const Edge& k : round.kernel) {
      if (!covered.insert(k.u).second || !covered.insert(k.v).second) round.independent = false;
    }
    std::set<Edge> in_kernel(round.kernel.begin(), round.kernel.end());
    round.absorbing = true;
    for (const Edge& e : candidates) {
      if (in_kernel.contains(e)) continue;
      bool absorbed = false;
      for (const Edge& k : round.kernel) absorbed = absorbed || o.points_at(e, k);
      if (!absorbed) round.absorbing = false;
    }
    if (!round.independent || !round.absorbing) {
      throw InvariantError("kernel for color " + std::to_string(alpha) + " is not " +
                           (round.independent ? "absorbing" : "independent"));
    }

    for (const Edge& k : round.kernel) {
      out.assignment.emplace(k, alpha);
      alive.erase(k);
    }
    for (const Edge& e : candidates)
      if (!in_kernel.contains(e)) remaining[e].erase(alpha);
    if (trace) trace->rounds.push_back(std::move(round));
  }
  if (!alive.empty()) {
    throw InvariantError("kernel method left " + std::to_string(alive.size()) + " edges uncolored");
  }
  out.palette_size = all_colors.empty() ? 0 : *all_colors.rbegin() + 1;
  return out;
}

}  // namespace pcext
