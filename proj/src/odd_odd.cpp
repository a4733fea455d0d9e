#include <algorithm>
#include <array>
#include <functional>

#include "pcext/errors.hpp"
#include "pcext/special_cases.hpp"

namespace pcext {

std::vector<SimpleGraph> TorusInstance::factors() const {
  if (k < 1 || l < 1) throw InvalidInput("torus needs k, l >= 1");
  return {families::cycle(rows()), families::cycle(cols())};
}

namespace {

constexpr Color kTorusPalette = 5;

// The three squares of each of the two bricks around e (one per rung direction).
std::vector<Square> brick_squares(const std::vector<SimpleGraph>& tf, const ProductEdge& e) {
  const std::size_t a = e.axis;
  const std::size_t b = 1 - a;
  const Vertex y = e.factor_edge.u;
  const Vertex z = e.factor_edge.v;
  auto other = [&](Vertex v, Vertex not_this) {
    auto nb = tf[a].neighbors(v);
    return nb[0] == not_this ? nb[1] : nb[0];
  };
  const Vertex x = other(y, z);
  const Vertex w = other(z, y);
  const Vertex q = e.base[b];
  std::vector<Square> out;
  for (Vertex p : tf[b].neighbors(q)) {
    for (Edge path_edge : {Edge(x, y), Edge(y, z), Edge(z, w)}) {
      out.push_back(Square::make(e.base, a, path_edge, b, Edge(q, p)));
    }
  }
  return out;
}

Factor path_factor(std::size_t n) {
  SimpleGraph g = families::path(n);
  std::vector<Color> colors;
  for (const Edge& e : g.edges()) colors.push_back(e.u % 2);
  return make_factor(std::move(g), std::move(colors), FactorFamily::kBipartite);
}

// Relabeling that moves the chosen square to the corner: i -> (i - a - 1) mod n.
struct Shift {
  std::size_t rows, cols;
  Vertex di, dj;

  Vertex to_local(std::size_t axis, Vertex v) const {
    const std::size_t n = axis == 0 ? rows : cols;
    const Vertex d = axis == 0 ? di : dj;
    return static_cast<Vertex>((v + n - d) % n);
  }
  Vertex to_instance(std::size_t axis, Vertex v) const {
    const std::size_t n = axis == 0 ? rows : cols;
    const Vertex d = axis == 0 ? di : dj;
    return static_cast<Vertex>((v + d) % n);
  }
  Coords to_local(const Coords& c) const { return {to_local(0, c[0]), to_local(1, c[1])}; }
  Coords to_instance(const Coords& c) const { return {to_instance(0, c[0]), to_instance(1, c[1])}; }
  ProductEdge to_local(const ProductEdge& e) const {
    return ProductEdge::between(to_local(e.tail()), to_local(e.head()));
  }
  ProductEdge to_instance(const ProductEdge& e) const {
    return ProductEdge::between(to_instance(e.tail()), to_instance(e.head()));
  }
};

class TorusWork {
 public:
  TorusWork(std::vector<SimpleGraph> tf, ProductColoring coloring)
      : tf_(std::move(tf)), coloring_(std::move(coloring)) {}

  const std::vector<SimpleGraph>& factors() const { return tf_; }
  ProductColoring& coloring() { return coloring_; }
  Color color(const ProductEdge& e) const { return coloring_.color_of(e); }
  void set(const ProductEdge& e, Color c) { coloring_.set_color(e, c); }

  std::vector<ProductEdge> incident(const Coords& v) const { return incident_edges(tf_, v); }

  bool adjacent(const Coords& a, const Coords& b) const {
    std::size_t differ = 0;
    std::size_t axis = 0;
    for (std::size_t t = 0; t < 2; ++t) {
      if (a[t] != b[t]) {
        ++differ;
        axis = t;
      }
    }
    return differ == 1 && tf_[axis].has_edge(Edge(a[axis], b[axis]));
  }

  bool conflict_at(const Coords& v) const {
    std::array<int, kTorusPalette> seen{};
    for (const auto& e : incident(v))
      if (++seen[color(e)] > 1) return true;
    return false;
  }

  std::vector<ProductEdge> adjacent_with(const ProductEdge& e, Color c) const {
    std::vector<ProductEdge> out;
    for (const Coords& end : {e.tail(), e.head()}) {
      for (const auto& f : incident(end))
        if (f != e && color(f) == c) out.push_back(f);
    }
    return out;
  }

  std::vector<Coords> conflict_vertices() const {
    std::vector<Coords> out;
    for (Vertex i = 0; i < tf_[0].order(); ++i)
      for (Vertex j = 0; j < tf_[1].order(); ++j)
        if (conflict_at({i, j})) out.push_back({i, j});
    return out;
  }

 private:
  std::vector<SimpleGraph> tf_;
  ProductColoring coloring_;
};

}  // namespace

std::vector<Square> free_squares(const TorusInstance& inst, const Precoloring& pre) {
  const auto tf = inst.factors();
  std::set<Square> covered;
  for (const auto& entry : pre.entries) {
    if (!product_contains(tf, entry.edge)) {
      throw InvalidInput(to_string(entry.edge) + " is not an edge of the torus");
    }
    for (const Square& s : brick_squares(tf, entry.edge)) covered.insert(s);
  }
  std::vector<Edge> row_edges = tf[0].edges();
  std::vector<Edge> col_edges = tf[1].edges();
  std::sort(row_edges.begin(), row_edges.end());
  std::sort(col_edges.begin(), col_edges.end());
  std::vector<Square> out;
  for (const Edge& r : row_edges) {
    for (const Edge& c : col_edges) {
      Square s = Square::make(Coords{0, 0}, 0, r, 1, c);
      if (!covered.contains(s)) out.push_back(s);
    }
  }
  return out;
}

ExtensionResult extend_odd_odd(const TorusInstance& inst, const Precoloring& pre) {
  return extend_odd_odd(inst, pre, nullptr);
}

ExtensionResult extend_odd_odd(const TorusInstance& inst, const Precoloring& pre,
                               OddOddTrace* trace) {
  const auto tf = inst.factors();
  {
    HypothesisReport report;
    check_precoloring(tf, pre, kTorusPalette, 3, report);
    if (!report.ok()) throw HypothesisError(report.summary());
  }
  const std::size_t rows = inst.rows();
  const std::size_t cols = inst.cols();
  const Vertex last_i = static_cast<Vertex>(rows - 1);
  const Vertex last_j = static_cast<Vertex>(cols - 1);

  // (1) Free square, moved to (2k,2l)(2k,0)(0,0)(0,2l).
  const auto free = free_squares(inst, pre);
  if (free.empty()) throw InvariantError("no square is free of brick neighborhoods");
  const Square& chosen = free.front();
  auto high_end = [](const Edge& e, std::size_t n) {
    // The square's edge a -> a+1 (mod n); the wrap edge is stored as (0, n-1).
    return e.u == 0 && e.v + 1 == n ? e.v : e.u;
  };
  const Vertex a = high_end(chosen.edge_i, rows);
  const Vertex b = high_end(chosen.edge_j, cols);
  const Shift shift{rows, cols, static_cast<Vertex>((a + 1) % rows),
                    static_cast<Vertex>((b + 1) % cols)};

  std::vector<PrecoloredEdge> local;
  for (const auto& entry : pre.entries) local.push_back({shift.to_local(entry.edge), entry.color});

  // (2) Fifth color: fewest prescriptions, then smallest.
  std::array<std::size_t, kTorusPalette> uses{};
  for (const auto& entry : local) ++uses[entry.color];
  Color fifth = 0;
  for (Color c = 1; c < kTorusPalette; ++c)
    if (uses[c] < uses[fifth]) fifth = c;
  std::array<Color, 4> grid_color{};
  {
    std::size_t t = 0;
    for (Color c = 0; c < kTorusPalette; ++c)
      if (c != fifth) grid_color[t++] = c;
  }
  auto grid_index = [&](Color c) {
    return static_cast<Color>(std::find(grid_color.begin(), grid_color.end(), c) - grid_color.begin());
  };
  auto is_wrap = [&](const ProductEdge& e) {
    const Vertex top = e.axis == 0 ? last_i : last_j;
    return e.factor_edge == Edge(0, top);
  };

  // (3) Truncated grid with the four grid colors.
  auto space = std::make_shared<const ProductSpace>(
      std::vector<Factor>{path_factor(rows), path_factor(cols)});
  Precoloring grid_pre{{}, 4};
  for (const auto& entry : local) {
    if (entry.color == fifth || is_wrap(entry.edge)) continue;
    grid_pre.entries.push_back({entry.edge, grid_index(entry.color)});
  }
  EngineRun run = run_engine(space, grid_pre);

  std::set<ProductEdge> loci_local;
  for (const auto& [i, brick] : run.bricks)
    for (const auto& e : brick.all_edges())
      if (space->is_original(e)) loci_local.insert(e);
  for (const auto& sq : run.step1_squares)
    for (const auto& e : sq.edges())
      if (space->is_original(e)) loci_local.insert(e);

  // (4) Wrap edges take the fifth color. The baseline is the canonical grid plus these.
  std::vector<std::vector<Color>> axis_colors(2);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    const Vertex top = axis == 0 ? last_i : last_j;
    for (const Edge& e : tf[axis].edges()) {
      axis_colors[axis].push_back(e == Edge(0, top) ? fifth : grid_color[2 * axis + e.u % 2]);
    }
  }
  TorusWork work(tf, ProductColoring(tf, axis_colors, kTorusPalette));
  for_each_product_edge(tf, [&](const ProductEdge& e) {
    if (!is_wrap(e)) work.set(e, grid_color[run.coloring.color_of(e)]);
  });

  const std::array<Coords, 4> corners{Coords{last_i, last_j}, Coords{last_i, 0}, Coords{0, 0},
                                      Coords{0, last_j}};
  auto is_corner = [&](const Coords& v) {
    return std::find(corners.begin(), corners.end(), v) != corners.end();
  };
  const std::vector<Coords> conflicts = work.conflict_vertices();
  for (const Coords& v : conflicts) {
    if (!is_corner(v)) {
      throw InvariantError("conflict at " + to_string(v) + " outside the corner square");
    }
  }
  // The baseline depends only on the factor edge, so it can be read off in either labeling.
  auto instance_coloring = [&]() {
    std::vector<std::vector<Color>> instance_colors(2);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      for (const Edge& e : tf[axis].edges()) {
        const ProductEdge pe(Coords{0, 0}, axis, e);
        instance_colors[axis].push_back(work.coloring().baseline_color(shift.to_local(pe)));
      }
    }
    ProductColoring out(tf, instance_colors, kTorusPalette);
    for_each_product_edge(tf, [&](const ProductEdge& e) { out.set_color(e, work.color(shift.to_local(e))); });
    return out;
  };
  if (trace) {
    trace->before_repair = instance_coloring();
    trace->corner = chosen;
    trace->fifth = fifth;
    trace->conflict_vertices.clear();
    for (const Coords& v : conflicts) trace->conflict_vertices.push_back(shift.to_instance(v));
  }

  ExtensionStats stats = run.stats;
  std::set<ProductEdge> prescribed;
  for (const auto& entry : local) prescribed.insert(entry.edge);

  // Applies a candidate repair; keeps it only if it leaves no new conflict away from the
  // corner square and leaves every other prescription alone.
  auto attempt = [&](const std::vector<std::pair<ProductEdge, Color>>& changes,
                     const ProductEdge& target) {
    std::vector<std::pair<ProductEdge, Color>> old;
    for (const auto& [e, c] : changes) {
      if (e != target && prescribed.contains(e)) return false;
      old.emplace_back(e, work.color(e));
    }
    for (const auto& [e, c] : changes) work.set(e, c);
    bool ok = true;
    for (const auto& [e, c] : changes) {
      for (const Coords& end : {e.tail(), e.head()})
        if (!is_corner(end) && work.conflict_at(end)) ok = false;
    }
    if (!ok) {
      for (const auto& [e, c] : old) work.set(e, c);
      return false;
    }
    for (const auto& [e, c] : changes) loci_local.insert(e);
    return true;
  };

  // (5) Prescriptions the grid did not handle: the fifth color anywhere, any color on a wrap.
  for (const auto& entry : local) {
    const ProductEdge& e = entry.edge;
    const Color want = entry.color;
    const Color have = work.color(e);
    if (have == want) continue;
    const auto with = work.adjacent_with(e, want);
    bool done = false;
    if (with.empty()) {
      done = attempt({{e, want}}, e);
    } else if (with.size() == 1) {
      done = attempt({{e, want}, {with[0], have}}, e);
    } else if (with.size() == 2) {
      // The two edges and e span a square whose fourth edge should carry e's color.
      auto far_end = [&](const ProductEdge& f) { return e.touches(f.tail()) ? f.head() : f.tail(); };
      const Coords p = far_end(with[0]);
      const Coords q = far_end(with[1]);
      if (with[0].axis == with[1].axis && with[0].axis != e.axis && work.adjacent(p, q)) {
        const ProductEdge h = ProductEdge::between(p, q);
        if (work.color(h) == have) {
          done = attempt({{e, want}, {h, want}, {with[0], have}, {with[1], have}}, e);
        }
      }
    }
    if (!done) {
      throw InvariantError("no repair applies to the prescription on " +
                           to_string(shift.to_instance(e)));
    }
    ++stats.fifth_color_repairs;
  }

  // (6) Corner square. Recolor an opposite pair while the other pair keeps the fifth color.
  const ProductEdge h1 = ProductEdge::between(corners[1], corners[2]);  // (2k,0)(0,0)
  const ProductEdge h2 = ProductEdge::between(corners[0], corners[3]);  // (2k,2l)(0,2l)
  const ProductEdge v1 = ProductEdge::between(corners[3], corners[2]);  // (0,2l)(0,0)
  const ProductEdge v2 = ProductEdge::between(corners[0], corners[1]);  // (2k,2l)(2k,0)
  for (const auto& e : {h1, h2, v1, v2}) loci_local.insert(e);

  auto free_color = [&](const ProductEdge& e) -> std::optional<Color> {
    std::array<bool, kTorusPalette> used{};
    for (const Coords& end : {e.tail(), e.head()})
      for (const auto& f : work.incident(end))
        if (f != e) used[work.color(f)] = true;
    for (Color c = 0; c < kTorusPalette; ++c)
      if (c != fifth && !used[c]) return c;
    if (!used[fifth]) return fifth;
    return std::nullopt;
  };
  auto corner_ok = [&]() {
    for (const Coords& v : corners)
      if (work.conflict_at(v)) return false;
    return true;
  };

  if (!corner_ok()) {
    std::array<ProductEdge, 2> fix{h1, h2};
    if (!(work.color(v1) == fifth && work.color(v2) == fifth) &&
        work.color(h1) == fifth && work.color(h2) == fifth) {
      fix = {v1, v2};
    }
    for (const auto& e : fix) {
      if (auto c = free_color(e)) {
        work.set(e, *c);
        ++stats.corner_repairs;
      }
    }
  }

  if (!corner_ok()) {
    // Fallback: recolor the non-prescribed edges at the corner vertices by backtracking.
    std::set<ProductEdge> editable_set;
    for (const Coords& v : corners)
      for (const auto& e : work.incident(v))
        if (!prescribed.contains(e)) editable_set.insert(e);
    std::vector<ProductEdge> editable(editable_set.begin(), editable_set.end());
    std::vector<Color> saved;
    for (const auto& e : editable) saved.push_back(work.color(e));

    std::function<bool(std::size_t)> search = [&](std::size_t idx) -> bool {
      if (idx == editable.size()) {
        for (const auto& e : editable)
          for (const Coords& end : {e.tail(), e.head()})
            if (work.conflict_at(end)) return false;
        return true;
      }
      const ProductEdge& e = editable[idx];
      for (Color c = 0; c < kTorusPalette; ++c) {
        bool clash = false;
        for (const Coords& end : {e.tail(), e.head()}) {
          for (const auto& f : work.incident(end)) {
            if (f == e) continue;
            const bool pending = editable_set.contains(f) &&
                                 std::find(editable.begin(), editable.begin() + idx, f) ==
                                     editable.begin() + idx;
            if (!pending && work.color(f) == c) clash = true;
          }
        }
        if (clash) continue;
        work.set(e, c);
        if (search(idx + 1)) return true;
      }
      return false;
    };
    if (!search(0)) {
      for (std::size_t t = 0; t < editable.size(); ++t) work.set(editable[t], saved[t]);
      throw InvariantError("corner square could not be repaired");
    }
    for (const auto& e : editable) loci_local.insert(e);
    ++stats.corner_local_search;
  }

  const auto remaining = work.conflict_vertices();
  if (!remaining.empty()) {
    throw InvariantError("coloring still improper at " + to_string(shift.to_instance(remaining[0])));
  }
  for (const auto& entry : local) {
    if (work.color(entry.edge) != entry.color) {
      throw InvariantError("prescription on " + to_string(shift.to_instance(entry.edge)) +
                           " lost during repairs");
    }
  }

  ExtensionResult result;
  result.coloring = instance_coloring();
  result.diff = result.coloring.diff();
  for (const auto& e : loci_local) result.loci.insert(shift.to_instance(e));
  result.stats = stats;
  result.method = "odd-odd";
  return result;
}

}  // namespace pcext
