#include "pcext/extension.hpp"

#include <algorithm>
#include <numeric>

#include "pcext/errors.hpp"

namespace pcext {

std::string to_string(HypothesisKind k) {
  switch (k) {
    case HypothesisKind::kFactorCount:
      return "factor-count";
    case HypothesisKind::kOddTotal:
      return "odd-total-degree";
    case HypothesisKind::kDegreeCondition:
      return "degree-condition";
    case HypothesisKind::kForeignEdge:
      return "foreign-edge";
    case HypothesisKind::kNotMatching:
      return "not-a-matching";
    case HypothesisKind::kDistance:
      return "distance";
    case HypothesisKind::kPalette:
      return "palette";
    case HypothesisKind::kShape:
      return "shape";
  }
  return "unknown";
}

bool HypothesisReport::has(HypothesisKind k) const {
  return std::any_of(violations.begin(), violations.end(),
                     [k](const HypothesisViolation& v) { return v.kind == k; });
}

std::string HypothesisReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += to_string(v.kind) + ": " + v.detail;
  }
  return out;
}

void check_precoloring(std::span<const SimpleGraph> factors, const Precoloring& pre,
                       Color palette, std::size_t min_distance, HypothesisReport& report) {
  bool all_present = true;
  for (const auto& entry : pre.entries) {
    if (!product_contains(factors, entry.edge)) {
      report.violations.push_back(
          {HypothesisKind::kForeignEdge, to_string(entry.edge) + " is not a product edge"});
      all_present = false;
    }
    if (entry.color >= palette) {
      report.violations.push_back({HypothesisKind::kPalette,
                                   to_string(entry.edge) + " prescribed color " +
                                       std::to_string(entry.color) + " outside palette of " +
                                       std::to_string(palette)});
    }
  }
  if (!all_present || pre.entries.size() < 2) return;
  ProductMetric metric(factors);
  for (std::size_t a = 0; a < pre.entries.size(); ++a) {
    for (std::size_t b = a + 1; b < pre.entries.size(); ++b) {
      const auto& e = pre.entries[a].edge;
      const auto& f = pre.entries[b].edge;
      const Distance d = metric.edges(e, f);
      if (d == 0) {
        report.violations.push_back({HypothesisKind::kNotMatching,
                                     to_string(e) + " and " + to_string(f) + " share a vertex"});
      } else if (d < min_distance) {
        report.violations.push_back({HypothesisKind::kDistance,
                                     to_string(e) + " and " + to_string(f) + " at distance " +
                                         to_string(d) + " < " + std::to_string(min_distance)});
      }
    }
  }
}

HypothesisReport check_hypotheses(std::span<const Factor> factors, const Precoloring& pre,
                                  DegreeMode mode) {
  HypothesisReport report;
  if (factors.size() < 2) {
    report.violations.push_back(
        {HypothesisKind::kFactorCount, "need at least 2 factors, got " + std::to_string(factors.size())});
  }
  Color total = 0;
  for (const auto& f : factors) total += f.delta();
  if (total % 2 != 0) {
    report.violations.push_back(
        {HypothesisKind::kOddTotal, "sum of max degrees " + std::to_string(total) + " is odd"});
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Color twice = 2 * factors[i].delta();
    const bool bad = mode == DegreeMode::kStrict ? twice >= total : twice > total;
    if (bad) {
      report.violations.push_back(
          {HypothesisKind::kDegreeCondition,
           "factor " + std::to_string(i) + ": 2*" + std::to_string(factors[i].delta()) +
               (mode == DegreeMode::kStrict ? " >= " : " > ") + std::to_string(total)});
    }
  }
  std::vector<SimpleGraph> graphs;
  for (const auto& f : factors) graphs.push_back(f.graph());
  check_precoloring(graphs, pre, total, 3, report);
  return report;
}

std::vector<std::pair<Color, Color>> ColorPairing::pairs() const {
  std::vector<std::pair<Color, Color>> out;
  for (Color c = 0; c < partner_.size(); ++c)
    if (c < partner_[c]) out.emplace_back(c, partner_[c]);
  return out;
}

std::pair<Color, Color> ColorPairing::pair_of(Color c) const {
  const Color p = partner(c);
  return {std::min(c, p), std::max(c, p)};
}

ColorPairing pair_colors(std::span<const std::size_t> band_sizes) {
  const std::size_t total = std::accumulate(band_sizes.begin(), band_sizes.end(), std::size_t{0});
  const std::size_t largest =
      band_sizes.empty() ? 0 : *std::max_element(band_sizes.begin(), band_sizes.end());
  if (total % 2 != 0) throw HypothesisError("cannot pair an odd number of colors");
  if (2 * largest > total) {
    throw HypothesisError("a band of " + std::to_string(largest) + " colors exceeds half of " +
                          std::to_string(total));
  }
  std::vector<Color> next(band_sizes.size());
  std::vector<std::size_t> left(band_sizes.begin(), band_sizes.end());
  for (std::size_t b = 1; b < band_sizes.size(); ++b) {
    next[b] = next[b - 1] + static_cast<Color>(band_sizes[b - 1]);
  }
  std::vector<Color> partner(total);
  for (std::size_t paired = 0; paired < total; paired += 2) {
    // Two largest remaining bands, ties to the lower index.
    std::size_t first = 0;
    for (std::size_t b = 1; b < left.size(); ++b)
      if (left[b] > left[first]) first = b;
    std::size_t second = first == 0 ? 1 : 0;
    for (std::size_t b = 0; b < left.size(); ++b)
      if (b != first && left[b] > left[second]) second = b;
    if (left[second] == 0) throw InvariantError("greedy pairing ran out of partner colors");
    const Color a = next[first]++;
    const Color c = next[second]++;
    --left[first];
    --left[second];
    partner[a] = c;
    partner[c] = a;
  }
  return ColorPairing(std::move(partner));
}

void EdgeClaims::claim(const ProductEdge& e, const std::string& owner) {
  auto [it, fresh] = owners_.emplace(e, owner);
  if (!fresh) {
    throw InvariantError("edge " + to_string(e) + " claimed by " + owner + " already belongs to " +
                         it->second);
  }
}

Square step1_square(const ProductSpace& space, const ProductEdge& e, Color prescribed) {
  const std::size_t l = space.band_of(prescribed);
  if (l == e.axis) throw InvalidInput("STEP 1 needs a prescribed color from another band");
  auto z = space.color_neighbor(e.base, l, prescribed);
  if (!z) {
    throw InvariantError("no edge of color " + std::to_string(prescribed) + " at " +
                         to_string(e.base) + " on axis " + std::to_string(l));
  }
  return Square::make(e.base, e.axis, e.factor_edge, l, Edge(e.base[l], *z));
}

void step1(SparseColoring& c, const ProductEdge& e, Color prescribed) {
  c.rotate(step1_square(c.space(), e, prescribed));
  if (c.color_of(e) != prescribed) throw InvariantError("STEP 1 left " + to_string(e) + " wrong");
}

void step2(SparseColoring& c, const BrickNeighborhood& brick, Color prescribed,
           EdgeClaims* claims) {
  const ProductEdge target = brick.precolored_edge();
  if (claims) {
    for (const auto& e : brick.all_edges()) claims->claim(e, "brick of " + to_string(target));
  }
  const auto squares = brick.squares();
  c.rotate(squares[0]);
  c.rotate(squares[2]);
  c.rotate(squares[1]);
  if (c.color_of(target) != prescribed) {
    throw InvariantError("STEP 2 left " + to_string(target) + " wrong");
  }
}

EntryKind classify_entry(const ProductSpace& space, const PrecoloredEdge& entry) {
  if (space.canonical_color(entry.edge) == entry.color) return EntryKind::kAlreadyCorrect;
  if (space.band_of(entry.color) != entry.edge.axis) return EntryKind::kStep1;
  return EntryKind::kStep2;
}

std::map<std::size_t, BrickNeighborhood> select_bricks(const ProductSpace& space,
                                                       const Precoloring& pre,
                                                       const ColorPairing& pairing) {
  std::map<std::size_t, BrickNeighborhood> chosen;
  std::map<ProductEdge, std::size_t> owner;
  for (std::size_t i = 0; i < pre.entries.size(); ++i) {
    const auto& entry = pre.entries[i];
    if (classify_entry(space, entry) != EntryKind::kStep2) continue;
    auto candidates =
        enumerate_bricks(space, entry.edge, entry.color, pairing.partner(entry.color));
    if (candidates.empty()) {
      throw InvariantError("no brick-neighborhood for " + to_string(entry.edge));
    }
    const auto& brick = *std::min_element(candidates.begin(), candidates.end());
    for (const auto& e : brick.all_edges()) {
      auto [it, fresh] = owner.emplace(e, i);
      if (!fresh) {
        throw InvariantError("bricks of entries " + std::to_string(it->second) + " and " +
                             std::to_string(i) + " share edge " + to_string(e));
      }
    }
    chosen.emplace(i, brick);
  }
  return chosen;
}

namespace {

std::vector<std::size_t> component_key(const std::vector<StructureReport>& reports,
                                       const Coords& v) {
  std::vector<std::size_t> key;
  for (std::size_t i = 0; i < reports.size(); ++i) key.push_back(reports[i].component_of[v[i]]);
  return key;
}

}  // namespace

EngineRun run_engine(std::shared_ptr<const ProductSpace> space, const Precoloring& pre) {
  EngineRun run{SparseColoring(space), {}, {}, {}};
  const ProductSpace& sp = *space;

  bool needs_pairing = false;
  for (const auto& entry : pre.entries) {
    if (!sp.contains(entry.edge)) throw InvalidInput(to_string(entry.edge) + " not in product");
    if (classify_entry(sp, entry) == EntryKind::kStep2) needs_pairing = true;
  }
  if (needs_pairing) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < sp.dims(); ++i) sizes.push_back(sp.original(i).delta());
    run.bricks = select_bricks(sp, pre, pair_colors(sizes));
  }

  std::vector<StructureReport> reports;
  std::size_t component_total = 1;
  for (const auto& g : sp.original_graphs()) {
    reports.push_back(structure_report(g));
    component_total *= reports.back().component_count;
  }
  run.stats.components = component_total;

  // Components of the product are tuples of factor components; they never share edges,
  // so each one is finished before the next starts.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_component;
  for (std::size_t i = 0; i < pre.entries.size(); ++i) {
    by_component[component_key(reports, pre.entries[i].edge.base)].push_back(i);
  }

  EdgeClaims claims;
  for (const auto& [key, members] : by_component) {
    for (std::size_t i : members) {
      const auto& entry = pre.entries[i];
      const EntryKind kind = classify_entry(sp, entry);
      if (kind == EntryKind::kAlreadyCorrect) {
        ++run.stats.already_correct;
      } else if (kind == EntryKind::kStep1) {
        Square sq = step1_square(sp, entry.edge, entry.color);
        for (const auto& e : sq.edges()) claims.claim(e, "square of " + to_string(entry.edge));
        step1(run.coloring, entry.edge, entry.color);
        run.step1_squares.push_back(sq);
        ++run.stats.step1;
        ++run.stats.rotations;
      }
    }
    for (std::size_t i : members) {
      const auto& entry = pre.entries[i];
      if (classify_entry(sp, entry) != EntryKind::kStep2) continue;
      step2(run.coloring, run.bricks.at(i), entry.color, &claims);
      ++run.stats.step2;
      run.stats.rotations += 3;
    }
  }

  for (const auto& entry : pre.entries) {
    if (run.coloring.color_of(entry.edge) != entry.color) {
      throw InvariantError("prescription on " + to_string(entry.edge) + " not honored");
    }
  }
  return run;
}

ProductColoring restrict_to_original(const SparseColoring& c) {
  const ProductSpace& sp = c.space();
  std::vector<std::vector<Color>> axis_colors;
  for (std::size_t i = 0; i < sp.dims(); ++i) {
    std::vector<Color> colors;
    for (Color local : sp.original(i).edge_colors()) colors.push_back(sp.offset(i) + local);
    axis_colors.push_back(std::move(colors));
  }
  ProductColoring out(sp.original_graphs(), std::move(axis_colors), sp.total_colors());
  for (const auto& [e, color] : c.overrides()) {
    if (sp.is_original(e)) out.set_color(e, color);
  }
  return out;
}

ExtensionResult extend(std::span<const Factor> factors, const Precoloring& pre,
                       const ExtendOptions& options) {
  HypothesisReport report = check_hypotheses(factors, pre, options.degree_mode);
  if (!report.ok()) throw HypothesisError(report.summary());

  auto space = std::make_shared<const ProductSpace>(
      std::vector<Factor>(factors.begin(), factors.end()));
  EngineRun run = run_engine(space, pre);

  ExtensionResult result;
  result.coloring = restrict_to_original(run.coloring);
  result.diff = result.coloring.diff();
  for (const auto& [i, brick] : run.bricks) {
    for (const auto& e : brick.all_edges())
      if (space->is_original(e)) result.loci.insert(e);
  }
  for (const auto& sq : run.step1_squares) {
    for (const auto& e : sq.edges())
      if (space->is_original(e)) result.loci.insert(e);
  }
  result.stats = run.stats;
  result.method = "general";
  return result;
}

}  // namespace pcext
