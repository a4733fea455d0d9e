#include "pcext/fuzz.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "pcext/errors.hpp"
#include "pcext/special_cases.hpp"

namespace pcext {

std::string to_string(FuzzOutcome o) {
  switch (o) {
    case FuzzOutcome::kExtendedVerified:
      return "extended+verified";
    case FuzzOutcome::kUnextendable:
      return "oracle-confirmed-unextendable";
    case FuzzOutcome::kOracleExtendable:
      return "oracle-extendable";
    case FuzzOutcome::kInconclusive:
      return "inconclusive";
    case FuzzOutcome::kMismatch:
      return "MISMATCH";
  }
  return "unknown";
}

std::vector<std::string> fuzz_recipe_ids() {
  return {"c4xc4", "c6xc6", "c4xc6", "c4xc4xc4", "q3", "c6xk2", "c5xk2", "c4xk2xk2",
          "c5xc5", "c5xc7", "c4xc4-dist2", "c4xc6-dist2", "c6xc6-dist2"};
}

FuzzRecipe fuzz_recipe(const std::string& id) {
  using families::cycle;
  using families::path;
  FuzzRecipe r;
  r.id = id;
  if (id == "c4xc4") {
    r = {id, {cycle(4), cycle(4)}, 4, 3, 4, "general"};
  } else if (id == "c6xc6") {
    r = {id, {cycle(6), cycle(6)}, 4, 3, 6, "general"};
  } else if (id == "c4xc6") {
    r = {id, {cycle(4), cycle(6)}, 4, 3, 5, "general"};
  } else if (id == "c4xc4xc4") {
    r = {id, {cycle(4), cycle(4), cycle(4)}, 6, 3, 8, "general"};
  } else if (id == "q3") {
    r = {id, {cycle(4), path(2)}, 3, 3, 2, "k2"};
  } else if (id == "c6xk2") {
    r = {id, {cycle(6), path(2)}, 3, 3, 3, "k2"};
  } else if (id == "c5xk2") {
    r = {id, {cycle(5), path(2)}, 3, 3, 2, "odd_cycle_k2"};
  } else if (id == "c4xk2xk2") {
    r = {id, {cycle(4), path(2), path(2)}, 4, 3, 3, "k2_power"};
  } else if (id == "c5xc5") {
    r = {id, {cycle(5), cycle(5)}, 5, 3, 4, "odd_odd"};
  } else if (id == "c5xc7") {
    r = {id, {cycle(5), cycle(7)}, 5, 3, 5, "odd_odd"};
  } else if (id == "c4xc4-dist2") {
    r = {id, {cycle(4), cycle(4)}, 4, 2, 8, "", 2};
  } else if (id == "c4xc6-dist2") {
    r = {id, {cycle(4), cycle(6)}, 4, 2, 12, "", 1};
  } else if (id == "c6xc6-dist2") {
    r = {id, {cycle(6), cycle(6)}, 4, 2, 18, "", 1};
  } else {
    throw InvalidInput("unknown fuzz recipe '" + id + "'");
  }
  return r;
}

Precoloring random_precoloring(std::span<const SimpleGraph> factors, Color palette,
                               std::size_t min_distance, std::size_t max_entries,
                               std::uint64_t seed, Color color_choices) {
  std::mt19937_64 rng(seed);
  std::vector<ProductEdge> edges;
  for_each_product_edge(factors, [&](const ProductEdge& e) { edges.push_back(e); });
  std::shuffle(edges.begin(), edges.end(), rng);
  const std::size_t target =
      max_entries == 0 ? 0 : std::uniform_int_distribution<std::size_t>(1, max_entries)(rng);
  const Color choices = color_choices == 0 ? palette : std::min(color_choices, palette);
  std::uniform_int_distribution<Color> color(0, choices - 1);
  const ProductMetric metric(factors);
  Precoloring pre{{}, palette};
  for (const ProductEdge& e : edges) {
    if (pre.entries.size() >= target) break;
    bool far = true;
    for (const auto& chosen : pre.entries) {
      if (metric.edges(e, chosen.edge) < min_distance) {
        far = false;
        break;
      }
    }
    if (far) pre.entries.push_back({e, color(rng)});
  }
  return pre;
}

namespace {

ExtensionResult run_method(const FuzzRecipe& r, const Precoloring& pre) {
  if (r.method == "general") {
    std::vector<Factor> fs;
    for (const auto& g : r.factors) fs.push_back(bipartite_factor(g));
    return extend(fs, pre);
  }
  if (r.method == "k2") return extend_bipartite_k2(r.factors[0], pre);
  if (r.method == "odd_cycle_k2") return extend_odd_cycle_k2(r.factors[0], pre);
  if (r.method == "k2_power") return extend_k2_power(r.factors[0], r.factors.size() - 1, pre);
  if (r.method == "odd_odd") {
    TorusInstance inst{(r.factors[0].order() - 1) / 2, (r.factors[1].order() - 1) / 2};
    return extend_odd_odd(inst, pre);
  }
  throw InvalidInput("recipe '" + r.id + "' has no algorithm");
}

}  // namespace

FuzzCase run_fuzz_case(const FuzzRecipe& recipe, std::uint64_t seed, std::uint64_t oracle_budget) {
  FuzzCase fc;
  fc.recipe = recipe.id;
  fc.seed = seed;
  fc.min_distance = recipe.min_distance;
  fc.factors = recipe.factors;
  fc.pre = random_precoloring(recipe.factors, recipe.palette, recipe.min_distance,
                              recipe.max_entries, seed, recipe.color_choices);

  std::optional<OracleResult> oracle;
  auto ask_oracle = [&]() {
    if (oracle || oracle_budget == 0) return;
    MaterializedProduct mp(recipe.factors);
    oracle = brute_force_extend(mp.graph(), materialize_precoloring(mp, fc.pre), recipe.palette,
                                oracle_budget);
    fc.oracle_checked = oracle->status != OracleStatus::kBudgetExhausted;
  };

  if (recipe.method.empty()) {
    ask_oracle();
    if (!oracle || oracle->status == OracleStatus::kBudgetExhausted) {
      fc.outcome = FuzzOutcome::kInconclusive;
    } else if (oracle->status == OracleStatus::kUnextendable) {
      fc.outcome = FuzzOutcome::kUnextendable;
    } else {
      fc.outcome = FuzzOutcome::kOracleExtendable;
    }
    return fc;
  }

  try {
    ExtensionResult result = run_method(recipe, fc.pre);
    VerificationReport report = verify(result.coloring, fc.pre, recipe.palette);
    if (!report.ok()) {
      fc.outcome = FuzzOutcome::kMismatch;
      fc.detail = "verification failed: " + report.summary();
      return fc;
    }
    ask_oracle();
    if (oracle && oracle->status == OracleStatus::kUnextendable) {
      fc.outcome = FuzzOutcome::kMismatch;
      fc.detail = "algorithm extended an instance the oracle calls unextendable";
      return fc;
    }
    fc.outcome = FuzzOutcome::kExtendedVerified;
  } catch (const Error& err) {
    fc.outcome = FuzzOutcome::kMismatch;
    fc.detail = std::string("algorithm failed: ") + err.what();
    ask_oracle();
    if (oracle && oracle->status == OracleStatus::kUnextendable) {
      fc.detail += " (oracle: unextendable)";
    }
  }
  return fc;
}

FuzzSummary fuzz(const std::string& recipe_id, std::size_t trials, std::uint64_t seed,
                 std::uint64_t oracle_budget, const std::optional<std::string>& corpus_path) {
  const FuzzRecipe recipe = fuzz_recipe(recipe_id);
  FuzzSummary summary;
  std::ofstream corpus;
  if (corpus_path) corpus.open(*corpus_path, std::ios::app);
  for (std::size_t t = 0; t < trials; ++t) {
    FuzzCase fc = run_fuzz_case(recipe, seed + t, oracle_budget);
    ++summary.trials;
    if (fc.outcome == FuzzOutcome::kExtendedVerified) ++summary.extended;
    if (fc.outcome == FuzzOutcome::kUnextendable) ++summary.unextendable;
    if (fc.outcome == FuzzOutcome::kMismatch) ++summary.mismatches;
    if (corpus.is_open() &&
        (fc.outcome == FuzzOutcome::kMismatch || fc.outcome == FuzzOutcome::kUnextendable)) {
      corpus << fc.recipe << ' ' << fc.seed << ' ' << to_string(fc.outcome) << '\n';
    }
    const bool stop = fc.outcome == FuzzOutcome::kMismatch;
    summary.cases.push_back(std::move(fc));
    if (stop) break;
  }
  return summary;
}

}  // namespace pcext
