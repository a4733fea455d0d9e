#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcext/extension.hpp"
#include "pcext/oracle.hpp"

namespace pcext {

enum class FuzzOutcome {
  kExtendedVerified,
  kUnextendable,      // oracle-confirmed, only expected for hypothesis-violating recipes
  kOracleExtendable,  // hypothesis-violating recipe that still had an extension
  kInconclusive,      // oracle budget ran out on a hypothesis-violating recipe
  kMismatch,
};

std::string to_string(FuzzOutcome o);

struct FuzzCase {
  std::string recipe;
  std::uint64_t seed = 0;
  std::size_t min_distance = 3;
  std::vector<SimpleGraph> factors;
  Precoloring pre;
  FuzzOutcome outcome = FuzzOutcome::kInconclusive;
  std::string detail;
  bool oracle_checked = false;
};

struct FuzzRecipe {
  std::string id;
  std::vector<SimpleGraph> factors;
  Color palette = 0;
  std::size_t min_distance = 3;
  std::size_t max_entries = 0;
  // Which algorithm runs it; empty means oracle only.
  std::string method;
  // Prescribed colors are drawn from the first color_choices colors (0: the whole palette).
  Color color_choices = 0;
};

std::vector<std::string> fuzz_recipe_ids();
// Throws InvalidInput for unknown ids.
FuzzRecipe fuzz_recipe(const std::string& id);

// A random matching of product edges with pairwise distance >= min_distance and random
// colors, deterministic in the seed.
Precoloring random_precoloring(std::span<const SimpleGraph> factors, Color palette,
                               std::size_t min_distance, std::size_t max_entries,
                               std::uint64_t seed, Color color_choices = 0);

// Runs and verifies the recipe's algorithm. The oracle is consulted when budget > 0.
FuzzCase run_fuzz_case(const FuzzRecipe& recipe, std::uint64_t seed, std::uint64_t oracle_budget);

struct FuzzSummary {
  std::vector<FuzzCase> cases;
  std::size_t trials = 0;
  std::size_t extended = 0;
  std::size_t unextendable = 0;
  std::size_t mismatches = 0;
};

// Trials use seeds seed, seed+1, ...; stops at the first MISMATCH. Non-routine outcomes
// (MISMATCH and oracle-confirmed unextendable cases) are appended to corpus_path as
// "recipe seed outcome" lines when a path is given.
FuzzSummary fuzz(const std::string& recipe_id, std::size_t trials, std::uint64_t seed,
                 std::uint64_t oracle_budget, const std::optional<std::string>& corpus_path);

}  // namespace pcext
