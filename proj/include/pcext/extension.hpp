#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcext/factor.hpp"
#include "pcext/product.hpp"

namespace pcext {

struct PrecoloredEdge {
  ProductEdge edge;
  Color color = 0;

  auto operator<=>(const PrecoloredEdge&) const = default;
};

struct Precoloring {
  std::vector<PrecoloredEdge> entries;
  Color palette = 0;
};

// Names of the hypotheses check_hypotheses and the special cases can report.
enum class HypothesisKind {
  kFactorCount,
  kOddTotal,
  kDegreeCondition,
  kForeignEdge,
  kNotMatching,
  kDistance,
  kPalette,
  kShape,
};

std::string to_string(HypothesisKind k);

struct HypothesisViolation {
  HypothesisKind kind;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(HypothesisKind k) const;
  std::string summary() const;
};

// Non-strict: 2*delta_i <= sum. Strict: 2*delta_i < sum, the inequality as stated in the
// main theorem. The non-strict form is what makes equal-degree pairs work.
enum class DegreeMode { kNonStrict, kStrict };

struct ExtendOptions {
  DegreeMode degree_mode = DegreeMode::kNonStrict;
};

// Entries must form a matching of product edges, pairwise at distance >= min_distance,
// with colors below palette. Shared by every algorithm.
void check_precoloring(std::span<const SimpleGraph> factors, const Precoloring& pre,
                       Color palette, std::size_t min_distance, HypothesisReport& report);

HypothesisReport check_hypotheses(std::span<const Factor> factors, const Precoloring& pre,
                                  DegreeMode mode = DegreeMode::kNonStrict);

// A perfect pairing of colors where no pair stays inside one band.
class ColorPairing {
 public:
  ColorPairing() = default;
  explicit ColorPairing(std::vector<Color> partner) : partner_(std::move(partner)) {}

  Color partner(Color c) const { return partner_.at(c); }
  std::size_t size() const { return partner_.size(); }
  std::vector<std::pair<Color, Color>> pairs() const;
  // Both colors of the pair holding c, smaller first.
  std::pair<Color, Color> pair_of(Color c) const;

 private:
  std::vector<Color> partner_;
};

// Band b owns colors [sum of earlier sizes, ... + band_sizes[b]). Repeatedly pairs one color
// from each of the two largest remaining bands. Throws HypothesisError when the total is odd
// or some band exceeds half of it.
ColorPairing pair_colors(std::span<const std::size_t> band_sizes);

// Edges claimed by the bricks and squares applied so far. Any second claim is a bug.
class EdgeClaims {
 public:
  void claim(const ProductEdge& e, const std::string& owner);
  bool claimed(const ProductEdge& e) const { return owners_.contains(e); }
  std::size_t size() const { return owners_.size(); }

 private:
  std::map<ProductEdge, std::string> owners_;
};

// The square STEP 1 would rotate for (e, prescribed).
Square step1_square(const ProductSpace& space, const ProductEdge& e, Color prescribed);

// Prescribed color from another band: one rotation on e x (x_l, z).
void step1(SparseColoring& c, const ProductEdge& e, Color prescribed);

// Prescribed color from e's own band: three rotations inside the selected brick.
void step2(SparseColoring& c, const BrickNeighborhood& brick, Color prescribed,
           EdgeClaims* claims = nullptr);

enum class EntryKind { kAlreadyCorrect, kStep1, kStep2 };

EntryKind classify_entry(const ProductSpace& space, const PrecoloredEdge& entry);

// One brick per STEP 2 entry, keyed by the entry's index in pre.entries. Asserts the bricks
// are pairwise edge-disjoint.
std::map<std::size_t, BrickNeighborhood> select_bricks(const ProductSpace& space,
                                                       const Precoloring& pre,
                                                       const ColorPairing& pairing);

struct ExtensionStats {
  std::size_t already_correct = 0;
  std::size_t step1 = 0;
  std::size_t step2 = 0;
  std::size_t rotations = 0;
  std::size_t components = 0;
  // Odd x odd torus repairs.
  std::size_t fifth_color_repairs = 0;
  std::size_t corner_repairs = 0;
  std::size_t corner_local_search = 0;  // fallback recolorings of the corner neighborhood
};

struct ExtensionResult {
  ProductColoring coloring;
  // Edges whose color differs from the algorithm's baseline (canonical) coloring.
  std::vector<ProductEdge> diff;
  // Every original edge the algorithm was allowed to recolor: selected bricks, STEP 1
  // squares and repair loci. Empty for the list-coloring reductions, which recolor freely.
  std::set<ProductEdge> loci;
  ExtensionStats stats;
  std::string method;
};

ExtensionResult extend(std::span<const Factor> factors, const Precoloring& pre,
                       const ExtendOptions& options = {});

// Working-state variant for callers that keep rotating afterwards (the odd x odd torus).
struct EngineRun {
  SparseColoring coloring;
  std::map<std::size_t, BrickNeighborhood> bricks;
  std::vector<Square> step1_squares;
  ExtensionStats stats;
};

EngineRun run_engine(std::shared_ptr<const ProductSpace> space, const Precoloring& pre);

// Restricts a working coloring to the original product.
ProductColoring restrict_to_original(const SparseColoring& c);

}  // namespace pcext
