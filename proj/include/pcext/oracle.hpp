#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcext/extension.hpp"
#include "pcext/graph.hpp"
#include "pcext/product.hpp"

namespace pcext {

enum class ViolationKind { kImproper, kPalette, kPrescription, kMissing };

std::string to_string(ViolationKind k);

struct Violation {
  std::string locus;
  ViolationKind kind;
};

struct VerificationReport {
  bool proper = true;
  bool palette_ok = true;
  bool prescriptions_ok = true;
  std::vector<Violation> violations;

  bool ok() const { return proper && palette_ok && prescriptions_ok; }
  std::string summary() const;
};

// Exhaustive check of properness, the palette bound and every prescription.
VerificationReport verify(const SimpleGraph& g, std::span<const std::pair<Edge, Color>> pre,
                          const EdgeColoring& coloring, Color palette);
VerificationReport verify(const ProductColoring& coloring, const Precoloring& pre, Color palette);

enum class OracleStatus { kExtendable, kUnextendable, kBudgetExhausted };

std::string to_string(OracleStatus s);

struct OracleResult {
  OracleStatus status = OracleStatus::kBudgetExhausted;
  // Aligned with g.edges() when extendable.
  std::optional<std::vector<Color>> coloring;
  std::uint64_t nodes = 0;
};

// Exact backtracking extender. Edges go in order of descending endpoint-degree sum, then
// lexicographically; forward checking keeps every open edge with a nonempty domain.
// `budget` caps the number of search nodes.
OracleResult brute_force_extend(const SimpleGraph& g, std::span<const std::pair<Edge, Color>> pre,
                                Color num_colors, std::uint64_t budget);

// Materializes a product precoloring for the oracle.
std::vector<std::pair<Edge, Color>> materialize_precoloring(const MaterializedProduct& product,
                                                            const Precoloring& pre);

}  // namespace pcext
