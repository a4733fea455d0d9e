#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcext/extension.hpp"
#include "pcext/oracle.hpp"

namespace pcext {

enum class Mode { kAuto, kGeneral, kK2, kK2Power, kOddCycleK2, kOddOdd };

std::string to_string(Mode m);
std::optional<Mode> parse_mode(const std::string& s);

struct InstanceFactor {
  std::string name;
  std::vector<nlohmann::json> labels;  // vertex id -> label as written in the file
  SimpleGraph graph;
  std::optional<EdgeColoring> coloring;
  std::optional<FactorFamily> family;
};

// A parsed instance file. Colors are 0-based here and 1-based in the file.
struct Instance {
  std::vector<InstanceFactor> factors;
  Precoloring pre;
  Mode mode = Mode::kAuto;

  std::vector<SimpleGraph> graphs() const;
};

// Throws InvalidInput on malformed documents, unknown labels or edges outside the product.
Instance parse_instance(const nlohmann::json& doc);
Instance load_instance(const std::string& path);
nlohmann::json to_json(const Instance& inst);

nlohmann::json coords_to_json(const Instance& inst, const Coords& c);
Coords coords_from_json(const Instance& inst, const nlohmann::json& tuple);

// The concrete algorithm auto mode picks, and the palette it promises.
Mode resolve_mode(const Instance& inst, Mode requested, const ExtendOptions& options);
Color palette_for(const Instance& inst, Mode mode);

struct Solution {
  Mode mode = Mode::kGeneral;
  Color palette = 0;
  ExtensionResult result;
  VerificationReport verification;
};

// Dispatches to the algorithm for `mode` (resolving kAuto) and verifies the output.
Solution solve(const Instance& inst, Mode mode, const ExtendOptions& options);

// Output document: palette, method, verification, diff and (unless diff_only) the coloring.
nlohmann::json solution_to_json(const Instance& inst, const Solution& s, bool diff_only);

// Reads a coloring document as written by solution_to_json and checks it against the
// instance with the palette the instance's mode promises.
VerificationReport verify_document(const Instance& inst, const nlohmann::json& coloring_doc,
                                   Mode mode, const ExtendOptions& options);

}  // namespace pcext
