#include <algorithm>
#include <map>

#include "pcext/errors.hpp"
#include "pcext/oracle.hpp"

namespace pcext {

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kImproper:
      return "improper";
    case ViolationKind::kPalette:
      return "palette";
    case ViolationKind::kPrescription:
      return "prescription";
    case ViolationKind::kMissing:
      return "missing";
  }
  return "unknown";
}

std::string VerificationReport::summary() const {
  if (ok()) return "ok";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += to_string(v.kind) + " at " + v.locus;
  }
  return out;
}

VerificationReport verify(const SimpleGraph& g, std::span<const std::pair<Edge, Color>> pre,
                          const EdgeColoring& coloring, Color palette) {
  VerificationReport r;
  for (const Edge& e : g.edges()) {
    auto c = coloring.color_of(e);
    if (!c) {
      r.proper = false;
      r.violations.push_back({to_string(e), ViolationKind::kMissing});
    } else if (*c >= palette) {
      r.palette_ok = false;
      r.violations.push_back({to_string(e), ViolationKind::kPalette});
    }
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    std::map<Color, Vertex> seen;
    for (Vertex w : g.neighbors(v)) {
      auto c = coloring.color_of(Edge(v, w));
      if (!c) continue;
      auto [it, fresh] = seen.emplace(*c, w);
      if (!fresh) {
        r.proper = false;
        r.violations.push_back({"vertex " + std::to_string(v) + ": " + to_string(Edge(v, it->second)) +
                                    " and " + to_string(Edge(v, w)),
                                ViolationKind::kImproper});
      }
    }
  }
  for (const auto& [e, want] : pre) {
    if (coloring.color_of(e) != want) {
      r.prescriptions_ok = false;
      r.violations.push_back({to_string(e), ViolationKind::kPrescription});
    }
  }
  return r;
}

VerificationReport verify(const ProductColoring& coloring, const Precoloring& pre, Color palette) {
  VerificationReport r;
  if (coloring.palette() > palette) {
    r.palette_ok = false;
    r.violations.push_back({"declared palette " + std::to_string(coloring.palette()) + " > " +
                                std::to_string(palette),
                            ViolationKind::kPalette});
  }
  const auto& factors = coloring.factors();
  // Properness is checked from the tail and head of every edge: each vertex sees its incident
  // edges grouped by color.
  std::map<Coords, std::map<Color, ProductEdge>> at_vertex;
  auto note = [&](const Coords& v, const ProductEdge& e, Color c) {
    auto [it, fresh] = at_vertex[v].emplace(c, e);
    if (!fresh) {
      r.proper = false;
      r.violations.push_back({"vertex " + to_string(v) + ": " + to_string(it->second) + " and " +
                                  to_string(e),
                              ViolationKind::kImproper});
    }
  };
  for_each_product_edge(factors, [&](const ProductEdge& e) {
    const Color c = coloring.color_of(e);
    if (c >= palette) {
      r.palette_ok = false;
      r.violations.push_back({to_string(e), ViolationKind::kPalette});
    }
    note(e.tail(), e, c);
    note(e.head(), e, c);
  });
  for (const auto& entry : pre.entries) {
    if (!coloring.contains(entry.edge)) {
      r.prescriptions_ok = false;
      r.violations.push_back({to_string(entry.edge), ViolationKind::kMissing});
    } else if (coloring.color_of(entry.edge) != entry.color) {
      r.prescriptions_ok = false;
      r.violations.push_back({to_string(entry.edge), ViolationKind::kPrescription});
    }
  }
  return r;
}

}  // namespace pcext
