#include "pcext/instance.hpp"

#include <fstream>

#include "pcext/errors.hpp"
#include "pcext/special_cases.hpp"

namespace pcext {

using nlohmann::json;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::kAuto:
      return "auto";
    case Mode::kGeneral:
      return "general";
    case Mode::kK2:
      return "k2";
    case Mode::kK2Power:
      return "k2_power";
    case Mode::kOddCycleK2:
      return "odd_cycle_k2";
    case Mode::kOddOdd:
      return "odd_odd";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(const std::string& s) {
  for (Mode m : {Mode::kAuto, Mode::kGeneral, Mode::kK2, Mode::kK2Power, Mode::kOddCycleK2,
                 Mode::kOddOdd}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::vector<SimpleGraph> Instance::graphs() const {
  std::vector<SimpleGraph> out;
  for (const auto& f : factors) out.push_back(f.graph);
  return out;
}

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InvalidInput(where + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

bool is_label(const json& j) { return j.is_string() || j.is_number_integer(); }

Color color_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw InvalidInput(where + ": colors are integers starting at 1");
  }
  return static_cast<Color>(j.get<long long>() - 1);
}

InstanceFactor parse_factor(const json& doc, std::size_t index) {
  const std::string where = "factor " + std::to_string(index);
  if (!doc.is_object()) throw InvalidInput(where + ": expected an object");
  InstanceFactor f;
  f.name = doc.value("name", "G" + std::to_string(index));
  std::map<std::string, Vertex> ids;
  auto intern = [&](const json& label) {
    if (!is_label(label)) throw InvalidInput(where + ": vertex labels are strings or integers");
    auto [it, fresh] = ids.emplace(label.dump(), static_cast<Vertex>(f.labels.size()));
    if (fresh) f.labels.push_back(label);
    return it->second;
  };
  const bool declared = doc.contains("vertices");
  if (declared) {
    if (!doc["vertices"].is_array()) throw InvalidInput(where + ": \"vertices\" must be an array");
    for (const auto& label : doc["vertices"]) {
      if (ids.contains(label.dump())) throw InvalidInput(where + ": duplicate vertex " + label.dump());
      intern(label);
    }
  }
  const json& edges = member(doc, "edges", where);
  if (!edges.is_array()) throw InvalidInput(where + ": \"edges\" must be an array");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput(where + ": edges are label pairs");
    for (const auto& label : e) {
      if (declared && !ids.contains(label.dump())) {
        throw InvalidInput(where + ": unknown vertex " + label.dump());
      }
    }
    const Vertex u = intern(e[0]);
    const Vertex v = intern(e[1]);
    pairs.emplace_back(u, v);
  }
  f.graph = SimpleGraph(f.labels.size());
  try {
    for (const auto& [u, v] : pairs) f.graph.add_edge(u, v);
  } catch (const InvalidInput& err) {
    throw InvalidInput(where + ": " + err.what());
  }
  if (doc.contains("coloring")) {
    const json& colors = doc["coloring"];
    if (!colors.is_array() || colors.size() != pairs.size()) {
      throw InvalidInput(where + ": \"coloring\" needs one color per edge");
    }
    EdgeColoring c;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const Color col = color_from_json(colors[i], where);
      c.assignment[Edge(pairs[i].first, pairs[i].second)] = col;
      c.palette_size = std::max<Color>(c.palette_size, col + 1);
    }
    f.coloring = std::move(c);
  }
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) throw InvalidInput(where + ": \"family\" must be a string");
    f.family = parse_family(doc["family"].get<std::string>());
    if (!f.family) throw InvalidInput(where + ": unknown family " + doc["family"].dump());
  }
  return f;
}

Factor to_factor(const InstanceFactor& f) {
  const FactorFamily family = f.family.value_or(FactorFamily::kUserSupplied);
  if (f.coloring) return validate_factor(f.graph, *f.coloring, family);
  if (f.family == FactorFamily::kEvenCycle) return even_cycle_factor(f.graph);
  if (structure_report(f.graph).is_bipartite) return bipartite_factor(f.graph);
  throw InvalidInput("factor " + f.name + " is not bipartite and has no coloring");
}

bool is_k2(const SimpleGraph& g) { return g.order() == 2 && g.size() == 1; }

bool is_cycle(const SimpleGraph& g) {
  return g.order() >= 3 && g.size() == g.order() && g.min_degree() == 2 && g.max_degree() == 2 &&
         structure_report(g).component_count == 1;
}

bool is_odd_cycle(const SimpleGraph& g) { return is_cycle(g) && g.order() % 2 == 1; }

// Positions of the vertices along the cycle, starting at 0 toward its smaller neighbor.
std::vector<Vertex> cycle_positions(const SimpleGraph& g) {
  std::vector<Vertex> pos(g.order());
  Vertex prev = 0;
  auto nb = g.neighbors(0);
  Vertex cur = std::min(nb[0], nb[1]);
  for (Vertex t = 1; cur != 0; ++t) {
    pos[cur] = t;
    auto n2 = g.neighbors(cur);
    const Vertex next = n2[0] == prev ? n2[1] : n2[0];
    prev = cur;
    cur = next;
  }
  return pos;
}

ProductEdge map_edge(const ProductEdge& e, const std::vector<std::vector<Vertex>>& maps) {
  Coords a = e.tail();
  Coords b = e.head();
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = maps[i][a[i]];
    b[i] = maps[i][b[i]];
  }
  return ProductEdge::between(a, b);
}

// Moves a result computed on relabeled factors back to the instance's graphs.
// `forward[i]` maps instance vertex ids of axis i to the relabeled ids.
ExtensionResult transport(const ExtensionResult& r, const std::vector<SimpleGraph>& graphs,
                          const std::vector<std::vector<Vertex>>& forward) {
  std::vector<std::vector<Vertex>> backward(forward.size());
  for (std::size_t i = 0; i < forward.size(); ++i) {
    backward[i].resize(forward[i].size());
    for (Vertex v = 0; v < forward[i].size(); ++v) backward[i][forward[i][v]] = v;
  }
  std::vector<std::vector<Color>> axis_colors(graphs.size());
  for (std::size_t axis = 0; axis < graphs.size(); ++axis) {
    for (const Edge& e : graphs[axis].edges()) {
      const ProductEdge pe(Coords(graphs.size(), 0), axis, e);
      axis_colors[axis].push_back(r.coloring.baseline_color(map_edge(pe, forward)));
    }
  }
  ExtensionResult out;
  out.coloring = ProductColoring(graphs, axis_colors, r.coloring.palette());
  for (const auto& [e, c] : r.coloring.overrides()) out.coloring.set_color(map_edge(e, backward), c);
  out.diff = out.coloring.diff();
  for (const auto& e : r.loci) out.loci.insert(map_edge(e, backward));
  out.stats = r.stats;
  out.method = r.method;
  return out;
}

Precoloring map_precoloring(const Precoloring& pre, const std::vector<std::vector<Vertex>>& maps) {
  Precoloring out{{}, pre.palette};
  for (const auto& entry : pre.entries) out.entries.push_back({map_edge(entry.edge, maps), entry.color});
  return out;
}

json edge_to_json(const Instance& inst, const ProductEdge& e, Color c) {
  return json{{"from", coords_to_json(inst, e.tail())},
              {"to", coords_to_json(inst, e.head())},
              {"color", c + 1}};
}

}  // namespace

Instance parse_instance(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("instance: expected an object");
  const json& factors = member(doc, "factors", "instance");
  if (!factors.is_array() || factors.empty()) {
    throw InvalidInput("instance: \"factors\" must be a nonempty array");
  }
  Instance inst;
  for (std::size_t i = 0; i < factors.size(); ++i) inst.factors.push_back(parse_factor(factors[i], i));
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw InvalidInput("instance: \"mode\" must be a string");
    auto m = parse_mode(doc["mode"].get<std::string>());
    if (!m) throw InvalidInput("instance: unknown mode " + doc["mode"].dump());
    inst.mode = *m;
  }
  if (doc.contains("precoloring")) {
    const json& pre = doc["precoloring"];
    if (!pre.is_array()) throw InvalidInput("instance: \"precoloring\" must be an array");
    const auto graphs = inst.graphs();
    for (std::size_t i = 0; i < pre.size(); ++i) {
      const std::string where = "precoloring entry " + std::to_string(i);
      const Coords from = coords_from_json(inst, member(pre[i], "from", where));
      const Coords to = coords_from_json(inst, member(pre[i], "to", where));
      ProductEdge e;
      try {
        e = ProductEdge::between(from, to);
      } catch (const InvalidInput& err) {
        throw InvalidInput(where + ": " + err.what());
      }
      if (!product_contains(graphs, e)) throw InvalidInput(where + ": not an edge of the product");
      inst.pre.entries.push_back({e, color_from_json(member(pre[i], "color", where), where)});
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw InvalidInput(path + ": " + err.what());
  }
  return parse_instance(doc);
}

json to_json(const Instance& inst) {
  json doc;
  doc["factors"] = json::array();
  for (const auto& f : inst.factors) {
    json jf;
    jf["name"] = f.name;
    jf["vertices"] = f.labels;
    jf["edges"] = json::array();
    json colors = json::array();
    for (const Edge& e : f.graph.edges()) {
      jf["edges"].push_back(json::array({f.labels[e.u], f.labels[e.v]}));
      if (f.coloring) colors.push_back(f.coloring->assignment.at(e) + 1);
    }
    if (f.coloring) jf["coloring"] = colors;
    if (f.family) jf["family"] = to_string(*f.family);
    doc["factors"].push_back(std::move(jf));
  }
  doc["precoloring"] = json::array();
  for (const auto& entry : inst.pre.entries) {
    doc["precoloring"].push_back(edge_to_json(inst, entry.edge, entry.color));
  }
  doc["mode"] = to_string(inst.mode);
  return doc;
}

json coords_to_json(const Instance& inst, const Coords& c) {
  json out = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(inst.factors[i].labels.at(c[i]));
  return out;
}

Coords coords_from_json(const Instance& inst, const json& tuple) {
  if (!tuple.is_array() || tuple.size() != inst.factors.size()) {
    throw InvalidInput("vertex tuples need one label per factor");
  }
  Coords c;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const auto& labels = inst.factors[i].labels;
    auto it = std::find(labels.begin(), labels.end(), tuple[i]);
    if (it == labels.end()) {
      throw InvalidInput("unknown vertex " + tuple[i].dump() + " in factor " + inst.factors[i].name);
    }
    c.push_back(static_cast<Vertex>(it - labels.begin()));
  }
  return c;
}

Mode resolve_mode(const Instance& inst, Mode requested, const ExtendOptions& options) {
  if (requested == Mode::kAuto) requested = inst.mode;
  if (requested != Mode::kAuto) return requested;
  const auto graphs = inst.graphs();
  if (graphs.size() == 2 && is_odd_cycle(graphs[0]) && is_odd_cycle(graphs[1])) return Mode::kOddOdd;
  bool rest_k2 = graphs.size() >= 2;
  for (std::size_t i = 1; i < graphs.size(); ++i) rest_k2 = rest_k2 && is_k2(graphs[i]);
  if (rest_k2 && graphs.size() == 2) {
    if (is_odd_cycle(graphs[0])) return Mode::kOddCycleK2;
    if (structure_report(graphs[0]).is_bipartite) return Mode::kK2;
  }
  if (rest_k2 && structure_report(graphs[0]).is_bipartite) {
    try {
      std::vector<Factor> fs;
      for (const auto& f : inst.factors) fs.push_back(to_factor(f));
      if (check_hypotheses(fs, inst.pre, options.degree_mode).ok()) return Mode::kGeneral;
    } catch (const InvalidInput&) {
    }
    return Mode::kK2Power;
  }
  return Mode::kGeneral;
}

Color palette_for(const Instance& inst, Mode mode) {
  const auto graphs = inst.graphs();
  switch (mode) {
    case Mode::kOddOdd:
      return 5;
    case Mode::kOddCycleK2:
      return 3;
    case Mode::kK2:
      return static_cast<Color>(graphs[0].max_degree() + 1);
    case Mode::kK2Power:
      return static_cast<Color>(graphs[0].max_degree() + graphs.size() - 1);
    case Mode::kGeneral:
    case Mode::kAuto:
      break;
  }
  Color total = 0;
  for (const auto& g : graphs) total += static_cast<Color>(g.max_degree());
  return total;
}

Solution solve(const Instance& inst, Mode mode, const ExtendOptions& options) {
  Solution s;
  s.mode = resolve_mode(inst, mode, options);
  s.palette = palette_for(inst, s.mode);
  const auto graphs = inst.graphs();
  Precoloring pre = inst.pre;
  pre.palette = s.palette;

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) {
      throw HypothesisError(to_string(HypothesisKind::kShape) + ": mode " + to_string(s.mode) +
                            " needs " + what);
    }
  };
  auto k2_tail = [&]() {
    for (std::size_t i = 1; i < graphs.size(); ++i)
      if (!is_k2(graphs[i])) return false;
    return true;
  };

  switch (s.mode) {
    case Mode::kAuto:
    case Mode::kGeneral: {
      std::vector<Factor> fs;
      for (const auto& f : inst.factors) fs.push_back(to_factor(f));
      s.result = extend(fs, pre, options);
      break;
    }
    case Mode::kK2:
      need(graphs.size() == 2 && is_k2(graphs[1]), "a factor followed by K2");
      s.result = extend_bipartite_k2(graphs[0], pre, inst.factors[0].coloring);
      break;
    case Mode::kK2Power:
      need(graphs.size() >= 1 && k2_tail(), "a factor followed only by K2 factors");
      s.result = extend_k2_power(graphs[0], graphs.size() - 1, pre);
      break;
    case Mode::kOddCycleK2:
      need(graphs.size() == 2 && is_odd_cycle(graphs[0]) && is_k2(graphs[1]),
           "an odd cycle followed by K2");
      s.result = extend_odd_cycle_k2(graphs[0], pre);
      break;
    case Mode::kOddOdd: {
      need(graphs.size() == 2 && is_odd_cycle(graphs[0]) && is_odd_cycle(graphs[1]),
           "two odd cycles");
      const std::vector<std::vector<Vertex>> forward{cycle_positions(graphs[0]),
                                                     cycle_positions(graphs[1])};
      const TorusInstance torus{(graphs[0].order() - 1) / 2, (graphs[1].order() - 1) / 2};
      ExtensionResult r = extend_odd_odd(torus, map_precoloring(pre, forward));
      s.result = transport(r, graphs, forward);
      break;
    }
  }
  s.verification = verify(s.result.coloring, pre, s.palette);
  return s;
}

json solution_to_json(const Instance& inst, const Solution& s, bool diff_only) {
  json doc;
  doc["mode"] = to_string(s.mode);
  doc["method"] = s.result.method;
  doc["palette"] = s.palette;
  json violations = json::array();
  for (const auto& v : s.verification.violations) {
    violations.push_back({{"locus", v.locus}, {"kind", to_string(v.kind)}});
  }
  doc["verification"] = {{"ok", s.verification.ok()},
                         {"proper", s.verification.proper},
                         {"palette_ok", s.verification.palette_ok},
                         {"prescriptions_ok", s.verification.prescriptions_ok},
                         {"violations", violations}};
  const auto& st = s.result.stats;
  doc["stats"] = {{"already_correct", st.already_correct},
                  {"step1", st.step1},
                  {"step2", st.step2},
                  {"rotations", st.rotations},
                  {"components", st.components},
                  {"fifth_color_repairs", st.fifth_color_repairs},
                  {"corner_repairs", st.corner_repairs},
                  {"corner_local_search", st.corner_local_search}};
  doc["diff"] = json::array();
  for (const auto& e : s.result.diff) {
    doc["diff"].push_back(edge_to_json(inst, e, s.result.coloring.color_of(e)));
  }
  if (!diff_only) {
    doc["coloring"] = json::array();
    for_each_product_edge(s.result.coloring.factors(), [&](const ProductEdge& e) {
      doc["coloring"].push_back(edge_to_json(inst, e, s.result.coloring.color_of(e)));
    });
  }
  return doc;
}

VerificationReport verify_document(const Instance& inst, const json& coloring_doc, Mode mode,
                                   const ExtendOptions& options) {
  const Color palette = palette_for(inst, resolve_mode(inst, mode, options));
  const json& entries = member(coloring_doc, "coloring", "coloring document");
  if (!entries.is_array()) throw InvalidInput("coloring document: \"coloring\" must be an array");
  const auto graphs = inst.graphs();
  MaterializedProduct mp(graphs);
  EdgeColoring coloring;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "coloring entry " + std::to_string(i);
    const ProductEdge e = ProductEdge::between(coords_from_json(inst, member(entries[i], "from", where)),
                                               coords_from_json(inst, member(entries[i], "to", where)));
    if (!product_contains(graphs, e)) throw InvalidInput(where + ": not an edge of the product");
    const Color c = color_from_json(member(entries[i], "color", where), where);
    coloring.assignment[mp.edge_of(e)] = c;
    coloring.palette_size = std::max<Color>(coloring.palette_size, c + 1);
  }
  VerificationReport report =
      verify(mp.graph(), materialize_precoloring(mp, inst.pre), coloring, palette);
  if (coloring_doc.contains("palette")) {
    const json& declared = coloring_doc["palette"];
    if (!declared.is_number_integer()) throw InvalidInput("coloring document: bad \"palette\"");
    if (declared.get<long long>() > static_cast<long long>(palette)) {
      report.palette_ok = false;
      report.violations.push_back({"declared palette " + declared.dump() + " > " +
                                       std::to_string(palette),
                                   ViolationKind::kPalette});
    }
  }
  return report;
}

}  // namespace pcext
