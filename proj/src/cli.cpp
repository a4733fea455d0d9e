#include "pcext/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcext/errors.hpp"
#include "pcext/fuzz.hpp"
#include "pcext/instance.hpp"

namespace pcext {

using nlohmann::json;

namespace {

struct Flags {
  std::string instance;
  std::string coloring;
  std::string mode = "auto";
  bool strict_degree = false;
  bool diff = false;
  int colors = 0;
  std::uint64_t budget = 10'000'000;
  std::string recipe;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string corpus;
};

Mode mode_flag(const Flags& f) {
  auto m = parse_mode(f.mode);
  if (!m) throw InvalidInput("unknown mode '" + f.mode + "'");
  return *m;
}

ExtendOptions options_flag(const Flags& f) {
  ExtendOptions o;
  o.degree_mode = f.strict_degree ? DegreeMode::kStrict : DegreeMode::kNonStrict;
  return o;
}

int cmd_extend(const Flags& f, std::ostream& out) {
  const Instance inst = load_instance(f.instance);
  const Solution s = solve(inst, mode_flag(f), options_flag(f));
  out << solution_to_json(inst, s, f.diff).dump(2) << '\n';
  return s.verification.ok() ? kExitOk : kExitVerification;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const Instance inst = load_instance(f.instance);
  std::ifstream in(f.coloring);
  if (!in) throw InvalidInput("cannot open " + f.coloring);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InvalidInput(f.coloring + ": " + e.what());
  }
  const VerificationReport r = verify_document(inst, doc, mode_flag(f), options_flag(f));
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"locus", v.locus}, {"kind", to_string(v.kind)}});
  out << json{{"ok", r.ok()},
              {"proper", r.proper},
              {"palette_ok", r.palette_ok},
              {"prescriptions_ok", r.prescriptions_ok},
              {"violations", violations}}
             .dump(2)
      << '\n';
  return r.ok() ? kExitOk : kExitVerification;
}

int cmd_oracle(const Flags& f, std::ostream& out) {
  const Instance inst = load_instance(f.instance);
  const Color colors = f.colors > 0
                           ? static_cast<Color>(f.colors)
                           : palette_for(inst, resolve_mode(inst, mode_flag(f), options_flag(f)));
  MaterializedProduct mp(inst.graphs());
  const OracleResult r =
      brute_force_extend(mp.graph(), materialize_precoloring(mp, inst.pre), colors, f.budget);
  json doc{{"status", to_string(r.status)}, {"colors", colors}, {"nodes", r.nodes}};
  if (r.coloring) {
    doc["coloring"] = json::array();
    const auto& edges = mp.graph().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const ProductEdge e = mp.product_edge(edges[i]);
      doc["coloring"].push_back({{"from", coords_to_json(inst, e.tail())},
                                 {"to", coords_to_json(inst, e.head())},
                                 {"color", (*r.coloring)[i] + 1}});
    }
  }
  out << doc.dump(2) << '\n';
  return r.status == OracleStatus::kBudgetExhausted ? kExitBudget : kExitOk;
}

int cmd_fuzz(const Flags& f, std::ostream& out) {
  const std::optional<std::string> corpus =
      f.corpus.empty() ? std::nullopt : std::optional<std::string>(f.corpus);
  const FuzzSummary s = fuzz(f.recipe, f.trials, f.seed, f.budget, corpus);
  out << "recipe " << f.recipe << '\n'
      << "trials " << s.trials << '\n'
      << "extended " << s.extended << '\n'
      << "unextendable " << s.unextendable << '\n'
      << "mismatches " << s.mismatches << '\n';
  for (const auto& c : s.cases) {
    if (c.outcome == FuzzOutcome::kMismatch || c.outcome == FuzzOutcome::kUnextendable) {
      out << to_string(c.outcome) << " seed " << c.seed;
      if (!c.detail.empty()) out << ": " << c.detail;
      out << '\n';
    }
  }
  return s.mismatches == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Precoloring extension for edge colorings of Cartesian products", "pcext"};
  app.require_subcommand(1);
  Flags f;

  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", f.mode, "general, k2, k2_power, odd_cycle_k2, odd_odd or auto");
    sub->add_flag("--strict-degree", f.strict_degree, "require 2*delta_i < sum of degrees");
  };

  CLI::App* extend_cmd = app.add_subcommand("extend", "extend the instance's precoloring");
  extend_cmd->add_option("instance", f.instance, "instance file")->required();
  extend_cmd->add_flag("--diff", f.diff, "print only the edges that differ from the canonical coloring");
  add_mode(extend_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check a coloring against an instance");
  verify_cmd->add_option("instance", f.instance, "instance file")->required();
  verify_cmd->add_option("coloring", f.coloring, "coloring file written by extend")->required();
  add_mode(verify_cmd);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact backtracking extension");
  oracle_cmd->add_option("instance", f.instance, "instance file")->required();
  oracle_cmd->add_option("--colors", f.colors, "number of colors (default: the mode's palette)");
  oracle_cmd->add_option("--budget", f.budget, "search node limit");
  add_mode(oracle_cmd);

  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "random cross-checks against the oracle");
  fuzz_cmd->add_option("--recipe", f.recipe, "one of: " + [] {
    std::string ids;
    for (const auto& id : fuzz_recipe_ids()) ids += (ids.empty() ? "" : ", ") + id;
    return ids;
  }())->required();
  fuzz_cmd->add_option("--trials", f.trials, "number of trials");
  fuzz_cmd->add_option("--seed", f.seed, "first seed");
  fuzz_cmd->add_option("--budget", f.budget, "oracle node limit per trial (0 disables the oracle)");
  fuzz_cmd->add_option("--corpus", f.corpus, "append notable seeds to this file");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*extend_cmd) return cmd_extend(f, out);
    if (*verify_cmd) return cmd_verify(f, out);
    if (*oracle_cmd) return cmd_oracle(f, out);
    return cmd_fuzz(f, out);
  } catch (const HypothesisError& e) {
    err << "hypothesis violation: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace pcext
