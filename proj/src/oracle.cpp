#include <algorithm>
#include <bit>

#include "pcext/errors.hpp"
#include "pcext/oracle.hpp"

namespace pcext {

std::string to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::kExtendable:
      return "extendable";
    case OracleStatus::kUnextendable:
      return "unextendable";
    case OracleStatus::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

namespace {

using Mask = std::uint64_t;

class Backtracker {
 public:
  Backtracker(const SimpleGraph& g, Color colors, std::uint64_t budget)
      : g_(g), colors_(colors), budget_(budget), full_(colors == 64 ? ~Mask{0} : (Mask{1} << colors) - 1) {
    used_.assign(g.order(), 0);
    open_degree_.assign(g.order(), 0);
    color_.assign(g.size(), kUncolored);
    lacking_.assign(colors, g.order());
    incident_.resize(g.order());
    for (std::size_t i = 0; i < g.size(); ++i) {
      incident_[g.edges()[i].u].push_back(i);
      incident_[g.edges()[i].v].push_back(i);
      ++open_degree_[g.edges()[i].u];
      ++open_degree_[g.edges()[i].v];
    }
    open_edges_ = g.size();
  }

  // False when the prescription clashes with what is already fixed.
  bool fix(std::size_t idx, Color c) {
    if (c >= colors_ || color_[idx] != kUncolored) return color_[idx] == c;
    const Edge& e = g_.edges()[idx];
    if (((used_[e.u] | used_[e.v]) >> c) & 1) return false;
    assign(idx, c);
    return true;
  }

  OracleResult run() {
    order_.clear();
    for (std::size_t i = 0; i < g_.size(); ++i)
      if (color_[i] == kUncolored) order_.push_back(i);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const Edge& ea = g_.edges()[a];
      const Edge& eb = g_.edges()[b];
      const std::size_t da = g_.degree(ea.u) + g_.degree(ea.v);
      const std::size_t db = g_.degree(eb.u) + g_.degree(eb.v);
      if (da != db) return da > db;
      return ea < eb;
    });
    OracleResult result;
    bool consistent = true;
    for (std::size_t idx : order_)
      if (domain(idx) == 0) consistent = false;
    const Outcome outcome = consistent && bounds_ok() ? search(0) : Outcome::kFail;
    result.nodes = nodes_;
    if (outcome == Outcome::kFound) {
      result.status = OracleStatus::kExtendable;
      result.coloring = std::vector<Color>(color_.begin(), color_.end());
    } else if (outcome == Outcome::kFail) {
      result.status = OracleStatus::kUnextendable;
    } else {
      result.status = OracleStatus::kBudgetExhausted;
    }
    return result;
  }

 private:
  static constexpr Color kUncolored = static_cast<Color>(-1);
  enum class Outcome { kFound, kFail, kOutOfBudget };

  Mask domain(std::size_t idx) const {
    const Edge& e = g_.edges()[idx];
    return full_ & ~(used_[e.u] | used_[e.v]);
  }

  void assign(std::size_t idx, Color c) {
    const Edge& e = g_.edges()[idx];
    color_[idx] = c;
    used_[e.u] |= Mask{1} << c;
    used_[e.v] |= Mask{1} << c;
    --open_degree_[e.u];
    --open_degree_[e.v];
    lacking_[c] -= 2;
    --open_edges_;
  }

  void unassign(std::size_t idx) {
    const Edge& e = g_.edges()[idx];
    const Color c = color_[idx];
    color_[idx] = kUncolored;
    used_[e.u] &= ~(Mask{1} << c);
    used_[e.v] &= ~(Mask{1} << c);
    ++open_degree_[e.u];
    ++open_degree_[e.v];
    lacking_[c] += 2;
    ++open_edges_;
  }

  // Each color class grows as a matching on the vertices still lacking that color.
  bool bounds_ok() const {
    std::size_t capacity = 0;
    for (Color c = 0; c < colors_; ++c) capacity += lacking_[c] / 2;
    return capacity >= open_edges_;
  }

  bool vertex_ok(Vertex v) const {
    return static_cast<std::size_t>(std::popcount(full_ & ~used_[v])) >= open_degree_[v];
  }

  bool forward_ok(std::size_t idx) const {
    const Edge& e = g_.edges()[idx];
    if (!vertex_ok(e.u) || !vertex_ok(e.v)) return false;
    for (Vertex end : {e.u, e.v}) {
      for (std::size_t other : incident_[end]) {
        if (color_[other] == kUncolored && domain(other) == 0) return false;
      }
    }
    return bounds_ok();
  }

  Outcome search(std::size_t pos) {
    while (pos < order_.size() && color_[order_[pos]] != kUncolored) ++pos;
    if (pos == order_.size()) return Outcome::kFound;
    const std::size_t idx = order_[pos];
    Mask options = domain(idx);
    while (options) {
      if (nodes_ >= budget_) return Outcome::kOutOfBudget;
      ++nodes_;
      const Color c = static_cast<Color>(std::countr_zero(options));
      options &= options - 1;
      assign(idx, c);
      if (forward_ok(idx)) {
        const Outcome sub = search(pos + 1);
        if (sub != Outcome::kFail) return sub;
      }
      unassign(idx);
    }
    return Outcome::kFail;
  }

  const SimpleGraph& g_;
  Color colors_;
  std::uint64_t budget_;
  Mask full_;
  std::uint64_t nodes_ = 0;
  std::vector<Mask> used_;
  std::vector<std::size_t> open_degree_;
  std::vector<Color> color_;
  std::vector<std::size_t> lacking_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> order_;
  std::size_t open_edges_ = 0;
};

}  // namespace

OracleResult brute_force_extend(const SimpleGraph& g, std::span<const std::pair<Edge, Color>> pre,
                                Color num_colors, std::uint64_t budget) {
  if (num_colors > 64) throw InvalidInput("the oracle supports at most 64 colors");
  Backtracker bt(g, num_colors, budget);
  for (const auto& [e, c] : pre) {
    if (!bt.fix(g.edge_index_or_throw(e), c)) {
      OracleResult r;
      r.status = OracleStatus::kUnextendable;
      return r;
    }
  }
  return bt.run();
}

std::vector<std::pair<Edge, Color>> materialize_precoloring(const MaterializedProduct& product,
                                                            const Precoloring& pre) {
  std::vector<std::pair<Edge, Color>> out;
  for (const auto& entry : pre.entries) out.emplace_back(product.edge_of(entry.edge), entry.color);
  return out;
}

}  // namespace pcext
