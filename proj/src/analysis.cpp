#include "planrec/analysis.hpp"

#include <algorithm>
#include <optional>

#include "planrec/infer.hpp"

namespace planrec {

double fragment_ratio(double p_e, double p_r, double p_k) {
  for (double v : {p_e, p_r, p_k})
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("fragment probabilities must lie in [0, 1]");
  const double num = p_e + (1.0 - p_e) * p_r;
  const double den = p_e * p_k + (1.0 - p_e) * p_r;
  if (!(den > 0.0)) throw ValidationError("fragment ratio undefined: P(r) is zero");
  return num / den;
}

BayesNet equality_fragment(double p_e, double p_r, double p_k) {
  const PlanLibrary lib = PlanLibrary::Builder().type("filler", p_r).build();
  Config cfg;
  cfg.equality_prior = p_e;

  const SlotTerm term{0, "slot-of"};
  std::vector<Node> nodes;
  nodes.push_back(Node{0, EqualityNode{term, "r"}, "e", {}, Factor()});
  nodes[0].cpt = synth_cpt(nodes[0], nodes, lib, cfg);
  nodes.push_back(Node{1, SlotTypeNode{term, "filler"}, "k", {}, Factor::from_conditional({}, 1, std::vector{p_k})});
  nodes.push_back(Node{2, EntityTypeNode{"r", "filler"}, "r", {0, 1}, Factor()});
  nodes[2].cpt = synth_cpt(nodes[2], nodes, lib, cfg);
  BayesNet net;
  for (auto& n : nodes) net.add_node(n.kind, n.label, n.parents, n.cpt);
  return net;
}

double fragment_ratio_by_inference(double p_e, double p_r, double p_k) {
  const BayesNet net = equality_fragment(p_e, p_r, p_k);
  const double prior = posterior(net, {}, 1);
  const double post = posterior(net, {{2, true}}, 1);
  return post / prior;
}

BayesNet mention_fragment(double equality_prior, double mention_base, double mention_lift) {
  Config cfg;
  cfg.equality_prior = equality_prior;
  cfg.mention_base = mention_base;
  cfg.mention_lift = mention_lift;
  if (!(equality_prior >= 0.0 && equality_prior <= 1.0) || !(mention_base > 0.0 && mention_base < 1.0) ||
      !(mention_lift > 0.0) || mention_lift * mention_base > 1.0)
    throw ValidationError("mention fragment needs E in [0,1], m0 in (0,1), k > 0 and k*m0 <= 1");
  const PlanLibrary lib;

  std::vector<Node> nodes;
  nodes.push_back(Node{0, EqualityNode{SlotTerm{0, "slot-of"}, "x"}, "e", {}, Factor()});
  nodes[0].cpt = synth_cpt(nodes[0], nodes, lib, cfg);
  nodes.push_back(Node{1, MentionNode{"x"}, "(mention x)", {0}, Factor()});
  nodes[1].cpt = synth_cpt(nodes[1], nodes, lib, cfg);
  BayesNet net;
  for (auto& n : nodes) net.add_node(n.kind, n.label, n.parents, n.cpt);
  return net;
}

double fragment_mention_lift(double equality_prior, double mention_base, double mention_lift) {
  const BayesNet net = mention_fragment(equality_prior, mention_base, mention_lift);
  return posterior(net, {{1, true}}, 0) / posterior(net, {}, 0);
}

double mention_lift(const PlanLibrary& lib, const Story& story, const Config& cfg, std::string_view entity) {
  if (!cfg.mention_enabled) throw ValidationError("mention lift requires mention mode");
  if (!(cfg.equality_prior > 0.0)) throw ValidationError("mention lift requires a positive equality prior");
  const bool known = std::any_of(story.tokens.begin(), story.tokens.end(),
                                 [&](const Token& t) { return t.entity == entity; });
  if (!known) throw ValidationError("unknown entity '" + std::string(entity) + "'");
  const BayesNet with = build_network(lib, story, cfg);
  Config plain = cfg;
  plain.mention_enabled = false;
  const BayesNet without = build_network(lib, story, plain);
  for (NodeId id : with.ids_of<EqualityNode>()) {
    if (std::get<EqualityNode>(with.node(id).kind).entity != entity) continue;
    const NodeId same = *without.find(with.node(id).label);
    return posterior(with, with.evidence(), id) / posterior(without, without.evidence(), same);
  }
  throw ValidationError("entity '" + std::string(entity) + "' has no equality hypotheses");
}

std::vector<SweepRow> sweep_equality_prior(const PlanLibrary& lib, const Story& story, const Config& base,
                                           const std::vector<double>& grid, std::string_view query) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw ValidationError("sweep grid values must lie in [0, 1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("sweep grid must be strictly increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double e : grid) {
    Config cfg = base;
    cfg.equality_prior = e;
    const BayesNet net = build_network(lib, story, cfg);
    std::optional<NodeId> target;
    for (NodeId id : net.ids_of<PlanInstanceNode>())
      if (net.node(id).label == query) target = id;
    if (!target) {
      std::string available;
      for (NodeId id : net.ids_of<PlanInstanceNode>()) available += (available.empty() ? "" : ", ") + net.node(id).label;
      throw ValidationError("query '" + std::string(query) + "' matches no plan instance; available: " +
                            (available.empty() ? "(none)" : available));
    }
    rows.push_back({e, std::string(query), posterior(net, net.evidence(), *target)});
  }
  return rows;
}

ModePreset preset(std::string_view name) {
  Config cfg;
  cfg.equality_prior = 1e-5;
  if (name == "life") {
    cfg.mention_enabled = false;
    cfg.word_leak = 1e-7;
    return {"life", cfg};
  }
  if (name == "story") {
    cfg.mention_enabled = true;
    cfg.mention_base = 1e-3;
    cfg.mention_lift = 500.0;
    cfg.word_leak = 1e-10;
    return {"story", cfg};
  }
  throw ValidationError("unknown mode preset '" + std::string(name) + "' (expected life or story)");
}

ModePreset knob_preset(double equality_prior) {
  ModePreset p = preset("life");
  p.name = "knob";
  p.config.equality_prior = equality_prior;
  return p;
}

std::vector<Recognition> recognize(const BayesNet& net) {
  std::vector<Recognition> out;
  for (NodeId id : net.ids_of<PlanInstanceNode>())
    out.push_back({net.node(id).label, "plan", posterior(net, net.evidence(), id)});
  for (NodeId id : net.ids_of<EqualityNode>())
    out.push_back({net.node(id).label, "equality", posterior(net, net.evidence(), id)});
  std::sort(out.begin(), out.end(), [](const Recognition& a, const Recognition& b) { return a.label < b.label; });
  return out;
}

}  // namespace planrec
