#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "planrec/library.hpp"
#include "planrec/netbuild.hpp"

namespace planrec {

/// P(k|r)/P(k) on the three-node fragment e -> r <- k, where e is the slot
/// equality with prior p_e, k the slot filler having the type (prior p_k) and
/// r the observed entity having it (base rate p_r):
///   [p_e + (1 - p_e) p_r] / [p_e p_k + (1 - p_e) p_r]
double fragment_ratio(double p_e, double p_r, double p_k);

/// The literal fragment as a network: equality root, slot-type root with
/// prior p_k, entity-type child with the synthesized CPT. All arguments in (0,1)
/// except p_e, which may be 0 or 1.
BayesNet equality_fragment(double p_e, double p_r, double p_k);

/// fragment_ratio() computed by exact inference on equality_fragment().
double fragment_ratio_by_inference(double p_e, double p_r, double p_k);

/// Equality root (prior E) feeding a single Mention node.
BayesNet mention_fragment(double equality_prior, double mention_base, double mention_lift);

/// P(equality | mention) / P(equality) on mention_fragment(), by exact inference.
double fragment_mention_lift(double equality_prior, double mention_base, double mention_lift);

/// Measured lift the mention layer gives the lowest-id equality naming
/// `entity`: its posterior given the story evidence with mention nodes, over
/// the same posterior with the mention layer switched off. Requires mention
/// mode and E > 0.
double mention_lift(const PlanLibrary& lib, const Story& story, const Config& cfg, std::string_view entity);

struct SweepRow {
  double equality_prior = 0.0;
  std::string query;
  double posterior = 0.0;
};

/// Rebuilds the story network at each E of `grid` (in [0,1], strictly
/// increasing) and reports the posterior of the plan-instance node `query`.
std::vector<SweepRow> sweep_equality_prior(const PlanLibrary& lib, const Story& story, const Config& base,
                                           const std::vector<double>& grid, std::string_view query);

struct ModePreset {
  std::string name;
  Config config;
};

/// "life": E = 1e-5, mention off, lambda = 1e-7.
/// "story": E = 1e-5, mention on, m0 = 1e-3, k = 500, lambda = 1e-10.
ModePreset preset(std::string_view name);
/// Life settings with a caller-chosen E.
ModePreset knob_preset(double equality_prior);

struct Recognition {
  std::string label;
  std::string kind;  // "plan" or "equality"
  double posterior = 0.0;
};

/// Posteriors of every plan-instance and equality node, sorted by label.
std::vector<Recognition> recognize(const BayesNet& net);

}  // namespace planrec
