#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "planrec/factor.hpp"

namespace planrec {

/// A slot applied to a plan instance, e.g. (rope-of k1). Denotes whatever
/// fills the slot, whether or not that is an observed entity.
struct SlotTerm {
  NodeId instance = 0;  // the PlanInstance node
  std::string slot;
  friend bool operator==(const SlotTerm&, const SlotTerm&) = default;
};

/// (type entity): the entity introduced by a token has this type.
struct EntityTypeNode {
  std::string entity;
  std::string type;
};

/// (schema entity): the entity is an instance of this plan schema.
struct PlanInstanceNode {
  std::string entity;
  std::string schema;
};

/// (type (slot entity)): the slot filler has its restriction type.
struct SlotTypeNode {
  SlotTerm term;
  std::string type;
};

/// (= (slot instance) entity)
struct EqualityNode {
  SlotTerm term;
  std::string entity;
};

/// The observed use of a word for an entity.
struct WordNode {
  std::size_t token = 0;
  std::string word;
  std::string entity;
};

/// The author chose to mention the entity.
struct MentionNode {
  std::string entity;
};

/// At most one equality for a slot term holds; always observed true.
struct SlotExclusivityNode {
  SlotTerm term;
};

using NodeKind = std::variant<EntityTypeNode, PlanInstanceNode, SlotTypeNode, EqualityNode, WordNode, MentionNode,
                              SlotExclusivityNode>;

std::string_view kind_name(const NodeKind& kind);

struct Node {
  NodeId id = 0;
  NodeKind kind;
  std::string label;
  std::vector<NodeId> parents;
  Factor cpt;  // scope: parents..., id
};

using Evidence = std::map<NodeId, bool>;

/// Boolean Bayesian network. Node ids are dense indices into nodes().
class BayesNet {
 public:
  BayesNet() = default;
  BayesNet(std::vector<Node> nodes, Evidence evidence);

  /// Appends a node whose parents already exist; returns its id.
  NodeId add_node(NodeKind kind, std::string label, std::vector<NodeId> parents, Factor cpt);
  void set_evidence(NodeId id, bool value);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Evidence& evidence() const { return evidence_; }

  std::optional<NodeId> find(std::string_view label) const;

  template <typename Kind>
  std::vector<NodeId> ids_of() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_)
      if (std::holds_alternative<Kind>(n.kind)) out.push_back(n.id);
    return out;
  }

  bool is_acyclic() const;
  /// Largest |row sum - 1| over every CPT row of every node.
  double max_cpt_row_error() const;
  /// Throws std::logic_error if a structural invariant is broken.
  void check() const;

 private:
  std::vector<Node> nodes_;
  Evidence evidence_;
};

/// Graphviz rendering: nodes sorted by id and labeled with their logical form,
/// evidence nodes drawn with a doubled border, edges sorted by (parent, child).
std::string to_dot(const BayesNet& net);

}  // namespace planrec
