#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "planrec/library.hpp"
#include "planrec/network.hpp"

namespace planrec {

/// Network construction parameters.
struct Config {
  /// E: prior that a slot term and an observed entity denote the same thing.
  double equality_prior = 1e-5;
  /// Adds Mention nodes between equalities and words.
  bool mention_enabled = false;
  /// m0: probability an arbitrary entity is mentioned.
  double mention_base = 1e-3;
  /// k: lift of the mention probability for entities filling a plan role.
  double mention_lift = 500.0;
  /// lambda: probability of a word being used without its sense (and mention).
  double word_leak = 1e-7;
  std::size_t max_equality_candidates = 8;

  /// Throws ValidationError unless 0 <= E <= 1, 0 < m0 < 1, k > 0, k*m0 <= 1,
  /// max_equality_candidates >= 1 and 0 < lambda < every p_word of `lib`.
  void validate(const PlanLibrary& lib) const;
};

/// CPT of `node` given its parents. `nodes` is indexed by id and must contain
/// every parent of `node`.
Factor synth_cpt(const Node& node, std::span<const Node> nodes, const PlanLibrary& lib, const Config& cfg);

/// Incremental network construction. Each asserted token is run through the
/// construction rules until the agenda is empty:
///   R1 one EntityType node per lexicon sense of the word;
///   R2 a Word node (observed true) whose parents are those senses, plus the
///      entity's Mention node in mention mode;
///   R3 for each plan schema specializing a sense, a PlanInstance node and one
///      SlotType node per slot;
///   R4 for each slot term and each other entity of the slot's restriction
///      type, a root Equality node spliced, together with the SlotType node,
///      into that entity's EntityType parents (fired from either side);
///   R5 a SlotExclusivity node (observed true) over the equalities of a slot
///      term once it has two or more;
///   R6 in mention mode, a Mention node per entity whose parents are the
///      equalities naming that entity.
class Session {
 public:
  Session(PlanLibrary lib, Config cfg);

  /// Asserts a token and runs the rules to quiescence. Returns the ids of the
  /// nodes created. Re-asserting an already asserted (word, entity) pair is a
  /// no-op. On error the session is left unchanged.
  std::vector<NodeId> assert_token(const std::string& word, const std::string& entity);
  void assert_story(const Story& story);

  /// Runs any pending agenda entries; returns the ids created.
  std::vector<NodeId> quiesce();

  /// Snapshot of the network with evidence on every Word and SlotExclusivity node.
  BayesNet network() const;

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Token>& tokens() const { return tokens_; }
  const PlanLibrary& library() const { return lib_; }
  const Config& config() const { return cfg_; }

 private:
  struct TokenAsserted {
    std::size_t token;
  };
  struct TypeCreated {
    NodeId node;
  };
  struct SlotCreated {
    NodeId node;
  };
  struct EqualityCreated {
    NodeId node;
  };
  using Event = std::variant<TokenAsserted, TypeCreated, SlotCreated, EqualityCreated>;

  NodeId add(NodeKind kind, std::string label, std::vector<NodeId> parents);
  void fire(const TokenAsserted& e);
  void fire(const TypeCreated& e);
  void fire(const SlotCreated& e);
  void fire(const EqualityCreated& e);
  void ensure_equality(NodeId slot_type, NodeId entity_type);
  std::string slot_term_label(const SlotTerm& term) const;

  PlanLibrary lib_;
  Config cfg_;
  std::vector<Token> tokens_;
  std::vector<Node> nodes_;
  std::deque<Event> agenda_;
  std::vector<NodeId> created_;
  std::vector<bool> dirty_;

  std::map<std::string, std::size_t> token_of_entity_;
  std::map<std::pair<std::string, std::string>, NodeId> entity_types_;    // (entity, type)
  std::map<std::pair<std::string, std::string>, NodeId> plan_instances_;  // (entity, schema)
  std::map<std::string, std::vector<NodeId>> slots_by_type_;              // restriction -> SlotType nodes
  std::map<std::string, std::vector<NodeId>> entity_types_by_type_;       // type -> EntityType nodes
  std::map<std::pair<NodeId, NodeId>, NodeId> equalities_;                // (SlotType, EntityType)
  std::map<NodeId, std::vector<NodeId>> equalities_by_slot_;              // SlotType -> Equality nodes
  std::map<NodeId, NodeId> exclusivity_;                                  // SlotType -> SlotExclusivity
  std::map<std::string, NodeId> mentions_;
  std::map<NodeId, NodeId> slot_type_of_equality_;
};

/// Builds the network of a whole story in one go.
BayesNet build_network(const PlanLibrary& lib, const Story& story, const Config& cfg);

}  // namespace planrec
