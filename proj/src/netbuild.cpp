#include "planrec/netbuild.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace planrec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool bit(std::size_t row, std::size_t j, std::size_t n) { return (row >> (n - 1 - j)) & 1U; }

const std::string& type_of(const Node& n) {
  if (const auto* et = std::get_if<EntityTypeNode>(&n.kind)) return et->type;
  throw std::logic_error("expected an entity-type parent, got " + n.label);
}

}  // namespace

void Config::validate(const PlanLibrary& lib) const {
  if (!(equality_prior >= 0.0 && equality_prior <= 1.0))
    throw ValidationError("equality prior must lie in [0, 1]");
  if (!(mention_base > 0.0 && mention_base < 1.0)) throw ValidationError("mention base must lie in (0, 1)");
  if (!(mention_lift > 0.0)) throw ValidationError("mention lift must be positive");
  if (mention_lift * mention_base > 1.0)
    throw ValidationError("mention lift times mention base must not exceed 1 (got " +
                          std::to_string(mention_lift * mention_base) + ")");
  if (max_equality_candidates < 1) throw ValidationError("max equality candidates must be at least 1");
  if (!(word_leak > 0.0 && word_leak < lib.min_p_word()))
    throw ValidationError("word leak must lie strictly between 0 and the smallest word probability");
}

Factor synth_cpt(const Node& node, std::span<const Node> nodes, const PlanLibrary& lib, const Config& cfg) {
  const auto& parents = node.parents;
  const std::size_t n = parents.size();
  std::vector<double> p(std::size_t{1} << n);
  auto parent = [&](std::size_t j) -> const Node& { return nodes[parents[j]]; };

  std::visit(
      overloaded{
          [&](const EntityTypeNode& k) {
            const double prior = lib.type(k.type).prior;
            if (n % 2 != 0) throw std::logic_error("entity-type parents must be (equality, slot-type) pairs");
            for (std::size_t j = 0; j < n; j += 2)
              if (!std::holds_alternative<EqualityNode>(parent(j).kind) ||
                  !std::holds_alternative<SlotTypeNode>(parent(j + 1).kind))
                throw std::logic_error("entity-type parents must be (equality, slot-type) pairs");
            for (std::size_t row = 0; row < p.size(); ++row) {
              bool any_equal = false, filler_typed = false;
              for (std::size_t j = 0; j < n; j += 2) {
                if (bit(row, j, n)) {
                  any_equal = true;
                  filler_typed = filler_typed || bit(row, j + 1, n);
                }
              }
              p[row] = any_equal ? (filler_typed ? 1.0 : 0.0) : prior;
            }
          },
          [&](const PlanInstanceNode& k) {
            const double rate = lib.schema(k.schema).p_given_parent;
            if (n != 1) throw std::logic_error("plan instance needs exactly one parent");
            p = {0.0, rate};
          },
          [&](const SlotTypeNode& k) {
            if (n != 1) throw std::logic_error("slot type needs exactly one parent");
            p = {lib.type(k.type).prior, 1.0};
          },
          [&](const EqualityNode&) {
            if (n != 0) throw std::logic_error("equality nodes are roots");
            p = {cfg.equality_prior};
          },
          [&](const WordNode& k) {
            const bool has_mention = n > 0 && std::holds_alternative<MentionNode>(parent(n - 1).kind);
            const std::size_t senses = has_mention ? n - 1 : n;
            std::vector<double> p_word(senses);
            for (std::size_t j = 0; j < senses; ++j) {
              auto pw = lib.p_word(k.word, type_of(parent(j)));
              if (!pw) throw std::logic_error("word parent is not a sense of \"" + k.word + "\"");
              p_word[j] = *pw;
            }
            for (std::size_t row = 0; row < p.size(); ++row) {
              double best = 0.0;
              bool any = false;
              for (std::size_t j = 0; j < senses; ++j) {
                if (bit(row, j, n)) {
                  any = true;
                  best = std::max(best, p_word[j]);
                }
              }
              const bool mentioned = !has_mention || bit(row, n - 1, n);
              p[row] = (any && mentioned) ? best : cfg.word_leak;
            }
          },
          [&](const MentionNode&) {
            const double lifted = cfg.mention_lift * cfg.mention_base;
            for (std::size_t row = 0; row < p.size(); ++row) p[row] = row != 0 ? lifted : cfg.mention_base;
          },
          [&](const SlotExclusivityNode&) {
            for (std::size_t row = 0; row < p.size(); ++row) p[row] = std::popcount(row) <= 1 ? 1.0 : 0.0;
          },
      },
      node.kind);
  return Factor::from_conditional(parents, node.id, p);
}

// --- Session -----------------------------------------------------------------

Session::Session(PlanLibrary lib, Config cfg) : lib_(std::move(lib)), cfg_(cfg) { cfg_.validate(lib_); }

NodeId Session::add(NodeKind kind, std::string label, std::vector<NodeId> parents) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{id, std::move(kind), std::move(label), std::move(parents), Factor()});
  dirty_.push_back(true);
  created_.push_back(id);
  return id;
}

std::string Session::slot_term_label(const SlotTerm& term) const {
  const auto& inst = std::get<PlanInstanceNode>(nodes_[term.instance].kind);
  std::string fn = lib_.slot_name_ambiguous(term.slot) ? inst.schema + "." + term.slot : term.slot;
  return "(" + fn + " " + inst.entity + ")";
}

std::vector<NodeId> Session::assert_token(const std::string& word, const std::string& entity) {
  if (auto it = token_of_entity_.find(entity); it != token_of_entity_.end()) {
    if (tokens_[it->second].word == word) return {};
    throw ValidationError("duplicate entity '" + entity + "'");
  }
  if (!lib_.has_word(word)) throw ValidationError("unknown word \"" + word + "\"");

  Session next = *this;
  next.token_of_entity_[entity] = next.tokens_.size();
  next.tokens_.push_back({word, entity});
  next.agenda_.push_back(TokenAsserted{next.tokens_.size() - 1});
  auto created = next.quiesce();
  *this = std::move(next);
  return created;
}

void Session::assert_story(const Story& story) {
  for (const auto& t : story.tokens) assert_token(t.word, t.entity);
}

std::vector<NodeId> Session::quiesce() {
  created_.clear();
  while (!agenda_.empty()) {
    Event e = agenda_.front();
    agenda_.pop_front();
    std::visit([this](const auto& ev) { fire(ev); }, e);
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (dirty_[i]) {
      nodes_[i].cpt = synth_cpt(nodes_[i], nodes_, lib_, cfg_);
      dirty_[i] = false;
    }
  }
  return std::exchange(created_, {});
}

void Session::fire(const TokenAsserted& e) {
  const Token& tok = tokens_[e.token];
  std::vector<NodeId> word_parents;
  for (const LexEntry* sense : lib_.senses(tok.word)) {  // R1
    auto key = std::make_pair(tok.entity, sense->sense);
    auto it = entity_types_.find(key);
    if (it == entity_types_.end()) {
      NodeId id = add(EntityTypeNode{tok.entity, sense->sense}, "(" + sense->sense + " " + tok.entity + ")", {});
      it = entity_types_.emplace(key, id).first;
      entity_types_by_type_[sense->sense].push_back(id);
      agenda_.push_back(TypeCreated{id});
    }
    word_parents.push_back(it->second);
  }
  if (cfg_.mention_enabled) {  // R6
    auto it = mentions_.find(tok.entity);
    if (it == mentions_.end())
      it = mentions_.emplace(tok.entity, add(MentionNode{tok.entity}, "(mention " + tok.entity + ")", {})).first;
    word_parents.push_back(it->second);
  }
  add(WordNode{e.token, tok.word, tok.entity}, "(word \"" + tok.word + "\" " + tok.entity + ")",
      std::move(word_parents));  // R2
}

void Session::fire(const TypeCreated& e) {
  const auto et = std::get<EntityTypeNode>(nodes_[e.node].kind);
  for (const PlanSchema* schema : lib_.triggers_for_type(et.type)) {  // R3
    auto key = std::make_pair(et.entity, schema->name);
    if (plan_instances_.count(key)) continue;
    NodeId inst = add(PlanInstanceNode{et.entity, schema->name}, "(" + schema->name + " " + et.entity + ")", {e.node});
    plan_instances_.emplace(key, inst);
    for (const SlotDef& slot : schema->slots) {
      SlotTerm term{inst, slot.name};
      NodeId st = add(SlotTypeNode{term, slot.restriction},
                      "(" + slot.restriction + " " + slot_term_label(term) + ")", {inst});
      slots_by_type_[slot.restriction].push_back(st);
      agenda_.push_back(SlotCreated{st});
    }
  }
  auto it = slots_by_type_.find(et.type);  // R4, entity side
  if (it == slots_by_type_.end()) return;
  const std::vector<NodeId> slots = it->second;
  for (NodeId st : slots) ensure_equality(st, e.node);
}

void Session::fire(const SlotCreated& e) {
  const SlotTypeNode st = std::get<SlotTypeNode>(nodes_[e.node].kind);
  auto it = entity_types_by_type_.find(st.type);  // R4, slot side
  if (it == entity_types_by_type_.end()) return;
  const std::vector<NodeId> entities = it->second;
  for (NodeId et : entities) ensure_equality(e.node, et);
}

void Session::ensure_equality(NodeId slot_type, NodeId entity_type) {
  if (equalities_.count({slot_type, entity_type})) return;
  const SlotTerm term = std::get<SlotTypeNode>(nodes_[slot_type].kind).term;
  const std::string filler = std::get<EntityTypeNode>(nodes_[entity_type].kind).entity;
  const std::string& owner = std::get<PlanInstanceNode>(nodes_[term.instance].kind).entity;
  if (filler == owner) return;  // a plan never fills its own slot

  auto& siblings = equalities_by_slot_[slot_type];
  if (siblings.size() + 1 > cfg_.max_equality_candidates)
    throw ValidationError("slot term " + slot_term_label(term) + " exceeds " +
                          std::to_string(cfg_.max_equality_candidates) + " equality candidates");
  NodeId eq = add(EqualityNode{term, filler}, "(= " + slot_term_label(term) + " " + filler + ")", {});
  equalities_.emplace(std::make_pair(slot_type, entity_type), eq);
  slot_type_of_equality_.emplace(eq, slot_type);
  siblings.push_back(eq);

  Node& target = nodes_[entity_type];
  target.parents.push_back(eq);
  target.parents.push_back(slot_type);
  dirty_[entity_type] = true;
  agenda_.push_back(EqualityCreated{eq});
}

void Session::fire(const EqualityCreated& e) {
  const NodeId slot_type = slot_type_of_equality_.at(e.node);
  const EqualityNode eq = std::get<EqualityNode>(nodes_[e.node].kind);
  const auto& siblings = equalities_by_slot_.at(slot_type);
  if (siblings.size() >= 2) {  // R5
    auto it = exclusivity_.find(slot_type);
    if (it == exclusivity_.end()) {
      const SlotTerm term = eq.term;
      NodeId ex = add(SlotExclusivityNode{term}, "(exclusive " + slot_term_label(term) + ")", siblings);
      exclusivity_.emplace(slot_type, ex);
    } else if (nodes_[it->second].parents != siblings) {
      nodes_[it->second].parents = siblings;
      dirty_[it->second] = true;
    }
  }
  if (cfg_.mention_enabled) {  // R6
    NodeId m = mentions_.at(eq.entity);
    nodes_[m].parents.push_back(e.node);
    dirty_[m] = true;
  }
}

BayesNet Session::network() const {
  if (!agenda_.empty()) throw std::logic_error("network requested before quiescence");
  Evidence evidence;
  for (const auto& n : nodes_)
    if (std::holds_alternative<WordNode>(n.kind) || std::holds_alternative<SlotExclusivityNode>(n.kind))
      evidence[n.id] = true;
  return BayesNet(nodes_, std::move(evidence));
}

BayesNet build_network(const PlanLibrary& lib, const Story& story, const Config& cfg) {
  Session s(lib, cfg);
  s.assert_story(story);
  return s.network();
}

}  // namespace planrec
