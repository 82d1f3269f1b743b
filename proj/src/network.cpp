#include "planrec/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace planrec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string_view kind_name(const NodeKind& kind) {
  return std::visit(overloaded{
                        [](const EntityTypeNode&) { return std::string_view("entity-type"); },
                        [](const PlanInstanceNode&) { return std::string_view("plan-instance"); },
                        [](const SlotTypeNode&) { return std::string_view("slot-type"); },
                        [](const EqualityNode&) { return std::string_view("equality"); },
                        [](const WordNode&) { return std::string_view("word"); },
                        [](const MentionNode&) { return std::string_view("mention"); },
                        [](const SlotExclusivityNode&) { return std::string_view("slot-exclusivity"); },
                    },
                    kind);
}

BayesNet::BayesNet(std::vector<Node> nodes, Evidence evidence)
    : nodes_(std::move(nodes)), evidence_(std::move(evidence)) {
  check();
}

NodeId BayesNet::add_node(NodeKind kind, std::string label, std::vector<NodeId> parents, Factor cpt) {
  const auto id = static_cast<NodeId>(nodes_.size());
  for (NodeId p : parents)
    if (p >= id) throw std::invalid_argument("parent " + std::to_string(p) + " does not exist yet");
  std::vector<NodeId> expected = parents;
  expected.push_back(id);
  if (cpt.scope() != expected) throw std::invalid_argument("CPT scope must be (parents..., self)");
  nodes_.push_back(Node{id, std::move(kind), std::move(label), std::move(parents), std::move(cpt)});
  return id;
}

void BayesNet::set_evidence(NodeId id, bool value) {
  if (id >= nodes_.size()) throw std::invalid_argument("evidence on unknown node " + std::to_string(id));
  evidence_[id] = value;
}

std::optional<NodeId> BayesNet::find(std::string_view label) const {
  for (const auto& n : nodes_)
    if (n.label == label) return n.id;
  return std::nullopt;
}

bool BayesNet::is_acyclic() const {
  // Kahn's algorithm over parent edges.
  std::vector<std::size_t> pending(nodes_.size());
  std::vector<std::vector<NodeId>> children(nodes_.size());
  for (const auto& n : nodes_) {
    pending[n.id] = n.parents.size();
    for (NodeId p : n.parents) children.at(p).push_back(n.id);
  }
  std::vector<NodeId> ready;
  for (const auto& n : nodes_)
    if (pending[n.id] == 0) ready.push_back(n.id);
  std::size_t visited = 0;
  while (!ready.empty()) {
    NodeId v = ready.back();
    ready.pop_back();
    ++visited;
    for (NodeId c : children[v])
      if (--pending[c] == 0) ready.push_back(c);
  }
  return visited == nodes_.size();
}

double BayesNet::max_cpt_row_error() const {
  double worst = 0.0;
  for (const auto& n : nodes_) {
    const auto& t = n.cpt.table();
    for (std::size_t row = 0; row + 1 < t.size(); row += 2) worst = std::max(worst, std::abs(t[row] + t[row + 1] - 1.0));
  }
  return worst;
}

void BayesNet::check() const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id != i) throw std::logic_error("node ids must be dense");
    std::vector<NodeId> expected = n.parents;
    expected.push_back(n.id);
    if (n.cpt.scope() != expected) throw std::logic_error("CPT scope mismatch at node " + n.label);
    for (NodeId p : n.parents)
      if (p >= nodes_.size()) throw std::logic_error("dangling parent at node " + n.label);
  }
  for (const auto& [id, v] : evidence_)
    if (id >= nodes_.size()) throw std::logic_error("evidence on unknown node");
  if (!is_acyclic()) throw std::logic_error("network has a cycle");
  if (max_cpt_row_error() > 1e-12) throw std::logic_error("CPT row does not sum to 1");
}

std::string to_dot(const BayesNet& net) {
  std::string out = "digraph g {\n";
  for (const auto& n : net.nodes()) {
    out += "  n" + std::to_string(n.id) + " [label=\"" + dot_escape(n.label) + "\"";
    if (net.evidence().count(n.id)) out += ", peripheries=2";
    out += "];\n";
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& n : net.nodes())
    for (NodeId p : n.parents) edges.emplace_back(p, n.id);
  std::sort(edges.begin(), edges.end());
  for (const auto& [from, to] : edges) out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace planrec
