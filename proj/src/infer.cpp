#include "planrec/infer.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace planrec {

namespace {

void check_ids(const BayesNet& net, const Evidence& evidence, std::span<const NodeId> query) {
  for (const auto& [id, v] : evidence)
    if (id >= net.size()) throw ValidationError("evidence names unknown node " + std::to_string(id));
  for (NodeId q : query)
    if (q >= net.size()) throw ValidationError("query names unknown node " + std::to_string(q));
}

std::vector<Factor> reduced_factors(const BayesNet& net, const Evidence& evidence) {
  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (const auto& n : net.nodes()) {
    Factor f = n.cpt;
    for (const auto& [id, value] : evidence)
      if (f.contains(id)) f = f.reduce(id, value);
    factors.push_back(std::move(f));
  }
  return factors;
}

void eliminate(std::vector<Factor>& factors, NodeId var) {
  Factor joint;
  std::vector<Factor> rest;
  rest.reserve(factors.size());
  for (auto& f : factors) {
    if (f.contains(var))
      joint = joint * f;
    else
      rest.push_back(std::move(f));
  }
  if (joint.contains(var)) rest.push_back(joint.sum_out(var));
  factors = std::move(rest);
}

// Returns the unnormalized (P(q=false, e), P(q=true, e)); q may be an evidence node.
std::pair<double, double> query_weights(const BayesNet& net, const Evidence& evidence, NodeId query,
                                        const EliminationOrder& order) {
  std::vector<Factor> factors = reduced_factors(net, evidence);
  for (NodeId v : order.nodes) eliminate(factors, v);
  Factor result;
  for (const auto& f : factors) result = result * f;
  if (auto it = evidence.find(query); it != evidence.end()) {
    double z = result.total();
    return it->second ? std::make_pair(0.0, z) : std::make_pair(z, 0.0);
  }
  if (result.scope() != std::vector<NodeId>{query})
    throw std::logic_error("elimination left unexpected variables");
  return {result.table()[0], result.table()[1]};
}

double normalize(std::pair<double, double> w) {
  const double z = w.first + w.second;
  if (!(z > kMinNormalizer)) throw InconsistentEvidence("evidence has zero probability");
  return w.second / z;
}

void check_order(const BayesNet& net, const Evidence& evidence, NodeId query, const EliminationOrder& order) {
  std::set<NodeId> expected;
  for (const auto& n : net.nodes())
    if (n.id != query && !evidence.count(n.id)) expected.insert(n.id);
  std::set<NodeId> given(order.nodes.begin(), order.nodes.end());
  if (given.size() != order.nodes.size() || given != expected)
    throw ValidationError("elimination order must be a permutation of the eliminable nodes");
}

}  // namespace

EliminationOrder elimination_order(const BayesNet& net, std::span<const NodeId> query, const Evidence& evidence) {
  check_ids(net, evidence, query);
  for (NodeId q : query)
    if (evidence.count(q))
      throw ValidationError("node " + std::to_string(q) + " is both queried and observed");

  const std::size_t n = net.size();
  std::vector<std::set<NodeId>> adj(n);
  auto connect = [&](const std::vector<NodeId>& clique) {
    for (NodeId a : clique)
      for (NodeId b : clique)
        if (a != b) adj[a].insert(b);
  };
  // Moral graph over the reduced factor scopes: each CPT family minus observed nodes.
  for (const auto& node : net.nodes()) {
    std::vector<NodeId> family;
    for (NodeId p : node.parents)
      if (!evidence.count(p)) family.push_back(p);
    if (!evidence.count(node.id)) family.push_back(node.id);
    connect(family);
  }

  std::set<NodeId> remaining;
  for (const auto& node : net.nodes())
    if (!evidence.count(node.id) && std::find(query.begin(), query.end(), node.id) == query.end())
      remaining.insert(node.id);

  EliminationOrder order;
  while (!remaining.empty()) {
    NodeId best = *remaining.begin();
    std::size_t best_degree = adj[best].size();
    for (NodeId v : remaining) {
      if (adj[v].size() < best_degree) {
        best = v;
        best_degree = adj[v].size();
      }
    }
    std::vector<NodeId> nbrs(adj[best].begin(), adj[best].end());
    connect(nbrs);
    for (NodeId u : nbrs) adj[u].erase(best);
    adj[best].clear();
    remaining.erase(best);
    order.nodes.push_back(best);
  }
  return order;
}

double posterior(const BayesNet& net, const Evidence& evidence, NodeId query) {
  check_ids(net, evidence, std::span<const NodeId>(&query, 1));
  // An observed query still needs P(evidence) > 0, so its order sums out everything.
  EliminationOrder order;
  if (evidence.count(query)) {
    order = elimination_order(net, {}, evidence);
  } else {
    order = elimination_order(net, std::span<const NodeId>(&query, 1), evidence);
  }
  return normalize(query_weights(net, evidence, query, order));
}

double posterior(const BayesNet& net, const Evidence& evidence, NodeId query, const EliminationOrder& order) {
  check_ids(net, evidence, std::span<const NodeId>(&query, 1));
  if (evidence.count(query)) return posterior(net, evidence, query);
  check_order(net, evidence, query, order);
  return normalize(query_weights(net, evidence, query, order));
}

std::map<NodeId, double> marginals(const BayesNet& net, const Evidence& evidence, std::span<const NodeId> query) {
  std::map<NodeId, double> out;
  for (NodeId q : query) out[q] = posterior(net, evidence, q);
  return out;
}

std::map<NodeId, double> enumerate_marginals(const BayesNet& net, const Evidence& evidence,
                                             std::span<const NodeId> query) {
  check_ids(net, evidence, query);
  if (net.size() > kMaxEnumerationNodes)
    throw NetworkTooLarge("network has " + std::to_string(net.size()) + " nodes; enumeration is capped at " +
                          std::to_string(kMaxEnumerationNodes));

  std::uint32_t fixed = 0;
  std::vector<NodeId> free_nodes;
  for (const auto& node : net.nodes()) {
    auto it = evidence.find(node.id);
    if (it == evidence.end())
      free_nodes.push_back(node.id);
    else if (it->second)
      fixed |= std::uint32_t{1} << node.id;
  }

  double z = 0.0;
  std::vector<double> numer(query.size(), 0.0);
  const std::uint64_t count = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t m = 0; m < count; ++m) {
    std::uint32_t x = fixed;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (m & (std::uint64_t{1} << i)) x |= std::uint32_t{1} << free_nodes[i];
    double p = 1.0;
    for (const auto& node : net.nodes()) {
      std::size_t row = 0;
      for (NodeId v : node.cpt.scope()) row = (row << 1) | ((x >> v) & 1U);
      p *= node.cpt.table()[row];
      if (p == 0.0) break;
    }
    if (p == 0.0) continue;
    z += p;
    for (std::size_t i = 0; i < query.size(); ++i)
      if ((x >> query[i]) & 1U) numer[i] += p;
  }
  if (!(z > kMinNormalizer)) throw InconsistentEvidence("evidence has zero probability");
  std::map<NodeId, double> out;
  for (std::size_t i = 0; i < query.size(); ++i) out[query[i]] = numer[i] / z;
  return out;
}

double enumerate_posterior(const BayesNet& net, const Evidence& evidence, NodeId query) {
  return enumerate_marginals(net, evidence, std::span<const NodeId>(&query, 1)).at(query);
}

}  // namespace planrec
