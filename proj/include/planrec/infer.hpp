#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "planrec/error.hpp"
#include "planrec/network.hpp"

namespace planrec {

/// Order in which non-query, non-evidence nodes are summed out.
struct EliminationOrder {
  std::vector<NodeId> nodes;
};

/// Normalizers at or below this are reported as inconsistent evidence.
inline constexpr double kMinNormalizer = 1e-300;

/// Enumeration refuses networks with more nodes than this.
inline constexpr std::size_t kMaxEnumerationNodes = 25;

/// Raised when a network is too large for exhaustive enumeration.
class NetworkTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Greedy min-degree order over the moral graph restricted to the eliminable
/// nodes (evidence nodes are conditioned away first). Ties go to the smallest
/// node id. Throws ValidationError if a query node is also an evidence node.
EliminationOrder elimination_order(const BayesNet& net, std::span<const NodeId> query, const Evidence& evidence);

/// P(query = true | evidence) by variable elimination.
double posterior(const BayesNet& net, const Evidence& evidence, NodeId query);

/// As posterior(), with a caller-chosen order. The order must be a permutation
/// of exactly the eliminable nodes.
double posterior(const BayesNet& net, const Evidence& evidence, NodeId query, const EliminationOrder& order);

/// Per-query posterior(); identical to calling posterior() for each id.
std::map<NodeId, double> marginals(const BayesNet& net, const Evidence& evidence, std::span<const NodeId> query);

/// Ground truth by summing the full joint over every assignment of the
/// non-evidence nodes. Deterministic summation order.
double enumerate_posterior(const BayesNet& net, const Evidence& evidence, NodeId query);

/// All queries from a single pass over the joint.
std::map<NodeId, double> enumerate_marginals(const BayesNet& net, const Evidence& evidence,
                                             std::span<const NodeId> query);

}  // namespace planrec
