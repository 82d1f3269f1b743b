#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace planrec {

using NodeId = std::uint32_t;

/// Nonnegative table over boolean variables. Entries are stored row-major:
/// the first scope variable is the most significant bit of the row index, so
/// for a CPT whose scope is (parents..., self) each parent assignment owns two
/// consecutive entries, self=false then self=true.
class Factor {
 public:
  /// The unit factor: empty scope, single entry 1.
  Factor();
  Factor(std::vector<NodeId> scope, std::vector<double> table);

  /// Builds a CPT from P(self=true | parents) given per parent assignment,
  /// indexed with the first parent most significant.
  static Factor from_conditional(std::vector<NodeId> parents, NodeId self, std::span<const double> p_true);

  const std::vector<NodeId>& scope() const { return scope_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t arity() const { return scope_.size(); }

  bool contains(NodeId var) const;
  /// Bit position weight of `var` in the row index; var must be in scope.
  std::size_t stride(NodeId var) const;

  /// Conditions on var=value, dropping var from the scope.
  Factor reduce(NodeId var, bool value) const;
  Factor sum_out(NodeId var) const;
  double total() const;

  friend Factor operator*(const Factor& a, const Factor& b);

 private:
  std::vector<NodeId> scope_;
  std::vector<double> table_;
};

}  // namespace planrec
