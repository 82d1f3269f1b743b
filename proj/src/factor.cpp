#include "planrec/factor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace planrec {

Factor::Factor() : table_{1.0} {}

Factor::Factor(std::vector<NodeId> scope, std::vector<double> table)
    : scope_(std::move(scope)), table_(std::move(table)) {
  if (scope_.size() >= 31) throw std::invalid_argument("factor scope too large");
  if (table_.size() != (std::size_t{1} << scope_.size()))
    throw std::invalid_argument("factor table size must be 2^|scope|");
  for (std::size_t i = 0; i < scope_.size(); ++i)
    for (std::size_t j = i + 1; j < scope_.size(); ++j)
      if (scope_[i] == scope_[j]) throw std::invalid_argument("duplicate variable in factor scope");
  for (double v : table_)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("factor entries must be finite and >= 0");
}

Factor Factor::from_conditional(std::vector<NodeId> parents, NodeId self, std::span<const double> p_true) {
  if (p_true.size() != (std::size_t{1} << parents.size()))
    throw std::invalid_argument("conditional table size must be 2^|parents|");
  std::vector<double> table(p_true.size() * 2);
  for (std::size_t row = 0; row < p_true.size(); ++row) {
    table[2 * row] = 1.0 - p_true[row];
    table[2 * row + 1] = p_true[row];
  }
  parents.push_back(self);
  return Factor(std::move(parents), std::move(table));
}

bool Factor::contains(NodeId var) const {
  return std::find(scope_.begin(), scope_.end(), var) != scope_.end();
}

std::size_t Factor::stride(NodeId var) const {
  auto it = std::find(scope_.begin(), scope_.end(), var);
  if (it == scope_.end()) throw std::invalid_argument("variable " + std::to_string(var) + " not in factor scope");
  return std::size_t{1} << (scope_.end() - it - 1);
}

Factor Factor::reduce(NodeId var, bool value) const {
  const std::size_t s = stride(var);
  std::vector<NodeId> scope;
  for (NodeId v : scope_)
    if (v != var) scope.push_back(v);
  std::vector<double> table;
  table.reserve(table_.size() / 2);
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (((i & s) != 0) == value) table.push_back(table_[i]);
  Factor out;
  out.scope_ = std::move(scope);
  out.table_ = std::move(table);
  return out;
}

Factor Factor::sum_out(NodeId var) const {
  const std::size_t s = stride(var);
  std::vector<NodeId> scope;
  for (NodeId v : scope_)
    if (v != var) scope.push_back(v);
  std::vector<double> table;
  table.reserve(table_.size() / 2);
  for (std::size_t i = 0; i < table_.size(); ++i)
    if ((i & s) == 0) table.push_back(table_[i] + table_[i | s]);
  Factor out;
  out.scope_ = std::move(scope);
  out.table_ = std::move(table);
  return out;
}

double Factor::total() const {
  double sum = 0.0;
  for (double v : table_) sum += v;
  return sum;
}

Factor operator*(const Factor& a, const Factor& b) {
  std::vector<NodeId> scope = a.scope_;
  for (NodeId v : b.scope_)
    if (!a.contains(v)) scope.push_back(v);
  const std::size_t n = scope.size();
  if (n >= 31) throw std::invalid_argument("factor product scope too large");

  // Per result bit (most significant first), the matching weight in a and b.
  std::vector<std::size_t> wa(n, 0), wb(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a.contains(scope[j])) wa[j] = a.stride(scope[j]);
    if (b.contains(scope[j])) wb[j] = b.stride(scope[j]);
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (r & (std::size_t{1} << (n - 1 - j))) {
        ia += wa[j];
        ib += wb[j];
      }
    }
    table[r] = a.table_[ia] * b.table_[ib];
  }
  Factor out;
  out.scope_ = std::move(scope);
  out.table_ = std::move(table);
  return out;
}

}  // namespace planrec
