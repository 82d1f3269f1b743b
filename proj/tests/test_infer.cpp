#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "planrec/analysis.hpp"
#include "planrec/infer.hpp"
#include "test_support.hpp"

using namespace planrec;
using namespace planrec::testing;

namespace {

BayesNet chain() {
  BayesNet net;
  const double a[] = {0.3};
  const double b[] = {0.2, 0.7};
  const double c[] = {0.1, 0.9};
  net.add_node(MentionNode{"a"}, "A", {}, Factor::from_conditional({}, 0, a));
  net.add_node(MentionNode{"b"}, "B", {0}, Factor::from_conditional({0}, 1, b));
  net.add_node(MentionNode{"c"}, "C", {1}, Factor::from_conditional({1}, 2, c));
  return net;
}

// Random DAG: each node picks up to three parents among earlier nodes.
BayesNet random_dag(std::mt19937_64& rng, int n) {
  BayesNet net;
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int i = 0; i < n; ++i) {
    std::vector<NodeId> parents;
    for (int j = 0; j < i; ++j)
      if (parents.size() < 3 && std::bernoulli_distribution(0.3)(rng)) parents.push_back(static_cast<NodeId>(j));
    std::vector<double> p(std::size_t{1} << parents.size());
    for (auto& x : p) x = u(rng);
    const auto id = static_cast<NodeId>(i);
    net.add_node(MentionNode{"v" + std::to_string(i)}, "v" + std::to_string(i), parents,
                 Factor::from_conditional(parents, id, p));
  }
  return net;
}

Evidence random_evidence(std::mt19937_64& rng, const BayesNet& net, NodeId query) {
  Evidence ev;
  for (const auto& n : net.nodes())
    if (n.id != query && std::bernoulli_distribution(0.25)(rng)) ev[n.id] = std::bernoulli_distribution(0.5)(rng);
  return ev;
}

}  // namespace

TEST_CASE("elimination order") {
  BayesNet net = chain();
  const NodeId q[] = {2};
  CHECK(elimination_order(net, q, {}).nodes == std::vector<NodeId>{0, 1});

  BayesNet single;
  const double p[] = {0.3};
  single.add_node(MentionNode{"a"}, "A", {}, Factor::from_conditional({}, 0, p));
  const NodeId q0[] = {0};
  CHECK(elimination_order(single, q0, {}).nodes.empty());
  CHECK(posterior(single, {}, 0) == doctest::Approx(0.3).epsilon(1e-15));

  CHECK_THROWS_AS(elimination_order(net, q, {{2, true}}), ValidationError);
  const NodeId q1[] = {1};
  CHECK(elimination_order(net, q1, {{2, true}}).nodes == std::vector<NodeId>{0});
}

TEST_CASE("chain posteriors by hand") {
  BayesNet net = chain();
  const double pb = 0.7 * 0.2 + 0.3 * 0.7;
  CHECK(posterior(net, {}, 1) == doctest::Approx(pb).epsilon(1e-14));
  const double pc = pb * 0.9 + (1 - pb) * 0.1;
  CHECK(posterior(net, {}, 2) == doctest::Approx(pc).epsilon(1e-14));
  // P(A | C) by Bayes
  const double pc_a1 = 0.7 * 0.9 + 0.3 * 0.1, pc_a0 = 0.2 * 0.9 + 0.8 * 0.1;
  CHECK(posterior(net, {{2, true}}, 0) == doctest::Approx(0.3 * pc_a1 / (0.3 * pc_a1 + 0.7 * pc_a0)).epsilon(1e-14));
  CHECK(posterior(net, {{1, true}}, 1) == 1.0);
  CHECK(posterior(net, {{1, false}}, 1) == 0.0);
}

TEST_CASE("the three-node fragment reproduces the ratio") {
  const double r = fragment_ratio_by_inference(1e-5, 1e-5, 1e-6);
  CHECK(r == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(std::abs(r - fragment_ratio(1e-5, 1e-5, 1e-6)) <= 1e-12);
}

TEST_CASE("inconsistent evidence raises instead of producing NaN") {
  BayesNet net;
  const double a[] = {0.5};
  const double det[] = {0.0, 1.0};
  net.add_node(MentionNode{"a"}, "A", {}, Factor::from_conditional({}, 0, a));
  net.add_node(MentionNode{"b"}, "B", {0}, Factor::from_conditional({0}, 1, det));
  CHECK_THROWS_AS(posterior(net, {{0, false}, {1, true}}, 0), InconsistentEvidence);
  CHECK_THROWS_AS(posterior(net, {{0, false}, {1, true}}, 1), InconsistentEvidence);
  CHECK_THROWS_AS(enumerate_posterior(net, {{0, false}, {1, true}}, 0), InconsistentEvidence);
}

TEST_CASE("marginals") {
  BayesNet net = build_network(rope_library(), rope_story(), preset("life").config);
  CHECK(marginals(net, net.evidence(), {}).empty());
  const auto plans = net.ids_of<PlanInstanceNode>();
  const auto eqs = net.ids_of<EqualityNode>();
  std::vector<NodeId> q = plans;
  q.insert(q.end(), eqs.begin(), eqs.end());
  const auto m = marginals(net, net.evidence(), q);
  for (NodeId id : q) CHECK(m.at(id) == posterior(net, net.evidence(), id));
}

TEST_CASE("bad elimination orders are rejected") {
  BayesNet net = chain();
  CHECK_THROWS_AS(posterior(net, {}, 2, EliminationOrder{{0}}), ValidationError);
  CHECK_THROWS_AS(posterior(net, {}, 2, EliminationOrder{{0, 0}}), ValidationError);
  CHECK_THROWS_AS(posterior(net, {}, 2, EliminationOrder{{0, 1, 2}}), ValidationError);
  CHECK(posterior(net, {}, 2, EliminationOrder{{1, 0}}) == doctest::Approx(posterior(net, {}, 2)).epsilon(1e-14));
}

TEST_CASE("enumeration refuses oversized networks") {
  std::mt19937_64 rng(1);
  BayesNet big = random_dag(rng, static_cast<int>(kMaxEnumerationNodes) + 1);
  CHECK_THROWS_AS(enumerate_posterior(big, {}, 0), NetworkTooLarge);
}

TEST_CASE("property: variable elimination matches enumeration") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 150; ++i) {
    BayesNet net = random_dag(rng, std::uniform_int_distribution<int>(1, 14)(rng));
    const NodeId q = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(net.size() - 1))(rng);
    const Evidence ev = random_evidence(rng, net, q);
    double ve = 0, en = 0;
    try {
      en = enumerate_posterior(net, ev, q);
    } catch (const InconsistentEvidence&) {
      continue;
    }
    ve = posterior(net, ev, q);
    CHECK(std::abs(ve - en) <= 1e-9);
  }
}

TEST_CASE("property: constructed networks agree with enumeration") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    PlanLibrary lib = random_library(rng);
    BayesNet net = build_network(lib, random_story(rng, lib, 4), random_config(rng, lib));
    if (net.size() > 20) continue;
    std::vector<NodeId> q;
    for (const auto& n : net.nodes())
      if (!net.evidence().count(n.id)) q.push_back(n.id);
    const auto exact = enumerate_marginals(net, net.evidence(), q);
    for (NodeId id : q) CHECK(std::abs(posterior(net, net.evidence(), id) - exact.at(id)) <= 1e-9);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("property: complement, observed nodes, separated evidence") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    BayesNet net = random_dag(rng, std::uniform_int_distribution<int>(2, 12)(rng));
    const NodeId q = static_cast<NodeId>(net.size() - 1);
    const double p = posterior(net, {}, q);
    // P(q) + P(not q) = 1 via an explicit reduction of the joint
    const double total = enumerate_posterior(net, {}, q) + (1.0 - enumerate_posterior(net, {}, q));
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(posterior(net, {{q, true}}, q) == 1.0);
    CHECK(posterior(net, {{q, false}}, q) == 0.0);
  }

  // A disconnected component carries no information about the query.
  BayesNet net = chain();
  const double d[] = {0.4};
  const double e[] = {0.05, 0.95};
  net.add_node(MentionNode{"d"}, "D", {}, Factor::from_conditional({}, 3, d));
  net.add_node(MentionNode{"e"}, "E", {3}, Factor::from_conditional({3}, 4, e));
  const double base = posterior(net, {{2, true}}, 0);
  CHECK(std::abs(posterior(net, {{2, true}, {4, false}}, 0) - base) <= 1e-12);
  CHECK(std::abs(posterior(net, {{2, true}, {3, true}}, 0) - base) <= 1e-12);
}

TEST_CASE("property: any valid elimination order gives the same answer") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    BayesNet net = random_dag(rng, std::uniform_int_distribution<int>(2, 12)(rng));
    const NodeId q = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(net.size() - 1))(rng);
    const Evidence ev = random_evidence(rng, net, q);
    const NodeId qs[] = {q};
    EliminationOrder order = elimination_order(net, qs, ev);
    double reference = 0;
    try {
      reference = posterior(net, ev, q, order);
    } catch (const InconsistentEvidence&) {
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      std::shuffle(order.nodes.begin(), order.nodes.end(), rng);
      CHECK(std::abs(posterior(net, ev, q, order) - reference) <= 1e-12);
    }
  }
}
