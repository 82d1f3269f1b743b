#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "planrec/analysis.hpp"
#include "planrec/infer.hpp"
#include "test_support.hpp"

using namespace planrec;
using namespace planrec::testing;

namespace {

double p_hang(const Config& cfg, const Story& story) {
  BayesNet net = build_network(rope_library(), story, cfg);
  return posterior(net, net.evidence(), *net.find("(hang k1)"));
}

// Rope/kill library with the rope type swapped for something common.
PlanLibrary leaves_library() {
  return load_library(R"(
    (library
      (type rake :prior 1e-4) (type leaves :prior 0.05)
      (word "rake" :sense rake :p 0.9) (word "leaves" :sense leaves :p 0.9)
      (plan gather :specializes rake :p 1e-3 (slot pile-of leaves)))
  )");
}

}  // namespace

TEST_CASE("fragment_ratio") {
  CHECK(fragment_ratio(1e-5, 1e-5, 1e-6) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(fragment_ratio(0.0, 1e-5, 1e-6) == 1.0);
  CHECK(fragment_ratio(1.0, 1e-5, 0.25) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(fragment_ratio(1.0, 1e-5, 0.0), ValidationError);
  CHECK_THROWS_AS(fragment_ratio(-0.1, 1e-5, 0.1), ValidationError);
}

TEST_CASE("fragment_ratio grows with E and tends to 1 as E vanishes") {
  double prev = 0;
  for (double e = 1e-9; e < 0.5; e *= 3) {
    const double r = fragment_ratio(e, 1e-5, 1e-6);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK(fragment_ratio(1e-12, 1e-5, 1e-6) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("property: closed form matches exact inference on the fragment") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const double pe = log_uniform(rng, 1e-8, 0.9);
    const double pr = log_uniform(rng, 1e-8, 0.9);
    const double pk = log_uniform(rng, 1e-8, 0.9);
    const double closed = fragment_ratio(pe, pr, pk);
    CHECK(std::abs(fragment_ratio_by_inference(pe, pr, pk) - closed) <= 1e-9 * closed);
  }
}

TEST_CASE("sweep_equality_prior") {
  const Config life = preset("life").config;
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(1e-7 * std::pow(10.0, i * 0.3));
  const auto rows = sweep_equality_prior(rope_library(), rope_story(), life, grid, "(hang k1)");
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].posterior >= rows[i - 1].posterior);
  CHECK(rows.front().query == "(hang k1)");

  const Story kill_only{{{"kill", "k1"}}};
  const auto zero = sweep_equality_prior(rope_library(), rope_story(), life, {0.0}, "(hang k1)");
  CHECK(std::abs(zero[0].posterior - p_hang(life, kill_only)) <= 1e-12);

  // At E = p_rope the rope word roughly doubles the belief in hanging.
  const auto at = sweep_equality_prior(rope_library(), rope_story(), life, {1e-5}, "(hang k1)");
  CHECK(at[0].posterior / p_hang(life, kill_only) == doctest::Approx(2.0).epsilon(0.1));

  CHECK_THROWS_AS(sweep_equality_prior(rope_library(), rope_story(), life, {0.1, 0.1}, "(hang k1)"), ValidationError);
  CHECK_THROWS_AS(sweep_equality_prior(rope_library(), rope_story(), life, {1.5}, "(hang k1)"), ValidationError);
  try {
    sweep_equality_prior(rope_library(), rope_story(), life, {0.1}, "(hang r2)");
    FAIL("expected unknown query");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(hang k1)") != std::string::npos);
  }
}

TEST_CASE("mention lift") {
  CHECK(fragment_mention_lift(1e-5, 0.01, 50) == doctest::Approx(50.0).epsilon(1e-3));
  CHECK(fragment_mention_lift(1e-5, 0.01, 1) == doctest::Approx(1.0).epsilon(1e-12));

  Config story = preset("story").config;
  const double lift = mention_lift(rope_library(), rope_story(), story, "r2");
  CHECK(lift > 1.0);
  CHECK(lift <= story.mention_lift * (1 + 1e-9));
  Config small = story;
  small.mention_base = 0.01;
  small.mention_lift = 50;
  small.word_leak = 1e-7;
  const double small_lift = mention_lift(rope_library(), rope_story(), small, "r2");
  CHECK(small_lift > 1.0);
  CHECK(small_lift <= 50 * (1 + 1e-9));

  CHECK_THROWS_AS(mention_lift(rope_library(), rope_story(), preset("life").config, "r2"), ValidationError);
  CHECK_THROWS_AS(mention_lift(rope_library(), rope_story(), story, "k1"), ValidationError);
  CHECK_THROWS_AS(mention_lift(rope_library(), rope_story(), story, "zz"), ValidationError);
}

TEST_CASE("presets") {
  const ModePreset life = preset("life");
  CHECK(life.name == "life");
  CHECK(life.config.equality_prior == 1e-5);
  CHECK_FALSE(life.config.mention_enabled);
  const ModePreset story = preset("story");
  CHECK(story.config.mention_enabled);
  CHECK(story.config.mention_base * story.config.mention_lift <= 1.0);
  CHECK_THROWS_AS(preset("dream"), ValidationError);
  const ModePreset knob = knob_preset(0.3);
  CHECK(knob.name == "knob");
  CHECK(knob.config.equality_prior == 0.3);
}

TEST_CASE("life and story readings separate") {
  const double life = p_hang(preset("life").config, rope_story());
  const double story = p_hang(preset("story").config, rope_story());
  CHECK(life < 0.01);
  CHECK(story >= 0.2);
  CHECK(life == doctest::Approx(1.98e-3).epsilon(0.01));
}

TEST_CASE("common objects barely suggest a plan") {
  const Config life = preset("life").config;
  const PlanLibrary lib = leaves_library();
  const Story both{{{"rake", "k1"}, {"leaves", "l1"}}};
  const Story alone{{{"rake", "k1"}}};
  BayesNet a = build_network(lib, both, life), b = build_network(lib, alone, life);
  const double lift =
      posterior(a, a.evidence(), *a.find("(gather k1)")) / posterior(b, b.evidence(), *b.find("(gather k1)"));
  CHECK(lift >= 1.0);
  CHECK(lift < 1.01);
}

TEST_CASE("recognize lists plans and equalities by label") {
  BayesNet net = build_network(rope_library(), rope_story(), preset("life").config);
  const auto rows = recognize(net);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "(= (rope-of k1) r2)");
  CHECK(rows[0].kind == "equality");
  CHECK(rows[1].label == "(hang k1)");
  CHECK(rows[1].kind == "plan");
  CHECK(recognize(BayesNet()).empty());
}
