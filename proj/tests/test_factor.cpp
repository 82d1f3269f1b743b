#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "planrec/factor.hpp"

using namespace planrec;

TEST_CASE("row-major layout, first variable most significant") {
  Factor f({3, 7}, {0.1, 0.2, 0.3, 0.4});
  CHECK(f.stride(3) == 2);
  CHECK(f.stride(7) == 1);
  Factor r = f.reduce(3, true);
  CHECK(r.scope() == std::vector<NodeId>{7});
  CHECK(r.table() == std::vector<double>{0.3, 0.4});
  Factor s = f.sum_out(7);
  CHECK(s.scope() == std::vector<NodeId>{3});
  CHECK(s.table()[0] == doctest::Approx(0.3));
  CHECK(s.table()[1] == doctest::Approx(0.7));
}

TEST_CASE("from_conditional puts self last") {
  const double p[] = {0.25, 1.0};
  Factor f = Factor::from_conditional({4}, 9, p);
  CHECK(f.scope() == std::vector<NodeId>{4, 9});
  CHECK(f.table() == std::vector<double>{0.75, 0.25, 0.0, 1.0});
}

TEST_CASE("product aligns shared variables") {
  Factor a({1, 2}, {1, 2, 3, 4});
  Factor b({2, 5}, {10, 20, 30, 40});
  Factor c = a * b;
  CHECK(c.scope() == std::vector<NodeId>{1, 2, 5});
  // c(x1, x2, x5) = a(x1, x2) * b(x2, x5)
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int x5 = 0; x5 < 2; ++x5)
        CHECK(c.table()[x1 * 4 + x2 * 2 + x5] == a.table()[x1 * 2 + x2] * b.table()[x2 * 2 + x5]);
  CHECK((Factor() * a).table() == a.table());
}

TEST_CASE("invalid factors are rejected") {
  CHECK_THROWS(Factor({1}, {0.5}));
  CHECK_THROWS(Factor({1, 1}, {1, 1, 1, 1}));
  CHECK_THROWS(Factor({1}, {-0.1, 1}));
  CHECK_THROWS(Factor({}, {1.0}).stride(0));
}
