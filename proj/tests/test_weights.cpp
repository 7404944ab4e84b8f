#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpl/weights.hpp"

using namespace wpl;

namespace {

WeightType wt(std::initializer_list<int> ws) {
  return WeightType::from_weights(std::vector<int>(ws));
}

// Independent reduction oracle: (raw, k) and a candidate normal pair are
// the same group element exactly when each branch difference is a whole
// number of period relations whose count balances the period coordinate.
bool equivalent(const WeightType& w, const std::vector<std::int64_t>& raw, std::int64_t k,
                const std::vector<std::int64_t>& arm, std::int64_t c_mult) {
  std::int64_t moved = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::int64_t diff = raw[i] - arm[i];
    std::int64_t p = w.weights[i];
    if (diff % p != 0) return false;
    moved += diff / p;
  }
  return c_mult == k + moved;
}

GradingElement oracle_normal_form(const WeightType& w, const std::vector<std::int64_t>& raw,
                                  std::int64_t k) {
  GradingElement found;
  int hits = 0;
  std::vector<std::int64_t> arm(raw.size(), 0);
  // scan the full grid of candidate arm coordinates
  for (;;) {
    std::int64_t moved = 0;
    bool ok = true;
    for (std::size_t i = 0; i < raw.size() && ok; ++i) {
      std::int64_t diff = raw[i] - arm[i];
      std::int64_t p = w.weights[i];
      if (diff % p != 0) ok = false;
      else moved += diff / p;
    }
    if (ok) {
      ++hits;
      found.arm = arm;
      found.c_mult = k + moved;
    }
    std::size_t pos = 0;
    while (pos < arm.size() && ++arm[pos] >= w.weights[pos]) {
      arm[pos] = 0;
      ++pos;
    }
    if (pos == arm.size()) break;
  }
  REQUIRE(hits == 1);  // normal form unique
  return found;
}

}  // namespace

TEST_CASE("weight type validation and parsing") {
  CHECK_THROWS_AS(WeightType::from_weights({2, 0}), std::invalid_argument);
  WeightType dup = wt({2, 2});
  dup.points = {"x", "x"};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  WeightType a = WeightType::parse("2,3,5");
  CHECK(a.weights == std::vector<int>{2, 3, 5});
  CHECK(a.points == std::vector<std::string>{"l1", "l2", "l3"});

  WeightType b = WeightType::parse(R"({"weights":[2,3,5],"points":["p","q","r"]})");
  CHECK(b.weights == std::vector<int>{2, 3, 5});
  CHECK(b.points == std::vector<std::string>{"p", "q", "r"});

  CHECK_THROWS_AS(WeightType::parse("2,x"), std::invalid_argument);
  CHECK(WeightType::parse("").branch_count() == 0);
}

TEST_CASE("star graph shape") {
  StarGraph g22(wt({2, 2}));
  CHECK(g22.vertex_count() == 3);
  CHECK(g22.adjacent(0, 1));
  CHECK(g22.adjacent(0, 2));
  CHECK_FALSE(g22.adjacent(1, 2));
  CHECK(g22.label(1) == "[1,1]");
  CHECK(g22.parse_label("[2,1]") == 2);
  CHECK(g22.parse_label("*") == 0);

  StarGraph g11(wt({1, 1}));
  CHECK(g11.vertex_count() == 1);
  CHECK(g11.neighbors(0).empty());

  StarGraph g235(wt({2, 3, 5}));
  CHECK(g235.vertex_count() == 8);
  CHECK(g235.vertex_index(1, 1) == 1);
  CHECK(g235.vertex_index(2, 2) == 3);
  CHECK(g235.vertex_index(3, 4) == 7);
  CHECK_FALSE(g235.vertex_index(1, 2).has_value());
  // arm chains: [i,j] adjacent to [i,j+1]
  CHECK(g235.adjacent(*g235.vertex_index(3, 1), *g235.vertex_index(3, 2)));
  CHECK_FALSE(g235.adjacent(*g235.vertex_index(2, 1), *g235.vertex_index(3, 1)));
}

TEST_CASE("cartan matrix values") {
  StarGraph g(wt({2, 2}));
  auto m = g.cartan_matrix();
  CHECK(m == std::vector<std::vector<std::int64_t>>{{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}});

  StarGraph g1(wt({1}));
  CHECK(g1.cartan_matrix() == std::vector<std::vector<std::int64_t>>{{2}});

  StarGraph g23(wt({2, 3}));
  CHECK(g23.cartan(0, *g23.vertex_index(2, 2)) == 0);

  // symmetry on a bigger type
  StarGraph g335(wt({3, 3, 5}));
  auto big = g335.cartan_matrix();
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = 0; j < big.size(); ++j) {
      CHECK(big[i][j] == big[j][i]);
    }
  }
}

TEST_CASE("grading normal form") {
  WeightType w = wt({2, 3});

  GradingElement a = lp_normal_form(w, {2, 0}, 0);
  CHECK(a.c_mult == 1);
  CHECK(a.arm == std::vector<std::int64_t>{0, 0});

  GradingElement b = lp_normal_form(w, {1, 1}, 0);
  CHECK(b.c_mult == 0);
  CHECK(b.arm == std::vector<std::int64_t>{1, 1});

  GradingElement c = lp_normal_form(w, {0, 5}, -1);
  CHECK(c.c_mult == 0);
  CHECK(c.arm == std::vector<std::int64_t>{0, 2});
  GradingElement c_oracle = oracle_normal_form(w, {0, 5}, -1);
  CHECK(c == c_oracle);

  // oracle agreement across a grid of raw tuples
  for (std::int64_t r1 = -4; r1 <= 4; ++r1) {
    for (std::int64_t r2 = -4; r2 <= 4; ++r2) {
      for (std::int64_t k = -2; k <= 2; ++k) {
        CHECK(lp_normal_form(w, {r1, r2}, k) == oracle_normal_form(w, {r1, r2}, k));
      }
    }
  }

  CHECK_THROWS_AS(lp_normal_form(WeightType::parse(""), {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(lp_normal_form(w, {1}, 0), std::invalid_argument);
}

TEST_CASE("grading group operations") {
  WeightType w = wt({2, 3});
  GradingElement x = lp_normal_form(w, {1, 2}, 0);
  GradingElement y = lp_normal_form(w, {1, 1}, 0);
  GradingElement sum = lp_add(w, x, y);
  CHECK(sum.c_mult == 2);
  CHECK(sum.arm == std::vector<std::int64_t>{0, 0});

  CHECK(lp_add(w, x, lp_identity(w)) == x);

  GradingElement neg = lp_negate(w, lp_normal_form(w, {1, 0}, 0));
  CHECK(neg.c_mult == -1);
  CHECK(neg.arm == std::vector<std::int64_t>{1, 0});

  // elements of another weight type are rejected
  GradingElement foreign;
  foreign.arm = {1, 4};  // not a normal form for (2,3)
  CHECK_THROWS_AS(lp_add(w, x, foreign), std::invalid_argument);
  foreign.arm = {1};
  CHECK_THROWS_AS(lp_negate(w, foreign), std::invalid_argument);

  // x + (-x) = identity, everywhere on a grid
  for (std::int64_t r1 = -3; r1 <= 3; ++r1) {
    for (std::int64_t r2 = -3; r2 <= 3; ++r2) {
      GradingElement g = lp_normal_form(w, {r1, r2}, 1);
      CHECK(lp_add(w, g, lp_negate(w, g)) == lp_identity(w));
      CHECK(equivalent(w, {r1, r2}, 1, g.arm, g.c_mult));
    }
  }
}

TEST_CASE("grading group laws on a sampled grid") {
  WeightType w = wt({2, 3, 5});
  std::vector<GradingElement> grid;
  for (std::int64_t r1 = 0; r1 < 2; ++r1) {
    for (std::int64_t r2 = 0; r2 < 3; ++r2) {
      for (std::int64_t k = -1; k <= 1; ++k) {
        grid.push_back(lp_normal_form(w, {r1, r2, 2}, k));
      }
    }
  }
  for (const auto& a : grid) {
    // idempotent normalization
    CHECK(lp_normal_form(w, a.arm, a.c_mult) == a);
    for (const auto& b : grid) {
      CHECK(lp_add(w, a, b) == lp_add(w, b, a));
      for (const auto& c : grid) {
        CHECK(lp_add(w, lp_add(w, a, b), c) == lp_add(w, a, lp_add(w, b, c)));
      }
    }
  }
}

TEST_CASE("p-fold unit step equals the period") {
  for (auto ws : {std::vector<int>{2, 3}, std::vector<int>{2, 3, 5}, std::vector<int>{4}}) {
    WeightType w = WeightType::from_weights(ws);
    for (int i = 1; i <= w.branch_count(); ++i) {
      GradingElement x = lp_identity(w);
      for (int step = 0; step < w.weights[static_cast<std::size_t>(i - 1)]; ++step) {
        x = lp_unit_step(w, x, i);
      }
      GradingElement period = lp_identity(w);
      period.c_mult = 1;
      CHECK(x == period);
    }
  }
}
