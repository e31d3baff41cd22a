#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lah/label_semantics.hpp"
#include "util.hpp"

using namespace lah;
using Catch::Matchers::WithinAbs;

TEST_CASE("three labels give the five-set chain", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 3);
  REQUIRE(p.n_focal() == 5);
  CHECK(p.n_labels() == 3);
  CHECK(p.focal_sets[0].labels == std::vector<int>{0});
  CHECK(p.focal_sets[1].labels == std::vector<int>{0, 1});
  CHECK(p.focal_sets[2].labels == std::vector<int>{1});
  CHECK(p.focal_sets[3].labels == std::vector<int>{1, 2});
  CHECK(p.focal_sets[4].labels == std::vector<int>{2});
  CHECK(p.anchors == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(focal_name(p, 1) == "{L1,L2}");
}

TEST_CASE("chain length is 2n-1 with evenly spaced anchors", "[labels]") {
  for (int n = 2; n <= 7; ++n) {
    Partition p = make_continuous_partition(-3.0, 9.0, n);
    REQUIRE(p.n_focal() == 2 * n - 1);
    CHECK(p.anchors.front() == -3.0);
    CHECK(p.anchors.back() == 9.0);
    for (std::size_t j = 1; j < p.anchors.size(); ++j) {
      CHECK(p.anchors[j] > p.anchors[j - 1]);
      CHECK_THAT(p.anchors[j] - p.anchors[j - 1],
                 WithinAbs(12.0 / (2 * n - 2), 1e-12));
    }
    // Singletons and adjacent pairs alternate along the chain.
    for (int j = 0; j < p.n_focal(); ++j) {
      if (j % 2 == 0) {
        CHECK(p.focal_sets[j].labels == std::vector<int>{j / 2});
      } else {
        CHECK(p.focal_sets[j].labels == std::vector<int>{j / 2, j / 2 + 1});
      }
    }
  }
}

TEST_CASE("anchor points carry full mass", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 3);
  for (int j = 0; j < p.n_focal(); ++j) {
    MassVector m = mass_vector(p, p.anchors[j]);
    for (int f = 0; f < p.n_focal(); ++f) CHECK(m[f] == (f == j ? 1.0 : 0.0));
  }
}

TEST_CASE("midpoints split mass evenly", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 3);
  MassVector m = mass_vector(p, 0.125);  // halfway between the first two anchors
  CHECK(m[0] == 0.5);
  CHECK(m[1] == 0.5);
  CHECK(m[2] == 0.0);
}

TEST_CASE("out-of-range values clamp to the extreme sets", "[labels]") {
  Partition p = make_continuous_partition(2.0, 4.0, 3);
  MassVector lo = mass_vector(p, -100.0);
  CHECK(lo.front() == 1.0);
  MassVector hi = mass_vector(p, 100.0);
  CHECK(hi.back() == 1.0);
}

TEST_CASE("masses sum to one on at most two adjacent sets", "[labels]") {
  std::mt19937_64 rng(2024);
  Partition p = make_continuous_partition(-5.0, 17.0, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    double x = testutil::uniform(rng, -8.0, 20.0);  // includes out-of-range
    MassVector m = mass_vector(p, x);
    double sum = 0.0;
    int first = -1, last = -1;
    for (int f = 0; f < p.n_focal(); ++f) {
      REQUIRE(m[f] >= 0.0);
      REQUIRE(m[f] <= 1.0);
      sum += m[f];
      if (m[f] > 0.0) {
        if (first < 0) first = f;
        last = f;
      }
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-15));
    REQUIRE(first >= 0);
    CHECK(last - first <= 1);  // chain-adjacent
  }
}

TEST_CASE("mass assignment is piecewise linear and continuous", "[labels]") {
  Partition p = make_continuous_partition(0.0, 10.0, 3);
  const double eps = 1e-9;
  for (double x : {1.0, 2.4999, 2.5, 5.0, 7.3, 9.999}) {
    MassVector a = mass_vector(p, x);
    MassVector b = mass_vector(p, x + eps);
    for (int f = 0; f < p.n_focal(); ++f) CHECK_THAT(a[f], WithinAbs(b[f], 1e-8));
  }
}

TEST_CASE("appropriateness totals the covering sets", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 3);
  // At the {L1,L2} anchor both labels are fully appropriate.
  CHECK(appropriateness(p, 0, 0.25) == 1.0);
  CHECK(appropriateness(p, 1, 0.25) == 1.0);
  CHECK(appropriateness(p, 2, 0.25) == 0.0);
  // Between {L1} and {L1,L2}: label 0 stays at 1, label 1 ramps up.
  MassVector m = mass_vector(p, 0.125);
  CHECK(appropriateness(p, 0, m) == 1.0);
  CHECK(appropriateness(p, 1, m) == 0.5);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    double x = testutil::uniform(rng, 0.0, 1.0);
    for (int l = 0; l < p.n_labels(); ++l) {
      double mu = appropriateness(p, l, x);
      CHECK(mu >= 0.0);
      CHECK(mu <= 1.0);
    }
  }
}

TEST_CASE("discrete partitions are singleton-per-value", "[labels]") {
  Partition p = make_discrete_partition({"red", "green", "blue"});
  REQUIRE(p.n_focal() == 3);
  CHECK(p.kind == AttributeKind::Discrete);
  for (int v = 0; v < 3; ++v) {
    CHECK(p.focal_sets[v].labels == std::vector<int>{v});
    MassVector m = mass_vector(p, static_cast<double>(v));
    for (int f = 0; f < 3; ++f) CHECK(m[f] == (f == v ? 1.0 : 0.0));
  }
  CHECK(focal_name(p, 2) == "{blue}");
}

TEST_CASE("unknown discrete codes are rejected", "[labels]") {
  Partition p = make_discrete_partition({"a", "b"});
  CHECK_THROWS_WITH(mass_vector(p, 2.0), Catch::Matchers::ContainsSubstring("unknown"));
  CHECK_THROWS_AS(mass_vector(p, -1.0), std::runtime_error);
  CHECK_THROWS_AS(mass_vector(p, 0.5), std::runtime_error);  // not a code
}

TEST_CASE("missing values cannot be fuzzified", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 3);
  CHECK_THROWS_AS(mass_vector(p, std::nan("")), std::runtime_error);
}

TEST_CASE("constant attributes collapse to a degenerate partition", "[labels]") {
  Partition p = make_continuous_partition(5.0, 5.0, 3);
  CHECK(p.degenerate);
  REQUIRE(p.n_focal() == 1);
  MassVector m = mass_vector(p, 123.0);  // any value maps to the single set
  CHECK(m[0] == 1.0);
}

TEST_CASE("partition construction validates its inputs", "[labels]") {
  CHECK_THROWS_AS(make_continuous_partition(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_continuous_partition(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_continuous_partition(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_continuous_partition(0.0, 1.0, 3, {"only", "two"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_discrete_partition({}), std::invalid_argument);
}

TEST_CASE("make_partition dispatches on attribute kind", "[labels]") {
  AttributeMeta cont{0, AttributeKind::Continuous, 0.0, 2.0, {}};
  CHECK(make_partition(cont, 3).kind == AttributeKind::Continuous);
  AttributeMeta disc{1, AttributeKind::Discrete, 0.0, 0.0, {"x", "y"}};
  Partition p = make_partition(disc, 3);
  CHECK(p.kind == AttributeKind::Discrete);
  CHECK(p.n_focal() == 2);
}

TEST_CASE("goal partition mirrors the class labels", "[labels]") {
  Partition p = make_goal_partition({"neg", "pos"});
  REQUIRE(p.n_focal() == 2);
  CHECK(p.label_names == std::vector<std::string>{"neg", "pos"});
  CHECK(focal_name(p, 1) == "{pos}");
}

TEST_CASE("partition text lists anchors and the chain", "[labels]") {
  Partition p = make_continuous_partition(0.0, 1.0, 2);
  std::string txt = partition_text(p, 4, "width");
  CHECK(txt.find("attribute 4 (width)") != std::string::npos);
  CHECK(txt.find("anchors 0 0.5 1") != std::string::npos);
  CHECK(txt.find("{L1} {L1,L2} {L2}") != std::string::npos);

  Partition q = make_discrete_partition({"on", "off"});
  std::string t2 = partition_text(q, 0, "switch");
  CHECK(t2.find("discrete") != std::string::npos);
  CHECK(t2.find("{on} {off}") != std::string::npos);
}
