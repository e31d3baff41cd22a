#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lah/ldt.hpp"
#include "oracles.hpp"
#include "util.hpp"

using namespace lah;
using Catch::Matchers::WithinAbs;

TEST_CASE("conflicting data forces the full branch grid", "[ldt]") {
  TrainingData d = fixtures::full_grid_training();
  LDTParams prm;
  LDT t = train_ldt(d, {0, 1}, prm);

  REQUIRE(t.branch_count() == 25);  // 5 x 5 focal products
  CHECK(t.depth() == 2);
  int idx = 0;
  for (int f0 = 0; f0 < 5; ++f0)
    for (int f1 = 0; f1 < 5; ++f1) {
      const Branch& b = t.branches[idx++];
      REQUIRE(b.terms.size() == 2);
      // Gain ties everywhere, so the lowest attribute id splits first.
      CHECK(b.terms[0] == BranchTerm{0, f0});
      CHECK(b.terms[1] == BranchTerm{1, f1});
      CHECK(b.class_mass == std::vector<double>{0.5, 0.5});
    }
}

TEST_CASE("a pure root stops immediately", "[ldt]") {
  TrainingData d;
  d.n_classes = 2;
  d.partitions = {make_continuous_partition(0.0, 1.0, 3)};
  for (int i = 0; i < 6; ++i) {
    d.masses.push_back({mass_vector(d.partitions[0], i / 5.0)});
    d.goal.push_back(0);  // one class only
  }
  LDT t = train_ldt(d, {0}, LDTParams{});
  REQUIRE(t.branch_count() == 1);
  CHECK(t.branches[0].terms.empty());
  CHECK(t.branches[0].class_mass == std::vector<double>{1.0, 0.0});
  // Inference ignores the input entirely.
  auto out = t.infer({mass_vector(d.partitions[0], 0.73)});
  CHECK(out == std::vector<double>{1.0, 0.0});
}

TEST_CASE("induction matches the from-scratch reference", "[ldt]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    TrainingData d = fixtures::random_training(rng, 30, 2, 3, 2);
    LDT t = train_ldt(d, {0, 1}, LDTParams{});
    auto want = oracle::ref_train(d, {0, 1}, oracle::RefParams{});

    REQUIRE(t.branch_count() == want.size());
    for (std::size_t b = 0; b < want.size(); ++b) {
      CHECK(t.branches[b].terms == want[b].terms);
      REQUIRE(t.branches[b].class_mass.size() == want[b].class_mass.size());
      for (std::size_t c = 0; c < want[b].class_mass.size(); ++c)
        CHECK_THAT(t.branches[b].class_mass[c], WithinAbs(want[b].class_mass[c], 1e-12));
    }
  }
}

TEST_CASE("reference agreement holds for three attributes and classes", "[ldt]") {
  std::mt19937_64 rng(42);
  TrainingData d = fixtures::random_training(rng, 40, 3, 2, 3);
  LDT t = train_ldt(d, {0, 1, 2}, LDTParams{});
  auto want = oracle::ref_train(d, {0, 1, 2}, oracle::RefParams{});
  REQUIRE(t.branch_count() == want.size());
  for (std::size_t b = 0; b < want.size(); ++b) {
    CHECK(t.branches[b].terms == want[b].terms);
    for (std::size_t c = 0; c < want[b].class_mass.size(); ++c)
      CHECK_THAT(t.branches[b].class_mass[c], WithinAbs(want[b].class_mass[c], 1e-12));
  }
}

TEST_CASE("the purity threshold stops expansion", "[ldt]") {
  // Every row sits at the same point, so no split can help; an 80% majority
  // satisfies a 0.75 threshold at the root.
  TrainingData d;
  d.n_classes = 2;
  d.partitions = {make_continuous_partition(0.0, 1.0, 3),
                  make_continuous_partition(0.0, 1.0, 3)};
  for (int i = 0; i < 10; ++i) {
    d.masses.push_back({mass_vector(d.partitions[0], 0.5), mass_vector(d.partitions[1], 0.5)});
    d.goal.push_back(i < 8 ? 0 : 1);
  }
  LDTParams loose;
  loose.purity = 0.75;
  LDT t = train_ldt(d, {0, 1}, loose);
  REQUIRE(t.branch_count() == 1);
  CHECK(t.branches[0].class_mass == std::vector<double>{0.8, 0.2});

  // A stricter threshold cannot be met and expands both attributes along
  // the one supported path: 4 empty siblings at depth 1, then a full split
  // of the second attribute under the supported child.
  LDTParams strict;
  strict.purity = 0.9;
  LDT u = train_ldt(d, {0, 1}, strict);
  CHECK(u.branch_count() == 9);
  for (const auto& b : u.branches) CHECK(b.class_mass == std::vector<double>{0.8, 0.2});
}

TEST_CASE("unsupported branches inherit the configured fallback", "[ldt]") {
  // All mass lives on the first focal set; the other four children of the
  // root split see nothing.
  TrainingData d;
  d.n_classes = 2;
  d.partitions = {make_continuous_partition(0.0, 1.0, 3)};
  for (int i = 0; i < 3; ++i) {
    d.masses.push_back({mass_vector(d.partitions[0], 0.0)});
    d.goal.push_back(i < 2 ? 0 : 1);
  }
  const double p0 = 2.0 / 3.0, p1 = 1.0 / 3.0;

  LDTParams parent;  // default fallback
  LDT t = train_ldt(d, {0}, parent);
  REQUIRE(t.branch_count() == 5);
  for (const auto& b : t.branches) {
    CHECK(b.class_mass[0] == p0);
    CHECK(b.class_mass[1] == p1);
  }

  LDTParams uniform;
  uniform.fallback = ZeroMassFallback::Uniform;
  LDT u = train_ldt(d, {0}, uniform);
  REQUIRE(u.branch_count() == 5);
  CHECK(u.branches[0].class_mass[0] == p0);  // the supported branch keeps its data
  for (std::size_t b = 1; b < 5; ++b)
    CHECK(u.branches[b].class_mass == std::vector<double>{0.5, 0.5});
}

TEST_CASE("raising the purity threshold never shrinks the tree", "[ldt]") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    TrainingData d = fixtures::random_training(rng, 50, 3, 3, 2);
    std::size_t prev = 0;
    for (double purity : {0.6, 0.7, 0.8, 0.9, 1.0}) {
      LDTParams prm;
      prm.purity = purity;
      std::size_t beta = train_ldt(d, {0, 1, 2}, prm).branch_count();
      CHECK(beta >= prev);
      prev = beta;
    }
  }
}

TEST_CASE("information gain is never negative", "[ldt]") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    TrainingData d = fixtures::random_training(rng, 40, 3, 3, 3);
    TrainStats stats;
    train_ldt(d, {0, 1, 2}, LDTParams{}, &stats);
    CHECK(stats.expansions > 0);
    CHECK(stats.min_gain >= -1e-12);
  }
}

TEST_CASE("trained branches satisfy the structural invariants", "[ldt]") {
  std::mt19937_64 rng(45);
  TrainingData d = fixtures::random_training(rng, 60, 3, 3, 2);
  LDT t = train_ldt(d, {0, 1, 2}, LDTParams{});
  REQUIRE(t.branch_count() >= 1);
  for (const auto& b : t.branches) {
    double sum = 0.0;
    for (double v : b.class_mass) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-9));
    std::set<int> attrs;
    for (const auto& term : b.terms) CHECK(attrs.insert(term.attr).second);  // distinct
    CHECK(b.terms.size() <= 3);
  }
}

TEST_CASE("branch appropriateness sums to one over the tree", "[ldt]") {
  std::mt19937_64 rng(46);
  SECTION("fully expanded grid tree") {
    TrainingData d = fixtures::full_grid_training();
    LDT t = train_ldt(d, {0, 1}, LDTParams{});
    for (int trial = 0; trial < 100; ++trial) {
      auto row = fixtures::random_row(rng, d.partitions);
      CHECK_THAT(oracle::branch_weight_sum(t.branches, row), WithinAbs(1.0, 1e-9));
    }
  }
  SECTION("purity-stopped trees still tile the input space") {
    TrainingData d = fixtures::random_training(rng, 50, 3, 3, 2);
    LDTParams prm;
    prm.purity = 0.8;
    LDT t = train_ldt(d, {0, 1, 2}, prm);
    for (int trial = 0; trial < 100; ++trial) {
      auto row = fixtures::random_row(rng, d.partitions);
      CHECK_THAT(oracle::branch_weight_sum(t.branches, row), WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("tree inference equals the branch-list enumeration", "[ldt]") {
  std::mt19937_64 rng(47);
  TrainingData d = fixtures::random_training(rng, 50, 3, 3, 3);
  LDT t = train_ldt(d, {0, 1, 2}, LDTParams{});
  for (int trial = 0; trial < 100; ++trial) {
    auto row = fixtures::random_row(rng, d.partitions);
    auto got = t.infer(row);
    auto want = oracle::infer_branches(t.branches, d.n_classes, row);
    REQUIRE(got.size() == want.size());
    double sum = 0.0;
    for (std::size_t c = 0; c < got.size(); ++c) {
      CHECK_THAT(got[c], WithinAbs(want[c], 1e-12));
      sum += got[c];
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("a point-mass input selects a single branch", "[ldt]") {
  TrainingData d = fixtures::full_grid_training();
  LDT t = train_ldt(d, {0, 1}, LDTParams{});
  // Anchors put the whole mass on one focal set per attribute, so exactly
  // one branch fires with weight 1.
  auto row = std::vector<MassVector>{mass_vector(d.partitions[0], d.partitions[0].anchors[2]),
                                     mass_vector(d.partitions[1], d.partitions[1].anchors[4])};
  auto out = t.infer(row);
  bool found = false;
  for (const auto& b : t.branches)
    if (b.terms == std::vector<BranchTerm>{{0, 2}, {1, 4}}) {
      CHECK(out == b.class_mass);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("training rejects invalid inputs", "[ldt]") {
  std::mt19937_64 rng(48);
  TrainingData d = fixtures::random_training(rng, 10, 2, 3, 2);
  LDTParams prm;
  CHECK_THROWS_AS(train_ldt(TrainingData{}, {0}, prm), std::invalid_argument);
  CHECK_THROWS_AS(train_ldt(d, {}, prm), std::invalid_argument);
  CHECK_THROWS_AS(train_ldt(d, {5}, prm), std::invalid_argument);  // unknown attribute
  LDTParams bad;
  bad.purity = 0.5;
  CHECK_THROWS_AS(train_ldt(d, {0}, bad), std::invalid_argument);
  bad.purity = 1.0001;
  CHECK_THROWS_AS(train_ldt(d, {0}, bad), std::invalid_argument);
  TrainingData oneclass = d;
  oneclass.n_classes = 1;
  CHECK_THROWS_AS(train_ldt(oneclass, {0}, prm), std::invalid_argument);
}

TEST_CASE("branch descriptions render readable rules", "[ldt]") {
  std::vector<Partition> parts{make_continuous_partition(0.0, 1.0, 2)};
  std::vector<std::string> names{"width"};
  std::vector<std::string> classes{"no", "yes"};

  Branch empty{{}, {0.25, 0.75}};
  CHECK(describe_branch(empty, parts, names, classes) ==
        "IF ⊤ THEN (no: 0.25, yes: 0.75)");

  Branch one{{{0, 1}}, {1.0, 0.0}};
  CHECK(describe_branch(one, parts, names, classes) ==
        "IF width is {L1,L2} THEN (no: 1, yes: 0)");
}

TEST_CASE("the branch index rejects malformed trees", "[ldt]") {
  std::vector<Partition> parts{make_continuous_partition(0.0, 1.0, 2)};  // 3 focal sets

  SECTION("missing focal child") {
    LDT t;
    t.n_classes = 2;
    t.branches = {{{{0, 0}}, {1.0, 0.0}}, {{{0, 1}}, {0.0, 1.0}}};  // no {0,2} branch
    CHECK_THROWS_WITH(t.build_index(parts), Catch::Matchers::ContainsSubstring("incomplete"));
  }
  SECTION("duplicate branch") {
    LDT t;
    t.n_classes = 2;
    t.branches = {{{{0, 0}}, {1.0, 0.0}}, {{{0, 0}}, {0.0, 1.0}}, {{{0, 1}}, {1.0, 0.0}},
                  {{{0, 2}}, {1.0, 0.0}}};
    CHECK_THROWS_WITH(t.build_index(parts), Catch::Matchers::ContainsSubstring("duplicate"));
  }
  SECTION("conflicting split attributes among siblings") {
    std::vector<Partition> two{make_continuous_partition(0.0, 1.0, 2),
                               make_continuous_partition(0.0, 1.0, 2)};
    LDT t;
    t.n_classes = 2;
    t.branches = {{{{0, 0}}, {1.0, 0.0}}, {{{1, 0}}, {0.0, 1.0}}};
    CHECK_THROWS_WITH(t.build_index(two), Catch::Matchers::ContainsSubstring("conflict"));
  }
  SECTION("unknown attribute or focal id") {
    LDT t;
    t.n_classes = 2;
    t.branches = {{{{3, 0}}, {1.0, 0.0}}};
    CHECK_THROWS_AS(t.build_index(parts), std::runtime_error);
    t.branches = {{{{0, 9}}, {1.0, 0.0}}};
    CHECK_THROWS_AS(t.build_index(parts), std::runtime_error);
  }
  SECTION("wrong class-mass dimension") {
    LDT t;
    t.n_classes = 3;
    t.branches = {{{}, {1.0, 0.0}}};
    CHECK_THROWS_WITH(t.build_index(parts), Catch::Matchers::ContainsSubstring("dimension"));
  }
  SECTION("inference requires a built index") {
    LDT t;
    t.n_classes = 2;
    t.branches = {{{}, {1.0, 0.0}}};
    CHECK_THROWS_AS(t.infer({}), std::logic_error);
  }
}
