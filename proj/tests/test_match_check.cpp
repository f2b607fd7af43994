#include <doctest.h>

#include <random>

#include "wsd/match_check.hpp"

using namespace wsd;

TEST_SUITE("match_check") {
  TEST_CASE("oracle against itself passes the two-sample test") {
    const ContinuousWorld w = ContinuousWorld::disk_rotation();
    const ContinuousCandidate id(w, ContinuousMap::Identity);
    for (const auto& spec : {SupervisionSpec{SupervisionKind::RestrictedLabeling, IndexSet{0}},
                             SupervisionSpec{SupervisionKind::SharePairing, IndexSet{1}}}) {
      const TwoSampleResult r = mc_match_check(id, w, spec, 3, 5000);
      CHECK(r.matched);
      CHECK(r.p_value > 0.01);
      CHECK(r.samples == 5000);
    }
  }

  TEST_CASE("rotation candidate matches the labeling on the angle") {
    const RotationSetup setup = rotation_world();
    const TwoSampleResult r =
        mc_match_check(setup.candidate, setup.world, {SupervisionKind::RestrictedLabeling, IndexSet{0}}, 4, 20000);
    CHECK(r.matched);
  }

  TEST_CASE("rotation candidate fails share pairing on factor 2") {
    const RotationSetup setup = rotation_world();
    const TwoSampleResult r =
        mc_match_check(setup.candidate, setup.world, {SupervisionKind::SharePairing, IndexSet{1}}, 4, 20000);
    CHECK_FALSE(r.matched);
    CHECK(r.statistic > r.threshold);
    CHECK(r.p_value <= 0.01);
  }

  TEST_CASE("two-sample test detects a shifted Gaussian and is deterministic") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(2000, 2), b(2000, 2);
    for (int i = 0; i < 2000; ++i) {
      a(i, 0) = normal(rng);
      a(i, 1) = normal(rng);
      b(i, 0) = normal(rng) + 0.3;
      b(i, 1) = normal(rng);
    }
    const TwoSampleResult r = two_sample_test(a, b, 9);
    CHECK_FALSE(r.matched);
    const TwoSampleResult again = two_sample_test(a, b, 9);
    CHECK(r.statistic == again.statistic);
    CHECK(r.p_value == again.p_value);
    CHECK_THROWS_AS(two_sample_test(a, Eigen::MatrixXd(3, 3), 1), std::exception);
  }

  TEST_CASE("null rejection rate is near the significance level") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    int rejected = 0;
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXd a(300, 2), b(300, 2);
      for (int i = 0; i < 300; ++i) {
        a(i, 0) = normal(rng);
        a(i, 1) = normal(rng);
        b(i, 0) = normal(rng);
        b(i, 1) = normal(rng);
      }
      rejected += !two_sample_test(a, b, trial, {}, 99).matched;
    }
    CHECK(rejected <= 6);
  }
}
