#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wsd/supervision.hpp"

namespace wsd {

inline constexpr std::size_t kPermutationRounds = 199;
inline constexpr double kMatchSignificance = 0.01;

struct TwoSampleResult {
  bool matched = false;
  double statistic = 0.0;
  double threshold = 0.0;  // (1 - alpha) quantile of the permutation statistics
  double p_value = 1.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sliced energy two-sample test. Both samples are projected on every
/// coordinate axis, on `extra_directions`, and on seeded random directions;
/// the statistic sums the 1-D energy distances of the standardized
/// projections. Significance is calibrated by label permutation.
TwoSampleResult two_sample_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::uint64_t seed,
                                const std::vector<Eigen::VectorXd>& extra_directions = {},
                                std::size_t permutations = kPermutationRounds, double alpha = kMatchSignificance);

/// Stacks records into feature rows: labeling [x, s_I]; match [x, x'];
/// rank [x, x', y].
Eigen::MatrixXd record_features(const std::vector<ContinuousRecord>& records, const SupervisionSpec& spec, int arity);

/// Compares N augmented records from the oracle against N from the model.
TwoSampleResult mc_match_check(const ContinuousCandidate& model, const ContinuousWorld& oracle,
                               const SupervisionSpec& spec, std::uint64_t seed, std::size_t samples);

}  // namespace wsd
