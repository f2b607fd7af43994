#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wsd/metrics.hpp"

namespace wsd {

inline constexpr int kMigBins = 20;

/// Per-factor mutual information gap: (I(z_j*; s_k) - I(z_j**; s_k)) / H(s_k)
/// with j*, j** the two most informative latents. A single-latent model
/// uses 0 for the runner-up.
struct MigReport {
  std::vector<double> gap;        // per factor
  std::vector<int> best_latent;   // j* per factor
  Eigen::MatrixXd information;    // (latent j, factor k) in nats
  double mean = 0.0;
};

/// Mutual information (nats) of a joint probability table.
double mutual_information(const Eigen::MatrixXd& joint);
double entropy(const Eigen::VectorXd& distribution);

/// Exact discrete MIG over the alignment. Throws ZeroEntropyFactor.
MigReport mig(const EvaluationTarget& target);

/// Sample-based MIG with equal-mass binning of every coordinate.
MigReport mig(const ContinuousTarget& target, std::uint64_t seed, std::size_t samples, int bins = kMigBins);

/// MIG from a latent-by-factor information matrix and factor entropies.
MigReport mig_from_information(Eigen::MatrixXd information, const Eigen::VectorXd& factor_entropy);

}  // namespace wsd
