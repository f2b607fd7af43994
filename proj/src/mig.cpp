#include "wsd/mig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsd/errors.hpp"

namespace wsd {

double entropy(const Eigen::VectorXd& distribution) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < distribution.size(); ++i) {
    const double p = distribution[i];
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double mutual_information(const Eigen::MatrixXd& joint) {
  const Eigen::VectorXd rows = joint.rowwise().sum();
  const Eigen::RowVectorXd cols = joint.colwise().sum();
  double mi = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      if (p > 0.0) mi += p * std::log(p / (rows[i] * cols[j]));
    }
  }
  return std::max(0.0, mi);
}

MigReport mig_from_information(Eigen::MatrixXd information, const Eigen::VectorXd& factor_entropy) {
  MigReport report;
  const Eigen::Index factors = information.cols();
  report.gap.resize(factors);
  report.best_latent.resize(factors);
  for (Eigen::Index k = 0; k < factors; ++k) {
    if (factor_entropy[k] <= 1e-15) {
      throw Error(Errc::ZeroEntropyFactor, "factor " + std::to_string(k + 1) + " has zero entropy");
    }
    std::vector<Eigen::Index> order(information.rows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return information(a, k) > information(b, k); });
    const double first = information(order[0], k);
    const double second = order.size() > 1 ? information(order[1], k) : 0.0;
    report.gap[k] = (first - second) / factor_entropy[k];
    report.best_latent[k] = static_cast<int>(order[0]);
  }
  report.mean = factors ? std::accumulate(report.gap.begin(), report.gap.end(), 0.0) / factors : 0.0;
  report.information = std::move(information);
  return report;
}

MigReport mig(const EvaluationTarget& target) {
  const MeasuredProcess& p = target.measured();
  const bool generator = target.direction() == Direction::GeneratorBased;
  // Latent coordinates live on the driver side for generator-based targets
  // and on the reading side for encoder-based ones.
  const FactorSpace& latent_space = generator ? p.driver_space : p.reading_space;
  const FactorSpace& factor_space = generator ? p.reading_space : p.driver_space;
  const int n_latent = latent_space.arity();
  const int n_factor = factor_space.arity();

  Eigen::MatrixXd information(n_latent, n_factor);
  Eigen::VectorXd factor_entropy(n_factor);
  for (int k = 0; k < n_factor; ++k) {
    Eigen::VectorXd marginal = Eigen::VectorXd::Zero(factor_space.card(k));
    for (std::size_t m = 0; m < p.support.size(); ++m) {
      const auto factor_tuple = generator ? p.reading[m] : p.support[m];
      marginal[factor_space.value(factor_tuple, k)] += p.mass[m];
    }
    factor_entropy[k] = entropy(marginal);
    for (int j = 0; j < n_latent; ++j) {
      Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(latent_space.card(j), factor_space.card(k));
      for (std::size_t m = 0; m < p.support.size(); ++m) {
        const auto latent_tuple = generator ? p.support[m] : p.reading[m];
        const auto factor_tuple = generator ? p.reading[m] : p.support[m];
        joint(latent_space.value(latent_tuple, j), factor_space.value(factor_tuple, k)) += p.mass[m];
      }
      information(j, k) = mutual_information(joint);
    }
  }
  return mig_from_information(std::move(information), factor_entropy);
}

namespace {

// Equal-mass bin labels from ranks.
std::vector<int> bin_by_rank(const Eigen::VectorXd& values, int bins) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  std::vector<int> label(n);
  for (Eigen::Index r = 0; r < n; ++r) label[order[r]] = static_cast<int>(r * bins / n);
  return label;
}

}  // namespace

MigReport mig(const ContinuousTarget& target, std::uint64_t seed, std::size_t samples, int bins) {
  if (samples == 0 || bins < 2) throw Error(Errc::InvalidArgument, "MIG needs samples > 0 and bins >= 2");
  const bool generator = target.direction == Direction::GeneratorBased;
  const ContinuousWorld& driver = generator ? target.model->latent_prior() : *target.oracle;
  const auto n = static_cast<Eigen::Index>(samples);
  Eigen::MatrixXd latent(n, 3), factor(n, 3);
  Rng rng(derive_seed(seed, 0x6d6967ULL));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector3 v = driver.sample(rng);
    if (generator) {
      latent.row(i) = v.transpose();
      factor.row(i) = target.oracle->encode(target.model->generate(v)).transpose();
    } else {
      factor.row(i) = v.transpose();
      latent.row(i) = target.model->encode(target.oracle->generate(v)).transpose();
    }
  }

  std::vector<std::vector<int>> latent_bins, factor_bins;
  for (int c = 0; c < 3; ++c) {
    latent_bins.push_back(bin_by_rank(latent.col(c), bins));
    factor_bins.push_back(bin_by_rank(factor.col(c), bins));
  }
  Eigen::MatrixXd information(3, 3);
  Eigen::VectorXd factor_entropy(3);
  const double w = 1.0 / static_cast<double>(n);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd marginal = Eigen::VectorXd::Zero(bins);
    for (Eigen::Index i = 0; i < n; ++i) marginal[factor_bins[k][i]] += w;
    factor_entropy[k] = entropy(marginal);
    for (int j = 0; j < 3; ++j) {
      Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(bins, bins);
      for (Eigen::Index i = 0; i < n; ++i) joint(latent_bins[j][i], factor_bins[k][i]) += w;
      information(j, k) = mutual_information(joint);
    }
  }
  return mig_from_information(std::move(information), factor_entropy);
}

}  // namespace wsd
