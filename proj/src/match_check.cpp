#include "wsd/match_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wsd/errors.hpp"
#include "wsd/parallel.hpp"

namespace wsd {

namespace {

// One projection: pooled values in sorted order with the gaps between
// consecutive values, standardized by the pooled standard deviation.
struct Slice {
  std::vector<std::size_t> order;
  std::vector<double> gap;  // gap[r] = value[order[r+1]] - value[order[r]]
};

Slice make_slice(const Eigen::VectorXd& values) {
  Slice s;
  const auto n = static_cast<std::size_t>(values.size());
  const double mean = values.mean();
  const double sd = std::sqrt((values.array() - mean).square().sum() / static_cast<double>(n));
  const double scale = sd > 0.0 ? 1.0 / sd : 0.0;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  s.gap.resize(n > 0 ? n - 1 : 0);
  for (std::size_t r = 0; r + 1 < n; ++r) s.gap[r] = (values[s.order[r + 1]] - values[s.order[r]]) * scale;
  return s;
}

// 1-D energy distance 2 * integral (F_a - F_b)^2 for the labelling `from_a`.
double slice_energy(const Slice& s, const std::vector<char>& from_a, double na, double nb) {
  double fa = 0.0, fb = 0.0, total = 0.0;
  for (std::size_t r = 0; r + 1 < s.order.size(); ++r) {
    if (from_a[s.order[r]]) fa += 1.0 / na;
    else fb += 1.0 / nb;
    const double d = fa - fb;
    total += d * d * s.gap[r];
  }
  return 2.0 * total;
}

}  // namespace

TwoSampleResult two_sample_test(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::uint64_t seed,
                                const std::vector<Eigen::VectorXd>& extra_directions, std::size_t permutations,
                                double alpha) {
  if (a.cols() != b.cols()) throw Error(Errc::ArityMismatch, "samples have different dimensions");
  if (a.rows() == 0 || b.rows() == 0) throw Error(Errc::InvalidArgument, "empty sample");
  const Eigen::Index dim = a.cols();
  Eigen::MatrixXd pooled(a.rows() + b.rows(), dim);
  pooled << a, b;

  std::vector<Eigen::VectorXd> directions;
  for (Eigen::Index c = 0; c < dim; ++c) directions.push_back(Eigen::VectorXd::Unit(dim, c));
  for (const auto& d : extra_directions) {
    if (d.size() != dim) throw Error(Errc::ArityMismatch, "direction dimension");
    directions.push_back(d.normalized());
  }
  Rng rng(derive_seed(seed, 0x646972ULL));
  std::normal_distribution<double> normal;
  for (int r = 0; r < 8; ++r) {
    Eigen::VectorXd d(dim);
    for (Eigen::Index c = 0; c < dim; ++c) d[c] = normal(rng);
    directions.push_back(d.normalized());
  }

  std::vector<Slice> slices(directions.size());
  parallel_for(directions.size(), [&](std::size_t i) { slices[i] = make_slice(pooled * directions[i]); });

  const double na = static_cast<double>(a.rows());
  const double nb = static_cast<double>(b.rows());
  auto statistic = [&](const std::vector<char>& from_a) {
    double t = 0.0;
    for (const auto& s : slices) t += slice_energy(s, from_a, na, nb);
    return t;
  };

  std::vector<char> labels(pooled.rows(), 0);
  std::fill(labels.begin(), labels.begin() + a.rows(), 1);

  TwoSampleResult result;
  result.seed = seed;
  result.samples = static_cast<std::size_t>(a.rows());
  result.statistic = statistic(labels);

  std::vector<double> null_stats(permutations);
  parallel_for(permutations, [&](std::size_t p) {
    Rng prng(derive_seed(seed ^ 0x7065726dULL, p));
    std::vector<char> shuffled = labels;
    std::shuffle(shuffled.begin(), shuffled.end(), prng);
    null_stats[p] = statistic(shuffled);
  });
  const auto exceed = std::count_if(null_stats.begin(), null_stats.end(),
                                    [&](double t) { return t >= result.statistic; });
  result.p_value = (1.0 + static_cast<double>(exceed)) / (1.0 + static_cast<double>(permutations));
  std::vector<double> sorted = null_stats;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty()) {
    const auto q = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(sorted.size()))) - 1;
    result.threshold = sorted[std::min(q, sorted.size() - 1)];
  }
  result.matched = result.p_value > alpha;
  return result;
}

Eigen::MatrixXd record_features(const std::vector<ContinuousRecord>& records, const SupervisionSpec& spec,
                                int arity) {
  const SupervisionSpec c = spec.canonical(arity);
  Eigen::Index width = 3;
  if (c.kind == SupervisionKind::RestrictedLabeling) width += c.set.size();
  if (c.kind == SupervisionKind::MatchPairing) width += 3;
  if (c.kind == SupervisionKind::RankPairing) width += 4;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(records.size()), width);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const auto& r = records[i];
    out.row(i).head<3>() = r.x.transpose();
    if (c.kind == SupervisionKind::RestrictedLabeling) {
      for (std::size_t l = 0; l < r.labels.size(); ++l) out(i, 3 + static_cast<Eigen::Index>(l)) = r.labels[l];
    } else {
      out.row(i).segment<3>(3) = r.x2.transpose();
      if (c.kind == SupervisionKind::RankPairing) out(i, 6) = r.y;
    }
  }
  return out;
}

TwoSampleResult mc_match_check(const ContinuousCandidate& model, const ContinuousWorld& oracle,
                               const SupervisionSpec& spec, std::uint64_t seed, std::size_t samples) {
  const int arity = oracle.arity();
  const Eigen::MatrixXd data = record_features(sample(oracle, spec, derive_seed(seed, 1), samples), spec, arity);
  const Eigen::MatrixXd generated = record_features(sample(model, spec, derive_seed(seed, 2), samples), spec, arity);

  // Paired records also get the coordinate-wise differences x - x'.
  std::vector<Eigen::VectorXd> extra;
  if (data.cols() >= 6) {
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(data.cols());
      d[k] = 1.0;
      d[k + 3] = -1.0;
      extra.push_back(d);
    }
  }
  return two_sample_test(data, generated, seed, extra);
}

}  // namespace wsd
