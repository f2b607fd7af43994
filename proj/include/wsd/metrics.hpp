#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wsd/continuous.hpp"
#include "wsd/fact.hpp"
#include "wsd/model.hpp"

namespace wsd {

inline constexpr double kDegeneracyThreshold = 1e-9;
inline constexpr std::size_t kBootstrapResamples = 200;

enum class Direction { GeneratorBased, EncoderBased };
enum class ScoreKind { Consistency, Restrictiveness };
enum class Mode { Exact, MonteCarlo };

const char* to_string(Direction direction);
const char* to_string(ScoreKind kind);
const char* to_string(Mode mode);

/// Output record of a normalized score. `degenerate` marks a record whose
/// denominator fell below the degeneracy threshold (score is then NaN).
struct ScoreReport {
  Direction direction = Direction::GeneratorBased;
  ScoreKind kind = ScoreKind::Consistency;
  IndexSet set;
  double score = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  Mode mode = Mode::Exact;
  std::size_t samples = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  bool degenerate = false;
};

/// A driver distribution over tuples together with the tuple each one is
/// read as. Generator-based: z ~ q read through e* o g. Encoder-based:
/// s ~ p* read through e o g*.
struct MeasuredProcess {
  FactorSpace driver_space;
  FactorSpace reading_space;
  std::vector<std::int64_t> support;
  std::vector<double> mass;
  std::vector<std::int64_t> reading;
};

/// (model, oracle, direction) triple for discrete worlds.
class EvaluationTarget {
 public:
  EvaluationTarget(const CandidateModel& model, Direction direction);

  Direction direction() const { return direction_; }
  const CandidateModel& model() const { return *model_; }
  const MeasuredProcess& measured() const { return measured_; }
  int arity() const { return measured_.driver_space.arity(); }

 private:
  const CandidateModel* model_;
  Direction direction_;
  MeasuredProcess measured_;
};

/// E over (condition on `given`, redraw the rest twice) of the number of
/// coordinates in `measured` on which the two readings differ. `given` = {}
/// gives the i.i.d.-pair expectation.
double pair_deviation(const MeasuredProcess& process, IndexSet given, IndexSet measured);

double raw_consistency(const EvaluationTarget& target, IndexSet set);
double raw_restrictiveness(const EvaluationTarget& target, IndexSet set);

/// 1 - num/den, exact. Throws DegenerateDenominator.
ScoreReport normalized_consistency(const EvaluationTarget& target, IndexSet set);
ScoreReport normalized_restrictiveness(const EvaluationTarget& target, IndexSet set);
ScoreReport normalized_score(const EvaluationTarget& target, ScoreKind kind, IndexSet set);

/// Monte-Carlo estimate with bootstrap standard error; independent of the
/// worker count for a fixed seed.
ScoreReport normalized_score_mc(const EvaluationTarget& target, ScoreKind kind, IndexSet set, std::uint64_t seed,
                                std::size_t samples, std::size_t resamples = kBootstrapResamples);

/// Continuous oracle and candidate evaluated in one direction.
struct ContinuousTarget {
  const ContinuousWorld* oracle;
  const ContinuousCandidate* model;
  Direction direction;
};

ScoreReport normalized_score_mc(const ContinuousTarget& target, ScoreKind kind, IndexSet set, std::uint64_t seed,
                                std::size_t samples, std::size_t resamples = kBootstrapResamples);

/// C(I) iff raw consistency <= tol; R(I) likewise; D(I) both.
bool holds(const EvaluationTarget& target, const Fact& fact, double tol = kMassTolerance);

/// Numerator and denominator sample streams feeding a Monte-Carlo score.
struct PairSampler {
  std::function<double(Rng&)> conditional_pair;
  std::function<double(Rng&)> iid_pair;
};

ScoreReport estimate_score(const PairSampler& sampler, std::uint64_t seed, std::size_t samples,
                           std::size_t resamples);

}  // namespace wsd
