#include "wsd/continuous.hpp"

#include <numbers>

namespace wsd {

namespace {

Eigen::Vector2d sample_disk(Rng& rng) {
  for (;;) {
    Eigen::Vector2d p(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
    if (p.squaredNorm() <= 1.0) return p;
  }
}

double sample_chord(double other, Rng& rng) {
  const double half = std::sqrt(std::max(0.0, 1.0 - other * other));
  return half * (2.0 * uniform01(rng) - 1.0);
}

}  // namespace

Vector3 ContinuousWorld::sample(Rng& rng) const {
  Vector3 s;
  s(0) = 2.0 * std::numbers::pi * uniform01(rng);
  s.tail<2>() = sample_disk(rng);
  return s;
}

Vector3 ContinuousWorld::resample(const Vector3& factors, IndexSet resampled, Rng& rng) const {
  Vector3 s = factors;
  if (resampled.contains(0)) s(0) = 2.0 * std::numbers::pi * uniform01(rng);
  const bool r1 = resampled.contains(1);
  const bool r2 = resampled.contains(2);
  if (r1 && r2) {
    s.tail<2>() = sample_disk(rng);
  } else if (r1) {
    s(1) = sample_chord(s(2), rng);
  } else if (r2) {
    s(2) = sample_chord(s(1), rng);
  }
  return s;
}

bool ContinuousWorld::in_support(const Vector3& factors) const {
  return factors(0) >= 0.0 && factors(0) < 2.0 * std::numbers::pi && factors.tail<2>().squaredNorm() <= 1.0;
}

RotationSetup rotation_world() {
  const auto world = ContinuousWorld::disk_rotation();
  return {world, ContinuousCandidate(world, ContinuousMap::Rotation)};
}

}  // namespace wsd
