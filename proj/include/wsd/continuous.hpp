#pragma once

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "wsd/index_set.hpp"
#include "wsd/rng.hpp"

namespace wsd {

using Vector3 = Eigen::Vector3d;

/// Rotates the last two coordinates of `z` by the angle in its first.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> rotate_by_first(const Eigen::MatrixBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3)
  Eigen::Matrix<Scalar, 3, 1> out;
  out(0) = z(0);
  out.template tail<2>() = Eigen::Rotation2D<Scalar>(z(0)) * z.template tail<2>();
  return out;
}

/// Inverse of rotate_by_first.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> unrotate_by_first(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3)
  Eigen::Matrix<Scalar, 3, 1> out;
  out(0) = x(0);
  out.template tail<2>() = Eigen::Rotation2D<Scalar>(-x(0)) * x.template tail<2>();
  return out;
}

enum class ContinuousFamily { DiskRotation };

/// Parametric oracle: s1 ~ unif[0, 2pi), (s2, s3) ~ unif(unit disk), g* = e* = id.
/// The factor blocks {s1} and {s2, s3} are independent.
class ContinuousWorld {
 public:
  static ContinuousWorld disk_rotation() { return ContinuousWorld(); }

  ContinuousFamily family() const { return ContinuousFamily::DiskRotation; }
  int arity() const { return 3; }
  int observation_dim() const { return 3; }

  Vector3 sample(Rng& rng) const;
  /// Redraws the coordinates in `resampled` from p(. | remaining coordinates).
  Vector3 resample(const Vector3& factors, IndexSet resampled, Rng& rng) const;
  bool in_support(const Vector3& factors) const;

  Vector3 generate(const Vector3& factors) const { return factors; }
  Vector3 encode(const Vector3& observation) const { return observation; }
};

enum class ContinuousMap { Identity, Rotation };

/// Latent model over the same factor family as its oracle.
class ContinuousCandidate {
 public:
  ContinuousCandidate(ContinuousWorld base, ContinuousMap map) : base_(base), map_(map) {}

  const ContinuousWorld& latent_prior() const { return base_; }
  ContinuousMap map() const { return map_; }

  Vector3 generate(const Vector3& z) const {
    return map_ == ContinuousMap::Rotation ? rotate_by_first(z) : base_.generate(z);
  }
  Vector3 encode(const Vector3& x) const {
    return map_ == ContinuousMap::Rotation ? unrotate_by_first(x) : base_.encode(x);
  }

 private:
  ContinuousWorld base_;
  ContinuousMap map_;
};

struct RotationSetup {
  ContinuousWorld world;
  ContinuousCandidate candidate;
};

/// The disk oracle with a candidate whose generator rotates (z2, z3) by z1.
RotationSetup rotation_world();

}  // namespace wsd
