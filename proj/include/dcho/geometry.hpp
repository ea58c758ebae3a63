#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <span>

#include "dcho/errors.hpp"

namespace dcho {

template <typename Scalar>
using Point3T = Eigen::Matrix<Scalar, 3, 1>;
using Point3 = Point3T<double>;

/// Axis-aligned box obstacle; `min()` <= `max()` componentwise.
template <typename Scalar>
using ObstacleT = Eigen::AlignedBox<Scalar, 3>;
using Obstacle = ObstacleT<double>;

inline constexpr double kKmhPerMps = 3.6;

/// Straight-line motion at constant speed.
template <typename Scalar>
struct TrajectoryT {
  Point3T<Scalar> start = Point3T<Scalar>::Zero();
  Point3T<Scalar> direction = Point3T<Scalar>::UnitY();
  Scalar speed_kmh = Scalar(0);

  Scalar speed_mps() const { return speed_kmh / Scalar(kKmhPerMps); }
};
using Trajectory = TrajectoryT<double>;

/// Throws DomainError unless |direction| = 1 within 1e-9, speed >= 0 and the
/// start point is finite.
template <typename Scalar>
void validate(const TrajectoryT<Scalar>& traj) {
  using std::abs;
  if (!traj.start.allFinite()) throw DomainError("trajectory start must be finite");
  if (!(abs(traj.direction.norm() - Scalar(1)) <= Scalar(1e-9))) {
    throw DomainError("trajectory direction must be a unit vector");
  }
  if (!(traj.speed_kmh >= Scalar(0))) throw DomainError("trajectory speed must be >= 0");
}

template <typename Scalar>
Point3T<Scalar> position_at(const TrajectoryT<Scalar>& traj, Scalar t_s) {
  return traj.start + traj.direction * (traj.speed_mps() * t_s);
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar distance_3d(const Eigen::MatrixBase<DerivedA>& a,
                                      const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).norm();
}

/// True when the open segment (a, b) passes through the interior of `box`.
/// Touching a face, edge or corner does not count.
template <typename Scalar>
bool segment_crosses(const Point3T<Scalar>& a, const Point3T<Scalar>& b,
                     const ObstacleT<Scalar>& box) {
  if (a == b) return false;
  Scalar t_enter(0);
  Scalar t_exit(1);
  const Point3T<Scalar> d = b - a;
  for (int axis = 0; axis < 3; ++axis) {
    const Scalar lo = box.min()(axis);
    const Scalar hi = box.max()(axis);
    if (d(axis) == Scalar(0)) {
      if (!(a(axis) > lo && a(axis) < hi)) return false;
      continue;
    }
    Scalar t0 = (lo - a(axis)) / d(axis);
    Scalar t1 = (hi - a(axis)) / d(axis);
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
    if (!(t_enter < t_exit)) return false;
  }
  return t_enter < t_exit;
}

/// Number of obstacles whose interior the segment (a, b) crosses.
template <typename Scalar>
int blockage_count(const Point3T<Scalar>& a, const Point3T<Scalar>& b,
                   std::span<const ObstacleT<Scalar>> obstacles) {
  return static_cast<int>(std::count_if(obstacles.begin(), obstacles.end(),
                                        [&](const auto& box) { return segment_crosses(a, b, box); }));
}

inline int blockage_count(const Point3& a, const Point3& b, std::span<const Obstacle> obstacles) {
  return blockage_count<double>(a, b, obstacles);
}

}  // namespace dcho
