#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "spinsqueeze/spin_algebra.hpp"

namespace spinsqueeze {

/// Below this value the squeezing denominator <J_n2>^2 + <J_n3>^2 is treated
/// as zero and the direction reported as undefined (0/0 territory).
inline constexpr double kDenominatorCutoff = 1e-12;

/// Squeezing data for one measurement axis n1:
///   xi2 = 2j (Delta J_n1)^2 / (<J_n2>^2 + <J_n3>^2).
struct SqueezingReport {
  Direction n1;
  double xi2 = 0.0;
  double variance_n1 = 0.0;
  Eigen::Vector3d mean_spin = Eigen::Vector3d::Zero();
  double denominator = 0.0;
};

/// (<J_x>, <J_y>, <J_z>) with the given operator set.
inline Eigen::Vector3d mean_spin(const StateVector& psi, const CartesianOperators& ops) {
  return Eigen::Vector3d(expectation(ops.jx, psi).real(), expectation(ops.jy, psi).real(),
                         expectation(ops.jz, psi).real());
}

inline Eigen::Vector3d mean_spin(const StateVector& psi) {
  return mean_spin(psi, cartesian_components(psi.space()));
}

/// Completes n1 to a right-handed orthonormal triad (n1, n2, n3). The helper
/// axis is the coordinate axis with the smallest |component of n1| (ties go
/// x before y before z), which keeps the construction stable when n1 is near
/// a coordinate axis; n3 = normalize(n1 x axis), n2 = n3 x n1, so that
/// n1 = n2 x n3 and the canonical case n1 = z yields (x, y).
inline std::pair<Direction, Direction> orthogonal_triad(const Direction& n1) {
  const Eigen::Vector3d v = n1.vec();
  int smallest = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) < std::abs(v[smallest])) smallest = i;
  }
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  axis[smallest] = 1.0;
  const Eigen::Vector3d n3 = v.cross(axis).normalized();
  const Eigen::Vector3d n2 = n3.cross(v);
  return {Direction(n2.x(), n2.y(), n2.z()), Direction(n3.x(), n3.y(), n3.z())};
}

/// Squeezing parameter with an explicitly supplied triad and operator set.
/// n2 and n3 must be orthogonal to n1 and to each other. The denominator is
/// evaluated as (n2 . <J>)^2 + (n3 . <J>)^2, which is the literal
/// <J_n2>^2 + <J_n3>^2 by linearity of the expectation.
inline SqueezingReport squeezing_parameter(const StateVector& psi, const Direction& n1,
                                           const Direction& n2, const Direction& n3,
                                           const CartesianOperators& ops) {
  if (std::abs(n1.vec().dot(n2.vec())) > 1e-10 || std::abs(n1.vec().dot(n3.vec())) > 1e-10 ||
      std::abs(n2.vec().dot(n3.vec())) > 1e-10) {
    throw std::invalid_argument("squeezing_parameter: (n1, n2, n3) must be orthogonal");
  }
  SqueezingReport report{n1};
  report.mean_spin = mean_spin(psi, ops);
  const double m2 = n2.vec().dot(report.mean_spin);
  const double m3 = n3.vec().dot(report.mean_spin);
  report.denominator = m2 * m2 + m3 * m3;
  if (report.denominator < kDenominatorCutoff) {
    throw undefined_direction_error("undefined squeezing direction: mean spin parallel to n1 or zero");
  }
  report.variance_n1 = variance(direction_component(ops, n1), psi);
  report.xi2 = psi.space().two_j() * report.variance_n1 / report.denominator;
  return report;
}

inline SqueezingReport squeezing_parameter(const StateVector& psi, const Direction& n1,
                                           const CartesianOperators& ops) {
  const auto [n2, n3] = orthogonal_triad(n1);
  return squeezing_parameter(psi, n1, n2, n3, ops);
}

inline SqueezingReport squeezing_parameter(const StateVector& psi, const Direction& n1) {
  return squeezing_parameter(psi, n1, cartesian_components(psi.space()));
}

/// Per-axis reports for n1 = x, y, z. An axis whose denominator falls below
/// the cutoff is left empty instead of suppressing the other axes.
struct AxisReports {
  std::optional<SqueezingReport> x, y, z;
};

inline AxisReports squeezing_xyz(const StateVector& psi, const CartesianOperators& ops) {
  AxisReports reports;
  const std::array<Direction, 3> axes{Direction::x_axis(), Direction::y_axis(),
                                      Direction::z_axis()};
  std::array<std::optional<SqueezingReport>*, 3> slots{&reports.x, &reports.y, &reports.z};
  for (int i = 0; i < 3; ++i) {
    try {
      *slots[i] = squeezing_parameter(psi, axes[i], ops);
    } catch (const undefined_direction_error&) {
      // axis stays empty
    }
  }
  return reports;
}

inline AxisReports squeezing_xyz(const StateVector& psi) {
  return squeezing_xyz(psi, cartesian_components(psi.space()));
}

}  // namespace spinsqueeze
