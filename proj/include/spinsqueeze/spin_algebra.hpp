#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "spinsqueeze/errors.hpp"
#include "spinsqueeze/numeric.hpp"

namespace spinsqueeze {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// The (2j+1)-dimensional angular-momentum Hilbert space. 2j is stored as an
/// integer so half-integer j is exact; all formulas below are written in
/// terms of two_j.
class SpinSpace {
 public:
  explicit SpinSpace(int two_j) : two_j_(two_j) {
    if (two_j < 0) throw std::invalid_argument("SpinSpace: two_j must be nonnegative");
  }

  int two_j() const { return two_j_; }
  int dim() const { return two_j_ + 1; }
  double j() const { return 0.5 * two_j_; }

  friend bool operator==(const SpinSpace&, const SpinSpace&) = default;

 private:
  int two_j_;
};

inline SpinSpace make_space(int two_j) { return SpinSpace(two_j); }

/// Unit 3-vector. Construction enforces |x^2+y^2+z^2 - 1| <= 1e-12, so any
/// Direction in circulation is a valid measurement axis.
class Direction {
 public:
  Direction(double x, double y, double z) : v_(x, y, z) {
    if (std::abs(v_.squaredNorm() - 1.0) > 1e-12) {
      throw std::invalid_argument("Direction: components must form a unit vector");
    }
  }

  static Direction normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n == 0.0) throw std::invalid_argument("Direction: zero vector");
    return Direction(x / n, y / n, z / n);
  }

  static Direction x_axis() { return Direction(1.0, 0.0, 0.0); }
  static Direction y_axis() { return Direction(0.0, 1.0, 0.0); }
  static Direction z_axis() { return Direction(0.0, 0.0, 1.0); }

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

 private:
  Eigen::Vector3d v_;
};

/// Dense complex operator on a SpinSpace. The hermitian flag is asserted at
/// construction (full check in debug builds only) and trusted afterwards;
/// expectation and variance rely on it.
class Operator {
 public:
  Operator(SpinSpace space, Matrix entries, bool hermitian)
      : space_(space), entries_(std::move(entries)), hermitian_(hermitian) {
    if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
      throw std::invalid_argument("Operator: entries must be dim x dim");
    }
    assert(!hermitian_ ||
           (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }

  const SpinSpace& space() const { return space_; }
  const Matrix& entries() const { return entries_; }
  bool hermitian() const { return hermitian_; }

  Operator adjoint() const { return Operator(space_, entries_.adjoint(), hermitian_); }

 private:
  SpinSpace space_;
  Matrix entries_;
  bool hermitian_;
};

/// Normalized state over the number basis |n>, n = 0..2j.
class StateVector {
 public:
  StateVector(SpinSpace space, Vector amplitudes)
      : space_(space), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.dim()) {
      throw std::invalid_argument("StateVector: amplitude count must equal dim");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("StateVector: amplitudes must have unit norm");
    }
  }

  /// Scales an arbitrary nonzero amplitude vector to unit norm.
  static StateVector normalized(SpinSpace space, Vector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::invalid_argument("StateVector: cannot normalize zero or non-finite vector");
    }
    return StateVector(space, amplitudes / n);
  }

  /// The number state |n>.
  static StateVector basis(SpinSpace space, int n) {
    if (n < 0 || n >= space.dim()) throw std::invalid_argument("StateVector: basis index out of range");
    Vector a = Vector::Zero(space.dim());
    a[n] = Complex(1.0, 0.0);
    return StateVector(space, std::move(a));
  }

  const SpinSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  SpinSpace space_;
  Vector amplitudes_;
};

/// Number operator: diag(0, 1, ..., 2j). Satisfies N = J_z + j.
inline Operator number_operator(const SpinSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) m(n, n) = Complex(n, 0.0);
  return Operator(space, std::move(m), true);
}

/// Lowering operator: J-|n> = sqrt(n(2j-n+1)) |n-1>, J-|0> = 0.
inline Operator ladder_lowering(const SpinSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 1; n < space.dim(); ++n) {
    m(n - 1, n) = Complex(std::sqrt(double(n) * double(space.two_j() - n + 1)), 0.0);
  }
  return Operator(space, std::move(m), false);
}

/// Raising operator J+ = (J-)^dagger.
inline Operator ladder_raising(const SpinSpace& space) {
  return ladder_lowering(space).adjoint();
}

struct CartesianOperators {
  Operator jx, jy, jz;
};

/// J_x = (J+ + J-)/2, J_y = (J+ - J-)/(2i), J_z = N - j. All hermitian and
/// closing the su(2) algebra [J_x, J_y] = i J_z (cyclic).
inline CartesianOperators cartesian_components(const SpinSpace& space) {
  const Matrix jm = ladder_lowering(space).entries();
  const Matrix jp = jm.adjoint();
  Matrix jx = 0.5 * (jp + jm);
  Matrix jy = Complex(0.0, -0.5) * (jp - jm);
  Matrix jz = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) jz(n, n) = Complex(n - space.j(), 0.0);
  return CartesianOperators{Operator(space, std::move(jx), true),
                            Operator(space, std::move(jy), true),
                            Operator(space, std::move(jz), true)};
}

/// J_n = n . J for a unit direction n.
inline Operator direction_component(const SpinSpace& space, const Direction& n) {
  const CartesianOperators ops = cartesian_components(space);
  Matrix m = n.x() * ops.jx.entries() + n.y() * ops.jy.entries() + n.z() * ops.jz.entries();
  return Operator(space, std::move(m), true);
}

inline Operator direction_component(const CartesianOperators& ops, const Direction& n) {
  Matrix m = n.x() * ops.jx.entries() + n.y() * ops.jy.entries() + n.z() * ops.jz.entries();
  return Operator(ops.jx.space(), std::move(m), true);
}

/// Parity operator diag((-1)^n); an involution.
inline Operator parity_operator(const SpinSpace& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) m(n, n) = Complex(n % 2 == 0 ? 1.0 : -1.0, 0.0);
  return Operator(space, std::move(m), true);
}

/// <psi| op |psi>. Imaginary part is rounding noise when op is hermitian.
inline Complex expectation(const Operator& op, const StateVector& psi) {
  if (op.space() != psi.space()) {
    throw std::invalid_argument("expectation: operator and state live on different spaces");
  }
  return psi.amplitudes().dot(op.entries() * psi.amplitudes());
}

/// <op^2> - <op>^2 for a hermitian operator, clamped to >= 0.
inline double variance(const Operator& op, const StateVector& psi) {
  if (!op.hermitian()) throw std::invalid_argument("variance: operator must be hermitian");
  if (op.space() != psi.space()) {
    throw std::invalid_argument("variance: operator and state live on different spaces");
  }
  const Vector w = op.entries() * psi.amplitudes();
  const double second = w.squaredNorm();
  const double first = psi.amplitudes().dot(w).real();
  const double v = second - first * first;
  assert(v >= -1e-12);
  return v < 0.0 ? 0.0 : v;
}

}  // namespace spinsqueeze
