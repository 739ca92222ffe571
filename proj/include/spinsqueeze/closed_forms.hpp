#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "spinsqueeze/errors.hpp"
#include "spinsqueeze/nonlinear_function.hpp"
#include "spinsqueeze/numeric.hpp"

namespace spinsqueeze {

/// Number-operator statistics of the SCS (time independent under diagonal
/// evolution).
struct MomentSet {
  double mean_n = 0.0;   // <N>
  double mean_n2 = 0.0;  // <N^2>
  double var_n = 0.0;    // (Delta N)^2
};

/// G(lambda) = <lambda^N> = (1 + lambda|eta|^2)^(2j) / (1 + |eta|^2)^(2j).
/// Requires 1 + lambda|eta|^2 > 0. Evaluated as (1 + (lambda-1) r)^(2j) with
/// r = |eta|^2/(1+|eta|^2), which stays in range for any finite eta and is
/// exactly 1 at lambda = 1.
inline double generating_function(int two_j, Complex eta, double lambda) {
  if (two_j < 0) throw std::invalid_argument("generating_function: negative two_j");
  const double m2 = std::norm(eta);
  const double shift = (lambda - 1.0) * (m2 / (1.0 + m2));
  if (!(1.0 + shift > 0.0)) {
    throw std::invalid_argument("generating_function: 1 + lambda |eta|^2 must be positive");
  }
  return std::exp(two_j * std::log1p(shift));
}

/// Factorial moment F(k) = <N(N-1)...(N-k+1)>
///                       = |eta|^(2k) (2j)! / ((1+|eta|^2)^k (2j-k)!).
/// Returns 0 for k > 2j (the falling factorial vanishes); k < 0 is an error.
inline double factorial_moment(int two_j, Complex eta, int k) {
  if (two_j < 0) throw std::invalid_argument("factorial_moment: negative two_j");
  if (k < 0) throw std::invalid_argument("factorial_moment: negative k");
  const double m2 = std::norm(eta);
  const double ratio = m2 / (1.0 + m2);
  return std::pow(ratio, k) * falling_factorial(two_j, k);
}

/// <N>, <N^2> and (Delta N)^2 of the SCS:
///   <N> = 2j|eta|^2/(1+|eta|^2),
///   <N^2> = (2j|eta|^2 + 4j^2|eta|^4)/(1+|eta|^2)^2,
///   (Delta N)^2 = 2j|eta|^2/(1+|eta|^2)^2,
/// evaluated through r = |eta|^2/(1+|eta|^2) so |eta|^4 never overflows.
inline MomentSet scs_number_moments(int two_j, Complex eta) {
  if (two_j < 0) throw std::invalid_argument("scs_number_moments: negative two_j");
  const double m2 = std::norm(eta);
  const double denom = 1.0 + m2;
  const double r = m2 / denom;
  MomentSet m;
  m.mean_n = two_j * r;
  m.var_n = two_j * r / denom;
  m.mean_n2 = m.var_n + m.mean_n * m.mean_n;
  return m;
}

/// <J_-^k> on the SCS: eta^k (2j)! / ((1+|eta|^2)^k (2j-k)!).
/// Returns 0 for k > 2j; k < 0 is an error.
inline Complex scs_jminus_k(int two_j, Complex eta, int k) {
  if (two_j < 0) throw std::invalid_argument("scs_jminus_k: negative two_j");
  if (k < 0) throw std::invalid_argument("scs_jminus_k: negative k");
  if (k > two_j) return Complex(0.0, 0.0);
  const double m2 = std::norm(eta);
  Complex base = eta / (1.0 + m2);
  Complex p(1.0, 0.0);
  for (int i = 0; i < k; ++i) p *= base;
  return p * falling_factorial(two_j, k);
}

/// (<J_x>, <J_y>, <J_z>) of the SCS. The J_y sign follows the convention
/// J_y = (J_+ - J_-)/(2i) with J_- lowering n, which the dense-matrix path
/// reproduces: <J_y> = -2j Im(eta) / (1 + |eta|^2).
inline Eigen::Vector3d scs_spin_means(int two_j, Complex eta) {
  if (two_j < 0) throw std::invalid_argument("scs_spin_means: negative two_j");
  const double m2 = std::norm(eta);
  const double denom = 1.0 + m2;
  const double j = 0.5 * two_j;
  return Eigen::Vector3d(two_j * eta.real() / denom, -two_j * eta.imag() / denom,
                         j * (m2 - 1.0) / denom);
}

/// ((Delta J_x)^2, (Delta J_y)^2) of the SCS:
///   (Delta J_x)^2 = j (1 + |eta|^4 - eta^2 - eta*^2) / (2 (1+|eta|^2)^2)
/// and the same with + for J_y. The numerators factor exactly as
/// |1 -+ eta^2|^2, which avoids both cancellation and |eta|^4 overflow.
inline std::pair<double, double> scs_variances_xy(int two_j, Complex eta) {
  if (two_j < 0) throw std::invalid_argument("scs_variances_xy: negative two_j");
  const double denom = 1.0 + std::norm(eta);
  const double j = 0.5 * two_j;
  const Complex eta2 = eta * eta;
  const double vx = 0.5 * j * std::norm((1.0 - eta2) / denom);
  const double vy = 0.5 * j * std::norm((1.0 + eta2) / denom);
  return {vx, vy};
}

namespace detail {

// Magnitude-factored weighted phase sum
//   sum_{n=0}^{count-1} C(choose_n, n) |eta|^(2n) phase(n)
// returned as (S, X) with the true sum equal to e^X * S. Factoring the
// largest log-magnitude out keeps extreme |eta| and large two_j in range;
// the remaining terms are pairwise-summed. phase(n) must be a unit phasor.
struct FactoredSum {
  Complex sum;
  double log_scale;
};

template <typename PhaseFn>
FactoredSum weighted_phase_sum(int choose_n, double log_mod, PhaseFn phase) {
  const int count = choose_n + 1;
  std::vector<double> log_mag(count);
  double max_log = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < count; ++n) {
    log_mag[n] = log_binomial(choose_n, n) + 2.0 * n * log_mod;
    max_log = std::max(max_log, log_mag[n]);
  }
  std::vector<Complex> terms(count);
  for (int n = 0; n < count; ++n) {
    terms[n] = std::exp(log_mag[n] - max_log) * phase(n);
  }
  return {pairwise_sum(terms), max_log};
}

}  // namespace detail

/// <J_-^k> on the nonlinear SCS |eta, t>:
///   eta^k (1+|eta|^2)^(-2j) (2j)!/(2j-k)!
///     * sum_{n=0}^{2j-k} C(2j-k, n) |eta|^(2n) e^{i t [F(n) - F(n+k)]}.
/// Reduces to scs_jminus_k at t = 0.
inline Complex nlscs_jminus_k(int two_j, Complex eta, const NonlinearFunction& F, double t,
                              int k) {
  if (two_j < 0) throw std::invalid_argument("nlscs_jminus_k: negative two_j");
  if (k < 0) throw std::invalid_argument("nlscs_jminus_k: negative k");
  if (!std::isfinite(t)) throw std::invalid_argument("nlscs_jminus_k: t must be finite");
  if (k > two_j) return Complex(0.0, 0.0);
  const double mod = std::abs(eta);
  if (mod == 0.0) return k == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);

  const auto [sum, log_scale] = detail::weighted_phase_sum(
      two_j - k, std::log(mod), [&](int n) { return unit_phase(t, F(n) - F(n + k)); });
  const double scale =
      std::exp(k * std::log(mod) + log_scale - two_j * std::log1p(mod * mod));
  return std::polar(scale, k * std::arg(eta)) * falling_factorial(two_j, k) * sum;
}

/// xi_z^2 of the nonlinear SCS in closed form:
///   1 / | (1+|eta|^2)^(1-2j) sum_{n=0}^{2j-1} C(2j-1, n) |eta|^(2n)
///         e^{i t [F(n) - F(n+1)]} |^2.
/// Always >= 1 up to rounding (triangle inequality). eta = 0 leaves the
/// direction undefined.
inline double nlscs_xi_z(int two_j, Complex eta, const NonlinearFunction& F, double t) {
  if (two_j < 1) throw std::invalid_argument("nlscs_xi_z: two_j must be >= 1");
  if (!std::isfinite(t)) throw std::invalid_argument("nlscs_xi_z: t must be finite");
  const double mod = std::abs(eta);
  if (mod == 0.0) {
    throw undefined_direction_error("undefined squeezing direction: eta = 0");
  }
  const auto [sum, log_scale] = detail::weighted_phase_sum(
      two_j - 1, std::log(mod), [&](int n) { return unit_phase(t, F(n) - F(n + 1)); });
  const double log_abs =
      log_scale + (1.0 - two_j) * std::log1p(mod * mod) + std::log(std::abs(sum));
  return std::exp(-2.0 * log_abs);
}

}  // namespace spinsqueeze
