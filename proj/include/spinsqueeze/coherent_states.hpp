#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "spinsqueeze/nonlinear_function.hpp"
#include "spinsqueeze/numeric.hpp"
#include "spinsqueeze/spin_algebra.hpp"

namespace spinsqueeze {

/// Complex-valued map on the nonnegative integers, used for the nonlinear
/// weight f(N) in the ladder equation f(N) J- |psi> = eta (2j - N) |psi>.
using ComplexFunction = std::function<Complex(int)>;

struct CoherentParams {
  SpinSpace space;
  Complex eta;
};

struct EvolvedParams {
  CoherentParams base;
  NonlinearFunction hamiltonian;  // F(N), the diagonal Hamiltonian
  double t = 0.0;
};

namespace detail {

inline void require_finite_eta(const Complex& eta) {
  if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag())) {
    throw std::invalid_argument("coherent state: eta must be finite");
  }
}

}  // namespace detail

/// Spin coherent state with amplitudes
///   c_n = (1+|eta|^2)^(-j) sqrt(C(2j,n)) eta^n,
/// numerically renormalized after construction. Small spaces use exact
/// integer binomials; large two_j or extreme |eta| switch to a log-domain
/// evaluation that factors out the dominant amplitude, so neither the
/// binomials nor eta^n can overflow.
inline StateVector scs(const CoherentParams& params) {
  detail::require_finite_eta(params.eta);
  const SpinSpace& space = params.space;
  const int two_j = space.two_j();
  const double mod = std::abs(params.eta);
  if (mod == 0.0) return StateVector::basis(space, 0);

  const double log_mod = std::log(mod);
  const double log_norm = space.j() * std::log1p(mod * mod);
  const double max_log_raw =
      0.5 * log_binomial(two_j, two_j / 2) + two_j * std::max(0.0, log_mod);
  const bool direct = two_j <= 60 && log_norm <= 300.0 && max_log_raw <= 300.0;

  Vector a(space.dim());
  if (direct) {
    const double norm_factor = std::exp(-log_norm);
    Complex eta_pow(1.0, 0.0);
    for (int n = 0; n <= two_j; ++n) {
      a[n] = norm_factor * std::sqrt(static_cast<double>(detail::binomial_u64(two_j, n))) *
             eta_pow;
      eta_pow *= params.eta;
    }
  } else {
    const double phase = std::arg(params.eta);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= two_j; ++n) {
      max_log = std::max(max_log, 0.5 * log_binomial(two_j, n) + n * log_mod);
    }
    for (int n = 0; n <= two_j; ++n) {
      const double log_mag = 0.5 * log_binomial(two_j, n) + n * log_mod - max_log;
      a[n] = std::polar(std::exp(log_mag), n * phase);
    }
  }
  return StateVector::normalized(space, std::move(a));
}

/// The SCS evolved under the diagonal Hamiltonian F(N) for time t:
/// c_n(t) = c_n(0) exp(-i t F(n)). Norm and number statistics are preserved.
inline StateVector nonlinear_scs(const EvolvedParams& params) {
  if (!std::isfinite(params.t)) throw std::invalid_argument("nonlinear_scs: t must be finite");
  const StateVector base = scs(params.base);
  const int two_j = params.base.space.two_j();
  Vector a = base.amplitudes();
  for (int n = 0; n <= two_j; ++n) {
    a[n] *= unit_phase(-params.t, params.hamiltonian(n));
  }
  return StateVector::normalized(params.base.space, std::move(a));
}

/// The nonlinear weight the evolved state satisfies the ladder equation with:
/// f(n) = exp(i t [F(n+1) - F(n)]). Unimodular for real F.
inline ComplexFunction effective_nonlinearity(const NonlinearFunction& F, double t) {
  return [F, t](int n) { return unit_phase(t, F(n + 1) - F(n)); };
}

/// || f(N) J- psi - eta (2j - N) psi ||_2. Zero (up to rounding) exactly when
/// psi satisfies the defining ladder equation with weight f.
inline double ladder_residual(const StateVector& psi, const Complex& eta,
                              const ComplexFunction& f) {
  const SpinSpace& space = psi.space();
  const int two_j = space.two_j();
  Vector lhs = ladder_lowering(space).entries() * psi.amplitudes();
  for (int n = 0; n <= two_j; ++n) lhs[n] *= f(n);
  Vector rhs(space.dim());
  for (int n = 0; n <= two_j; ++n) {
    rhs[n] = eta * static_cast<double>(two_j - n) * psi.amplitudes()[n];
  }
  return (lhs - rhs).norm();
}

/// Residual of the plain ladder equation J- |eta> = eta (2j - N) |eta>.
inline double ladder_residual(const StateVector& psi, const Complex& eta) {
  return ladder_residual(psi, eta, [](int) { return Complex(1.0, 0.0); });
}

/// Residual of the parity form Pi J- |eta, pi/2> = eta (2j - N) |eta, pi/2>,
/// where the state is evolved under F(N) = N^2 - N for t = pi/2.
inline double parity_identity_residual(const CoherentParams& params) {
  static const NonlinearFunction kerr("N^2-N", [](int n) {
    return static_cast<double>(n) * n - static_cast<double>(n);
  });
  const StateVector psi =
      nonlinear_scs(EvolvedParams{params, kerr, std::numbers::pi / 2.0});
  const SpinSpace& space = params.space;
  const int two_j = space.two_j();
  Vector lhs = parity_operator(space).entries() *
               (ladder_lowering(space).entries() * psi.amplitudes());
  Vector rhs(space.dim());
  for (int n = 0; n <= two_j; ++n) {
    rhs[n] = params.eta * static_cast<double>(two_j - n) * psi.amplitudes()[n];
  }
  return (lhs - rhs).norm();
}

}  // namespace spinsqueeze
