#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace spinsqueeze {

using Complex = std::complex<double>;

namespace detail {

/// Exact binomial coefficient in 64-bit integer arithmetic. Valid for
/// n <= 60 (C(60,30) and all intermediates fit in uint64_t).
inline std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace detail

/// ln C(n, k); -inf for k outside 0..n.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (n <= 60) return std::log(static_cast<double>(detail::binomial_u64(n, k)));
  return detail::log_factorial(n) - detail::log_factorial(k) - detail::log_factorial(n - k);
}

/// Falling factorial n!/(n-k)! = n(n-1)...(n-k+1); 0 for k > n.
inline double falling_factorial(int n, int k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: negative k");
  if (k > n) return 0.0;
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= static_cast<double>(n - i);
  return p;
}

/// exp(i a b), with the product and the 2 pi range reduction carried out in
/// extended precision. Evolution phases reach |a b| ~ 1e6 (quartic F at
/// n ~ 20); rounding the product in double alone would already cost ~1e-10
/// radians, which the cross-validation tolerances cannot absorb.
inline Complex unit_phase(double a, double b) {
  const long double two_pi = 6.283185307179586476925286766559L;
  const long double theta =
      std::fmod(static_cast<long double>(a) * static_cast<long double>(b), two_pi);
  return std::polar(1.0, static_cast<double>(theta));
}

/// Pairwise (tree) summation. Terms in closed-form sums span many orders of
/// magnitude when |eta| is far from 1; plain left-to-right accumulation loses
/// digits there.
inline Complex pairwise_sum(std::span<const Complex> terms) {
  if (terms.size() <= 8) {
    Complex s{0.0, 0.0};
    for (const Complex& t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

inline Complex pairwise_sum(const std::vector<Complex>& terms) {
  return pairwise_sum(std::span<const Complex>(terms));
}

}  // namespace spinsqueeze
