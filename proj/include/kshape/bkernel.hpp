#ifndef KSHAPE_BKERNEL_HPP
#define KSHAPE_BKERNEL_HPP

// Window kernels behind every landmark embedding.
//
//   b_exact     piecewise box function B(x, y)
//   b_kappa     smooth tanh window B_k(x, y) = (tanh((x+y)/k) - tanh((x-y)/k)) / 2
//   pi_kappa    periodic window B_k(sin(pi x / T), sin(pi y / T))
//
// b_kappa(t - j, 1/2, k) is the bump centred on landmark j; summed over
// j = 0..N-1 it telescopes to b_kappa(t - (N-1)/2, N/2, k).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kshape {

namespace detail {

template <std::floating_point T>
void require_kappa(T kappa, const char* what) {
  if (!(kappa > T(0)) || !std::isfinite(kappa)) {
    throw std::domain_error(std::string(what) + " must be positive and finite, got " +
                            std::to_string(static_cast<double>(kappa)));
  }
}

// (tanh(hi) - tanh(lo)) / 2 for hi >= lo >= 0, with gap = hi - lo supplied
// separately so it keeps full relative precision. Both tanh values round to
// one once lo exceeds ~19, so the difference is formed from the exponential
// tails instead of by subtraction.
template <std::floating_point T>
T saturated_half_diff(T hi, T lo, T gap) {
  const T e_lo = std::exp(T(-2) * lo);
  const T e_hi = std::exp(T(-2) * hi);
  return e_lo * -std::expm1(T(-2) * gap) / ((T(1) + e_hi) * (T(1) + e_lo));
}

template <std::floating_point T>
T log_saturated_half_diff(T hi, T lo, T gap) {
  return T(-2) * lo + std::log(-std::expm1(T(-2) * gap)) - std::log1p(std::exp(T(-2) * hi)) -
         std::log1p(std::exp(T(-2) * lo));
}

}  // namespace detail

/// Piecewise B-function: sign(y) inside |x| < |y|, sign(y)/2 on the edge,
/// zero outside. Comparisons are exact; callers pass representable values
/// such as integers and halves.
template <std::floating_point T>
constexpr T b_exact(T x, T y) noexcept {
  if (y == T(0)) return T(0);
  const T s = y > T(0) ? T(1) : T(-1);
  const T ax = x < T(0) ? -x : x;
  const T ay = y < T(0) ? -y : y;
  if (ax < ay) return s;
  if (ax == ay) return s / T(2);
  return T(0);
}

/// Smooth window B_k(x, y). Positive for y > 0, even in x.
///
/// When both tanh arguments share a sign the naive difference cancels to
/// exactly zero a few dozen k away from the window; this path keeps
/// relative precision until the true value underflows.
template <std::floating_point T>
T b_kappa(T x, T y, T kappa) {
  detail::require_kappa(kappa, "kappa");
  const T u = (x + y) / kappa;
  const T v = (x - y) / kappa;
  if ((u >= T(0)) != (v >= T(0))) {
    return (std::tanh(u) - std::tanh(v)) / T(2);
  }
  const T gap = T(2) * std::abs(y) / kappa;
  const T sign = y < T(0) ? T(-1) : T(1);
  if (u >= T(0)) {
    return sign * detail::saturated_half_diff(std::max(u, v), std::min(u, v), gap);
  }
  return sign * detail::saturated_half_diff(-std::min(u, v), -std::max(u, v), gap);
}

/// log(b_kappa(x, y, k)) for y > 0. Stays finite far outside the window,
/// where b_kappa itself underflows. Returns -inf for y <= 0.
template <std::floating_point T>
T log_b_kappa(T x, T y, T kappa) {
  detail::require_kappa(kappa, "kappa");
  if (!(y > T(0))) return -std::numeric_limits<T>::infinity();
  const T u = (x + y) / kappa;
  const T v = (x - y) / kappa;
  if ((u >= T(0)) != (v >= T(0))) {
    return std::log((std::tanh(u) - std::tanh(v)) / T(2));
  }
  const T gap = T(2) * y / kappa;
  if (v >= T(0)) return detail::log_saturated_half_diff(u, v, gap);
  return detail::log_saturated_half_diff(-v, -u, gap);
}

/// Periodic window with period `period` in x.
template <std::floating_point T>
T pi_kappa(T x, T y, T kappa, T period) {
  detail::require_kappa(kappa, "kappa");
  detail::require_kappa(period, "period");
  const T w = std::numbers::pi_v<T> / period;
  return b_kappa(std::sin(w * x), std::sin(w * y), kappa);
}

/// Closed form of sum_{j<n} b_kappa(t - j, 1/2, k).
template <std::floating_point T>
T b_kappa_row_sum(T t, std::size_t n_landmarks, T kappa) {
  if (n_landmarks == 0) throw std::invalid_argument("n_landmarks must be at least 1");
  const T n = static_cast<T>(n_landmarks);
  return b_kappa(t - (n - T(1)) / T(2), n / T(2), kappa);
}

}  // namespace kshape

#endif  // KSHAPE_BKERNEL_HPP
