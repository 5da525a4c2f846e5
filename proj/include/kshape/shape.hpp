#ifndef KSHAPE_SHAPE_HPP
#define KSHAPE_SHAPE_HPP

// kappa-families of open and closed shapes.
//
// Open:    r_k(t) = sum_j r_j B_k(t - j, 1/2) / B_k(t - (N-1)/2, N/2)
// Closed:  r_k(t) = sum_j r_j Pi_k(t - j, 1/2; N) / sum_j Pi_k(t - j, 1/2; N)
//
// Every evaluation returns the affine weights alongside the point. The
// weights are non-negative and sum to one, which is the convex-hull
// containment certificate in any dimension.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kshape/bkernel.hpp"
#include "kshape/landmarks.hpp"

namespace kshape {

enum class Quality {
  Exact,
  DenominatorClamped,      // every kernel term underflowed; denominator held at DBL_MIN
  OutsideCanonicalDomain,  // open family evaluated at t outside [0, N-1]
};

inline const char* to_string(Quality q) {
  switch (q) {
    case Quality::Exact: return "exact";
    case Quality::DenominatorClamped: return "clamped";
    case Quality::OutsideCanonicalDomain: return "outside";
  }
  return "unknown";
}

inline Quality quality_from_string(const std::string& s) {
  if (s == "exact") return Quality::Exact;
  if (s == "clamped") return Quality::DenominatorClamped;
  if (s == "outside") return Quality::OutsideCanonicalDomain;
  throw std::invalid_argument("unknown quality flag \"" + s + "\"");
}

struct Weights {
  std::vector<double> values;
  Quality quality = Quality::Exact;
};

struct EvalResult {
  Point point;
  std::vector<double> weights;
  Quality quality = Quality::Exact;
};

class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecoveryOptions {
  double kappa = 1e-3;
  /// Allowed max-norm error, scaled by (1 + max |coordinate|).
  double tolerance = 1e-6;
};

/// Weights of an open window over n slots at position t.
inline Weights open_weights(std::size_t n, double t, double kappa) {
  detail::require_kappa(kappa, "kappa");
  if (n == 0) throw std::invalid_argument("need at least one landmark");
  Weights w;
  w.values.resize(n);
  const double last = static_cast<double>(n - 1);
  if (!(t >= 0.0 && t <= last)) w.quality = Quality::OutsideCanonicalDomain;

  // The denominator telescopes to b_kappa_row_sum, but summing the computed
  // terms keeps the weights summing to one even where exp arguments are large.
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) den += (w.values[j] = b_kappa(t - static_cast<double>(j), 0.5, kappa));
  if (den >= DBL_MIN) {
    for (auto& v : w.values) v /= den;
    return w;
  }
  // Far outside the window every term underflows; the log form keeps the
  // ratios finite.
  std::vector<double> logs(n);
  double top = -INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    logs[j] = log_b_kappa(t - static_cast<double>(j), 0.5, kappa);
    top = std::max(top, logs[j]);
  }
  if (std::isfinite(top)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += (w.values[j] = std::exp(logs[j] - top));
    for (auto& v : w.values) v /= sum;
    return w;
  }
  for (auto& v : w.values) v /= DBL_MIN;
  w.quality = Quality::DenominatorClamped;
  return w;
}

/// Weights of a periodic window over n slots (period n) at position t.
inline Weights closed_weights(std::size_t n, double t, double kappa) {
  detail::require_kappa(kappa, "kappa");
  if (n == 0) throw std::invalid_argument("need at least one landmark");
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  Weights w;
  w.values.resize(n);
  const double period = static_cast<double>(n);
  double tr = std::fmod(t, period);
  if (tr < 0.0) tr += period;
  if (tr >= period) tr = 0.0;

  const double freq = std::numbers::pi / period;
  const double half = std::sin(freq * 0.5);
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    w.values[j] = b_kappa(std::sin(freq * (tr - static_cast<double>(j))), half, kappa);
    den += w.values[j];
  }
  if (den >= DBL_MIN) {
    for (auto& v : w.values) v /= den;
    return w;
  }
  std::vector<double> logs(n);
  double top = -INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    logs[j] = log_b_kappa(std::sin(freq * (tr - static_cast<double>(j))), half, kappa);
    top = std::max(top, logs[j]);
  }
  if (std::isfinite(top)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += (w.values[j] = std::exp(logs[j] - top));
    for (auto& v : w.values) v /= sum;
    return w;
  }
  for (auto& v : w.values) v /= DBL_MIN;
  w.quality = Quality::DenominatorClamped;
  return w;
}

/// sum_j weights[j] * rows[j], rows given as a flat row-major array.
inline Point combine(std::span<const double> weights, std::span<const double> rows, std::size_t dim) {
  Point out(dim, 0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double wj = weights[j];
    if (wj == 0.0) continue;
    for (std::size_t d = 0; d < dim; ++d) out[d] += wj * rows[j * dim + d];
  }
  return out;
}

/// Immutable landmark set with evaluation over (t, kappa).
class KappaFamily {
 public:
  explicit KappaFamily(LandmarkSet landmarks) : landmarks_(std::move(landmarks)) {}

  const LandmarkSet& landmarks() const noexcept { return landmarks_; }
  std::size_t size() const noexcept { return landmarks_.size(); }
  std::size_t dim() const noexcept { return landmarks_.dim(); }
  Topology topology() const noexcept { return landmarks_.topology(); }

  EvalResult evaluate(double t, double kappa) const;

  /// [0, N-1] for open families, one period [0, N] for closed ones.
  std::pair<double, double> canonical_range() const noexcept {
    const double n = static_cast<double>(size());
    if (topology() == Topology::Closed) return {0.0, n};
    return {0.0, std::max(n - 1.0, 1.0)};
  }

  /// Ten samples per landmark interval, endpoints included.
  std::size_t default_sample_count() const noexcept { return 10 * size() + 1; }

 private:
  LandmarkSet landmarks_;
};

inline EvalResult eval_open(const KappaFamily& family, double t, double kappa) {
  if (family.topology() != Topology::Open) throw std::invalid_argument("eval_open needs an open family");
  Weights w = open_weights(family.size(), t, kappa);
  EvalResult r;
  r.point = combine(w.values, family.landmarks().coords(), family.dim());
  r.weights = std::move(w.values);
  r.quality = w.quality;
  return r;
}

inline EvalResult eval_closed(const KappaFamily& family, double t, double kappa) {
  if (family.topology() != Topology::Closed) {
    throw std::invalid_argument("eval_closed needs a closed family");
  }
  Weights w = closed_weights(family.size(), t, kappa);
  EvalResult r;
  r.point = combine(w.values, family.landmarks().coords(), family.dim());
  r.weights = std::move(w.values);
  r.quality = w.quality;
  return r;
}

inline EvalResult KappaFamily::evaluate(double t, double kappa) const {
  return topology() == Topology::Open ? eval_open(*this, t, kappa) : eval_closed(*this, t, kappa);
}

/// Arithmetic mean of the landmarks, the kappa -> infinity limit.
inline Point centroid(const KappaFamily& family) {
  const auto& lm = family.landmarks();
  Point c(lm.dim(), 0.0);
  for (std::size_t j = 0; j < lm.size(); ++j) {
    auto p = lm.point(j);
    for (std::size_t d = 0; d < lm.dim(); ++d) c[d] += p[d];
  }
  for (auto& v : c) v /= static_cast<double>(lm.size());
  return c;
}

/// Landmark n as the small-kappa limit of r_k(n). Throws RecoveryError if the
/// evaluation at opts.kappa is not within tolerance of the stored landmark.
inline Point recover_landmark(const KappaFamily& family, std::size_t n, RecoveryOptions opts = {}) {
  if (n >= family.size()) {
    throw std::out_of_range("landmark index " + std::to_string(n) + " out of range for " +
                            std::to_string(family.size()) + " landmarks");
  }
  EvalResult r = family.evaluate(static_cast<double>(n), opts.kappa);
  auto want = family.landmarks().point(n);
  const double bound = opts.tolerance * (1.0 + family.landmarks().max_abs_coordinate());
  for (std::size_t d = 0; d < want.size(); ++d) {
    if (std::abs(r.point[d] - want[d]) > bound) {
      throw RecoveryError("landmark " + std::to_string(n) + " not recovered at kappa " +
                          std::to_string(opts.kappa) + "; decrease kappa");
    }
  }
  return r.point;
}

/// Family over M * r_j. Evaluations transform the same way.
inline KappaFamily transform(const KappaFamily& family, const Matrix& m) {
  const auto& lm = family.landmarks();
  if (m.cols() != lm.dim()) {
    throw std::invalid_argument("matrix has " + std::to_string(m.cols()) +
                                " columns but landmarks have dimension " + std::to_string(lm.dim()));
  }
  std::vector<double> out;
  out.reserve(lm.size() * m.rows());
  for (std::size_t j = 0; j < lm.size(); ++j) {
    Point p = m.apply(lm.point(j));
    out.insert(out.end(), p.begin(), p.end());
  }
  return KappaFamily(LandmarkSet(m.rows(), std::move(out), lm.topology(), lm.labels()));
}

struct SampledCurve {
  std::size_t dim = 0;
  double kappa = 0.0;
  std::vector<double> t;
  std::vector<double> coords;  // row-major, one row per sample
  std::vector<Quality> quality;

  std::size_t size() const noexcept { return t.size(); }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords).subspan(i * dim, dim);
  }
};

/// `count` evenly spaced samples on [t_start, t_end], both ends included.
inline SampledCurve sample(const KappaFamily& family, double kappa, double t_start, double t_end,
                           std::size_t count) {
  if (count < 2) throw std::invalid_argument("samples must be at least 2");
  if (!(t_start < t_end)) throw std::invalid_argument("t range must satisfy t_start < t_end");
  detail::require_kappa(kappa, "kappa");
  SampledCurve c;
  c.dim = family.dim();
  c.kappa = kappa;
  c.t.reserve(count);
  c.coords.reserve(count * c.dim);
  c.quality.reserve(count);
  const double step = (t_end - t_start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = i + 1 == count ? t_end : t_start + step * static_cast<double>(i);
    EvalResult r = family.evaluate(t, kappa);
    c.t.push_back(t);
    c.coords.insert(c.coords.end(), r.point.begin(), r.point.end());
    c.quality.push_back(r.quality);
  }
  return c;
}

inline SampledCurve sample(const KappaFamily& family, double kappa) {
  auto [a, b] = family.canonical_range();
  return sample(family, kappa, a, b, family.default_sample_count());
}

}  // namespace kshape

#endif  // KSHAPE_SHAPE_HPP
