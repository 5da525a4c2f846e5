#ifndef KSHAPE_VERIFY_HPP
#define KSHAPE_VERIFY_HPP

// Sweeps behind the check-hull and crossings commands, with text and JSON
// renderings of their reports.

#include <cstdio>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kshape/geometry.hpp"
#include "kshape/io.hpp"
#include "kshape/shape.hpp"

namespace kshape {

enum class ContainmentMode { Hull, Certificate };

inline const char* to_string(ContainmentMode m) { return m == ContainmentMode::Hull ? "hull" : "certificate"; }

struct ContainmentRow {
  double kappa = 0.0;
  std::size_t samples = 0;
  double max_violation = 0.0;
  bool pass = true;
};

struct ContainmentReport {
  ContainmentMode mode = ContainmentMode::Certificate;
  double tolerance = 0.0;
  std::vector<ContainmentRow> rows;

  bool pass() const {
    for (const auto& r : rows) {
      if (!r.pass) return false;
    }
    return true;
  }
};

/// Certificate check over precomputed weight vectors, one per sample.
inline ContainmentRow certify_weights(double kappa, const std::vector<std::vector<double>>& weights, double tol) {
  ContainmentRow row{kappa, weights.size(), 0.0, true};
  for (const auto& w : weights) row.max_violation = std::max(row.max_violation, certificate_violation(w));
  row.pass = row.max_violation <= tol;
  return row;
}

/// Samples the family over its canonical range at each kappa and measures
/// how far the samples stray from the landmark hull. Planar families use the
/// hull itself unless `mode` says otherwise; other dimensions use the weight
/// certificate.
inline ContainmentReport check_containment(const KappaFamily& family, std::span<const double> kappas,
                                           std::size_t samples, double tol,
                                           std::optional<ContainmentMode> mode = std::nullopt) {
  if (kappas.empty()) throw std::invalid_argument("kappas: need at least one value");
  ContainmentReport rep;
  rep.mode = mode.value_or(family.dim() == 2 ? ContainmentMode::Hull : ContainmentMode::Certificate);
  if (rep.mode == ContainmentMode::Hull && family.dim() != 2) {
    throw std::invalid_argument("hull mode needs 2D landmarks");
  }
  rep.tolerance = tol;
  std::optional<ConvexHull2D> hull;
  if (rep.mode == ContainmentMode::Hull) hull = hull_2d(family.landmarks());
  const auto [a, b] = family.canonical_range();
  const double step = (b - a) / static_cast<double>(std::max<std::size_t>(samples, 2) - 1);
  for (double kappa : kappas) {
    detail::require_kappa(kappa, "kappa");
    ContainmentRow row{kappa, samples, 0.0, true};
    for (std::size_t i = 0; i < samples; ++i) {
      const double t = i + 1 == samples ? b : a + step * static_cast<double>(i);
      EvalResult r = family.evaluate(t, kappa);
      const double v = hull ? containment_violation(*hull, {r.point[0], r.point[1]}) : certificate_violation(r.weights);
      row.max_violation = std::max(row.max_violation, v);
    }
    row.pass = row.max_violation <= tol;
    rep.rows.push_back(row);
  }
  return rep;
}

inline std::string report_text(const ContainmentReport& rep) {
  std::string out = std::string("containment check (") + to_string(rep.mode) + " mode)\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "tolerance %.3g\n%-12s %-8s %-14s %s\n", rep.tolerance, "kappa", "samples",
                "max_violation", "result");
  out += buf;
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%-12g %-8zu %-14.6e %s\n", r.kappa, r.samples, r.max_violation,
                  r.pass ? "pass" : "FAIL");
    out += buf;
  }
  out += rep.pass() ? "overall: pass\n" : "overall: FAIL\n";
  return out;
}

inline Json report_json(const ContainmentReport& rep) {
  Json j;
  j["report"] = "check-hull";
  j["version"] = kLandmarkFormatVersion;
  j["mode"] = to_string(rep.mode);
  j["tolerance"] = rep.tolerance;
  j["pass"] = rep.pass();
  j["rows"] = Json::array();
  for (const auto& r : rep.rows) {
    j["rows"].push_back({{"kappa", r.kappa}, {"samples", r.samples}, {"max_violation", r.max_violation},
                         {"pass", r.pass}});
  }
  return j;
}

// ---------------------------------------------------------------------------

struct CrossingRow {
  double kappa = 0.0;
  std::size_t count = 0;
  std::size_t degenerate = 0;
};

struct CrossingSweep {
  std::size_t samples_per_period = 0;
  std::vector<CrossingRow> rows;
  /// First swept kappa whose count is below the count at the first kappa.
  std::optional<double> first_drop;
  /// First swept kappa whose count is zero.
  std::optional<double> first_zero;
  /// Bisection estimates of where those changes happen, when bracketed.
  std::optional<double> drop_threshold;
  std::optional<double> zero_threshold;
};

inline CrossingReport crossings_at(const KappaFamily& family, double kappa, std::size_t samples_per_period,
                                   CrossingOptions opts = {}) {
  if (family.dim() != 3) throw std::invalid_argument("crossings need 3D landmarks");
  if (family.topology() != Topology::Closed) throw std::invalid_argument("crossings need a closed landmark set");
  const double period = static_cast<double>(family.size());
  return projected_crossings(sample(family, kappa, 0.0, period, samples_per_period + 1), opts);
}

namespace detail {

// Smallest kappa in (lo, hi] satisfying pred, assuming pred(lo) false and
// pred(hi) true.
template <class Pred>
double bisect_kappa(double lo, double hi, double resolution, Pred pred) {
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// Crossing count of the xy projection at each kappa of a sweep. When a drop
/// is bracketed by two swept values, the transition is refined by bisection
/// to `resolution`.
inline CrossingSweep crossing_sweep(const KappaFamily& family, std::span<const double> kappas,
                                    std::size_t samples_per_period, double resolution = 1e-3,
                                    CrossingOptions opts = {}) {
  if (kappas.empty()) throw std::invalid_argument("kappas: need at least one value");
  CrossingSweep sw;
  sw.samples_per_period = samples_per_period;
  for (double k : kappas) {
    CrossingReport r = crossings_at(family, k, samples_per_period, opts);
    sw.rows.push_back({k, r.crossing_count, r.degenerate});
  }
  const std::size_t start = sw.rows.front().count;
  auto count_at = [&](double k) { return crossings_at(family, k, samples_per_period, opts).crossing_count; };
  for (std::size_t i = 0; i < sw.rows.size(); ++i) {
    if (!sw.first_drop && sw.rows[i].count < start) {
      sw.first_drop = sw.rows[i].kappa;
      if (i > 0 && sw.rows[i - 1].kappa < sw.rows[i].kappa) {
        sw.drop_threshold = detail::bisect_kappa(sw.rows[i - 1].kappa, sw.rows[i].kappa, resolution,
                                                 [&](double k) { return count_at(k) < start; });
      }
    }
    if (!sw.first_zero && sw.rows[i].count == 0) {
      sw.first_zero = sw.rows[i].kappa;
      if (i > 0 && sw.rows[i - 1].count > 0 && sw.rows[i - 1].kappa < sw.rows[i].kappa) {
        sw.zero_threshold = detail::bisect_kappa(sw.rows[i - 1].kappa, sw.rows[i].kappa, resolution,
                                                 [&](double k) { return count_at(k) == 0; });
      }
    }
  }
  return sw;
}

inline std::string report_text(const CrossingSweep& sw) {
  std::string out = "projected crossings (xy plane, " + std::to_string(sw.samples_per_period) + " samples/period)\n";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %-9s %s\n", "kappa", "crossings", "degenerate");
  out += buf;
  for (const auto& r : sw.rows) {
    std::snprintf(buf, sizeof buf, "%-12g %-9zu %zu\n", r.kappa, r.count, r.degenerate);
    out += buf;
  }
  auto line = [&](const char* what, const std::optional<double>& v) {
    if (v) {
      std::snprintf(buf, sizeof buf, "%s: %g\n", what, *v);
    } else {
      std::snprintf(buf, sizeof buf, "%s: none\n", what);
    }
    out += buf;
  };
  line("first kappa with fewer crossings", sw.first_drop);
  line("first kappa with zero crossings", sw.first_zero);
  if (sw.drop_threshold) line("drop threshold (bisection)", sw.drop_threshold);
  if (sw.zero_threshold) line("zero threshold (bisection)", sw.zero_threshold);
  return out;
}

inline Json report_json(const CrossingSweep& sw) {
  Json j;
  j["report"] = "crossings";
  j["version"] = kLandmarkFormatVersion;
  j["samples_per_period"] = sw.samples_per_period;
  j["rows"] = Json::array();
  for (const auto& r : sw.rows) {
    j["rows"].push_back({{"kappa", r.kappa}, {"crossings", r.count}, {"degenerate", r.degenerate}});
  }
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  j["first_drop"] = opt(sw.first_drop);
  j["first_zero"] = opt(sw.first_zero);
  j["drop_threshold"] = opt(sw.drop_threshold);
  j["zero_threshold"] = opt(sw.zero_threshold);
  return j;
}

}  // namespace kshape

#endif  // KSHAPE_VERIFY_HPP
