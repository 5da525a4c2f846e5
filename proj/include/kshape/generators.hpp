#ifndef KSHAPE_GENERATORS_HPP
#define KSHAPE_GENERATORS_HPP

// Landmark sets for the standard example families: regular polygons and
// stars, a planar graph, lemniscate squares, the Hilbert substitution,
// logistic-map orbits, Euler-stepped Lorenz trajectories, a trefoil knot
// outline and seeded uniform point clouds.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kshape/landmarks.hpp"

namespace kshape {

inline constexpr int kMaxHilbertOrder = 12;

/// Name of the random source recorded in landmark metadata. Changing the
/// generator or the double conversion breaks published seeds.
inline constexpr const char* kRandomAlgorithm = "mt19937_64/top53";

/// Regular P-gon on the unit circle, vertex j at angle 2 pi (j + 1) / P.
inline LandmarkSet polygon_landmarks(int p) {
  if (p < 3) throw std::invalid_argument("p: a polygon needs at least 3 sides, got " + std::to_string(p));
  std::vector<double> c;
  c.reserve(2 * static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    const double a = 2.0 * std::numbers::pi * (j + 1) / p;
    c.push_back(std::cos(a));
    c.push_back(std::sin(a));
  }
  return LandmarkSet(2, std::move(c), Topology::Closed);
}

/// Polygon vertices interleaved with the origin: 0, v_1, 0, v_2, ..., 0, v_P.
inline LandmarkSet star_landmarks(int p) {
  if (p < 3) throw std::invalid_argument("p: a star needs at least 3 rays, got " + std::to_string(p));
  const LandmarkSet poly = polygon_landmarks(p);
  std::vector<double> c;
  c.reserve(4 * static_cast<std::size_t>(p));
  for (std::size_t j = 0; j < poly.size(); ++j) {
    c.push_back(0.0);
    c.push_back(0.0);
    c.push_back(poly.point(j)[0]);
    c.push_back(poly.point(j)[1]);
  }
  return LandmarkSet(2, std::move(c), Topology::Closed);
}

/// Ten-landmark hexagon graph: four spokes out of the origin followed by the
/// last two hexagon vertices joined directly.
inline LandmarkSet planar_graph_example_landmarks() {
  std::vector<double> c;
  auto vertex = [&](int k) {
    const double a = 2.0 * std::numbers::pi * k / 6.0;
    c.push_back(std::cos(a));
    c.push_back(std::sin(a));
  };
  for (int k = 1; k <= 4; ++k) {
    c.push_back(0.0);
    c.push_back(0.0);
    vertex(k);
  }
  vertex(5);
  vertex(6);
  return LandmarkSet(2, std::move(c), Topology::Closed);
}

enum class LemniscateVariant { Square4, SixPoint };

inline LandmarkSet lemniscate_landmarks(LemniscateVariant variant) {
  if (variant == LemniscateVariant::Square4) {
    return LandmarkSet(2, {-1, -1, 1, 1, 1, -1, -1, 1}, Topology::Closed);
  }
  return LandmarkSet(2, {-1, -1, 0, 0, 1, -1, 1, 1, 0, 0, -1, 1}, Topology::Closed);
}

/// Hilbert curve landmarks after q substitution rounds (4^q points in
/// [-1, 1]^2). Each round applies the four maps
///   T0(X, Y) = ((Y-1)/2, (X-1)/2)    T1(X, Y) = ((X-1)/2, (Y+1)/2)
///   T2(X, Y) = ((X+1)/2, (Y+1)/2)    T3(X, Y) = ((1-Y)/2, (-1-X)/2)
/// to the whole previous curve and concatenates T0(c), T1(c), T2(c), T3(c),
/// so consecutive landmarks are always one grid step 2^(1-q) apart.
inline LandmarkSet hilbert_landmarks(int q) {
  if (q < 0) throw std::invalid_argument("q: iteration count must be non-negative, got " + std::to_string(q));
  if (q > kMaxHilbertOrder) {
    throw std::invalid_argument("q: iteration count above " + std::to_string(kMaxHilbertOrder) + " is not supported");
  }
  std::vector<double> cur{0.0, 0.0};
  for (int it = 0; it < q; ++it) {
    std::vector<double> next;
    next.reserve(cur.size() * 4);
    for (int k = 0; k < 4; ++k) {
      for (std::size_t i = 0; i < cur.size(); i += 2) {
        const double x = cur[i], y = cur[i + 1];
        switch (k) {
          case 0: next.insert(next.end(), {(y - 1) / 2, (x - 1) / 2}); break;
          case 1: next.insert(next.end(), {(x - 1) / 2, (y + 1) / 2}); break;
          case 2: next.insert(next.end(), {(x + 1) / 2, (y + 1) / 2}); break;
          default: next.insert(next.end(), {(1 - y) / 2, (-1 - x) / 2}); break;
        }
      }
    }
    cur = std::move(next);
  }
  return LandmarkSet(2, std::move(cur), Topology::Open);
}

/// Orbit y0, mu y0 (1 - y0), ... of the logistic map, n values.
inline LandmarkSet logistic_landmarks(double mu, double y0, int n) {
  if (n < 1) throw std::invalid_argument("n: need at least one landmark, got " + std::to_string(n));
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0: must lie in [0, 1]");
  if (!(mu >= 0.0 && mu <= 4.0)) throw std::invalid_argument("mu: must lie in [0, 4]");
  std::vector<double> c(static_cast<std::size_t>(n));
  c[0] = y0;
  for (std::size_t j = 1; j < c.size(); ++j) c[j] = mu * c[j - 1] * (1.0 - c[j - 1]);
  return LandmarkSet(1, std::move(c), Topology::Open);
}

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  double delta = 0.01;
  std::array<double, 3> init{2.5704, 3.6945, 16.4286};
  int n = 1000;
};

/// Forward-Euler Lorenz trajectory, n landmarks starting at p.init.
inline LandmarkSet lorenz_landmarks(const LorenzParams& p) {
  if (!(p.delta > 0.0)) throw std::invalid_argument("delta: time step must be positive");
  if (p.n < 1) throw std::invalid_argument("n: need at least one landmark, got " + std::to_string(p.n));
  std::vector<double> c;
  c.reserve(3 * static_cast<std::size_t>(p.n));
  double x = p.init[0], y = p.init[1], z = p.init[2];
  for (int j = 0; j < p.n; ++j) {
    c.push_back(x);
    c.push_back(y);
    c.push_back(z);
    const double nx = x + p.delta * p.sigma * (y - x);
    const double ny = y + p.delta * (x * (p.rho - z) - y);
    const double nz = z + p.delta * (x * y - p.beta * z);
    x = nx;
    y = ny;
    z = nz;
  }
  return LandmarkSet(3, std::move(c), Topology::Open);
}

/// Nine-point trefoil outline; z = 1 marks the over strand, z = 0 the under.
inline LandmarkSet trefoil_landmarks() {
  const double xs[9] = {0.5, 0.3, 0.5, 1, 0.7, 0.3, 0, 0.5, 0.7};
  const double ys[9] = {0, 0.4, 0.8, 0.8, 0.4, 0.4, 0.8, 0.8, 0.4};
  const double zs[9] = {1, 0, 1, 1, 0, 1, 1, 0, 1};
  std::vector<double> c;
  for (int j = 0; j < 9; ++j) {
    c.push_back(xs[j]);
    c.push_back(ys[j]);
    c.push_back(zs[j]);
  }
  return LandmarkSet(3, std::move(c), Topology::Closed);
}

/// n points uniform on [0, 1)^dim. Same seed, same points, on every platform:
/// mt19937_64 output is fixed by the standard and the double conversion keeps
/// the top 53 bits.
inline LandmarkSet random_uniform_landmarks(int n, int dim, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n: need at least one landmark, got " + std::to_string(n));
  if (dim < 1) throw std::invalid_argument("dim: must be at least 1, got " + std::to_string(dim));
  std::mt19937_64 rng(seed);
  std::vector<double> c(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  for (auto& v : c) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return LandmarkSet(static_cast<std::size_t>(dim), std::move(c), Topology::Open);
}

// ---------------------------------------------------------------------------
// Declarative generator description, used by the CLI and config files.

enum class GeneratorKind {
  Polygon,
  Star,
  PlanarGraphExample,
  LemniscateSquare,
  LemniscateSixPoint,
  Hilbert,
  Logistic,
  Lorenz,
  Trefoil,
  RandomUniform,
  Explicit,
};

inline const std::map<std::string, GeneratorKind>& generator_kinds() {
  static const std::map<std::string, GeneratorKind> kinds{
      {"polygon", GeneratorKind::Polygon},
      {"star", GeneratorKind::Star},
      {"planar-graph", GeneratorKind::PlanarGraphExample},
      {"lemniscate-square", GeneratorKind::LemniscateSquare},
      {"lemniscate-six", GeneratorKind::LemniscateSixPoint},
      {"hilbert", GeneratorKind::Hilbert},
      {"logistic", GeneratorKind::Logistic},
      {"lorenz", GeneratorKind::Lorenz},
      {"trefoil", GeneratorKind::Trefoil},
      {"random", GeneratorKind::RandomUniform},
      {"explicit", GeneratorKind::Explicit},
  };
  return kinds;
}

inline std::string to_string(GeneratorKind kind) {
  for (const auto& [name, k] : generator_kinds()) {
    if (k == kind) return name;
  }
  return "unknown";
}

inline GeneratorKind generator_kind_from_string(const std::string& s) {
  auto it = generator_kinds().find(s);
  if (it == generator_kinds().end()) throw std::invalid_argument("kind: unknown generator \"" + s + "\"");
  return it->second;
}

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Explicit;
  /// Scalars are stored as one-element arrays.
  std::map<std::string, std::vector<double>> params;
  std::optional<std::uint64_t> seed;  // RandomUniform only

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

namespace detail {

inline double scalar_param(const GeneratorSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) throw std::invalid_argument(key + ": missing parameter");
  if (it->second.size() != 1) throw std::invalid_argument(key + ": expected a single number");
  if (!std::isfinite(it->second[0])) throw std::invalid_argument(key + ": must be finite");
  return it->second[0];
}

inline int int_param(const GeneratorSpec& spec, const std::string& key) {
  const double v = scalar_param(spec, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument(key + ": expected an integer");
  return static_cast<int>(v);
}

inline void check_keys(const GeneratorSpec& spec, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : spec.params) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw std::invalid_argument(key + ": not a parameter of generator " + to_string(spec.kind));
  }
}

}  // namespace detail

/// Fills in every parameter the generator reads so the spec fully
/// determines its output. Existing values are kept.
inline GeneratorSpec with_defaults(GeneratorSpec spec) {
  auto def = [&](const char* key, std::vector<double> v) { spec.params.try_emplace(key, std::move(v)); };
  switch (spec.kind) {
    case GeneratorKind::Polygon:
    case GeneratorKind::Star: def("p", {6}); break;
    case GeneratorKind::Hilbert: def("q", {5}); break;
    case GeneratorKind::Logistic:
      def("mu", {3.5});
      def("y0", {0.3});
      def("n", {150});
      break;
    case GeneratorKind::Lorenz: {
      const LorenzParams lp;
      def("sigma", {lp.sigma});
      def("rho", {lp.rho});
      def("beta", {lp.beta});
      def("delta", {lp.delta});
      def("init", {lp.init[0], lp.init[1], lp.init[2]});
      def("n", {static_cast<double>(lp.n)});
      break;
    }
    case GeneratorKind::RandomUniform:
      def("n", {50});
      def("dim", {2});
      if (!spec.seed) spec.seed = 1;
      break;
    default: break;
  }
  return spec;
}

inline LandmarkSet make_landmarks(const GeneratorSpec& raw) {
  if (raw.seed && raw.kind != GeneratorKind::RandomUniform) {
    throw std::invalid_argument("seed: only the random generator takes a seed");
  }
  const GeneratorSpec spec = with_defaults(raw);
  switch (spec.kind) {
    case GeneratorKind::Polygon:
      detail::check_keys(spec, {"p"});
      return polygon_landmarks(detail::int_param(spec, "p"));
    case GeneratorKind::Star:
      detail::check_keys(spec, {"p"});
      return star_landmarks(detail::int_param(spec, "p"));
    case GeneratorKind::PlanarGraphExample:
      detail::check_keys(spec, {});
      return planar_graph_example_landmarks();
    case GeneratorKind::LemniscateSquare:
      detail::check_keys(spec, {});
      return lemniscate_landmarks(LemniscateVariant::Square4);
    case GeneratorKind::LemniscateSixPoint:
      detail::check_keys(spec, {});
      return lemniscate_landmarks(LemniscateVariant::SixPoint);
    case GeneratorKind::Hilbert:
      detail::check_keys(spec, {"q"});
      return hilbert_landmarks(detail::int_param(spec, "q"));
    case GeneratorKind::Logistic:
      detail::check_keys(spec, {"mu", "y0", "n"});
      return logistic_landmarks(detail::scalar_param(spec, "mu"), detail::scalar_param(spec, "y0"),
                                detail::int_param(spec, "n"));
    case GeneratorKind::Lorenz: {
      detail::check_keys(spec, {"sigma", "rho", "beta", "delta", "init", "n"});
      LorenzParams lp;
      lp.sigma = detail::scalar_param(spec, "sigma");
      lp.rho = detail::scalar_param(spec, "rho");
      lp.beta = detail::scalar_param(spec, "beta");
      lp.delta = detail::scalar_param(spec, "delta");
      lp.n = detail::int_param(spec, "n");
      const auto& init = spec.params.at("init");
      if (init.size() != 3) throw std::invalid_argument("init: expected three numbers");
      lp.init = {init[0], init[1], init[2]};
      return lorenz_landmarks(lp);
    }
    case GeneratorKind::Trefoil:
      detail::check_keys(spec, {});
      return trefoil_landmarks();
    case GeneratorKind::RandomUniform:
      detail::check_keys(spec, {"n", "dim"});
      return random_uniform_landmarks(detail::int_param(spec, "n"), detail::int_param(spec, "dim"), *spec.seed);
    case GeneratorKind::Explicit: {
      detail::check_keys(spec, {"dim", "points", "closed"});
      const int dim = detail::int_param(spec, "dim");
      if (dim < 1) throw std::invalid_argument("dim: must be at least 1");
      auto it = spec.params.find("points");
      if (it == spec.params.end() || it->second.empty()) throw std::invalid_argument("points: missing parameter");
      if (it->second.size() % static_cast<std::size_t>(dim) != 0) {
        throw std::invalid_argument("points: count is not a multiple of dim");
      }
      const bool closed = spec.params.count("closed") && detail::scalar_param(spec, "closed") != 0.0;
      return LandmarkSet(static_cast<std::size_t>(dim), it->second, closed ? Topology::Closed : Topology::Open);
    }
  }
  throw std::invalid_argument("kind: unhandled generator");
}

}  // namespace kshape

#endif  // KSHAPE_GENERATORS_HPP
