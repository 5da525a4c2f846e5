#ifndef KSHAPE_SCENE_HPP
#define KSHAPE_SCENE_HPP

// eta-families of scenes: M member curves blended over a member index q the
// same way landmarks are blended over t. Type I uses the open window over
// q in [0, M-1]; type II the periodic window with period M.

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kshape/shape.hpp"

namespace kshape {

enum class SceneType { TypeI, TypeII };

/// One curve inside a scene: a kappa-family at a fixed kappa, or another
/// scene at fixed (q, eta). Evaluated at the scene's shared t.
class SceneMember {
 public:
  SceneMember(KappaFamily family, double kappa) : dim_(family.dim()) {
    detail::require_kappa(kappa, "member kappa");
    eval_ = [f = std::move(family), kappa](double t) { return f.evaluate(t, kappa).point; };
  }

  SceneMember(std::size_t dim, std::function<Point(double)> eval) : dim_(dim), eval_(std::move(eval)) {
    if (dim_ == 0 || !eval_) throw std::invalid_argument("scene member needs a dimension and an evaluator");
  }

  std::size_t dim() const noexcept { return dim_; }
  Point evaluate(double t) const { return eval_(t); }

 private:
  std::size_t dim_;
  std::function<Point(double)> eval_;
};

class Scene {
 public:
  Scene(std::vector<SceneMember> members, SceneType type) : members_(std::move(members)), type_(type) {
    if (members_.empty()) throw std::invalid_argument("a scene needs at least one member");
    for (const auto& m : members_) {
      if (m.dim() != members_.front().dim()) {
        throw std::invalid_argument("all scene members must share one dimension");
      }
    }
  }

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t dim() const noexcept { return members_.front().dim(); }
  SceneType type() const noexcept { return type_; }
  const SceneMember& member(std::size_t m) const { return members_.at(m); }

 private:
  std::vector<SceneMember> members_;
  SceneType type_;
};

/// S_eta(t, q). Weights in the result are over members.
inline EvalResult eval_scene(const Scene& scene, double t, double q, double eta) {
  detail::require_kappa(eta, "eta");
  Weights w = scene.type() == SceneType::TypeI ? open_weights(scene.size(), q, eta)
                                               : closed_weights(scene.size(), q, eta);
  EvalResult r;
  r.point.assign(scene.dim(), 0.0);
  for (std::size_t m = 0; m < scene.size(); ++m) {
    if (w.values[m] == 0.0) continue;
    Point p = scene.member(m).evaluate(t);
    for (std::size_t d = 0; d < p.size(); ++d) r.point[d] += w.values[m] * p[d];
  }
  r.weights = std::move(w.values);
  r.quality = w.quality;
  return r;
}

/// Wraps a scene at fixed (q, eta) so it can sit inside another scene.
inline SceneMember as_member(std::shared_ptr<const Scene> scene, double q, double eta) {
  if (!scene) throw std::invalid_argument("null scene");
  detail::require_kappa(eta, "eta");
  const std::size_t dim = scene->dim();
  return SceneMember(dim, [s = std::move(scene), q, eta](double t) { return eval_scene(*s, t, q, eta).point; });
}

struct MemberRecoveryOptions {
  double eta = 1e-3;
  double tolerance = 1e-6;
};

/// Member m as the small-eta limit of S_eta(t, m). Throws RecoveryError if
/// the blend is not within tolerance of the member's own value.
inline Point recover_member(const Scene& scene, std::size_t m, double t, MemberRecoveryOptions opts = {}) {
  if (m >= scene.size()) {
    throw std::out_of_range("member index " + std::to_string(m) + " out of range for " +
                            std::to_string(scene.size()) + " members");
  }
  Point got = eval_scene(scene, t, static_cast<double>(m), opts.eta).point;
  Point want = scene.member(m).evaluate(t);
  double scale = 0.0;
  for (double v : want) scale = std::max(scale, std::abs(v));
  for (std::size_t d = 0; d < want.size(); ++d) {
    if (std::abs(got[d] - want[d]) > opts.tolerance * (1.0 + scale)) {
      throw RecoveryError("member " + std::to_string(m) + " not recovered at eta " + std::to_string(opts.eta));
    }
  }
  return got;
}

}  // namespace kshape

#endif  // KSHAPE_SCENE_HPP
