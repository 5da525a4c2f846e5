#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "kshape/generators.hpp"
#include "kshape/scene.hpp"

using namespace kshape;

namespace {

Scene three_members(SceneType type) {
  std::vector<SceneMember> m;
  m.emplace_back(KappaFamily(polygon_landmarks(3)), 0.1);
  m.emplace_back(KappaFamily(polygon_landmarks(4)), 0.2);
  m.emplace_back(KappaFamily(star_landmarks(3)), 0.05);
  return Scene(std::move(m), type);
}

}  // namespace

TEST(Scene, SmallEtaRecoversMembers) {
  for (auto type : {SceneType::TypeI, SceneType::TypeII}) {
    const Scene s = three_members(type);
    for (std::size_t m = 0; m < 3; ++m) {
      for (double t : {0.0, 0.7, 1.9, 2.5}) {
        const Point got = recover_member(s, m, t);
        const Point want = s.member(m).evaluate(t);
        EXPECT_NEAR(got[0], want[0], 1e-6);
        EXPECT_NEAR(got[1], want[1], 1e-6);
      }
    }
  }
}

TEST(Scene, LargeEtaIsMemberAverage) {
  for (auto type : {SceneType::TypeI, SceneType::TypeII}) {
    const Scene s = three_members(type);
    for (double t : {0.0, 1.3}) {
      Point avg(2, 0.0);
      for (std::size_t m = 0; m < 3; ++m) {
        const Point p = s.member(m).evaluate(t);
        avg[0] += p[0] / 3;
        avg[1] += p[1] / 3;
      }
      for (double q : {0.0, 1.0, 1.6}) {
        const Point got = eval_scene(s, t, q, 1e8).point;
        EXPECT_NEAR(got[0], avg[0], 1e-5);
        EXPECT_NEAR(got[1], avg[1], 1e-5);
      }
    }
  }
}

TEST(Scene, TypeIIIsPeriodicInQ) {
  const Scene s = three_members(SceneType::TypeII);
  const Point a = eval_scene(s, 0.4, 0.8, 0.3).point;
  const Point b = eval_scene(s, 0.4, 3.8, 0.3).point;
  EXPECT_NEAR(a[0], b[0], 1e-12);
  EXPECT_NEAR(a[1], b[1], 1e-12);
}

TEST(Scene, WeightsOverMembers) {
  const Scene s = three_members(SceneType::TypeI);
  const EvalResult r = eval_scene(s, 0.5, 1.5, 0.2);
  ASSERT_EQ(r.weights.size(), 3u);
  double sum = 0;
  for (double w : r.weights) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(r.weights[1], r.weights[2], 1e-12);
}

TEST(Scene, Nesting) {
  auto inner = std::make_shared<const Scene>(three_members(SceneType::TypeI));
  std::vector<SceneMember> outer_members;
  outer_members.push_back(as_member(inner, 0.0, 1e-3));
  outer_members.emplace_back(KappaFamily(polygon_landmarks(5)), 0.1);
  const Scene outer(std::move(outer_members), SceneType::TypeI);
  const Point got = eval_scene(outer, 0.3, 0.0, 1e-3).point;
  const Point want = inner->member(0).evaluate(0.3);
  EXPECT_NEAR(got[0], want[0], 1e-6);
  EXPECT_NEAR(got[1], want[1], 1e-6);
}

TEST(Scene, Errors) {
  EXPECT_THROW(Scene({}, SceneType::TypeI), std::invalid_argument);
  std::vector<SceneMember> mixed;
  mixed.emplace_back(KappaFamily(polygon_landmarks(3)), 0.1);
  mixed.emplace_back(KappaFamily(trefoil_landmarks()), 0.1);
  EXPECT_THROW(Scene(std::move(mixed), SceneType::TypeI), std::invalid_argument);
  EXPECT_THROW(SceneMember(KappaFamily(polygon_landmarks(3)), 0.0), std::domain_error);
  const Scene s = three_members(SceneType::TypeI);
  EXPECT_THROW(eval_scene(s, 0.0, 0.0, -1.0), std::domain_error);
  EXPECT_THROW(recover_member(s, 3, 0.0), std::out_of_range);
  EXPECT_THROW(recover_member(s, 0, 0.0, {0.5, 1e-9}), RecoveryError);
  EXPECT_THROW(as_member(nullptr, 0.0, 0.1), std::invalid_argument);
}
