#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birdify/errors.hpp"
#include "birdify/metrics.hpp"

#include <random>

using namespace birdify;

namespace {

CameraTrajectory camera_line(int frames, const Vec2& start, const Vec2& step, double heading) {
  CameraTrajectory out;
  for (int t = 0; t < frames; ++t) out.push_back({t, {start + t * step, heading}});
  return out;
}

}  // namespace

TEST_CASE("translation error") {
  const auto gt = camera_line(5, Vec2(0, 0), Vec2(0.5, 0), 0.0);
  CHECK(translation_error(gt, gt) == doctest::Approx(0.0));

  auto est = gt;
  for (auto& t : est) t.pose.position += Vec2(0.1, 0);
  CHECK(translation_error(est, gt) == doctest::Approx(0.1));

  auto two_est = camera_line(2, Vec2(0, 0), Vec2(1, 0), 0.0);
  auto two_gt = two_est;
  two_est[0].pose.position += Vec2(0.1, 0);
  two_est[1].pose.position += Vec2(0, 0.3);
  CHECK(translation_error(two_est, two_gt) == doctest::Approx(0.2));

  const auto shorter = camera_line(3, Vec2(0, 0), Vec2(0.5, 0), 0.0);
  CHECK_THROWS_AS(translation_error(shorter, gt), LengthMismatch);
}

TEST_CASE("rotation error") {
  const auto gt = camera_line(4, Vec2(0, 0), Vec2(0.5, 0), 0.3);
  CHECK(rotation_error(gt, gt) == doctest::Approx(0.0));

  auto est = gt;
  for (auto& t : est) t.pose.heading += 0.1;
  CHECK(rotation_error(est, gt) == doctest::Approx(0.1));

  // wrap-around: pi - 0.05 vs -pi + 0.05 are 0.1 apart on the circle
  auto wrapped_est = camera_line(1, Vec2(0, 0), Vec2(0, 0), std::numbers::pi - 0.05);
  auto wrapped_gt = camera_line(1, Vec2(0, 0), Vec2(0, 0), -std::numbers::pi + 0.05);
  CHECK(rotation_error(wrapped_est, wrapped_gt) == doctest::Approx(0.1));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    auto a = camera_line(1, Vec2(0, 0), Vec2(0, 0), angle(rng));
    auto b = camera_line(1, Vec2(0, 0), Vec2(0, 0), angle(rng));
    const double err = rotation_error(a, b);
    CHECK(err >= 0.0);
    CHECK(err <= std::numbers::pi);
  }
}

TEST_CASE("absolute localization error") {
  PedestrianTrajectories gt;
  gt[1] = {{0, Vec2(0, 0)}, {1, Vec2(1, 0)}};
  gt[2] = {{0, Vec2(5, 5)}, {1, Vec2(5, 6)}};

  CHECK(absolute_localization_error(gt, gt) == doctest::Approx(0.0));

  // one pedestrian offset by 0.5 in one of two frames
  PedestrianTrajectories est;
  est[1] = {{0, Vec2(0, 0)}, {1, Vec2(1.5, 0)}};
  CHECK(absolute_localization_error(est, gt) == doctest::Approx(0.25));

  est = gt;
  for (auto& [id, traj] : est)
    for (auto& t : traj) t.position += Vec2(0.3, 0.4);
  CHECK(absolute_localization_error(est, gt) == doctest::Approx(0.5));

  est.clear();
  est[9] = {{0, Vec2(0, 0)}};
  CHECK_THROWS_AS(absolute_localization_error(est, gt), IdMismatch);
}

TEST_CASE("relative localization error") {
  const auto gt_cam = camera_line(2, Vec2(0, 0), Vec2(1, 0), 0.0);
  PedestrianTrajectories gt;
  gt[1] = {{0, Vec2(2, 2)}, {1, Vec2(3, 2)}};

  CHECK(relative_localization_error(gt, gt_cam, gt, gt_cam) == doctest::Approx(0.0));

  // a rigid translation applied to the whole estimate cancels out
  auto est_cam = gt_cam;
  auto est = gt;
  const Vec2 shift(4.0, -2.0);
  for (auto& t : est_cam) t.pose.position += shift;
  for (auto& [id, traj] : est)
    for (auto& t : traj) t.position += shift;
  CHECK(relative_localization_error(est, est_cam, gt, gt_cam) == doctest::Approx(0.0));

  // camera off by 0.2 with exact pedestrians leaks into the relative error
  est = gt;
  est_cam = gt_cam;
  for (auto& t : est_cam) t.pose.position += Vec2(0.2, 0);
  CHECK(relative_localization_error(est, est_cam, gt, gt_cam) == doctest::Approx(0.2));
}

TEST_CASE("sequence errors and the metrics table") {
  const auto gt_cam = camera_line(4, Vec2(0, 0), Vec2(0.5, 0.2), 0.1);
  PedestrianTrajectories gt;
  gt[1] = {{0, Vec2(1, 1)}, {1, Vec2(1, 2)}, {2, Vec2(1, 3)}, {3, Vec2(1, 4)}};
  gt[2] = {{2, Vec2(4, 0)}, {3, Vec2(4, 1)}};

  auto est_cam = gt_cam;
  for (auto& t : est_cam) t.pose.position += Vec2(0.05, 0);
  PedestrianTrajectories est;
  est[1] = gt[1];
  for (auto& t : est[1]) t.position += Vec2(0.0, 0.1);
  // pedestrian 2 never estimated: counted as a coverage gap

  const auto errors = compute_sequence_errors(est_cam, est, gt_cam, gt);
  CHECK(errors.dt_mean == doctest::Approx(0.05));
  CHECK(errors.dr_mean == doctest::Approx(0.0));
  CHECK(errors.dx_mean == doctest::Approx(0.1));
  CHECK(errors.matched_pairs == 4);
  CHECK(errors.gt_only_pairs == 2);
  CHECK(errors.dt_series.size() == 4);
  CHECK(errors.dr_series.size() == errors.dt_series.size());
  CHECK(errors.dx_series.size() == errors.dt_series.size());
  CHECK(errors.dxrel_series.size() == errors.dt_series.size());

  const auto table = metrics_table({{"seq_000", errors}});
  CHECK(table.find("seq_000") != std::string::npos);
  CHECK(table.find("+-") != std::string::npos);
  CHECK(table.find("dx [m]") != std::string::npos);
}
