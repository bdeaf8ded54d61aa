#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birdify/solver.hpp"

using namespace birdify;

namespace {

BirdifyConfig posterior_config() {
  BirdifyConfig cfg;
  cfg.intrinsics = {500.0, 960.0, 540.0, 1920.0, 1080.0};
  cfg.prior = {1.70, 0.05};
  cfg.projection = ProjectionKind::cylindrical;
  cfg.model = InteractionModel::social_force;
  cfg.sf.dt = 0.4;
  return cfg;
}

/// Pedestrians with given world positions and per-frame velocities, seen
/// from a camera that moved by `motion` between tau-1 and tau.
struct PosteriorScene {
  std::vector<Detection> detections;
  HistoryMap history;
  EgoHistory ego;
  CameraPose true_pose;
};

PosteriorScene make_scene(const std::vector<Vec2>& positions, const std::vector<Vec2>& velocities,
                          const EgoMotion& motion, const BirdifyConfig& cfg) {
  PosteriorScene scene;
  scene.ego.prev = {Vec2(0.0, 0.0), 0.0};
  scene.ego.prev2 = scene.ego.prev.position - Vec2(motion.dx, motion.dy);
  scene.true_pose = apply_ego_motion(scene.ego.prev, motion);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const Vec2 x = positions[k];
    const Vec2 step = velocities[k] * cfg.sf.dt;
    scene.history[static_cast<int>(k)] = {x - step, x - 2.0 * step};
    const auto proj = project(to_camera(x, scene.true_pose), cfg.intrinsics, cfg.prior.mean,
                              cfg.projection);
    Detection det = proj.detection;
    det.pedestrian_id = static_cast<int>(k);
    det.frame_index = 2;
    scene.detections.push_back(det);
  }
  return scene;
}

}  // namespace

TEST_CASE("a single-cell grid carries probability one") {
  const BirdifyConfig cfg = posterior_config();
  const PosteriorScene scene =
      make_scene({Vec2(1, 3)}, {Vec2(0.5, 0)}, {0.1, 0.1, 0.0}, cfg);
  const GridSpec spec{Vec2(0, 0), 0.2, 1, 1};
  const auto grid = posterior_grid(scene.detections, scene.history, scene.ego, cfg, spec);
  REQUIRE(grid.probabilities.size() == 1);
  CHECK(grid.probabilities[0] == doctest::Approx(1.0));
}

TEST_CASE("the argmax cell contains the true camera position on a noiseless frame") {
  const BirdifyConfig cfg = posterior_config();
  const PosteriorScene scene = make_scene(
      {Vec2(1, 3), Vec2(-2, 2), Vec2(0.5, -2), Vec2(2.5, 0.5), Vec2(-1.5, -1.5)},
      {Vec2(0.5, 0.2), Vec2(-0.3, 0.4), Vec2(0.2, -0.5), Vec2(-0.4, -0.1), Vec2(0.3, 0.3)},
      {0.15, 0.1, 0.0}, cfg);
  GridSpec spec;
  spec.cell_size = 0.1;
  spec.nx = spec.ny = 15;
  spec.min_corner = scene.ego.prev.position - Vec2(0.7, 0.7);
  const auto grid = posterior_grid(scene.detections, scene.history, scene.ego, cfg, spec);
  const auto [ix, iy] = grid.argmax();
  const Vec2 cell = grid.cell_center(ix, iy);
  CHECK(std::abs(cell.x() - scene.true_pose.position.x()) <= spec.cell_size);
  CHECK(std::abs(cell.y() - scene.true_pose.position.y()) <= spec.cell_size);

  double sum = 0.0;
  for (double p : grid.probabilities) sum += p;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("parallel motion spreads the posterior; diverse motion sharpens it") {
  const BirdifyConfig cfg = posterior_config();
  // three pedestrians all walking the observer's way
  const Vec2 shared(0.0, 1.0);
  const PosteriorScene parallel = make_scene({Vec2(-1.5, 3), Vec2(0, 4), Vec2(1.5, 3.5)},
                                             {shared, shared, shared}, {0, 0.4, 0}, cfg);
  // five pedestrians fanning out in different directions
  const PosteriorScene diverse = make_scene(
      {Vec2(-1.5, 3), Vec2(0, 4), Vec2(1.5, 3.5), Vec2(-2, 1), Vec2(2, 1.5)},
      {Vec2(0.8, 0.2), Vec2(-0.5, 0.7), Vec2(0.1, -0.9), Vec2(0.9, -0.4), Vec2(-0.7, -0.6)},
      {0, 0.4, 0}, cfg);

  GridSpec spec;
  spec.cell_size = 0.1;
  spec.nx = spec.ny = 17;
  spec.min_corner = Vec2(0, 0.4) - Vec2(0.85, 0.85);

  const auto wide = posterior_grid(parallel.detections, parallel.history, parallel.ego, cfg, spec);
  const auto sharp = posterior_grid(diverse.detections, diverse.history, diverse.ego, cfg, spec);
  CHECK(wide.entropy() > sharp.entropy());
}
