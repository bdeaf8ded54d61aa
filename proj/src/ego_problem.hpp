#pragma once

#include "birdify/solver.hpp"

#include <vector>

namespace birdify::detail {

/// Per-frame quantities that stay fixed while the candidate ego-motion
/// varies. Shared by the gradient-descent estimator and the posterior grid.
struct EgoProblem {
  std::vector<RelativePosition> rays;  // mean-height placements, camera frame
  std::vector<MotionHistory> history;
  std::vector<Vec2> desired;  // w_k per detection (social force only)
  CameraPose prev_pose;
  MotionHistory camera_history;
  Vec2 camera_desired = Vec2::Zero();
  double pairwise_constant = 0.0;  // rigid-invariant, so fixed across candidate motions
  double heading_metric = 1.0;     // mean squared range; the heading axis is this much stiffer
  const BirdifyConfig* cfg = nullptr;

  // Standard deviation of the forward-camera heading prior (crowd-model
  // mode only): the observer's viewing direction follows its velocity, which
  // ties the rotation to the translation and removes their shared gauge.
  static constexpr double kHeadingSigma = 0.05;  // radians
};

EgoProblem build_ego_problem(const std::vector<Detection>& detections, const HistoryMap& history,
                             const EgoHistory& ego, const BirdifyConfig& cfg);

double problem_energy(const EgoProblem& p, const EgoMotion& d, Exec exec);

Eigen::Vector3d problem_gradient(const EgoProblem& p, const EgoMotion& d, Exec exec);

}  // namespace birdify::detail
