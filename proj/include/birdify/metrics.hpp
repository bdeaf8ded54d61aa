#pragma once

#include "birdify/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace birdify {

struct TimedPose {
  int frame = 0;
  CameraPose pose;
};

struct TimedPosition {
  int frame = 0;
  Vec2 position = Vec2::Zero();
};

using CameraTrajectory = std::vector<TimedPose>;                 // frame-sorted
using PedestrianTrajectories = std::map<int, std::vector<TimedPosition>>;  // id -> frame-sorted

/// Mean camera position error over aligned frames.
double translation_error(const CameraTrajectory& est, const CameraTrajectory& gt);

/// Mean absolute geodesic heading difference on SO(2), per frame in [0, pi].
double rotation_error(const CameraTrajectory& est, const CameraTrajectory& gt);

/// Mean pedestrian position error over (id, frame) pairs present in the
/// estimate. Ground-truth pairs never estimated are excluded and counted.
double absolute_localization_error(const PedestrianTrajectories& est,
                                   const PedestrianTrajectories& gt);

/// Like the absolute error but measured in the camera-centered frame,
/// canceling drift shared by the camera and the pedestrians.
double relative_localization_error(const PedestrianTrajectories& est_peds,
                                   const CameraTrajectory& est_camera,
                                   const PedestrianTrajectories& gt_peds,
                                   const CameraTrajectory& gt_camera);

struct SequenceErrors {
  double dt_mean = 0.0, dt_std = 0.0;  // camera translation, meters
  double dr_mean = 0.0, dr_std = 0.0;  // camera rotation, radians
  double dx_mean = 0.0, dx_std = 0.0;  // absolute pedestrian error, meters
  double dxrel_mean = 0.0, dxrel_std = 0.0;  // relative pedestrian error, meters

  // Per-frame series, one entry per camera frame; pedestrian entries are
  // frame means over the pairs matched that frame (0 when none).
  std::vector<double> dt_series, dr_series, dx_series, dxrel_series;
  std::vector<int> matched_per_frame;

  int matched_pairs = 0;  // (id, frame) pairs contributing to dx/dxrel
  int gt_only_pairs = 0;  // ground-truth pairs never estimated (coverage gap)
};

SequenceErrors compute_sequence_errors(const CameraTrajectory& est_camera,
                                       const PedestrianTrajectories& est_peds,
                                       const CameraTrajectory& gt_camera,
                                       const PedestrianTrajectories& gt_peds);

/// One row per sequence: name, then dr / dt / dxrel / dx as "mean +- std"
/// (the +- is the per-frame standard deviation).
std::string metrics_table(const std::vector<std::pair<std::string, SequenceErrors>>& rows);

}  // namespace birdify
