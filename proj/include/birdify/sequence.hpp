#pragma once

#include "birdify/metrics.hpp"
#include "birdify/solver.hpp"

#include <optional>
#include <vector>

namespace birdify {

/// Reserved id for the observer in bootstrap files.
inline constexpr int kCameraId = -1;

/// A-priori ground-truth position for one track at one frame. Camera entries
/// (id == kCameraId) carry a heading; the first two frames of the sequence
/// and the first two visible frames of every track must be covered.
struct BootstrapEntry {
  int frame = 0;
  int id = 0;
  Vec2 position = Vec2::Zero();
  std::optional<double> heading;
};

struct FrameDiagnostics {
  int frame = 0;
  bool skipped = false;  // nothing to optimize; pose extrapolated from the last motion
  int detections = 0;
  int optimized = 0;
  int bootstrapped = 0;
  int carried = 0;  // tracks advanced by extrapolation only (unseen or unselected)
  EgoEstimate ego;
  double energy = 0.0;
  int mp_iterations = 0;
  bool mp_converged = true;
};

struct SequenceResult {
  CameraTrajectory camera;
  PedestrianTrajectories pedestrians;  // bootstrap and estimated entries only
  std::vector<FrameDiagnostics> diagnostics;
};

/// Runs the per-frame cascade over a time-ordered observation stream:
/// neighbor selection, ego-motion estimation, then pedestrian localization,
/// all in one world frame anchored by the camera bootstrap. Tracks without a
/// fresh estimate are carried forward internally so they can re-enter the
/// optimization after gaps.
SequenceResult birdify_sequence(const std::vector<Detection>& observations,
                                const std::vector<BootstrapEntry>& bootstrap,
                                const BirdifyConfig& cfg, Exec exec = Exec::parallel);

}  // namespace birdify
