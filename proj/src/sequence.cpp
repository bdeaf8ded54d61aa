#include "birdify/sequence.hpp"

#include "birdify/errors.hpp"

#include <limits>
#include <map>
#include <set>

namespace birdify {

namespace {

struct TrackState {
  Vec2 prev = Vec2::Zero();
  Vec2 prev2 = Vec2::Zero();
  double height = 0.0;  // last resolved height, 0 until known
  int entries = 0;

  void push(const Vec2& x) {
    prev2 = entries == 0 ? x : prev;
    prev = x;
    ++entries;
  }
  Vec2 linear_extrapolation() const { return 2.0 * prev - prev2; }
  MotionHistory history() const { return {prev, prev2, height}; }
};

/// Height implied by an a-priori world position and its detection; the
/// bootstrap pins the depth, so the scale ambiguity resolves geometrically.
double implied_height(const Detection& det, const Vec2& position, const CameraPose& pose,
                      const BirdifyConfig& cfg) {
  const RelativePosition z = to_camera(position, pose);
  const double depth = cfg.projection == ProjectionKind::perspective ? z.y() : z.range();
  if (depth <= 0.0 || det.l <= 0.0) return 0.0;
  return depth * det.l / cfg.intrinsics.focal_length;
}

}  // namespace

SequenceResult birdify_sequence(const std::vector<Detection>& observations,
                                const std::vector<BootstrapEntry>& bootstrap,
                                const BirdifyConfig& cfg, Exec exec) {
  std::map<int, std::vector<Detection>> by_frame;
  int last_frame = std::numeric_limits<int>::min();
  for (const auto& det : observations) {
    if (det.frame_index < last_frame)
      throw NonMonotonicFrames("observation stream goes back in time at frame " +
                               std::to_string(det.frame_index));
    last_frame = det.frame_index;
    by_frame[det.frame_index].push_back(det);
  }

  std::map<std::pair<int, int>, BootstrapEntry> boot;
  for (const auto& b : bootstrap) boot[{b.frame, b.id}] = b;

  SequenceResult result;
  if (by_frame.empty()) return result;

  std::vector<int> frames;
  frames.reserve(by_frame.size());
  for (const auto& [f, dets] : by_frame) frames.push_back(f);

  auto camera_bootstrap = [&](int frame) {
    const auto it = boot.find({frame, kCameraId});
    if (it == boot.end() || !it->second.heading)
      throw MissingBootstrap("camera pose (with heading) required at frame " +
                             std::to_string(frame));
    return CameraPose{it->second.position, normalize_angle(*it->second.heading)};
  };

  std::map<int, TrackState> tracks;
  CameraPose pose;
  Vec2 camera_prev2 = Vec2::Zero();
  EgoMotion last_motion;

  const int total = static_cast<int>(frames.size());
  for (int t = 0; t < total; ++t) {
    const int frame = frames[t];
    const auto& dets = by_frame[frame];
    FrameDiagnostics diag;
    diag.frame = frame;
    diag.detections = static_cast<int>(dets.size());

    const CameraPose prev_pose = pose;
    if (t < 2) pose = camera_bootstrap(frame);

    // Snapshot of per-track history (positions at tau-1 and tau-2), taken
    // before anything from this frame is folded in.
    HistoryMap history;
    for (const auto& [id, state] : tracks)
      if (state.entries >= 2) history[id] = state.history();

    // A-priori (bootstrap) entries are emitted as given; tracks with a full
    // history are candidates for optimization.
    std::vector<Detection> optimizable;
    std::vector<std::pair<Detection, Vec2>> given;
    for (const auto& det : dets) {
      const auto bit = boot.find({frame, det.pedestrian_id});
      if (bit != boot.end()) {
        given.emplace_back(det, bit->second.position);
      } else if (history.count(det.pedestrian_id)) {
        optimizable.push_back(det);
      } else {
        throw MissingBootstrap("track " + std::to_string(det.pedestrian_id) +
                               " has no bootstrap for frame " + std::to_string(frame) +
                               " and no history");
      }
    }

    std::set<int> updated;
    if (t >= 2) {
      const std::vector<Detection> selected =
          cfg.size_threshold > 0.0
              ? select_neighbors(optimizable, cfg.size_threshold, cfg.size_aspect)
              : optimizable;
      if (selected.empty()) {
        pose = apply_ego_motion(prev_pose, last_motion);
        diag.skipped = true;
      } else {
        const EgoHistory ego{prev_pose, camera_prev2};
        diag.ego = estimate_ego_motion(selected, history, ego, cfg, exec);
        last_motion = diag.ego.motion;
        pose = apply_ego_motion(prev_pose, last_motion);

        const FrameEstimate estimate = localize_pedestrians(selected, pose, history, cfg, exec);
        diag.energy = estimate.energy;
        diag.mp_iterations = estimate.mp_iterations;
        diag.mp_converged = estimate.mp_converged;
        diag.optimized = static_cast<int>(estimate.pedestrians.size());
        std::map<int, const Detection*> by_id;
        for (const auto& det : selected) by_id[det.pedestrian_id] = &det;
        for (const auto& ped : estimate.pedestrians) {
          auto& track = tracks[ped.id];
          double resolved = ped.height;
          Vec2 position = ped.position;
          if (track.height > 0.0 && cfg.height_smoothing > 0.0) {
            resolved = cfg.height_smoothing * track.height +
                       (1.0 - cfg.height_smoothing) * ped.height;
            position = to_world(
                inverse_project(*by_id.at(ped.id), cfg.intrinsics, resolved, cfg.projection),
                pose);
          }
          result.pedestrians[ped.id].push_back({frame, position});
          track.push(position);
          track.height = resolved;
          updated.insert(ped.id);
        }
      }
    }

    for (const auto& [det, position] : given) {
      result.pedestrians[det.pedestrian_id].push_back({frame, position});
      auto& track = tracks[det.pedestrian_id];
      track.push(position);
      const double h = implied_height(det, position, pose, cfg);
      if (h > 0.0) track.height = h;
      updated.insert(det.pedestrian_id);
      ++diag.bootstrapped;
    }

    // Carry every remaining track forward so its history stays aligned with
    // the frame clock; these entries are internal only.
    for (auto& [id, state] : tracks) {
      if (updated.count(id)) continue;
      state.push(state.entries >= 2 ? state.linear_extrapolation() : state.prev);
      ++diag.carried;
    }

    result.camera.push_back({frame, pose});
    if (t >= 1) camera_prev2 = prev_pose.position;
    result.diagnostics.push_back(diag);
  }
  return result;
}

}  // namespace birdify
