#pragma once

#include "birdify/sequence.hpp"
#include "birdify/solver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace birdify {

struct TrajectoryRecord {
  int frame = 0;
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

enum class TrajectoryFormat { native_csv, ethucy_tsv };

/// Shortest exact decimal representation (round-trips bit for bit).
std::string format_double(double value);

/// Loads ground-plane trajectories, time-sorted and validated: rows must
/// parse, coordinates must be finite, (frame, id) pairs unique.
std::vector<TrajectoryRecord> load_trajectories(const std::string& path, TrajectoryFormat format);

/// Native CSV with header frame,id,x,y. Written atomically.
void save_trajectories(const std::string& path, const std::vector<TrajectoryRecord>& records);

PedestrianTrajectories group_trajectories(const std::vector<TrajectoryRecord>& records);
std::vector<TrajectoryRecord> flatten_trajectories(const PedestrianTrajectories& trajectories);
std::vector<TrajectoryRecord> records_from_frames(const std::vector<CrowdFrame>& frames);

struct ObservationRecord {
  int frame = 0;
  int id = 0;
  double u = 0.0;
  double v = 0.0;
  double l = 0.0;
  std::optional<double> box_size;
};

/// JSON-lines, one object per detection with keys frame,id,u,v,l.
std::vector<ObservationRecord> load_observations(const std::string& path);
void save_observations(const std::string& path, const std::vector<ObservationRecord>& records);

/// Tracker output: JSON-lines with keys frame,id,x1,y1,x2,y2 mapped to
/// u = (x1+x2)/2, v = (y1+y2)/2, l = y2-y1.
std::vector<ObservationRecord> load_tracker_boxes(const std::string& path);

std::vector<Detection> to_detections(const std::vector<ObservationRecord>& records);

/// Isotropic scale-and-offset taking the source extent into a centered
/// square; x' = scale * x + offset.
struct SceneNormalization {
  double scale = 1.0;
  Vec2 offset = Vec2::Zero();

  Vec2 apply(const Vec2& x) const { return scale * x + offset; }
  Vec2 invert(const Vec2& x) const { return (x - offset) / scale; }
};

/// Scales trajectories so the larger source extent spans the target square
/// [-half_extent, half_extent]^2.
std::pair<std::vector<TrajectoryRecord>, SceneNormalization> normalize_scene(
    const std::vector<TrajectoryRecord>& records, double target_half_extent);

/// CSV frame,id,x,y,heading; heading is empty for pedestrians and set for
/// camera rows (id == kCameraId).
void save_bootstrap(const std::string& path, const std::vector<BootstrapEntry>& entries);
std::vector<BootstrapEntry> load_bootstrap(const std::string& path);

/// CSV frame,x,y,heading.
void save_camera_trajectory(const std::string& path, const CameraTrajectory& trajectory);
CameraTrajectory load_camera_trajectory(const std::string& path);

void save_diagnostics(const std::string& path, const std::vector<FrameDiagnostics>& diagnostics,
                      const std::string& model_name);

struct SynthesisResult {
  std::vector<ObservationRecord> observations;
  std::vector<BootstrapEntry> bootstrap;  // camera rows plus first two visible frames per track
  CameraTrajectory camera;                // ground-truth observer poses
  std::map<int, double> heights;          // sampled true heights per track
};

/// Projects every trajectory into the ego-centric view of the observer
/// track. Heights are drawn once per track from the prior; the observer
/// heading follows its own velocity direction; detections outside the field
/// of view are omitted. Deterministic given the seed.
SynthesisResult synthesize_observations(const std::vector<TrajectoryRecord>& trajectories,
                                        int observer_id, const CameraRig& rig,
                                        const CameraIntrinsics& intrinsics,
                                        const HeightPrior& prior, double fov_degrees,
                                        std::uint64_t seed,
                                        std::optional<double> initial_heading = 0.0,
                                        bool drop_occluded = false);

void save_posterior_grid(const std::string& path, const PosteriorGrid& grid);
PosteriorGrid load_posterior_grid(const std::string& path);

void save_text(const std::string& path, const std::string& text);

}  // namespace birdify
