#pragma once

#include "birdify/crowd.hpp"
#include "birdify/geometry.hpp"
#include "birdify/parallel.hpp"
#include "birdify/types.hpp"

#include <vector>

namespace birdify {

enum class EgoPriorMode { none, crowd_model };

struct BirdifyConfig {
  HeightPrior prior;
  int candidate_count = 29;      // S, odd; forced to 1 when prior.stddev == 0
  double candidate_step = 0.01;  // height spacing between candidates, meters
  int mp_max_iterations = 50;
  double mp_damping = 0.5;
  double mp_tolerance = 1e-9;
  double gd_step = 0.05;
  int gd_max_iterations = 200;
  double gd_tolerance = 1e-6;
  InteractionModel model = InteractionModel::social_force;
  double size_threshold = 0.0;  // epsilon for select_neighbors; 0 keeps everything
  double size_aspect = 0.5;     // box width/height ratio for the size proxy
  EgoPriorMode ego_prior = EgoPriorMode::none;
  // Heights are physically constant per pedestrian, so the sequence driver
  // low-passes each track's resolved height: kept fraction of the old value
  // per frame (0 disables the memory).
  double height_smoothing = 0.7;
  // Once a track's height is known (from its a-priori frames or earlier
  // resolutions), candidates are additionally scored against it with this
  // standard deviation. Stops track heights from drifting with the camera;
  // 0 disables the term.
  double track_height_stddev = 0.01;
  ProjectionKind projection = ProjectionKind::perspective;
  CameraIntrinsics intrinsics;
  SocialForceParams sf;  // interaction parameters, including dt

  /// Number of height samples actually used (1 in the degenerate
  /// zero-variance mode, where the prior is a point mass).
  int effective_candidate_count() const { return prior.stddev == 0.0 ? 1 : candidate_count; }
};

/// Discretized position hypotheses for one pedestrian, one per sampled
/// height, all on the detection's projection ray.
struct CandidateSet {
  int pedestrian_id = -1;
  Detection detection;
  std::vector<double> heights;
  std::vector<Vec2> positions;  // world frame
  std::vector<double> observation_nll;

  int size() const { return static_cast<int>(heights.size()); }
};

/// Height-prior negative log likelihood, (h - mu)^2 / (2 sigma^2) up to a
/// constant; identically 0 in the zero-variance point-mass mode.
double observation_nll(double height, const HeightPrior& prior);

/// Samples heights mu + step*(s - (S-1)/2) and maps each through the inverse
/// projection and the given pose. The center candidate uses exactly mu.
CandidateSet sample_candidates(const Detection& det, const CameraPose& pose,
                               const BirdifyConfig& cfg);

/// Apparent-size proxy used for neighbor selection: aspect * l^2.
double detection_size(const Detection& det, double aspect);

/// Keeps detections whose size proxy is at least epsilon; order preserved.
std::vector<Detection> select_neighbors(const std::vector<Detection>& detections, double epsilon,
                                        double aspect);

// --- ego-motion estimation -------------------------------------------------

/// Camera poses feeding the per-frame motion priors.
struct EgoHistory {
  CameraPose prev;          // pose at tau-1
  Vec2 prev2 = Vec2::Zero();  // position at tau-2
};

struct EgoEstimate {
  EgoMotion motion;
  double energy = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;  // gradient below tolerance (vs cap/stall)
};

/// Energy of a candidate ego-motion: optional camera motion prior plus the
/// pedestrian interaction energy with every pedestrian placed at its
/// mean-height candidate under the moved pose.
double ego_energy(const EgoMotion& d, const std::vector<Detection>& detections,
                  const HistoryMap& history, const EgoHistory& ego, const BirdifyConfig& cfg,
                  Exec exec = Exec::parallel);

/// Analytic gradient of ego_energy in (dx, dy, dheading).
Eigen::Vector3d ego_energy_gradient(const EgoMotion& d, const std::vector<Detection>& detections,
                                    const HistoryMap& history, const EgoHistory& ego,
                                    const BirdifyConfig& cfg, Exec exec = Exec::parallel);

/// Gradient descent from zero ego-motion with backtracking line search.
EgoEstimate estimate_ego_motion(const std::vector<Detection>& detections,
                                const HistoryMap& history, const EgoHistory& ego,
                                const BirdifyConfig& cfg, Exec exec = Exec::parallel);

// --- pedestrian localization ------------------------------------------------

struct PedestrianEstimate {
  int id = -1;
  Vec2 position = Vec2::Zero();
  double height = 0.0;
  int candidate_index = -1;
};

struct FrameEstimate {
  CameraPose pose;
  std::vector<PedestrianEstimate> pedestrians;
  double energy = 0.0;  // joint energy of the chosen assignment
  int mp_iterations = 0;
  bool mp_converged = true;
};

/// Min-sum message passing on the fully connected pedestrian graph over the
/// candidate sets: synchronous schedule with damping, terminating on message
/// convergence or the iteration cap. Each pedestrian gets its min-belief
/// candidate, ties broken toward the smallest candidate index.
FrameEstimate localize_pedestrians(const std::vector<Detection>& detections,
                                   const CameraPose& pose, const HistoryMap& history,
                                   const BirdifyConfig& cfg, Exec exec = Exec::parallel);

/// Exact joint minimizer by exhaustive enumeration, lexicographic tie-break.
/// Testing oracle; refuses joint spaces above 1e7 states.
FrameEstimate brute_force_localize(const std::vector<Detection>& detections,
                                   const CameraPose& pose, const HistoryMap& history,
                                   const BirdifyConfig& cfg);

// --- posterior diagnostics ---------------------------------------------------

struct GridSpec {
  Vec2 min_corner = Vec2::Zero();
  double cell_size = 0.1;
  int nx = 1;
  int ny = 1;
};

struct PosteriorGrid {
  GridSpec spec;
  std::vector<double> probabilities;  // row-major, y outer, normalized to sum 1

  double& at(int ix, int iy) { return probabilities[iy * spec.nx + ix]; }
  double at(int ix, int iy) const { return probabilities[iy * spec.nx + ix]; }
  Vec2 cell_center(int ix, int iy) const {
    return spec.min_corner + Vec2((ix + 0.5) * spec.cell_size, (iy + 0.5) * spec.cell_size);
  }
  double entropy() const;
  std::pair<int, int> argmax() const;
};

/// exp(-E_c) over a grid of camera positions, heading optimized per cell,
/// normalized to sum 1.
PosteriorGrid posterior_grid(const std::vector<Detection>& detections, const HistoryMap& history,
                             const EgoHistory& ego, const BirdifyConfig& cfg, const GridSpec& spec,
                             Exec exec = Exec::parallel);

}  // namespace birdify
