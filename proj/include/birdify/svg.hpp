#pragma once

#include "birdify/metrics.hpp"
#include "birdify/solver.hpp"

#include <string>

namespace birdify {

/// Bird's-eye overlay: one polyline per pedestrian plus one for the camera,
/// ground truth (when given) underneath in gray. Deterministic output.
std::string render_trajectory_overlay(const PedestrianTrajectories& est_peds,
                                      const CameraTrajectory& est_camera,
                                      const PedestrianTrajectories& gt_peds = {},
                                      const CameraTrajectory& gt_camera = {});

/// Heatmap of a posterior grid, low to high probability as blue to red.
std::string render_posterior_heatmap(const PosteriorGrid& grid);

}  // namespace birdify
