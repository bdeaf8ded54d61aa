#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>

namespace birdify {

using Vec2 = Eigen::Vector2d;

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r <= 0.0) r += two_pi;
  return r - std::numbers::pi;
}

/// Heading of a direction vector. Heading 0 faces +y, pi/2 faces +x,
/// so the camera forward axis in world coordinates is (sin h, cos h).
inline double heading_from_direction(const Vec2& d) { return std::atan2(d.x(), d.y()); }

enum class ProjectionKind { perspective, cylindrical };

struct CameraIntrinsics {
  double focal_length = 0.0;  // pixels
  double cu = 0.0;            // principal point u, pixels
  double cv = 0.0;            // principal point v, pixels
  double width = 0.0;         // image width, pixels
  double height = 0.0;        // image height, pixels
};

struct CameraRig {
  double mount_height = 1.6;  // meters above ground; constant per sequence
  ProjectionKind kind = ProjectionKind::perspective;
};

/// Observer pose on the ground plane.
struct CameraPose {
  Vec2 position = Vec2::Zero();  // meters
  double heading = 0.0;          // radians, normalized to (-pi, pi]
};

/// Per-frame pose increment (dx, dy in world meters, dheading in radians).
struct EgoMotion {
  double dx = 0.0;
  double dy = 0.0;
  double dheading = 0.0;
};

/// Image-plane state of one tracked pedestrian: bounding-box center (u, v)
/// and apparent height l, all in pixels.
struct Detection {
  double u = 0.0;
  double v = 0.0;
  double l = 0.0;
  int pedestrian_id = -1;
  int frame_index = -1;
};

/// Ground position in the camera frame: x right, y forward. Scaled by the
/// assumed pedestrian height.
struct RelativePosition {
  Vec2 xy = Vec2::Zero();

  double x() const { return xy.x(); }
  double y() const { return xy.y(); }
  double range() const { return xy.norm(); }
  /// Bearing angle, 0 straight ahead, positive to the right.
  double bearing() const { return std::atan2(xy.x(), xy.y()); }
};

/// Gaussian prior over true pedestrian heights, meters.
struct HeightPrior {
  double mean = 1.70;
  double stddev = 0.07;
};

}  // namespace birdify
