#pragma once

#include "birdify/types.hpp"

namespace birdify {

/// Projection result. Points that fall outside the image bounds are kept and
/// flagged so callers can model a limited field of view.
struct ProjectedDetection {
  Detection detection;
  bool in_view = true;
};

/// Maps an image detection back to a camera-frame ground position assuming
/// pedestrian height `h`: x = h*(u - cu)/l, y = f*h/l.
RelativePosition inverse_project_perspective(const Detection& s, const CameraIntrinsics& K,
                                             double h);

/// Exact inverse of inverse_project_perspective. Requires depth y > 0.
/// The reported v is the box center, cv + l/2.
ProjectedDetection project_perspective(const RelativePosition& z, const CameraIntrinsics& K,
                                       double h);

/// Cylindrical model: bearing phi = 2*pi*u/W - pi, range r = f*h/l,
/// position (r sin phi, r cos phi).
RelativePosition inverse_project_cylindrical(const Detection& s, const CameraIntrinsics& K,
                                             double h);

ProjectedDetection project_cylindrical(const RelativePosition& z, const CameraIntrinsics& K,
                                       double h);

RelativePosition inverse_project(const Detection& s, const CameraIntrinsics& K, double h,
                                 ProjectionKind kind);

ProjectedDetection project(const RelativePosition& z, const CameraIntrinsics& K, double h,
                           ProjectionKind kind);

/// Camera-frame position to world: x_w = R(heading)^T z + position.
Vec2 to_world(const RelativePosition& z, const CameraPose& pose);

/// World position to camera frame; inverse of to_world.
RelativePosition to_camera(const Vec2& x, const CameraPose& pose);

/// Composes a pose with a per-frame increment; heading stays in (-pi, pi].
CameraPose apply_ego_motion(const CameraPose& pose, const EgoMotion& d);

/// Column-major entries of d(R^T)/dheading applied to z; the heading
/// sensitivity of to_world.
Vec2 to_world_heading_derivative(const RelativePosition& z, const CameraPose& pose);

}  // namespace birdify
