#include "birdify/geometry.hpp"

#include "birdify/errors.hpp"

#include <cmath>

namespace birdify {

namespace {
constexpr double kMinRange = 1e-12;
}

RelativePosition inverse_project_perspective(const Detection& s, const CameraIntrinsics& K,
                                             double h) {
  if (s.l <= 0.0) throw NonPositiveApparentHeight();
  const double x = h * (s.u - K.cu) / s.l;
  const double y = K.focal_length * h / s.l;
  return {Vec2(x, y)};
}

ProjectedDetection project_perspective(const RelativePosition& z, const CameraIntrinsics& K,
                                       double h) {
  if (z.y() <= 0.0) throw BehindCamera();
  Detection d;
  d.u = K.cu + K.focal_length * z.x() / z.y();
  d.l = K.focal_length * h / z.y();
  d.v = K.cv + 0.5 * d.l;
  const bool in_view = d.u >= 0.0 && d.u < K.width && d.v >= 0.0 && d.v < K.height;
  return {d, in_view};
}

RelativePosition inverse_project_cylindrical(const Detection& s, const CameraIntrinsics& K,
                                             double h) {
  if (s.l <= 0.0) throw NonPositiveApparentHeight();
  const double phi = 2.0 * std::numbers::pi * s.u / K.width - std::numbers::pi;
  const double r = K.focal_length * h / s.l;
  return {Vec2(r * std::sin(phi), r * std::cos(phi))};
}

ProjectedDetection project_cylindrical(const RelativePosition& z, const CameraIntrinsics& K,
                                       double h) {
  const double r = z.range();
  if (r < kMinRange) throw DegenerateAtOrigin();
  const double phi = std::atan2(z.x(), z.y());
  Detection d;
  d.u = (phi + std::numbers::pi) * K.width / (2.0 * std::numbers::pi);
  if (d.u >= K.width) d.u -= K.width;  // phi == pi wraps to the left edge
  d.l = K.focal_length * h / r;
  d.v = K.cv + 0.5 * d.l;
  const bool in_view = d.v >= 0.0 && d.v < K.height;
  return {d, in_view};
}

RelativePosition inverse_project(const Detection& s, const CameraIntrinsics& K, double h,
                                 ProjectionKind kind) {
  return kind == ProjectionKind::perspective ? inverse_project_perspective(s, K, h)
                                             : inverse_project_cylindrical(s, K, h);
}

ProjectedDetection project(const RelativePosition& z, const CameraIntrinsics& K, double h,
                           ProjectionKind kind) {
  return kind == ProjectionKind::perspective ? project_perspective(z, K, h)
                                             : project_cylindrical(z, K, h);
}

Vec2 to_world(const RelativePosition& z, const CameraPose& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  return Vec2(c * z.x() + s * z.y() + pose.position.x(),
              -s * z.x() + c * z.y() + pose.position.y());
}

RelativePosition to_camera(const Vec2& x, const CameraPose& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  const Vec2 d = x - pose.position;
  return {Vec2(c * d.x() - s * d.y(), s * d.x() + c * d.y())};
}

CameraPose apply_ego_motion(const CameraPose& pose, const EgoMotion& d) {
  CameraPose out;
  out.position = pose.position + Vec2(d.dx, d.dy);
  out.heading = normalize_angle(pose.heading + d.dheading);
  return out;
}

Vec2 to_world_heading_derivative(const RelativePosition& z, const CameraPose& pose) {
  const double c = std::cos(pose.heading);
  const double s = std::sin(pose.heading);
  return Vec2(-s * z.x() + c * z.y(), -c * z.x() - s * z.y());
}

}  // namespace birdify
