#include "birdify/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace birdify {

namespace {

constexpr int kCanvas = 640;
constexpr double kMargin = 32.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Mapper {
  double min_x = 0.0, min_y = 0.0, scale = 1.0;

  double x(double wx) const { return kMargin + (wx - min_x) * scale; }
  double y(double wy) const { return kCanvas - kMargin - (wy - min_y) * scale; }  // y up
};

template <typename PointFn, typename Range>
void accumulate_bounds(const Range& range, PointFn point, double& min_x, double& max_x,
                       double& min_y, double& max_y, bool& any) {
  for (const auto& item : range) {
    const Vec2 p = point(item);
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
    any = true;
  }
}

std::string polyline(const std::vector<TimedPosition>& traj, const Mapper& m,
                     const std::string& color, const std::string& extra) {
  std::string out = "<polyline fill=\"none\" stroke=\"" + color + "\" " + extra + " points=\"";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (i > 0) out += ' ';
    out += num(m.x(traj[i].position.x())) + "," + num(m.y(traj[i].position.y()));
  }
  out += "\"/>\n";
  return out;
}

std::vector<TimedPosition> camera_points(const CameraTrajectory& traj) {
  std::vector<TimedPosition> out;
  out.reserve(traj.size());
  for (const auto& t : traj) out.push_back({t.frame, t.pose.position});
  return out;
}

}  // namespace

std::string render_trajectory_overlay(const PedestrianTrajectories& est_peds,
                                      const CameraTrajectory& est_camera,
                                      const PedestrianTrajectories& gt_peds,
                                      const CameraTrajectory& gt_camera) {
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  bool any = false;
  {
    double inf = std::numeric_limits<double>::infinity();
    min_x = min_y = inf;
    max_x = max_y = -inf;
    auto timed = [](const TimedPosition& t) { return t.position; };
    auto posed = [](const TimedPose& t) { return t.pose.position; };
    for (const auto& [id, traj] : est_peds)
      accumulate_bounds(traj, timed, min_x, max_x, min_y, max_y, any);
    for (const auto& [id, traj] : gt_peds)
      accumulate_bounds(traj, timed, min_x, max_x, min_y, max_y, any);
    accumulate_bounds(est_camera, posed, min_x, max_x, min_y, max_y, any);
    accumulate_bounds(gt_camera, posed, min_x, max_x, min_y, max_y, any);
  }

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(kCanvas) + "\" height=\"" + std::to_string(kCanvas) +
                    "\" viewBox=\"0 0 " + std::to_string(kCanvas) + " " +
                    std::to_string(kCanvas) + "\">\n";
  svg += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
         num(kCanvas - 2 * kMargin) + "\" height=\"" + num(kCanvas - 2 * kMargin) +
         "\" fill=\"white\" stroke=\"#cccccc\"/>\n";
  if (!any) {
    svg += "</svg>\n";
    return svg;
  }

  const double pad = 1.0;
  min_x -= pad;
  min_y -= pad;
  max_x += pad;
  max_y += pad;
  const double extent = std::max(max_x - min_x, max_y - min_y);
  Mapper m{min_x, min_y, (kCanvas - 2 * kMargin) / extent};

  for (const auto& [id, traj] : gt_peds)
    svg += polyline(traj, m, "#bbbbbb", "stroke-width=\"1\" stroke-dasharray=\"4 3\"");
  if (!gt_camera.empty())
    svg += polyline(camera_points(gt_camera), m, "#888888",
                    "stroke-width=\"1.5\" stroke-dasharray=\"4 3\"");

  int index = 0;
  for (const auto& [id, traj] : est_peds) {
    const char* color = kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += polyline(traj, m, color, "stroke-width=\"1.5\"");
    ++index;
  }
  if (!est_camera.empty())
    svg += polyline(camera_points(est_camera), m, "#d62728", "stroke-width=\"2.5\"");

  svg += "</svg>\n";
  return svg;
}

std::string render_posterior_heatmap(const PosteriorGrid& grid) {
  const int nx = grid.spec.nx;
  const int ny = grid.spec.ny;
  const double cell = (kCanvas - 2 * kMargin) / std::max(nx, ny);
  double peak = 0.0;
  for (double p : grid.probabilities) peak = std::max(peak, p);

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(kCanvas) + "\" height=\"" + std::to_string(kCanvas) +
                    "\" viewBox=\"0 0 " + std::to_string(kCanvas) + " " +
                    std::to_string(kCanvas) + "\">\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double t = peak > 0.0 ? grid.at(ix, iy) / peak : 0.0;
      const int r = static_cast<int>(std::lround(255.0 * t));
      const int b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x20%02x", r, b);
      // y flipped so larger world y is higher in the image
      svg += "<rect x=\"" + num(kMargin + ix * cell) + "\" y=\"" +
             num(kCanvas - kMargin - (iy + 1) * cell) + "\" width=\"" + num(cell) +
             "\" height=\"" + num(cell) + "\" fill=\"" + color + "\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace birdify
