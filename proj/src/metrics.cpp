#include "birdify/metrics.hpp"

#include "birdify/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace birdify {

namespace {

void check_aligned(const CameraTrajectory& est, const CameraTrajectory& gt) {
  if (est.size() != gt.size())
    throw LengthMismatch("camera trajectories differ in length: " + std::to_string(est.size()) +
                         " vs " + std::to_string(gt.size()));
  for (std::size_t i = 0; i < est.size(); ++i)
    if (est[i].frame != gt[i].frame)
      throw LengthMismatch("camera trajectories misaligned at index " + std::to_string(i));
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

const Vec2* find_at(const std::vector<TimedPosition>& traj, int frame) {
  for (const auto& t : traj)
    if (t.frame == frame) return &t.position;
  return nullptr;
}

const CameraPose* find_pose(const CameraTrajectory& traj, int frame) {
  for (const auto& t : traj)
    if (t.frame == frame) return &t.pose;
  return nullptr;
}

}  // namespace

double translation_error(const CameraTrajectory& est, const CameraTrajectory& gt) {
  check_aligned(est, gt);
  std::vector<double> errs;
  errs.reserve(est.size());
  for (std::size_t i = 0; i < est.size(); ++i)
    errs.push_back((est[i].pose.position - gt[i].pose.position).norm());
  return mean(errs);
}

double rotation_error(const CameraTrajectory& est, const CameraTrajectory& gt) {
  check_aligned(est, gt);
  std::vector<double> errs;
  errs.reserve(est.size());
  for (std::size_t i = 0; i < est.size(); ++i)
    errs.push_back(std::abs(normalize_angle(est[i].pose.heading - gt[i].pose.heading)));
  return mean(errs);
}

double absolute_localization_error(const PedestrianTrajectories& est,
                                   const PedestrianTrajectories& gt) {
  std::vector<double> errs;
  for (const auto& [id, traj] : est) {
    const auto git = gt.find(id);
    if (git == gt.end()) throw IdMismatch("estimated id " + std::to_string(id) + " not in truth");
    for (const auto& t : traj) {
      const Vec2* truth = find_at(git->second, t.frame);
      if (!truth)
        throw IdMismatch("estimated (id " + std::to_string(id) + ", frame " +
                         std::to_string(t.frame) + ") not in truth");
      errs.push_back((t.position - *truth).norm());
    }
  }
  return mean(errs);
}

double relative_localization_error(const PedestrianTrajectories& est_peds,
                                   const CameraTrajectory& est_camera,
                                   const PedestrianTrajectories& gt_peds,
                                   const CameraTrajectory& gt_camera) {
  std::vector<double> errs;
  for (const auto& [id, traj] : est_peds) {
    const auto git = gt_peds.find(id);
    if (git == gt_peds.end())
      throw IdMismatch("estimated id " + std::to_string(id) + " not in truth");
    for (const auto& t : traj) {
      const Vec2* truth = find_at(git->second, t.frame);
      const CameraPose* cam_est = find_pose(est_camera, t.frame);
      const CameraPose* cam_gt = find_pose(gt_camera, t.frame);
      if (!truth || !cam_est || !cam_gt)
        throw IdMismatch("estimated (id " + std::to_string(id) + ", frame " +
                         std::to_string(t.frame) + ") lacks an aligned truth entry");
      errs.push_back(
          ((t.position - cam_est->position) - (*truth - cam_gt->position)).norm());
    }
  }
  return mean(errs);
}

SequenceErrors compute_sequence_errors(const CameraTrajectory& est_camera,
                                       const PedestrianTrajectories& est_peds,
                                       const CameraTrajectory& gt_camera,
                                       const PedestrianTrajectories& gt_peds) {
  check_aligned(est_camera, gt_camera);
  SequenceErrors out;

  std::vector<double> pair_dx, pair_dxrel;
  std::vector<double> live_dx, live_dxrel;
  for (std::size_t i = 0; i < est_camera.size(); ++i) {
    const int frame = est_camera[i].frame;
    out.dt_series.push_back((est_camera[i].pose.position - gt_camera[i].pose.position).norm());
    out.dr_series.push_back(
        std::abs(normalize_angle(est_camera[i].pose.heading - gt_camera[i].pose.heading)));

    double dx_acc = 0.0, dxrel_acc = 0.0;
    int count = 0;
    for (const auto& [id, traj] : est_peds) {
      const Vec2* pos = find_at(traj, frame);
      if (!pos) continue;
      const auto git = gt_peds.find(id);
      if (git == gt_peds.end())
        throw IdMismatch("estimated id " + std::to_string(id) + " not in truth");
      const Vec2* truth = find_at(git->second, frame);
      if (!truth)
        throw IdMismatch("estimated (id " + std::to_string(id) + ", frame " +
                         std::to_string(frame) + ") not in truth");
      const double dx = (*pos - *truth).norm();
      const double dxrel = ((*pos - est_camera[i].pose.position) -
                            (*truth - gt_camera[i].pose.position))
                               .norm();
      dx_acc += dx;
      dxrel_acc += dxrel;
      pair_dx.push_back(dx);
      pair_dxrel.push_back(dxrel);
      ++count;
    }
    out.matched_per_frame.push_back(count);
    out.dx_series.push_back(count > 0 ? dx_acc / count : 0.0);
    out.dxrel_series.push_back(count > 0 ? dxrel_acc / count : 0.0);
    if (count > 0) {
      live_dx.push_back(out.dx_series.back());
      live_dxrel.push_back(out.dxrel_series.back());
    }
  }

  out.matched_pairs = static_cast<int>(pair_dx.size());
  for (const auto& [id, traj] : gt_peds) {
    const auto eit = est_peds.find(id);
    for (const auto& t : traj) {
      if (!find_pose(est_camera, t.frame)) continue;  // outside the evaluated window
      if (eit == est_peds.end() || !find_at(eit->second, t.frame)) ++out.gt_only_pairs;
    }
  }

  out.dt_mean = mean(out.dt_series);
  out.dt_std = stddev(out.dt_series, out.dt_mean);
  out.dr_mean = mean(out.dr_series);
  out.dr_std = stddev(out.dr_series, out.dr_mean);
  out.dx_mean = mean(pair_dx);
  out.dx_std = stddev(live_dx, mean(live_dx));
  out.dxrel_mean = mean(pair_dxrel);
  out.dxrel_std = stddev(live_dxrel, mean(live_dxrel));
  return out;
}

std::string metrics_table(const std::vector<std::pair<std::string, SequenceErrors>>& rows) {
  std::string out =
      "sequence              dr [rad]           dt [m]             dx_rel [m]         dx [m]\n";
  char line[256];
  for (const auto& [name, e] : rows) {
    std::snprintf(line, sizeof(line),
                  "%-20s  %6.3f +- %5.3f    %6.3f +- %5.3f    %6.3f +- %5.3f    %6.3f +- %5.3f\n",
                  name.c_str(), e.dr_mean, e.dr_std, e.dt_mean, e.dt_std, e.dxrel_mean,
                  e.dxrel_std, e.dx_mean, e.dx_std);
    out += line;
  }
  return out;
}

}  // namespace birdify
