#include "ego_problem.hpp"

#include "birdify/errors.hpp"

#include <cmath>

namespace birdify {

namespace detail {

EgoProblem build_ego_problem(const std::vector<Detection>& detections, const HistoryMap& history,
                             const EgoHistory& ego, const BirdifyConfig& cfg) {
  EgoProblem p;
  p.cfg = &cfg;
  p.prev_pose = ego.prev;
  p.camera_history = {ego.prev.position, ego.prev2};

  std::map<int, Vec2> w;
  if (cfg.model == InteractionModel::social_force)
    w = desired_velocities(history, cfg.sf.neighbor_radius, cfg.sf.dt);

  p.rays.reserve(detections.size());
  p.history.reserve(detections.size());
  for (const auto& det : detections) {
    const auto it = history.find(det.pedestrian_id);
    if (it == history.end())
      throw InsufficientHistory("no two-frame history for pedestrian " +
                                std::to_string(det.pedestrian_id));
    // Place each pedestrian at the height its track was last resolved at so
    // the placement stays consistent with its own history; fresh tracks fall
    // back to the prior mean.
    const double h = it->second.height > 0.0 ? it->second.height : cfg.prior.mean;
    p.rays.push_back(inverse_project(det, cfg.intrinsics, h, cfg.projection));
    p.history.push_back(it->second);
    p.desired.push_back(cfg.model == InteractionModel::social_force ? w.at(det.pedestrian_id)
                                                                    : Vec2::Zero());
  }

  if (cfg.model == InteractionModel::social_force) {
    // Pairwise energies depend only on separations, which a rigid camera
    // motion cannot change; evaluate them once in the camera frame.
    std::vector<double> terms;
    terms.reserve(p.rays.size() * (p.rays.size() + 1) / 2);
    for (std::size_t i = 0; i < p.rays.size(); ++i)
      for (std::size_t k = i + 1; k < p.rays.size(); ++k)
        terms.push_back(pairwise_energy(p.rays[i].xy, p.rays[k].xy, cfg.sf.potential_variance));
    p.pairwise_constant = pairwise_sum(terms);
  }

  if (!p.rays.empty()) {
    double sum_sq = 0.0;
    for (const auto& z : p.rays) sum_sq += z.xy.squaredNorm();
    p.heading_metric = std::max(1.0, sum_sq / static_cast<double>(p.rays.size()));
  }

  if (cfg.ego_prior == EgoPriorMode::crowd_model &&
      cfg.model == InteractionModel::social_force) {
    Vec2 sum = Vec2::Zero();
    int count = 0;
    for (const auto& [id, h] : history) {
      if ((h.prev - ego.prev.position).norm() <= cfg.sf.neighbor_radius) {
        sum += h.velocity(cfg.sf.dt);
        ++count;
      }
    }
    p.camera_desired = count > 0 ? Vec2(sum / count) : p.camera_history.velocity(cfg.sf.dt);
  }
  return p;
}

double problem_energy(const EgoProblem& p, const EgoMotion& d, Exec exec) {
  const BirdifyConfig& cfg = *p.cfg;
  const CameraPose pose = apply_ego_motion(p.prev_pose, d);
  const int n = static_cast<int>(p.rays.size());
  std::vector<double> terms(n);

  auto unary_term = [&](int k) {
    const Vec2 x = to_world(p.rays[k], pose);
    terms[k] = motion_unary(cfg.model, x, p.history[k], p.desired[k], cfg.sf);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) unary_term(k);
  } else {
    for (int k = 0; k < n; ++k) unary_term(k);
  }

  double energy = pairwise_sum(terms) + p.pairwise_constant;
  if (cfg.ego_prior == EgoPriorMode::crowd_model) {
    energy += motion_unary(cfg.model, pose.position, p.camera_history, p.camera_desired, cfg.sf);
    const Vec2 v = pose.position - p.camera_history.prev2;
    if (v.norm() > 1e-6) {
      const double r = normalize_angle(pose.heading - heading_from_direction(v));
      energy += r * r / (2.0 * EgoProblem::kHeadingSigma * EgoProblem::kHeadingSigma);
    }
  }
  return energy;
}

Eigen::Vector3d problem_gradient(const EgoProblem& p, const EgoMotion& d, Exec exec) {
  const BirdifyConfig& cfg = *p.cfg;
  const CameraPose pose = apply_ego_motion(p.prev_pose, d);
  const int n = static_cast<int>(p.rays.size());
  std::vector<double> gx(n), gy(n), gt(n);

  auto unary_grad = [&](int k) {
    const Vec2 x = to_world(p.rays[k], pose);
    const Vec2 g = motion_unary_gradient(cfg.model, x, p.history[k], p.desired[k], cfg.sf);
    const Vec2 dtheta = to_world_heading_derivative(p.rays[k], pose);
    gx[k] = g.x();
    gy[k] = g.y();
    gt[k] = g.dot(dtheta);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) unary_grad(k);
  } else {
    for (int k = 0; k < n; ++k) unary_grad(k);
  }

  Eigen::Vector3d grad(pairwise_sum(gx), pairwise_sum(gy), pairwise_sum(gt));
  if (cfg.ego_prior == EgoPriorMode::crowd_model) {
    const Vec2 g = motion_unary_gradient(cfg.model, pose.position, p.camera_history,
                                         p.camera_desired, cfg.sf);
    grad.x() += g.x();
    grad.y() += g.y();  // the position prior has no heading dependence

    const Vec2 v = pose.position - p.camera_history.prev2;
    const double v_sq = v.squaredNorm();
    if (v_sq > 1e-12) {
      // r = heading - atan2(v.x, v.y); d atan2(x, y) = (y, -x) / |v|^2
      const double r = normalize_angle(pose.heading - heading_from_direction(v));
      const double scale = r / (EgoProblem::kHeadingSigma * EgoProblem::kHeadingSigma);
      grad.x() += scale * (-v.y() / v_sq);
      grad.y() += scale * (v.x() / v_sq);
      grad.z() += scale;
    }
  }
  return grad;
}

}  // namespace detail

double ego_energy(const EgoMotion& d, const std::vector<Detection>& detections,
                  const HistoryMap& history, const EgoHistory& ego, const BirdifyConfig& cfg,
                  Exec exec) {
  return detail::problem_energy(detail::build_ego_problem(detections, history, ego, cfg), d,
                                exec);
}

Eigen::Vector3d ego_energy_gradient(const EgoMotion& d, const std::vector<Detection>& detections,
                                    const HistoryMap& history, const EgoHistory& ego,
                                    const BirdifyConfig& cfg, Exec exec) {
  return detail::problem_gradient(detail::build_ego_problem(detections, history, ego, cfg), d,
                                  exec);
}

EgoEstimate estimate_ego_motion(const std::vector<Detection>& detections,
                                const HistoryMap& history, const EgoHistory& ego,
                                const BirdifyConfig& cfg, Exec exec) {
  if (detections.empty()) throw NoDetections();
  const detail::EgoProblem problem = detail::build_ego_problem(detections, history, ego, cfg);

  EgoEstimate est;
  EgoMotion d;
  double energy = detail::problem_energy(problem, d, exec);
  for (int iter = 0; iter < cfg.gd_max_iterations; ++iter) {
    const Eigen::Vector3d grad = detail::problem_gradient(problem, d, exec);
    est.gradient_norm = grad.norm();
    if (est.gradient_norm < cfg.gd_tolerance) {
      est.converged = true;
      break;
    }
    // Descend in a scaled metric: the heading curvature grows with the mean
    // squared range of the placements, which would otherwise force tiny steps
    // on the translation axes.
    const Eigen::Vector3d dir(grad.x(), grad.y(), grad.z() / problem.heading_metric);

    auto energy_at = [&](double step) {
      const EgoMotion trial{d.dx - step * dir.x(), d.dy - step * dir.y(),
                            d.dheading - step * dir.z()};
      return detail::problem_energy(problem, trial, exec);
    };

    // Backtrack by halving until the energy decreases, then expand and
    // refine along the ray; plain descent zigzags badly here because the
    // heading direction is far stiffer than the translations.
    double step = cfg.gd_step;
    double step_energy = energy_at(step);
    bool improved = step_energy < energy;
    for (int half = 0; half < 40 && !improved; ++half) {
      step *= 0.5;
      step_energy = energy_at(step);
      improved = step_energy < energy;
    }
    if (!improved) break;  // line search hit the numerical floor

    for (int grow = 0; grow < 30; ++grow) {
      const double wider = energy_at(2.0 * step);
      if (wider >= step_energy) break;
      step *= 2.0;
      step_energy = wider;
    }
    double lo = 0.0, hi = 2.0 * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * hi, x2 = inv_phi * hi;
    double f1 = energy_at(x1), f2 = energy_at(x2);
    for (int refine = 0; refine < 20; ++refine) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = energy_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = energy_at(x2);
      }
    }
    if (f1 < step_energy) {
      step = x1;
      step_energy = f1;
    }
    if (f2 < step_energy) {
      step = x2;
      step_energy = f2;
    }

    d = {d.dx - step * dir.x(), d.dy - step * dir.y(), d.dheading - step * dir.z()};
    energy = step_energy;
    est.iterations = iter + 1;
  }
  est.motion = d;
  est.energy = energy;
  return est;
}

}  // namespace birdify
