#include "birdify/crowd.hpp"

#include "birdify/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace birdify {

namespace {

constexpr double kArriveRadius = 0.3;  // meters; inside this the goal pull stops

// Smoothing floor for the social-force residual norm. The raw norm has a
// kink at zero residual that stalls gradient descent on the camera motion;
// sqrt(|g|^2 + eps^2) is C1 with the same minimizers to O(eps).
constexpr double kNormEps = 1e-3;

double smooth_norm(const Vec2& g) { return std::sqrt(g.squaredNorm() + kNormEps * kNormEps); }

Vec2 goal_force(const PedestrianState& p, const SocialForceParams& params) {
  const Vec2 to_goal = p.goal - p.position;
  const double dist = to_goal.norm();
  Vec2 w = Vec2::Zero();
  if (dist > kArriveRadius) w = params.desired_speed * to_goal / dist;
  return (w - p.velocity) / params.desired_weight;
}

bool pair_in_range(const Vec2& a, const Vec2& b, double cutoff) {
  return cutoff <= 0.0 || (a - b).norm() <= cutoff;
}

}  // namespace

double constvel_energy(const Vec2& x, const MotionHistory& history) {
  return (x - 2.0 * history.prev + history.prev2).squaredNorm();
}

Vec2 pairwise_force(const Vec2& xi, const Vec2& xk, double sigma_sq) {
  const Vec2 d = xi - xk;
  const double r_sq = d.squaredNorm();
  if (r_sq == 0.0) return Vec2::Zero();
  const double potential =
      std::exp(-r_sq / (2.0 * sigma_sq)) / std::sqrt(2.0 * std::numbers::pi * sigma_sq);
  return (potential / sigma_sq) * d;
}

Vec2 desired_force(const PedestrianState& k, const std::vector<PedestrianState>& others,
                   double eta, double radius) {
  Vec2 sum = Vec2::Zero();
  int count = 0;
  for (const auto& o : others) {
    if (o.id == k.id) continue;
    if ((o.position - k.position).norm() <= radius) {
      sum += o.velocity;
      ++count;
    }
  }
  const Vec2 w = count > 0 ? Vec2(sum / count) : k.velocity;
  return (w - k.velocity) / eta;
}

std::map<int, Vec2> desired_velocities(const HistoryMap& history, double radius, double dt) {
  std::map<int, Vec2> out;
  for (const auto& [id, h] : history) {
    Vec2 sum = Vec2::Zero();
    int count = 0;
    for (const auto& [other_id, oh] : history) {
      if (other_id == id) continue;
      if ((oh.prev - h.prev).norm() <= radius) {
        sum += oh.velocity(dt);
        ++count;
      }
    }
    out[id] = count > 0 ? Vec2(sum / count) : h.velocity(dt);
  }
  return out;
}

double motion_unary(InteractionModel model, const Vec2& x, const MotionHistory& h, const Vec2& w,
                    const SocialForceParams& params) {
  if (model == InteractionModel::const_vel) return constvel_energy(x, h);
  const double dt = params.dt;
  // Central differences over the two-frame window: both the velocity and the
  // acceleration are centered at tau-1, which keeps the residual free of a
  // discretization skew proportional to the acceleration itself.
  const Vec2 v = (x - h.prev2) / (2.0 * dt);
  const Vec2 fp = (w - v) / params.desired_weight;
  const Vec2 accel = (x - 2.0 * h.prev + h.prev2) / (dt * dt);
  return smooth_norm(fp - accel);
}

Vec2 motion_unary_gradient(InteractionModel model, const Vec2& x, const MotionHistory& h,
                           const Vec2& w, const SocialForceParams& params) {
  if (model == InteractionModel::const_vel) return 2.0 * (x - 2.0 * h.prev + h.prev2);
  const double dt = params.dt;
  const Vec2 v = (x - h.prev2) / (2.0 * dt);
  const Vec2 fp = (w - v) / params.desired_weight;
  const Vec2 accel = (x - 2.0 * h.prev + h.prev2) / (dt * dt);
  const Vec2 g = fp - accel;
  const double alpha = 1.0 / (2.0 * params.desired_weight * dt) + 1.0 / (dt * dt);
  return (-alpha / smooth_norm(g)) * g;
}

double pairwise_energy(const Vec2& xi, const Vec2& xk, double sigma_sq) {
  return pairwise_force(xi, xk, sigma_sq).norm();
}

InteractionEnergy interaction_energy(const CrowdFrame& frame, const HistoryMap& history,
                                     InteractionModel model, const SocialForceParams& params) {
  InteractionEnergy out;
  std::map<int, Vec2> w;
  if (model == InteractionModel::social_force)
    w = desired_velocities(history, params.neighbor_radius, params.dt);

  for (const auto& p : frame.pedestrians) {
    const auto it = history.find(p.id);
    if (it == history.end())
      throw InsufficientHistory("no two-frame history for pedestrian " + std::to_string(p.id));
    const Vec2 wk = model == InteractionModel::social_force ? w.at(p.id) : Vec2::Zero();
    out.unary.emplace_back(p.id, motion_unary(model, p.position, it->second, wk, params));
  }
  if (model == InteractionModel::social_force) {
    for (std::size_t i = 0; i < frame.pedestrians.size(); ++i) {
      for (std::size_t k = i + 1; k < frame.pedestrians.size(); ++k) {
        const auto& pi = frame.pedestrians[i];
        const auto& pk = frame.pedestrians[k];
        out.pairwise.emplace_back(
            pi.id, pk.id, pairwise_energy(pi.position, pk.position, params.potential_variance));
      }
    }
  }
  double total = 0.0;
  for (const auto& [id, e] : out.unary) total += e;
  for (const auto& [i, k, e] : out.pairwise) total += e;
  out.total = total;
  return out;
}

CrowdFrame social_force_step(const CrowdFrame& frame, const SocialForceParams& params,
                             Exec exec) {
  const auto& peds = frame.pedestrians;
  const int n = static_cast<int>(peds.size());
  CrowdFrame next;
  next.frame_index = frame.frame_index + 1;
  next.pedestrians = peds;

  auto step_one = [&](int k) {
    const auto& p = peds[k];
    Vec2 force = goal_force(p, params);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      if (!pair_in_range(p.position, peds[i].position, params.interaction_cutoff)) continue;
      force += pairwise_force(p.position, peds[i].position, params.potential_variance);
    }
    auto& q = next.pedestrians[k];
    q.velocity = p.velocity + force * params.dt;
    q.position = p.position + q.velocity * params.dt;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) step_one(k);
  } else {
    for (int k = 0; k < n; ++k) step_one(k);
  }
  return next;
}

std::vector<CrowdFrame> simulate(const ScenarioConfig& config) {
  const double extent = config.field_half_extent;
  const double side = config.corner_fraction * extent;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> corner_dist(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  static constexpr double kCornerSign[4][2] = {{-1, -1}, {1, -1}, {-1, 1}, {1, 1}};
  auto sample_in_corner = [&](int corner) {
    const double sx = kCornerSign[corner][0];
    const double sy = kCornerSign[corner][1];
    const double x = sx * extent - sx * side * unit(rng);
    const double y = sy * extent - sy * side * unit(rng);
    return Vec2(x, y);
  };

  SocialForceParams params = config.sf;
  if (params.interaction_cutoff <= 0.0 && config.pedestrian_count > 60)
    params.interaction_cutoff = 4.0 * std::sqrt(params.potential_variance);

  CrowdFrame frame;
  frame.frame_index = 0;
  for (int k = 0; k < config.pedestrian_count; ++k) {
    const int corner = corner_dist(rng);
    PedestrianState p;
    p.id = k;
    p.position = sample_in_corner(corner);
    p.goal = sample_in_corner(3 - corner);  // opposite corner region
    p.velocity = params.desired_speed * (p.goal - p.position).normalized();
    frame.pedestrians.push_back(p);
  }

  std::vector<CrowdFrame> frames;
  frames.reserve(config.length);
  frames.push_back(frame);
  for (int t = 1; t < config.length; ++t) {
    frame = social_force_step(frame, params);
    for (auto& p : frame.pedestrians) {
      p.position.x() = std::clamp(p.position.x(), -extent, extent);
      p.position.y() = std::clamp(p.position.y(), -extent, extent);
    }
    frames.push_back(frame);
  }
  return frames;
}

std::map<int, Vec2> baseline_extrapolate(const HistoryMap& history, InteractionModel model,
                                         const SocialForceParams& params) {
  if (history.empty()) throw InsufficientHistory("baseline extrapolation needs history");
  std::map<int, Vec2> out;
  if (model == InteractionModel::const_vel) {
    for (const auto& [id, h] : history) out[id] = h.linear_extrapolation();
    return out;
  }
  const auto w = desired_velocities(history, params.neighbor_radius, params.dt);
  for (const auto& [id, h] : history) {
    const Vec2 v = h.velocity(params.dt);
    Vec2 force = (w.at(id) - v) / params.desired_weight;
    for (const auto& [other_id, oh] : history) {
      if (other_id == id) continue;
      force += pairwise_force(h.prev, oh.prev, params.potential_variance);
    }
    const Vec2 v_next = v + force * params.dt;
    out[id] = h.prev + v_next * params.dt;
  }
  return out;
}

}  // namespace birdify
