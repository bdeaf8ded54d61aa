#pragma once

#include "birdify/parallel.hpp"
#include "birdify/types.hpp"

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace birdify {

struct PedestrianState {
  int id = -1;
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  double height = 1.70;      // meters
  Vec2 goal = Vec2::Zero();  // destination on the ground plane
};

struct CrowdFrame {
  int frame_index = 0;
  std::vector<PedestrianState> pedestrians;
};

struct SocialForceParams {
  double desired_weight = 0.5;      // eta; F_p = (w - v) / eta
  double potential_variance = 1.0;  // sigma^2 of the Gaussian repulsion potential
  double neighbor_radius = 3.0;     // rho, meters, for the desired-velocity average
  double dt = 0.4;                  // seconds per frame
  double desired_speed = 1.2;       // m/s toward the goal (simulation only; mass fixed at 1)
  double interaction_cutoff = 0.0;  // 0 = all pairs; otherwise skip pairs beyond this range
};

struct ScenarioConfig {
  int pedestrian_count = 20;
  double field_half_extent = 8.0;  // field is [-E, E]^2
  int length = 20;                 // frames
  std::uint64_t seed = 0;
  double corner_fraction = 0.3;  // spawn/goal boxes as a fraction of the half extent
  SocialForceParams sf;
};

enum class InteractionModel { const_vel, social_force };

/// Last two estimated positions of one pedestrian (x at tau-1 and tau-2),
/// plus the height its track was last resolved at (0 = not yet resolved).
struct MotionHistory {
  Vec2 prev = Vec2::Zero();
  Vec2 prev2 = Vec2::Zero();
  double height = 0.0;

  Vec2 velocity(double dt) const { return (prev - prev2) / dt; }
  Vec2 linear_extrapolation() const { return 2.0 * prev - prev2; }
};

using HistoryMap = std::map<int, MotionHistory>;

/// Constant-velocity energy ||x - 2*prev + prev2||^2.
double constvel_energy(const Vec2& x, const MotionHistory& history);

/// Repulsive force on the pedestrian at `xi` exerted by the one at `xk`:
/// the negative gradient of a Gaussian potential of the separation.
/// Antisymmetric in its arguments; zero at coincident points.
Vec2 pairwise_force(const Vec2& xi, const Vec2& xk, double sigma_sq);

/// Desired force F_p = (w - v)/eta with w the mean velocity of neighbors
/// within `radius`; with no neighbor in radius w falls back to the
/// pedestrian's own velocity, making the force vanish.
Vec2 desired_force(const PedestrianState& k, const std::vector<PedestrianState>& others,
                   double eta, double radius);

/// Mean neighbor velocity (the desired velocity w) for every tracked id,
/// computed from two history frames: neighborhoods at the tau-1 positions,
/// velocities by backward difference.
std::map<int, Vec2> desired_velocities(const HistoryMap& history, double radius, double dt);

/// Motion-prior energy of one pedestrian at candidate position `x`.
/// ConstVel ignores `w` and `params`; SocialForce returns
/// ||F_p - (x - 2*prev + prev2)/dt^2|| with F_p evaluated at `x`.
double motion_unary(InteractionModel model, const Vec2& x, const MotionHistory& h, const Vec2& w,
                    const SocialForceParams& params);

/// Gradient of motion_unary with respect to `x` (zero subgradient at the
/// nondifferentiable point of the SocialForce norm).
Vec2 motion_unary_gradient(InteractionModel model, const Vec2& x, const MotionHistory& h,
                           const Vec2& w, const SocialForceParams& params);

/// Pairwise energy ||F_r(xi, xk)||; symmetric.
double pairwise_energy(const Vec2& xi, const Vec2& xk, double sigma_sq);

struct InteractionEnergy {
  std::vector<std::pair<int, double>> unary;              // (id, energy), frame order
  std::vector<std::tuple<int, int, double>> pairwise;     // (id_i, id_k, energy), i before k
  double total = 0.0;
};

/// Unary and pairwise motion-energy terms of a frame given two history
/// frames. ConstVel has no pairwise terms.
InteractionEnergy interaction_energy(const CrowdFrame& frame, const HistoryMap& history,
                                     InteractionModel model, const SocialForceParams& params);

/// One semi-implicit Euler step: v += F*dt, x += v*dt, with
/// F = goal-directed desired force + summed pairwise repulsions.
CrowdFrame social_force_step(const CrowdFrame& frame, const SocialForceParams& params,
                             Exec exec = Exec::parallel);

/// Simulates `config.length` frames of crowd motion. Pedestrians spawn in
/// one of the four corner regions and head to the opposite corner.
/// Deterministic given the seed; positions clamped to the field.
std::vector<CrowdFrame> simulate(const ScenarioConfig& config);

/// Extrapolates every tracked pedestrian one frame ahead from history alone
/// (no observations): linear for ConstVel, one social-force step with
/// history-implied velocities and neighbor-mean desired velocity otherwise.
std::map<int, Vec2> baseline_extrapolate(const HistoryMap& history, InteractionModel model,
                                         const SocialForceParams& params);

}  // namespace birdify
