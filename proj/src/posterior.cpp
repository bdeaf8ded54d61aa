#include "ego_problem.hpp"

#include <algorithm>
#include <cmath>

namespace birdify {

namespace {

/// Deterministic 1-D heading optimization: coarse scan over the full circle
/// followed by golden-section refinement around the best sample.
double best_heading_energy(const detail::EgoProblem& problem, const Vec2& translation) {
  const CameraPose& prev = problem.prev_pose;
  auto energy_at = [&](double heading) {
    const EgoMotion d{translation.x(), translation.y(), heading - prev.heading};
    return detail::problem_energy(problem, d, Exec::serial);
  };

  constexpr int kScan = 72;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double best_heading = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kScan; ++j) {
    const double heading = -std::numbers::pi + (j + 0.5) * two_pi / kScan;
    const double e = energy_at(heading);
    if (e < best) {
      best = e;
      best_heading = heading;
    }
  }

  const double half_step = std::numbers::pi / kScan;
  double lo = best_heading - half_step;
  double hi = best_heading + half_step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = energy_at(x1);
  double f2 = energy_at(x2);
  for (int it = 0; it < 48; ++it) {
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
  return std::min({best, f1, f2});
}

}  // namespace

double PosteriorGrid::entropy() const {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

std::pair<int, int> PosteriorGrid::argmax() const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(probabilities.size()); ++i)
    if (probabilities[i] > probabilities[best]) best = i;
  return {best % spec.nx, best / spec.nx};
}

PosteriorGrid posterior_grid(const std::vector<Detection>& detections, const HistoryMap& history,
                             const EgoHistory& ego, const BirdifyConfig& cfg, const GridSpec& spec,
                             Exec exec) {
  const detail::EgoProblem problem = detail::build_ego_problem(detections, history, ego, cfg);

  PosteriorGrid grid;
  grid.spec = spec;
  const int cells = spec.nx * spec.ny;
  std::vector<double> energy(cells);

  auto cell_energy = [&](int idx) {
    const int ix = idx % spec.nx;
    const int iy = idx / spec.nx;
    const Vec2 translation = grid.cell_center(ix, iy) - ego.prev.position;
    energy[idx] = best_heading_energy(problem, translation);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < cells; ++idx) cell_energy(idx);
  } else {
    for (int idx = 0; idx < cells; ++idx) cell_energy(idx);
  }

  const double floor = *std::min_element(energy.begin(), energy.end());
  grid.probabilities.resize(cells);
  for (int idx = 0; idx < cells; ++idx) grid.probabilities[idx] = std::exp(-(energy[idx] - floor));
  const double total = pairwise_sum(grid.probabilities);
  for (double& p : grid.probabilities) p /= total;
  return grid;
}

}  // namespace birdify
