#include "birdify/errors.hpp"
#include "birdify/solver.hpp"

namespace birdify {

double observation_nll(double height, const HeightPrior& prior) {
  if (prior.stddev == 0.0) return 0.0;  // point mass; feasibility handled by S = 1
  const double d = height - prior.mean;
  return d * d / (2.0 * prior.stddev * prior.stddev);
}

CandidateSet sample_candidates(const Detection& det, const CameraPose& pose,
                               const BirdifyConfig& cfg) {
  const int count = cfg.effective_candidate_count();
  CandidateSet set;
  set.pedestrian_id = det.pedestrian_id;
  set.detection = det;
  set.heights.reserve(count);
  set.positions.reserve(count);
  set.observation_nll.reserve(count);
  const double center = 0.5 * (count - 1);
  for (int s = 0; s < count; ++s) {
    const double h = cfg.prior.mean + cfg.candidate_step * (s - center);
    const RelativePosition z = inverse_project(det, cfg.intrinsics, h, cfg.projection);
    set.heights.push_back(h);
    set.positions.push_back(to_world(z, pose));
    set.observation_nll.push_back(observation_nll(h, cfg.prior));
  }
  return set;
}

double detection_size(const Detection& det, double aspect) { return aspect * det.l * det.l; }

std::vector<Detection> select_neighbors(const std::vector<Detection>& detections, double epsilon,
                                        double aspect) {
  std::vector<Detection> out;
  out.reserve(detections.size());
  for (const auto& d : detections)
    if (detection_size(d, aspect) >= epsilon) out.push_back(d);
  return out;
}

}  // namespace birdify
