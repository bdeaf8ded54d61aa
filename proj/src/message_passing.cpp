#include "birdify/errors.hpp"
#include "birdify/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace birdify {

namespace {

struct PairTable {
  int i = 0;  // node indices, i < k
  int k = 0;
  std::vector<double> pot;  // flattened [s_i * S_k + s_k]

  double at(int si, int sk, int size_k) const { return pot[si * size_k + sk]; }
};

struct LocalizationProblem {
  std::vector<CandidateSet> candidates;
  std::vector<std::vector<double>> unary;  // motion prior + observation NLL
  std::vector<PairTable> pairs;            // social force only

  int node_count() const { return static_cast<int>(candidates.size()); }
  int states(int k) const { return candidates[k].size(); }
};

LocalizationProblem build_problem(const std::vector<Detection>& detections,
                                  const CameraPose& pose, const HistoryMap& history,
                                  const BirdifyConfig& cfg, Exec exec) {
  LocalizationProblem p;
  const int n = static_cast<int>(detections.size());
  p.candidates.resize(n);
  p.unary.resize(n);

  std::map<int, Vec2> w;
  if (cfg.model == InteractionModel::social_force)
    w = desired_velocities(history, cfg.sf.neighbor_radius, cfg.sf.dt);

  std::vector<MotionHistory> hist(n);
  std::vector<Vec2> desired(n);
  for (int k = 0; k < n; ++k) {
    const auto it = history.find(detections[k].pedestrian_id);
    if (it == history.end())
      throw InsufficientHistory("no two-frame history for pedestrian " +
                                std::to_string(detections[k].pedestrian_id));
    hist[k] = it->second;
    desired[k] = cfg.model == InteractionModel::social_force
                     ? w.at(detections[k].pedestrian_id)
                     : Vec2::Zero();
  }

  auto build_node = [&](int k) {
    p.candidates[k] = sample_candidates(detections[k], pose, cfg);
    const auto& set = p.candidates[k];
    auto& u = p.unary[k];
    u.resize(set.size());
    const double known_height = hist[k].height;
    for (int s = 0; s < set.size(); ++s) {
      u[s] = motion_unary(cfg.model, set.positions[s], hist[k], desired[k], cfg.sf) +
             set.observation_nll[s];
      if (known_height > 0.0 && cfg.track_height_stddev > 0.0) {
        const double d = set.heights[s] - known_height;
        u[s] += d * d / (2.0 * cfg.track_height_stddev * cfg.track_height_stddev);
      }
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) build_node(k);
  } else {
    for (int k = 0; k < n; ++k) build_node(k);
  }

  if (cfg.model == InteractionModel::social_force) {
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) p.pairs.push_back({i, k, {}});
    const int pair_count = static_cast<int>(p.pairs.size());
    auto build_pair = [&](int e) {
      auto& pair = p.pairs[e];
      const auto& ci = p.candidates[pair.i];
      const auto& ck = p.candidates[pair.k];
      pair.pot.resize(static_cast<std::size_t>(ci.size()) * ck.size());
      for (int si = 0; si < ci.size(); ++si)
        for (int sk = 0; sk < ck.size(); ++sk)
          pair.pot[si * ck.size() + sk] = pairwise_energy(
              ci.positions[si], ck.positions[sk], cfg.sf.potential_variance);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (int e = 0; e < pair_count; ++e) build_pair(e);
    } else {
      for (int e = 0; e < pair_count; ++e) build_pair(e);
    }
  }
  return p;
}

double joint_energy(const LocalizationProblem& p, const std::vector<int>& assignment) {
  std::vector<double> terms;
  terms.reserve(p.unary.size() + p.pairs.size());
  for (std::size_t k = 0; k < p.unary.size(); ++k) terms.push_back(p.unary[k][assignment[k]]);
  for (const auto& pair : p.pairs)
    terms.push_back(pair.at(assignment[pair.i], assignment[pair.k], p.states(pair.k)));
  return pairwise_sum(terms);
}

FrameEstimate make_estimate(const LocalizationProblem& p, const CameraPose& pose,
                            const std::vector<int>& assignment) {
  FrameEstimate est;
  est.pose = pose;
  est.pedestrians.reserve(p.candidates.size());
  for (std::size_t k = 0; k < p.candidates.size(); ++k) {
    const auto& set = p.candidates[k];
    const int s = assignment[k];
    est.pedestrians.push_back({set.pedestrian_id, set.positions[s], set.heights[s], s});
  }
  est.energy = joint_energy(p, assignment);
  return est;
}

int argmin_state(const std::vector<double>& values) {
  int best = 0;
  for (int s = 1; s < static_cast<int>(values.size()); ++s)
    if (values[s] < values[best]) best = s;
  return best;
}

/// Synchronous damped min-sum sweep over the directed edges. Messages for
/// pair e are stored at 2e (i -> k) and 2e+1 (k -> i).
struct MessageState {
  std::vector<std::vector<double>> msg;
  std::vector<std::vector<double>> in_sum;  // per node, summed incoming messages
};

void accumulate_incoming(const LocalizationProblem& p, MessageState& st, Exec exec) {
  const int n = p.node_count();
  auto node_sum = [&](int v) {
    auto& sum = st.in_sum[v];
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t e = 0; e < p.pairs.size(); ++e) {
      const auto& pair = p.pairs[e];
      if (pair.k == v)
        for (int s = 0; s < p.states(v); ++s) sum[s] += st.msg[2 * e][s];
      else if (pair.i == v)
        for (int s = 0; s < p.states(v); ++s) sum[s] += st.msg[2 * e + 1][s];
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int v = 0; v < n; ++v) node_sum(v);
  } else {
    for (int v = 0; v < n; ++v) node_sum(v);
  }
}

}  // namespace

FrameEstimate localize_pedestrians(const std::vector<Detection>& detections,
                                   const CameraPose& pose, const HistoryMap& history,
                                   const BirdifyConfig& cfg, Exec exec) {
  const LocalizationProblem p = build_problem(detections, pose, history, cfg, exec);
  const int n = p.node_count();

  MessageState st;
  st.in_sum.resize(n);
  for (int v = 0; v < n; ++v) st.in_sum[v].assign(p.states(v), 0.0);

  int iterations = 0;
  bool converged = true;
  if (!p.pairs.empty()) {
    const int edge_count = static_cast<int>(2 * p.pairs.size());
    st.msg.resize(edge_count);
    for (std::size_t e = 0; e < p.pairs.size(); ++e) {
      st.msg[2 * e].assign(p.states(p.pairs[e].k), 0.0);
      st.msg[2 * e + 1].assign(p.states(p.pairs[e].i), 0.0);
    }
    auto next = st.msg;
    std::vector<double> edge_delta(edge_count, 0.0);

    converged = false;
    for (int iter = 0; iter < cfg.mp_max_iterations && !converged; ++iter) {
      accumulate_incoming(p, st, exec);

      auto update_edge = [&](int e) {
        const auto& pair = p.pairs[e / 2];
        const bool forward = (e % 2) == 0;  // i -> k
        const int src = forward ? pair.i : pair.k;
        const int tgt = forward ? pair.k : pair.i;
        const int reverse = forward ? e + 1 : e - 1;
        const int s_src = p.states(src);
        const int s_tgt = p.states(tgt);
        auto& raw = next[e];
        for (int t = 0; t < s_tgt; ++t) {
          double best = std::numeric_limits<double>::infinity();
          for (int s = 0; s < s_src; ++s) {
            const double pot = forward ? pair.at(s, t, s_tgt) : pair.at(t, s, s_src);
            const double value = p.unary[src][s] + st.in_sum[src][s] - st.msg[reverse][s] + pot;
            if (value < best) best = value;
          }
          raw[t] = best;
        }
        const double floor = *std::min_element(raw.begin(), raw.end());
        double delta = 0.0;
        for (int t = 0; t < s_tgt; ++t) {
          const double damped =
              cfg.mp_damping * st.msg[e][t] + (1.0 - cfg.mp_damping) * (raw[t] - floor);
          delta = std::max(delta, std::abs(damped - st.msg[e][t]));
          raw[t] = damped;
        }
        edge_delta[e] = delta;
      };
      if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int e = 0; e < edge_count; ++e) update_edge(e);
      } else {
        for (int e = 0; e < edge_count; ++e) update_edge(e);
      }

      st.msg.swap(next);
      iterations = iter + 1;
      converged = *std::max_element(edge_delta.begin(), edge_delta.end()) < cfg.mp_tolerance;
    }
    accumulate_incoming(p, st, exec);
  }

  std::vector<int> assignment(n, 0);
  for (int v = 0; v < n; ++v) {
    std::vector<double> belief = p.unary[v];
    for (int s = 0; s < p.states(v); ++s) belief[s] += st.in_sum[v][s];
    assignment[v] = argmin_state(belief);
  }

  FrameEstimate est = make_estimate(p, pose, assignment);
  est.mp_iterations = iterations;
  est.mp_converged = converged;
  return est;
}

FrameEstimate brute_force_localize(const std::vector<Detection>& detections,
                                   const CameraPose& pose, const HistoryMap& history,
                                   const BirdifyConfig& cfg) {
  const LocalizationProblem p = build_problem(detections, pose, history, cfg, Exec::serial);
  const int n = p.node_count();

  double state_count = 1.0;
  for (int v = 0; v < n; ++v) state_count *= p.states(v);
  if (state_count > 1e7)
    throw SearchSpaceTooLarge("joint space of " + std::to_string(state_count) + " states");

  std::vector<int> assignment(n, 0);
  std::vector<int> best = assignment;
  double best_energy = joint_energy(p, assignment);
  while (true) {
    // lexicographic odometer, last index fastest
    int v = n - 1;
    while (v >= 0 && assignment[v] + 1 == p.states(v)) {
      assignment[v] = 0;
      --v;
    }
    if (v < 0) break;
    ++assignment[v];
    const double energy = joint_energy(p, assignment);
    if (energy < best_energy) {
      best_energy = energy;
      best = assignment;
    }
  }
  return make_estimate(p, pose, best);
}

}  // namespace birdify
