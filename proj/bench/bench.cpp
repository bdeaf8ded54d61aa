// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel ones, verifying bit-identical outputs along the way.

#include "birdify/crowd.hpp"
#include "birdify/solver.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace birdify;
namespace chrono = std::chrono;

namespace {

double ms_since(chrono::steady_clock::time_point start) {
  return chrono::duration<double, std::milli>(chrono::steady_clock::now() - start).count();
}

struct Workload {
  std::vector<Detection> detections;
  HistoryMap history;
  EgoHistory ego;
  CameraPose pose;
  BirdifyConfig cfg;
};

Workload make_workload(int count, int candidates) {
  Workload w;
  w.cfg.intrinsics = {500.0, 960.0, 540.0, 1920.0, 1080.0};
  w.cfg.prior = {1.70, 0.07};
  w.cfg.candidate_count = candidates;
  w.cfg.projection = ProjectionKind::cylindrical;
  w.cfg.model = InteractionModel::social_force;

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> range(2.0, 10.0);
  std::uniform_real_distribution<double> vel(-0.6, 0.6);
  w.pose = {Vec2(0.1, 0.2), 0.05};
  w.ego.prev = {Vec2(0.0, 0.0), 0.02};
  w.ego.prev2 = Vec2(-0.1, -0.2);
  for (int k = 0; k < count; ++k) {
    const double phi = angle(rng);
    const double r = range(rng);
    const Vec2 x = to_world({Vec2(r * std::sin(phi), r * std::cos(phi))}, w.pose);
    const Vec2 v(vel(rng), vel(rng));
    w.history[k] = {x - v * w.cfg.sf.dt, x - 2.0 * v * w.cfg.sf.dt};
    auto det = project(to_camera(x, w.pose), w.cfg.intrinsics, 1.69, w.cfg.projection).detection;
    det.pedestrian_id = k;
    w.detections.push_back(det);
  }
  return w;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s %10.2f ms %12.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif
  std::printf("%-28s %13s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    ScenarioConfig config;
    config.pedestrian_count = 1500;
    config.length = 2;
    config.seed = 5;
    const auto frames = simulate(config);
    const int reps = 40;
    auto t0 = chrono::steady_clock::now();
    CrowdFrame serial_frame = frames.back();
    for (int i = 0; i < reps; ++i) serial_frame = social_force_step(serial_frame, config.sf, Exec::serial);
    const double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    CrowdFrame parallel_frame = frames.back();
    for (int i = 0; i < reps; ++i)
      parallel_frame = social_force_step(parallel_frame, config.sf, Exec::parallel);
    const double parallel_ms = ms_since(t0);
    bool same = true;
    for (std::size_t k = 0; k < serial_frame.pedestrians.size(); ++k)
      same &= serial_frame.pedestrians[k].position == parallel_frame.pedestrians[k].position;
    report("social_force_step K=1500", serial_ms, parallel_ms, same);
  }

  {
    const Workload w = make_workload(40, 29);
    const int reps = 10;
    auto t0 = chrono::steady_clock::now();
    FrameEstimate serial_est;
    for (int i = 0; i < reps; ++i)
      serial_est = localize_pedestrians(w.detections, w.pose, w.history, w.cfg, Exec::serial);
    const double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    FrameEstimate parallel_est;
    for (int i = 0; i < reps; ++i)
      parallel_est = localize_pedestrians(w.detections, w.pose, w.history, w.cfg, Exec::parallel);
    const double parallel_ms = ms_since(t0);
    bool same = serial_est.energy == parallel_est.energy;
    for (std::size_t k = 0; k < serial_est.pedestrians.size(); ++k)
      same &= serial_est.pedestrians[k].candidate_index ==
              parallel_est.pedestrians[k].candidate_index;
    report("message passing K=40 S=29", serial_ms, parallel_ms, same);
  }

  {
    const Workload w = make_workload(50, 1);
    const EgoMotion d{0.1, 0.05, 0.01};
    const int reps = 20000;
    auto t0 = chrono::steady_clock::now();
    double acc_serial = 0.0;
    for (int i = 0; i < reps; ++i)
      acc_serial += ego_energy(d, w.detections, w.history, w.ego, w.cfg, Exec::serial);
    const double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    double acc_parallel = 0.0;
    for (int i = 0; i < reps; ++i)
      acc_parallel += ego_energy(d, w.detections, w.history, w.ego, w.cfg, Exec::parallel);
    const double parallel_ms = ms_since(t0);
    report("ego energy K=50", serial_ms, parallel_ms, acc_serial == acc_parallel);
  }

  {
    const Workload w = make_workload(8, 9);
    GridSpec spec{w.ego.prev.position - Vec2(1.0, 1.0), 0.05, 40, 40};
    auto t0 = chrono::steady_clock::now();
    const auto serial_grid =
        posterior_grid(w.detections, w.history, w.ego, w.cfg, spec, Exec::serial);
    const double serial_ms = ms_since(t0);
    t0 = chrono::steady_clock::now();
    const auto parallel_grid =
        posterior_grid(w.detections, w.history, w.ego, w.cfg, spec, Exec::parallel);
    const double parallel_ms = ms_since(t0);
    bool same = true;
    for (std::size_t i = 0; i < serial_grid.probabilities.size(); ++i)
      same &= serial_grid.probabilities[i] == parallel_grid.probabilities[i];
    report("posterior grid 40x40", serial_ms, parallel_ms, same);
  }
  return 0;
}
