#include "birdify/errors.hpp"
#include "birdify/io.hpp"
#include "birdify/sequence.hpp"
#include "birdify/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace birdify;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int jobs = 1;
  int count = 1;  // independent sequences

  ScenarioConfig scenario;
  BirdifyConfig solver;
  CameraRig rig;
  double fov_deg = 360.0;
  double initial_heading = 0.0;
  int observer = -1;  // -1: drawn from the seed

  RunConfig() {
    solver.intrinsics = {1000.0, 960.0, 540.0, 1920.0, 1080.0};
    solver.prior = {1.70, 0.07};
  }
};

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

ProjectionKind parse_projection(const std::string& name) {
  if (name == "perspective") return ProjectionKind::perspective;
  if (name == "cylindrical") return ProjectionKind::cylindrical;
  throw ConfigError("projection must be 'perspective' or 'cylindrical', got '" + name + "'");
}

InteractionModel parse_model(const std::string& name) {
  if (name == "constvel") return InteractionModel::const_vel;
  if (name == "socialforce") return InteractionModel::social_force;
  throw ConfigError("model must be 'constvel' or 'socialforce', got '" + name + "'");
}

EgoPriorMode parse_ego_prior(const std::string& name) {
  if (name == "none") return EgoPriorMode::none;
  if (name == "crowd-model") return EgoPriorMode::crowd_model;
  throw ConfigError("ego_prior must be 'none' or 'crowd-model', got '" + name + "'");
}

const char* model_name(InteractionModel model) {
  return model == InteractionModel::const_vel ? "constvel" : "socialforce";
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  reject_unknown(j, {"seed", "out_dir", "jobs", "count", "scenario", "camera", "prior",
                     "social_force", "solver"},
                 path);
  maybe(j, "seed", cfg.seed);
  maybe(j, "out_dir", cfg.out_dir);
  maybe(j, "jobs", cfg.jobs);
  maybe(j, "count", cfg.count);

  if (j.contains("scenario")) {
    const auto& s = j["scenario"];
    reject_unknown(s, {"k", "length", "field_half_extent", "corner_fraction"},
                   path + ":scenario");
    maybe(s, "k", cfg.scenario.pedestrian_count);
    maybe(s, "length", cfg.scenario.length);
    maybe(s, "field_half_extent", cfg.scenario.field_half_extent);
    maybe(s, "corner_fraction", cfg.scenario.corner_fraction);
  }
  if (j.contains("camera")) {
    const auto& c = j["camera"];
    reject_unknown(c,
                   {"focal_length", "cu", "cv", "width", "height", "mount_height", "projection",
                    "fov_deg", "initial_heading", "observer"},
                   path + ":camera");
    maybe(c, "focal_length", cfg.solver.intrinsics.focal_length);
    maybe(c, "cu", cfg.solver.intrinsics.cu);
    maybe(c, "cv", cfg.solver.intrinsics.cv);
    maybe(c, "width", cfg.solver.intrinsics.width);
    maybe(c, "height", cfg.solver.intrinsics.height);
    maybe(c, "mount_height", cfg.rig.mount_height);
    if (c.contains("projection"))
      cfg.solver.projection = parse_projection(c["projection"].get<std::string>());
    maybe(c, "fov_deg", cfg.fov_deg);
    maybe(c, "initial_heading", cfg.initial_heading);
    maybe(c, "observer", cfg.observer);
  }
  if (j.contains("prior")) {
    const auto& p = j["prior"];
    reject_unknown(p, {"mean", "stddev"}, path + ":prior");
    maybe(p, "mean", cfg.solver.prior.mean);
    maybe(p, "stddev", cfg.solver.prior.stddev);
  }
  if (j.contains("social_force")) {
    const auto& s = j["social_force"];
    reject_unknown(s,
                   {"eta", "sigma_sq", "neighbor_radius", "dt", "desired_speed",
                    "interaction_cutoff"},
                   path + ":social_force");
    maybe(s, "eta", cfg.solver.sf.desired_weight);
    maybe(s, "sigma_sq", cfg.solver.sf.potential_variance);
    maybe(s, "neighbor_radius", cfg.solver.sf.neighbor_radius);
    maybe(s, "dt", cfg.solver.sf.dt);
    maybe(s, "desired_speed", cfg.solver.sf.desired_speed);
    maybe(s, "interaction_cutoff", cfg.solver.sf.interaction_cutoff);
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    reject_unknown(s,
                   {"candidate_count", "candidate_step", "mp_max_iterations", "mp_damping",
                    "mp_tolerance", "gd_step", "gd_max_iterations", "gd_tolerance", "model",
                    "epsilon", "size_aspect", "ego_prior", "height_smoothing",
                    "track_height_stddev"},
                   path + ":solver");
    maybe(s, "candidate_count", cfg.solver.candidate_count);
    maybe(s, "candidate_step", cfg.solver.candidate_step);
    maybe(s, "mp_max_iterations", cfg.solver.mp_max_iterations);
    maybe(s, "mp_damping", cfg.solver.mp_damping);
    maybe(s, "mp_tolerance", cfg.solver.mp_tolerance);
    maybe(s, "gd_step", cfg.solver.gd_step);
    maybe(s, "gd_max_iterations", cfg.solver.gd_max_iterations);
    maybe(s, "gd_tolerance", cfg.solver.gd_tolerance);
    if (s.contains("model")) cfg.solver.model = parse_model(s["model"].get<std::string>());
    maybe(s, "epsilon", cfg.solver.size_threshold);
    maybe(s, "size_aspect", cfg.solver.size_aspect);
    if (s.contains("ego_prior"))
      cfg.solver.ego_prior = parse_ego_prior(s["ego_prior"].get<std::string>());
    maybe(s, "height_smoothing", cfg.solver.height_smoothing);
    maybe(s, "track_height_stddev", cfg.solver.track_height_stddev);
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.scenario.pedestrian_count < 1) throw ConfigError("k must be >= 1");
  if (cfg.scenario.length < 1) throw ConfigError("length must be >= 1");
  if (cfg.scenario.field_half_extent <= 0) throw ConfigError("field extent must be > 0");
  if (cfg.solver.intrinsics.focal_length <= 0) throw ConfigError("focal length must be > 0");
  if (cfg.solver.intrinsics.width <= 0 || cfg.solver.intrinsics.height <= 0)
    throw ConfigError("image size must be positive");
  if (cfg.rig.mount_height <= 0) throw ConfigError("mount height must be > 0");
  if (cfg.solver.prior.mean <= 0) throw ConfigError("height prior mean must be > 0");
  if (cfg.solver.prior.stddev < 0) throw ConfigError("height prior stddev must be >= 0");
  if (cfg.solver.candidate_count < 3 || cfg.solver.candidate_count % 2 == 0)
    throw ConfigError("candidate_count must be odd and >= 3");
  if (cfg.solver.candidate_step <= 0) throw ConfigError("candidate_step must be > 0");
  if (cfg.solver.mp_max_iterations < 1 || cfg.solver.gd_max_iterations < 1)
    throw ConfigError("iteration caps must be >= 1");
  if (cfg.solver.mp_tolerance <= 0 || cfg.solver.gd_tolerance <= 0)
    throw ConfigError("tolerances must be > 0");
  if (cfg.solver.mp_damping < 0 || cfg.solver.mp_damping >= 1)
    throw ConfigError("mp_damping must be in [0, 1)");
  if (cfg.solver.height_smoothing < 0 || cfg.solver.height_smoothing >= 1)
    throw ConfigError("height_smoothing must be in [0, 1)");
  if (cfg.solver.track_height_stddev < 0)
    throw ConfigError("track_height_stddev must be >= 0");
  if (cfg.solver.sf.dt <= 0) throw ConfigError("dt must be > 0");
  if (cfg.solver.sf.desired_weight <= 0) throw ConfigError("eta must be > 0");
  if (cfg.solver.sf.potential_variance <= 0) throw ConfigError("sigma_sq must be > 0");
  if (cfg.count < 1) throw ConfigError("count must be >= 1");
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
}

fs::path sequence_dir(const RunConfig& cfg, int index) {
  if (cfg.count == 1) return cfg.out_dir;
  char name[32];
  std::snprintf(name, sizeof(name), "seq_%03d", index);
  return fs::path(cfg.out_dir) / name;
}

/// Runs `count` independent sequence jobs over a small thread pool.
void fan_out(const RunConfig& cfg, const std::function<void(int)>& job) {
  const int workers = std::min(cfg.jobs, cfg.count);
  if (workers <= 1) {
    for (int i = 0; i < cfg.count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < cfg.count; i = next.fetch_add(1)) job(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int cmd_simulate(const RunConfig& cfg) {
  validate(cfg);
  fan_out(cfg, [&](int i) {
    const fs::path dir = sequence_dir(cfg, i);
    fs::create_directories(dir);
    ScenarioConfig scenario = cfg.scenario;
    scenario.seed = cfg.seed + static_cast<std::uint64_t>(i);
    scenario.sf = cfg.solver.sf;
    const auto frames = simulate(scenario);
    save_trajectories((dir / "trajectories.csv").string(), records_from_frames(frames));
  });
  return 0;
}

int cmd_observe(const RunConfig& cfg, const std::string& traj_override,
                TrajectoryFormat traj_format) {
  validate(cfg);
  fan_out(cfg, [&](int i) {
    const fs::path dir = sequence_dir(cfg, i);
    const std::string traj_path =
        !traj_override.empty() && cfg.count == 1 ? traj_override
                                                 : (dir / "trajectories.csv").string();
    const auto records = load_trajectories(traj_path, traj_format);

    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    int observer = cfg.observer;
    if (observer < 0) {
      std::vector<int> ids;
      for (const auto& r : records)
        if (ids.empty() || ids.back() != r.id) ids.push_back(r.id);
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
      observer = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    }

    CameraRig rig = cfg.rig;
    rig.kind = cfg.solver.projection;
    const auto synth = synthesize_observations(records, observer, rig, cfg.solver.intrinsics,
                                               cfg.solver.prior, cfg.fov_deg, seed,
                                               cfg.initial_heading);
    fs::create_directories(dir);
    save_observations((dir / "observations.jsonl").string(), synth.observations);
    save_bootstrap((dir / "bootstrap.csv").string(), synth.bootstrap);
    save_camera_trajectory((dir / "camera_gt.csv").string(), synth.camera);
    json meta;
    meta["observer"] = observer;
    meta["projection"] =
        cfg.solver.projection == ProjectionKind::perspective ? "perspective" : "cylindrical";
    meta["fov_deg"] = cfg.fov_deg;
    meta["seed"] = seed;
    save_text((dir / "observe_meta.json").string(), meta.dump(2) + "\n");
  });
  return 0;
}

struct PosteriorRequest {
  int frame = -1;
  double half_extent = 1.0;
  int cells = 41;
};

int cmd_birdify(const RunConfig& cfg, const std::string& obs_override,
                const std::string& bootstrap_override, bool tracker_boxes,
                const PosteriorRequest& posterior) {
  validate(cfg);
  fan_out(cfg, [&](int i) {
    const fs::path dir = sequence_dir(cfg, i);
    const std::string obs_path = !obs_override.empty() && cfg.count == 1
                                     ? obs_override
                                     : (dir / "observations.jsonl").string();
    const std::string boot_path = !bootstrap_override.empty() && cfg.count == 1
                                      ? bootstrap_override
                                      : (dir / "bootstrap.csv").string();
    const auto observations = to_detections(tracker_boxes ? load_tracker_boxes(obs_path)
                                                          : load_observations(obs_path));
    const auto bootstrap = load_bootstrap(boot_path);

    const auto result = birdify_sequence(observations, bootstrap, cfg.solver);
    fs::create_directories(dir);
    save_camera_trajectory((dir / "camera_est.csv").string(), result.camera);
    save_trajectories((dir / "pedestrians_est.csv").string(),
                      flatten_trajectories(result.pedestrians));
    save_diagnostics((dir / "diagnostics.jsonl").string(), result.diagnostics,
                     model_name(cfg.solver.model));

    if (posterior.frame >= 0) {
      // Rebuild the frame's inputs from the emitted trajectories and dump
      // exp(-E_c) over a grid around the previous pose.
      const CameraPose* prev = nullptr;
      Vec2 prev2 = Vec2::Zero();
      for (std::size_t t = 0; t < result.camera.size(); ++t) {
        if (result.camera[t].frame == posterior.frame && t >= 2) {
          prev = &result.camera[t - 1].pose;
          prev2 = result.camera[t - 2].pose.position;
        }
      }
      if (!prev)
        throw ConfigError("posterior frame " + std::to_string(posterior.frame) +
                          " needs two processed predecessors");
      HistoryMap history;
      for (const auto& [id, traj] : result.pedestrians) {
        const Vec2* p1 = nullptr;
        const Vec2* p2 = nullptr;
        for (const auto& t : traj) {
          if (t.frame == posterior.frame - 1) p1 = &t.position;
          if (t.frame == posterior.frame - 2) p2 = &t.position;
        }
        if (p1 && p2) history[id] = {*p1, *p2};
      }
      std::vector<Detection> dets;
      for (const auto& det : observations)
        if (det.frame_index == posterior.frame && history.count(det.pedestrian_id))
          dets.push_back(det);
      GridSpec spec;
      spec.nx = spec.ny = posterior.cells;
      spec.cell_size = 2.0 * posterior.half_extent / posterior.cells;
      spec.min_corner = prev->position - Vec2(posterior.half_extent, posterior.half_extent);
      const auto grid = posterior_grid(dets, history, {*prev, prev2}, cfg.solver, spec);
      save_posterior_grid((dir / "posterior.csv").string(), grid);
    }
  });
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, std::string gt_traj, std::string gt_camera,
                 std::string est_peds, std::string est_camera, int observer_flag,
                 const std::string& name, const std::string& out_path) {
  std::vector<std::pair<std::string, SequenceErrors>> rows;
  for (int i = 0; i < cfg.count; ++i) {
    const fs::path dir = sequence_dir(cfg, i);
    const std::string gt_traj_path =
        !gt_traj.empty() && cfg.count == 1 ? gt_traj : (dir / "trajectories.csv").string();
    const std::string gt_cam_path =
        !gt_camera.empty() && cfg.count == 1 ? gt_camera : (dir / "camera_gt.csv").string();
    const std::string est_peds_path =
        !est_peds.empty() && cfg.count == 1 ? est_peds : (dir / "pedestrians_est.csv").string();
    const std::string est_cam_path =
        !est_camera.empty() && cfg.count == 1 ? est_camera : (dir / "camera_est.csv").string();

    int observer = observer_flag;
    const fs::path meta_path = dir / "observe_meta.json";
    if (observer < 0 && fs::exists(meta_path)) {
      std::ifstream in(meta_path);
      json meta = json::parse(in);
      observer = meta.value("observer", -1);
    }

    auto gt_records = load_trajectories(gt_traj_path, TrajectoryFormat::native_csv);
    PedestrianTrajectories gt;
    for (const auto& r : gt_records)
      if (r.id != observer) gt[r.id].push_back({r.frame, Vec2(r.x, r.y)});

    PedestrianTrajectories est;
    std::ifstream probe(est_peds_path);
    if (!probe) throw IoError("cannot open " + est_peds_path);
    probe.close();
    {
      std::ifstream check(est_peds_path);
      std::string header;
      std::getline(check, header);
      std::string rest;
      if (std::getline(check, rest) && !rest.empty()) {
        const auto est_records = load_trajectories(est_peds_path, TrajectoryFormat::native_csv);
        est = group_trajectories(est_records);
      }
    }

    const auto est_cam = load_camera_trajectory(est_cam_path);
    const auto gt_cam = load_camera_trajectory(gt_cam_path);
    const auto errors = compute_sequence_errors(est_cam, est, gt_cam, gt);
    const std::string label =
        cfg.count == 1 ? (name.empty() ? "sequence" : name)
                       : (name.empty() ? std::string("seq_") : name + "_") +
                             (cfg.count == 1 ? "" : std::to_string(i));
    rows.emplace_back(label, errors);
  }

  const std::string table = metrics_table(rows);
  std::fputs(table.c_str(), stdout);
  if (!out_path.empty()) save_text(out_path, table);
  return 0;
}

int cmd_plot(const std::string& peds, const std::string& camera, const std::string& gt_peds,
             const std::string& gt_camera, const std::string& posterior,
             const std::string& out_path) {
  if (!posterior.empty()) {
    const auto grid = load_posterior_grid(posterior);
    save_text(out_path, render_posterior_heatmap(grid));
    return 0;
  }
  PedestrianTrajectories est;
  if (!peds.empty()) {
    // an empty (header-only) estimate file renders empty axes
    std::ifstream check(peds);
    if (!check) throw IoError("cannot open " + peds);
    std::string header, rest;
    std::getline(check, header);
    if (std::getline(check, rest) && !rest.empty())
      est = group_trajectories(load_trajectories(peds, TrajectoryFormat::native_csv));
  }
  CameraTrajectory est_cam;
  if (!camera.empty()) est_cam = load_camera_trajectory(camera);
  PedestrianTrajectories gt;
  if (!gt_peds.empty())
    gt = group_trajectories(load_trajectories(gt_peds, TrajectoryFormat::native_csv));
  CameraTrajectory gt_cam;
  if (!gt_camera.empty()) gt_cam = load_camera_trajectory(gt_camera);
  save_text(out_path, render_trajectory_overlay(est, est_cam, gt, gt_cam));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bird's-eye trajectory reconstruction from ego-centric detections"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  // shared flags, registered per subcommand (flags > file > defaults)
  std::uint64_t seed_flag = 0;
  std::string out_dir_flag, model_flag, projection_flag, ego_prior_flag;
  int jobs_flag = 0, count_flag = 0, k_flag = 0, len_flag = 0, observer_flag = -2;
  double sigma_flag = -1.0, epsilon_flag = -1.0, fov_flag = -1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--seed", seed_flag, "base random seed");
    cmd->add_option("--out-dir", out_dir_flag, "output directory");
    cmd->add_option("--jobs", jobs_flag, "parallel workers over independent sequences");
    cmd->add_option("--count", count_flag, "number of independent sequences");
    cmd->add_option("--sigma-h", sigma_flag, "height prior standard deviation, meters");
    cmd->add_option("--model", model_flag, "interaction model: constvel|socialforce");
    cmd->add_option("--projection", projection_flag, "perspective|cylindrical");
    cmd->add_option("--epsilon", epsilon_flag, "bounding-box size threshold (0 disables)");
  };

  auto* sim = app.add_subcommand("simulate", "generate crowd trajectories");
  add_common(sim);
  sim->add_option("--k", k_flag, "number of pedestrians");
  sim->add_option("--len", len_flag, "sequence length in frames");

  auto* obs = app.add_subcommand("observe", "synthesize ego-centric observations");
  add_common(obs);
  std::string traj_path, traj_format = "csv";
  obs->add_option("--traj", traj_path, "input trajectory csv (default <out-dir>/trajectories.csv)");
  obs->add_option("--traj-format", traj_format, "csv|ethucy (whitespace-separated frame id x y)");
  obs->add_option("--observer", observer_flag, "observer track id (default: seeded choice)");
  obs->add_option("--fov", fov_flag, "field of view, degrees");

  auto* bird = app.add_subcommand("birdify", "reconstruct ground-plane trajectories");
  add_common(bird);
  std::string obs_path, boot_path;
  bool tracker_boxes = false;
  PosteriorRequest posterior;
  bird->add_option("--obs", obs_path, "observations jsonl");
  bird->add_flag("--tracker-boxes", tracker_boxes,
                 "treat --obs as tracker output (frame,id,x1,y1,x2,y2 boxes)");
  bird->add_option("--bootstrap", boot_path, "bootstrap csv");
  bird->add_option("--posterior-frame", posterior.frame, "emit a posterior grid for this frame");
  bird->add_option("--posterior-extent", posterior.half_extent, "grid half extent, meters");
  bird->add_option("--posterior-cells", posterior.cells, "grid cells per side");

  auto* eval = app.add_subcommand("evaluate", "compare estimates against ground truth");
  add_common(eval);
  std::string gt_traj, gt_camera, est_peds, est_camera, seq_name, metrics_out;
  eval->add_option("--gt-traj", gt_traj, "ground-truth trajectory csv");
  eval->add_option("--gt-camera", gt_camera, "ground-truth camera csv");
  eval->add_option("--est-peds", est_peds, "estimated pedestrian csv");
  eval->add_option("--est-camera", est_camera, "estimated camera csv");
  eval->add_option("--observer", observer_flag, "observer id to exclude from the truth");
  eval->add_option("--name", seq_name, "row label");
  eval->add_option("--out", metrics_out, "also write the table to this file");

  auto* plot = app.add_subcommand("plot", "render svg overlays and heatmaps");
  add_common(plot);
  std::string plot_peds, plot_camera, plot_gt_peds, plot_gt_camera, plot_posterior, plot_out;
  plot->add_option("--peds", plot_peds, "estimated pedestrian csv");
  plot->add_option("--camera", plot_camera, "estimated camera csv");
  plot->add_option("--gt-peds", plot_gt_peds, "ground-truth trajectory csv");
  plot->add_option("--gt-camera", plot_gt_camera, "ground-truth camera csv");
  plot->add_option("--posterior", plot_posterior, "posterior grid csv (heatmap mode)");
  plot->add_option("--out", plot_out, "output svg path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (!config_path.empty()) load_config_file(config_path, cfg);

    // flags override file values
    if (cmd->count("--seed")) cfg.seed = seed_flag;
    if (cmd->count("--out-dir")) cfg.out_dir = out_dir_flag;
    if (cmd->count("--jobs")) cfg.jobs = jobs_flag;
    if (cmd->count("--count")) cfg.count = count_flag;
    if (cmd->count("--sigma-h")) cfg.solver.prior.stddev = sigma_flag;
    if (cmd->count("--model")) cfg.solver.model = parse_model(model_flag);
    if (cmd->count("--projection")) cfg.solver.projection = parse_projection(projection_flag);
    if (cmd->count("--epsilon")) cfg.solver.size_threshold = epsilon_flag;
    if (cmd == sim && cmd->count("--k")) cfg.scenario.pedestrian_count = k_flag;
    if (cmd == sim && cmd->count("--len")) cfg.scenario.length = len_flag;
    if (cmd == obs && cmd->count("--observer")) cfg.observer = observer_flag;
    if (cmd == obs && cmd->count("--fov")) cfg.fov_deg = fov_flag;

    if (cmd == sim) return cmd_simulate(cfg);
    if (cmd == obs) {
      if (traj_format != "csv" && traj_format != "ethucy")
        throw ConfigError("--traj-format must be csv or ethucy");
      return cmd_observe(cfg, traj_path,
                         traj_format == "csv" ? TrajectoryFormat::native_csv
                                              : TrajectoryFormat::ethucy_tsv);
    }
    if (cmd == bird) return cmd_birdify(cfg, obs_path, boot_path, tracker_boxes, posterior);
    if (cmd == eval)
      return cmd_evaluate(cfg, gt_traj, gt_camera, est_peds, est_camera,
                          eval->count("--observer") ? observer_flag : -1, seq_name, metrics_out);
    if (cmd == plot)
      return cmd_plot(plot_peds, plot_camera, plot_gt_peds, plot_gt_camera, plot_posterior,
                      plot_out);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
