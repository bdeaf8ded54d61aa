#include "birdify/io.hpp"

#include "birdify/errors.hpp"
#include "birdify/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace birdify {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << content;
    if (!out) throw IoError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& token, const std::string& path, int line, int column) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(path + ":" + std::to_string(line) + ": column " + std::to_string(column) +
                     ": not a number: '" + token + "'");
  if (!std::isfinite(value))
    throw ParseError(path + ":" + std::to_string(line) + ": column " + std::to_string(column) +
                     ": non-finite value");
  return value;
}

int parse_int(const std::string& token, const std::string& path, int line, int column) {
  const double value = parse_double(token, path, line, column);
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9)
    throw ParseError(path + ":" + std::to_string(line) + ": column " + std::to_string(column) +
                     ": expected an integer, got '" + token + "'");
  return static_cast<int>(rounded);
}

void sort_records(std::vector<TrajectoryRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.frame, a.id) < std::tie(b.frame, b.id);
  });
}

void check_unique(const std::vector<TrajectoryRecord>& records, const std::string& path) {
  std::set<std::pair<int, int>> seen;
  for (const auto& r : records)
    if (!seen.insert({r.frame, r.id}).second)
      throw ParseError(path + ": duplicate (frame " + std::to_string(r.frame) + ", id " +
                       std::to_string(r.id) + ")");
}

double require_number(const json& j, const char* key, const std::string& path, int line) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(path + ":" + std::to_string(line) + ": missing numeric key '" + key + "'");
  const double v = j[key].get<double>();
  if (!std::isfinite(v))
    throw ParseError(path + ":" + std::to_string(line) + ": non-finite '" + key + "'");
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<TrajectoryRecord> load_trajectories(const std::string& path,
                                                TrajectoryFormat format) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  std::vector<TrajectoryRecord> records;
  int line_no = 0;

  if (format == TrajectoryFormat::native_csv) {
    if (!std::getline(in, line) || line != "frame,id,x,y")
      throw ParseError(path + ":1: expected header 'frame,id,x,y'");
    line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto cols = split(line, ',');
      if (cols.size() != 4)
        throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 columns, got " +
                         std::to_string(cols.size()));
      TrajectoryRecord r;
      r.frame = parse_int(cols[0], path, line_no, 1);
      r.id = parse_int(cols[1], path, line_no, 2);
      r.x = parse_double(cols[2], path, line_no, 3);
      r.y = parse_double(cols[3], path, line_no, 4);
      records.push_back(r);
    }
  } else {
    while (std::getline(in, line)) {
      ++line_no;
      std::istringstream row(line);
      std::vector<std::string> cols;
      std::string token;
      while (row >> token) cols.push_back(token);
      if (cols.empty()) continue;
      if (cols.size() != 4)
        throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 columns, got " +
                         std::to_string(cols.size()));
      TrajectoryRecord r;
      r.frame = parse_int(cols[0], path, line_no, 1);
      r.id = parse_int(cols[1], path, line_no, 2);
      r.x = parse_double(cols[2], path, line_no, 3);
      r.y = parse_double(cols[3], path, line_no, 4);
      records.push_back(r);
    }
  }

  if (records.empty()) throw EmptyDataset(path + " has no trajectory rows");
  check_unique(records, path);
  sort_records(records);
  return records;
}

void save_trajectories(const std::string& path, const std::vector<TrajectoryRecord>& records) {
  std::string out = "frame,id,x,y\n";
  for (const auto& r : records) {
    out += std::to_string(r.frame);
    out += ',';
    out += std::to_string(r.id);
    out += ',';
    out += format_double(r.x);
    out += ',';
    out += format_double(r.y);
    out += '\n';
  }
  write_file_atomic(path, out);
}

PedestrianTrajectories group_trajectories(const std::vector<TrajectoryRecord>& records) {
  PedestrianTrajectories out;
  for (const auto& r : records) out[r.id].push_back({r.frame, Vec2(r.x, r.y)});
  for (auto& [id, traj] : out)
    std::sort(traj.begin(), traj.end(),
              [](const auto& a, const auto& b) { return a.frame < b.frame; });
  return out;
}

std::vector<TrajectoryRecord> flatten_trajectories(const PedestrianTrajectories& trajectories) {
  std::vector<TrajectoryRecord> out;
  for (const auto& [id, traj] : trajectories)
    for (const auto& t : traj) out.push_back({t.frame, id, t.position.x(), t.position.y()});
  sort_records(out);
  return out;
}

std::vector<TrajectoryRecord> records_from_frames(const std::vector<CrowdFrame>& frames) {
  std::vector<TrajectoryRecord> out;
  for (const auto& frame : frames)
    for (const auto& p : frame.pedestrians)
      out.push_back({frame.frame_index, p.id, p.position.x(), p.position.y()});
  sort_records(out);
  return out;
}

std::vector<ObservationRecord> load_observations(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  std::vector<ObservationRecord> out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ObservationRecord r;
    r.frame = static_cast<int>(require_number(j, "frame", path, line_no));
    r.id = static_cast<int>(require_number(j, "id", path, line_no));
    r.u = require_number(j, "u", path, line_no);
    r.v = require_number(j, "v", path, line_no);
    r.l = require_number(j, "l", path, line_no);
    if (r.l <= 0.0)
      throw ParseError(path + ":" + std::to_string(line_no) + ": apparent height must be > 0");
    if (j.contains("size")) r.box_size = require_number(j, "size", path, line_no);
    out.push_back(r);
  }
  return out;
}

void save_observations(const std::string& path, const std::vector<ObservationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["frame"] = r.frame;
    j["id"] = r.id;
    j["u"] = r.u;
    j["v"] = r.v;
    j["l"] = r.l;
    if (r.box_size) j["size"] = *r.box_size;
    out += j.dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::vector<ObservationRecord> load_tracker_boxes(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  std::vector<ObservationRecord> out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    const double x1 = require_number(j, "x1", path, line_no);
    const double y1 = require_number(j, "y1", path, line_no);
    const double x2 = require_number(j, "x2", path, line_no);
    const double y2 = require_number(j, "y2", path, line_no);
    ObservationRecord r;
    r.frame = static_cast<int>(require_number(j, "frame", path, line_no));
    r.id = static_cast<int>(require_number(j, "id", path, line_no));
    r.u = 0.5 * (x1 + x2);
    r.v = 0.5 * (y1 + y2);
    r.l = y2 - y1;
    if (r.l <= 0.0)
      throw ParseError(path + ":" + std::to_string(line_no) + ": box height must be > 0");
    r.box_size = (x2 - x1) * (y2 - y1);
    out.push_back(r);
  }
  return out;
}

std::vector<Detection> to_detections(const std::vector<ObservationRecord>& records) {
  std::vector<Detection> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.u, r.v, r.l, r.id, r.frame});
  return out;
}

std::pair<std::vector<TrajectoryRecord>, SceneNormalization> normalize_scene(
    const std::vector<TrajectoryRecord>& records, double target_half_extent) {
  if (records.empty()) throw EmptyDataset("nothing to normalize");
  double min_x = records[0].x, max_x = records[0].x;
  double min_y = records[0].y, max_y = records[0].y;
  for (const auto& r : records) {
    min_x = std::min(min_x, r.x);
    max_x = std::max(max_x, r.x);
    min_y = std::min(min_y, r.y);
    max_y = std::max(max_y, r.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (extent < 1e-9) throw DegenerateExtent("scene extent is degenerate");

  SceneNormalization norm;
  norm.scale = 2.0 * target_half_extent / extent;
  norm.offset = -norm.scale * Vec2(0.5 * (min_x + max_x), 0.5 * (min_y + max_y));

  std::vector<TrajectoryRecord> out = records;
  for (auto& r : out) {
    const Vec2 p = norm.apply(Vec2(r.x, r.y));
    r.x = p.x();
    r.y = p.y();
  }
  return {out, norm};
}

void save_bootstrap(const std::string& path, const std::vector<BootstrapEntry>& entries) {
  std::string out = "frame,id,x,y,heading\n";
  for (const auto& e : entries) {
    out += std::to_string(e.frame);
    out += ',';
    out += std::to_string(e.id);
    out += ',';
    out += format_double(e.position.x());
    out += ',';
    out += format_double(e.position.y());
    out += ',';
    if (e.heading) out += format_double(*e.heading);
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::vector<BootstrapEntry> load_bootstrap(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "frame,id,x,y,heading")
    throw ParseError(path + ":1: expected header 'frame,id,x,y,heading'");
  std::vector<BootstrapEntry> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 5)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 5 columns");
    BootstrapEntry e;
    e.frame = parse_int(cols[0], path, line_no, 1);
    e.id = parse_int(cols[1], path, line_no, 2);
    e.position.x() = parse_double(cols[2], path, line_no, 3);
    e.position.y() = parse_double(cols[3], path, line_no, 4);
    if (!cols[4].empty()) e.heading = parse_double(cols[4], path, line_no, 5);
    out.push_back(e);
  }
  return out;
}

void save_camera_trajectory(const std::string& path, const CameraTrajectory& trajectory) {
  std::string out = "frame,x,y,heading\n";
  for (const auto& t : trajectory) {
    out += std::to_string(t.frame);
    out += ',';
    out += format_double(t.pose.position.x());
    out += ',';
    out += format_double(t.pose.position.y());
    out += ',';
    out += format_double(t.pose.heading);
    out += '\n';
  }
  write_file_atomic(path, out);
}

CameraTrajectory load_camera_trajectory(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "frame,x,y,heading")
    throw ParseError(path + ":1: expected header 'frame,x,y,heading'");
  CameraTrajectory out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 4 columns");
    TimedPose t;
    t.frame = parse_int(cols[0], path, line_no, 1);
    t.pose.position.x() = parse_double(cols[1], path, line_no, 2);
    t.pose.position.y() = parse_double(cols[2], path, line_no, 3);
    t.pose.heading = parse_double(cols[3], path, line_no, 4);
    out.push_back(t);
  }
  return out;
}

void save_diagnostics(const std::string& path, const std::vector<FrameDiagnostics>& diagnostics,
                      const std::string& model_name) {
  std::string out;
  for (const auto& d : diagnostics) {
    json j;
    j["frame"] = d.frame;
    j["model"] = model_name;
    j["skipped"] = d.skipped;
    j["detections"] = d.detections;
    j["optimized"] = d.optimized;
    j["bootstrapped"] = d.bootstrapped;
    j["carried"] = d.carried;
    j["ego_energy"] = d.ego.energy;
    j["ego_iterations"] = d.ego.iterations;
    j["ego_converged"] = d.ego.converged;
    j["ego_gradient_norm"] = d.ego.gradient_norm;
    j["energy"] = d.energy;
    j["mp_iterations"] = d.mp_iterations;
    j["mp_converged"] = d.mp_converged;
    out += j.dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

SynthesisResult synthesize_observations(const std::vector<TrajectoryRecord>& trajectories,
                                        int observer_id, const CameraRig& rig,
                                        const CameraIntrinsics& intrinsics,
                                        const HeightPrior& prior, double fov_degrees,
                                        std::uint64_t seed, std::optional<double> initial_heading,
                                        bool drop_occluded) {
  const PedestrianTrajectories grouped = group_trajectories(trajectories);
  const auto oit = grouped.find(observer_id);
  if (oit == grouped.end())
    throw ObserverNotFound("observer id " + std::to_string(observer_id) + " not in trajectories");
  const auto& observer = oit->second;
  if (observer.size() < 2)
    throw ObserverNotFound("observer track needs at least two frames");

  // One height draw per track, in id order.
  SynthesisResult result;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> height_dist(prior.mean, prior.stddev > 0 ? prior.stddev : 1.0);
  for (const auto& [id, traj] : grouped) {
    if (id == observer_id) continue;
    result.heights[id] = prior.stddev > 0 ? height_dist(rng) : prior.mean;
  }

  // Index of every (id, frame) position for projection.
  std::map<std::pair<int, int>, Vec2> at;
  for (const auto& r : trajectories) at[{r.id, r.frame}] = Vec2(r.x, r.y);

  const double half_fov = 0.5 * fov_degrees * std::numbers::pi / 180.0;
  double heading = 0.0;
  bool heading_valid = false;
  std::map<int, int> visible_count;

  for (std::size_t t = 0; t < observer.size(); ++t) {
    // Velocity direction over the trailing two-frame window; falls back to
    // the previous heading, then to the configured initial heading.
    const std::size_t lo = t >= 2 ? t - 2 : 0;
    Vec2 disp = observer[t].position - observer[lo].position;
    if (t == 0) disp = observer[1].position - observer[0].position;
    if (disp.norm() > 1e-9) {
      heading = heading_from_direction(disp);
      heading_valid = true;
    } else if (!heading_valid) {
      if (!initial_heading)
        throw ObserverStationaryHeadingUndefined(
            "observer is stationary and no initial heading is configured");
      heading = normalize_angle(*initial_heading);
      heading_valid = true;
    }

    const int frame = observer[t].frame;
    const CameraPose pose{observer[t].position, heading};
    result.camera.push_back({frame, pose});

    struct Visible {
      ObservationRecord record;
      double depth;
    };
    std::vector<Visible> frame_records;
    for (const auto& [id, traj] : grouped) {
      if (id == observer_id) continue;
      const auto pit = at.find({id, frame});
      if (pit == at.end()) continue;
      const RelativePosition z = to_camera(pit->second, pose);
      if (rig.kind == ProjectionKind::perspective && z.y() <= 1e-9) continue;
      if (z.range() < 1e-9) continue;
      if (std::abs(z.bearing()) > half_fov) continue;
      const ProjectedDetection proj =
          project(z, intrinsics, result.heights.at(id), rig.kind);
      ObservationRecord r;
      r.frame = frame;
      r.id = id;
      r.u = proj.detection.u;
      r.v = proj.detection.v;
      r.l = proj.detection.l;
      frame_records.push_back({r, z.range()});
    }

    if (drop_occluded) {
      // Drop the farther of any two whose image intervals overlap > 70%.
      constexpr double kAspect = 0.5;
      std::vector<bool> dropped(frame_records.size(), false);
      for (std::size_t a = 0; a < frame_records.size(); ++a) {
        for (std::size_t b = a + 1; b < frame_records.size(); ++b) {
          const auto& ra = frame_records[a].record;
          const auto& rb = frame_records[b].record;
          const double wa = kAspect * ra.l, wb = kAspect * rb.l;
          const double lo_edge = std::max(ra.u - wa / 2, rb.u - wb / 2);
          const double hi_edge = std::min(ra.u + wa / 2, rb.u + wb / 2);
          const double overlap = hi_edge - lo_edge;
          if (overlap > 0.7 * std::min(wa, wb)) {
            if (frame_records[a].depth > frame_records[b].depth)
              dropped[a] = true;
            else
              dropped[b] = true;
          }
        }
      }
      std::vector<Visible> kept;
      for (std::size_t a = 0; a < frame_records.size(); ++a)
        if (!dropped[a]) kept.push_back(frame_records[a]);
      frame_records = std::move(kept);
    }

    for (const auto& v : frame_records) {
      result.observations.push_back(v.record);
      auto& count = visible_count[v.record.id];
      if (count < 2)
        result.bootstrap.push_back({frame, v.record.id, at.at({v.record.id, frame}), {}});
      ++count;
    }
  }

  // Camera bootstrap: its first two poses, heading included.
  for (std::size_t t = 0; t < 2 && t < result.camera.size(); ++t)
    result.bootstrap.push_back({result.camera[t].frame, kCameraId,
                                result.camera[t].pose.position,
                                result.camera[t].pose.heading});
  return result;
}

void save_posterior_grid(const std::string& path, const PosteriorGrid& grid) {
  std::string out = "min_x,min_y,cell_size,nx,ny\n";
  out += format_double(grid.spec.min_corner.x());
  out += ',';
  out += format_double(grid.spec.min_corner.y());
  out += ',';
  out += format_double(grid.spec.cell_size);
  out += ',';
  out += std::to_string(grid.spec.nx);
  out += ',';
  out += std::to_string(grid.spec.ny);
  out += '\n';
  for (int iy = 0; iy < grid.spec.ny; ++iy) {
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
      if (ix > 0) out += ',';
      out += format_double(grid.at(ix, iy));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

PosteriorGrid load_posterior_grid(const std::string& path) {
  const std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != "min_x,min_y,cell_size,nx,ny")
    throw ParseError(path + ":1: expected header 'min_x,min_y,cell_size,nx,ny'");
  if (!std::getline(in, line)) throw ParseError(path + ":2: missing grid spec");
  const auto spec_cols = split(line, ',');
  if (spec_cols.size() != 5) throw ParseError(path + ":2: expected 5 spec values");
  PosteriorGrid grid;
  grid.spec.min_corner.x() = parse_double(spec_cols[0], path, 2, 1);
  grid.spec.min_corner.y() = parse_double(spec_cols[1], path, 2, 2);
  grid.spec.cell_size = parse_double(spec_cols[2], path, 2, 3);
  grid.spec.nx = parse_int(spec_cols[3], path, 2, 4);
  grid.spec.ny = parse_int(spec_cols[4], path, 2, 5);
  int line_no = 2;
  for (int iy = 0; iy < grid.spec.ny; ++iy) {
    if (!std::getline(in, line))
      throw ParseError(path + ": truncated grid, expected " + std::to_string(grid.spec.ny) +
                       " rows");
    ++line_no;
    const auto cols = split(line, ',');
    if (static_cast<int>(cols.size()) != grid.spec.nx)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(grid.spec.nx) + " values");
    for (int ix = 0; ix < grid.spec.nx; ++ix)
      grid.probabilities.push_back(parse_double(cols[ix], path, line_no, ix + 1));
  }
  return grid;
}

void save_text(const std::string& path, const std::string& text) {
  write_file_atomic(path, text);
}

}  // namespace birdify
