#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = BIRDIFY_CLI;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("birdify_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string dir() const { return path.string(); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("--help exits 0 on every command") {
  CHECK(run("--help") == 0);
  for (const char* cmd : {"simulate", "observe", "birdify", "evaluate", "plot"})
    CHECK(run(std::string(cmd) + " --help") == 0);
}

TEST_CASE("simulate is deterministic and validates its config") {
  TempDir a, b;
  CHECK(run("simulate --k 20 --seed 7 --len 10 --out-dir " + a.dir()) == 0);
  CHECK(run("simulate --k 20 --seed 7 --len 10 --out-dir " + b.dir()) == 0);
  CHECK(slurp(a.file("trajectories.csv")) == slurp(b.file("trajectories.csv")));

  CHECK(run("simulate --k 0 --out-dir " + a.dir()) != 0);

  TempDir c;
  CHECK(run("simulate --k 50 --len 20 --seed 3 --out-dir " + c.dir()) == 0);
  CHECK(count_lines(slurp(c.file("trajectories.csv"))) == 50 * 20 + 1);  // header
}

TEST_CASE("observe requires its input file") {
  TempDir dir;
  CHECK(run("observe --out-dir " + dir.dir()) != 0);
}

TEST_CASE("pipeline reruns are bit-identical and models are logged") {
  TempDir dir;
  const std::string base = " --out-dir " + dir.dir();
  REQUIRE(run("simulate --k 8 --len 8 --seed 5" + base) == 0);
  REQUIRE(run("observe --projection cylindrical --sigma-h 0.05 --observer 0 --seed 5" + base) ==
          0);

  REQUIRE(run("birdify --projection cylindrical --sigma-h 0.05 --model socialforce" + base) == 0);
  const std::string cam1 = slurp(dir.file("camera_est.csv"));
  const std::string ped1 = slurp(dir.file("pedestrians_est.csv"));
  const std::string diag1 = slurp(dir.file("diagnostics.jsonl"));
  CHECK(diag1.find("\"model\":\"socialforce\"") != std::string::npos);

  REQUIRE(run("birdify --projection cylindrical --sigma-h 0.05 --model socialforce" + base) == 0);
  CHECK(slurp(dir.file("camera_est.csv")) == cam1);
  CHECK(slurp(dir.file("pedestrians_est.csv")) == ped1);

  REQUIRE(run("birdify --projection cylindrical --sigma-h 0.05 --model constvel" + base) == 0);
  CHECK(slurp(dir.file("diagnostics.jsonl")).find("\"model\":\"constvel\"") !=
        std::string::npos);

  CHECK(run("evaluate --name check" + base) == 0);
}

TEST_CASE("evaluate fails on misaligned inputs") {
  TempDir dir;
  const std::string base = " --out-dir " + dir.dir();
  REQUIRE(run("simulate --k 6 --len 8 --seed 9" + base) == 0);
  REQUIRE(run("observe --projection cylindrical --sigma-h 0 --observer 0 --seed 9" + base) == 0);
  REQUIRE(run("birdify --projection cylindrical --sigma-h 0" + base) == 0);

  // truncate the ground-truth camera to force a length mismatch
  const std::string cam = slurp(dir.file("camera_gt.csv"));
  std::ofstream out(dir.file("camera_gt.csv"), std::ios::binary | std::ios::trunc);
  std::istringstream in(cam);
  std::string line;
  for (int i = 0; i < 4 && std::getline(in, line); ++i) out << line << "\n";
  out.close();
  CHECK(run("evaluate" + base) != 0);
}

TEST_CASE("plot renders overlays, heatmaps, and empty axes") {
  TempDir dir;
  const std::string base = " --out-dir " + dir.dir();
  REQUIRE(run("simulate --k 6 --len 8 --seed 13" + base) == 0);
  REQUIRE(run("observe --projection cylindrical --sigma-h 0 --observer 0 --seed 13" + base) == 0);
  REQUIRE(run("birdify --projection cylindrical --sigma-h 0 --posterior-frame 4" + base) == 0);

  const std::string overlay = dir.file("overlay.svg");
  REQUIRE(run("plot --peds " + dir.file("pedestrians_est.csv") + " --camera " +
              dir.file("camera_est.csv") + " --out " + overlay) == 0);
  const std::string svg = slurp(overlay);
  // one polyline per pedestrian plus one for the camera
  std::set<std::string> ids;
  std::istringstream peds(slurp(dir.file("pedestrians_est.csv")));
  std::string line;
  std::getline(peds, line);
  while (std::getline(peds, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    ids.insert(line.substr(a + 1, b - a - 1));
  }
  CHECK(count_occurrences(svg, "<polyline") == static_cast<int>(ids.size()) + 1);

  REQUIRE(run("plot --peds " + dir.file("pedestrians_est.csv") + " --camera " +
              dir.file("camera_est.csv") + " --out " + dir.file("again.svg")) == 0);
  CHECK(slurp(dir.file("again.svg")) == svg);  // byte-identical rerun

  REQUIRE(run("plot --posterior " + dir.file("posterior.csv") + " --out " +
              dir.file("heat.svg")) == 0);
  CHECK(slurp(dir.file("heat.svg")).find("<rect") != std::string::npos);

  std::ofstream empty(dir.file("empty.csv"));
  empty << "frame,id,x,y\n";
  empty.close();
  CHECK(run("plot --peds " + dir.file("empty.csv") + " --out " + dir.file("empty.svg")) == 0);
  CHECK(slurp(dir.file("empty.svg")).find("<svg") != std::string::npos);
}

TEST_CASE("config files are validated and flags take precedence") {
  TempDir dir;
  std::ofstream cfg(dir.file("config.json"));
  cfg << R"({"seed": 21, "scenario": {"k": 5, "length": 6}})";
  cfg.close();

  CHECK(run("simulate --config " + dir.file("config.json") + " --out-dir " + dir.dir()) == 0);
  CHECK(count_lines(slurp(dir.file("trajectories.csv"))) == 5 * 6 + 1);

  // flag overrides the file value
  CHECK(run("simulate --config " + dir.file("config.json") + " --k 7 --out-dir " + dir.dir()) ==
        0);
  CHECK(count_lines(slurp(dir.file("trajectories.csv"))) == 7 * 6 + 1);

  std::ofstream bad(dir.file("bad.json"));
  bad << R"({"seed": 21, "scenari": {"k": 5}})";
  bad.close();
  CHECK(run("simulate --config " + dir.file("bad.json") + " --out-dir " + dir.dir()) != 0);

  std::ofstream bad2(dir.file("bad2.json"));
  bad2 << R"({"solver": {"mp_damping": 1.5}})";
  bad2.close();
  CHECK(run("simulate --config " + dir.file("bad2.json") + " --out-dir " + dir.dir()) != 0);
}

TEST_CASE("multi-sequence fan-out with jobs") {
  TempDir dir;
  const std::string base = " --out-dir " + dir.dir() + " --count 3 --jobs 2";
  REQUIRE(run("simulate --k 5 --len 6 --seed 2" + base) == 0);
  for (const char* seq : {"seq_000", "seq_001", "seq_002"})
    CHECK(fs::exists(dir.path / seq / "trajectories.csv"));
  // per-sequence seeds differ
  CHECK(slurp((dir.path / "seq_000" / "trajectories.csv").string()) !=
        slurp((dir.path / "seq_001" / "trajectories.csv").string()));

  TempDir serial;
  REQUIRE(run("simulate --k 5 --len 6 --seed 2 --out-dir " + serial.dir() +
              " --count 3 --jobs 1") == 0);
  CHECK(slurp((dir.path / "seq_002" / "trajectories.csv").string()) ==
        slurp((serial.path / "seq_002" / "trajectories.csv").string()));
}
