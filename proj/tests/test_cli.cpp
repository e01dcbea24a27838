#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BDR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("bdr_cli_" + std::to_string(::getpid()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate is deterministic and hits the degree") {
  TempDir dir;
  REQUIRE(run("generate --seed 5 -o " + dir / "a.json") == 0);
  REQUIRE(run("generate --seed 5 -o " + dir / "b.json") == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  const auto doc = nlohmann::json::parse(slurp(dir / "a.json"));
  const double degree = 2.0 * static_cast<double>(doc["edges"].size()) / doc["n"].get<double>();
  CHECK(degree >= 11.0);
  CHECK(degree <= 13.0);
}

TEST_CASE("usage and config errors exit with 2") {
  TempDir dir;
  std::ofstream(dir / "bad.json") << "{\"network\": {\"area_widht\": 3}}";
  std::ofstream(dir / "broken.json") << "{\"network\": ";
  CHECK(run("generate --config " + dir / "bad.json" + " -o " + dir / "g.txt") == 2);
  CHECK(run("generate --config " + dir / "broken.json" + " -o " + dir / "g.txt") == 2);
  CHECK(run("frobnicate") == 2);
  REQUIRE(run("generate --width 6 --height 6 -o " + dir / "g.txt") == 0);
  CHECK(run("classify -g " + dir / "g.txt" + " --alg magic") == 2);
}

TEST_CASE("classify, truth and render on small inputs") {
  TempDir dir;
  std::ofstream(dir / "path.txt") << "4 3\n0 0\n0.8 0\n1.6 0\n2.4 0\n0 1 W\n1 2 W\n2 3 W\n";
  REQUIRE(run("classify -g " + dir / "path.txt" + " --alg ecbr -o " + dir / "v.json") == 0);
  const auto v = nlohmann::json::parse(slurp(dir / "v.json"));
  REQUIRE(v["verdicts"].size() == 4);
  for (const auto& [id, verdict] : v["verdicts"].items()) CHECK(verdict == "boundary");

  std::ofstream(dir / "tri.txt") << "3 3\n0 0\n0.5 0\n0.25 0.4\n0 1 W\n0 2 W\n1 2 W\n";
  REQUIRE(run("render -g " + dir / "tri.txt" + " -o " + dir / "a.svg") == 0);
  REQUIRE(run("render -g " + dir / "tri.txt" + " -o " + dir / "b.svg") == 0);
  const auto svg = slurp(dir / "a.svg");
  CHECK(svg == slurp(dir / "b.svg"));
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  CHECK(circles == 3);

  REQUIRE(run("truth -g " + dir / "tri.txt" + " -o " + dir / "t.json") == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "t.json"))["labels"].size() == 3);
}

TEST_CASE("evaluate writes identical CSV on repeat") {
  TempDir dir;
  std::ofstream(dir / "cfg.json") << R"({"network": {"area_width": 10, "area_height": 10, "hole_preset": "diamond"},
    "experiment": {"trials": 2, "algorithms": ["ecbr", "mdsbr+ref"]}})";
  REQUIRE(run("evaluate --config " + dir / "cfg.json" + " --threads 1 --csv " + dir / "a.csv") == 0);
  REQUIRE(run("evaluate --config " + dir / "cfg.json" + " --threads 3 --csv " + dir / "b.csv") == 0);
  const auto csv = slurp(dir / "a.csv");
  CHECK(csv == slurp(dir / "b.csv"));
  CHECK(csv.find("mandatory_fn_pct,optional_interior_pct,interior_fp_pct") != std::string::npos);
}

}
