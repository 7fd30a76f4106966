#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "qlf_cli_test";

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + QLF_BINARY + " " + args + " > " + (kWork / "stdout.txt").string() + " 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Fresh {
  Fresh() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fresh, "domain and usage errors exit 2") {
  CHECK(run("value --d 2") == 2);
  CHECK(run("value --d 9") == 2);
  CHECK(run("value") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("census --lo 1 --hi 10 --bogus") == 2);
  CHECK(run("verify --suite nope") == 2);
}

TEST_CASE_FIXTURE(Fresh, "value prints the central value") {
  const fs::path out = kWork / "v";
  CHECK(run("value --d 5 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out / "value.json"));
  CHECK(j["d"] == 5);
  CHECK(j["L"].get<double>() > 0.0);
  CHECK(j.contains("truncation_N"));
  CHECK(j.contains("tail_estimate"));
  const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(m["artifacts"][0] == "value.json");
  CHECK(m.contains("wall_seconds"));
}

TEST_CASE_FIXTURE(Fresh, "identity-69 suite passes") {
  const fs::path out = kWork / "id";
  CHECK(run("verify --suite identity-69 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out / "verify.json"));
  CHECK(j["pass"] == true);
  CHECK(j["data"]["gap"].get<double>() <= 1e-6);
  CHECK(j["verdicts"][0]["anchor"] == "four-ninths-constant");
}

TEST_CASE_FIXTURE(Fresh, "census artifacts are deterministic") {
  CHECK(run("census --lo 1 --hi 3000 --out " + (kWork / "a").string()) == 0);
  CHECK(run("census --lo 1 --hi 3000 --threads 2 --out " + (kWork / "b").string()) == 0);
  CHECK(slurp(kWork / "a" / "census.csv") == slurp(kWork / "b" / "census.csv"));
  CHECK(slurp(kWork / "a" / "census.json") == slurp(kWork / "b" / "census.json"));
  const auto j = nlohmann::json::parse(slurp(kWork / "a" / "census.json"));
  CHECK(j["proportion"].get<double>() >= 0.875);
  const std::string csv = slurp(kWork / "a" / "census.csv");
  CHECK(csv.rfind("d,L,N\n1,", 0) == 0);
}

TEST_CASE_FIXTURE(Fresh, "budgets exit 3 and name the knob") {
  CHECK(run("census --lo 1 --hi 5000 --out " + (kWork / "c").string(), "QC_MAX_D=1000") == 3);
  CHECK(slurp(kWork / "stdout.txt").find("QC_MAX_D") != std::string::npos);
  CHECK(run("mollify --x 1e5 --out " + (kWork / "m").string(), "QC_MAX_X=1000") == 3);
  CHECK(slurp(kWork / "stdout.txt").find("QC_MAX_X") != std::string::npos);
}

TEST_CASE_FIXTURE(Fresh, "config file, environment and flags layer in order") {
  const fs::path cfg = kWork / "cfg.json";
  std::ofstream(cfg) << R"({"Z": 16, "max_d": 100, "out_dir": ")" << (kWork / "fromfile").string() << "\"}";
  // file sets max_d = 100, environment raises it, flag picks Z
  CHECK(run("--config " + cfg.string() + " census --lo 1 --hi 500") == 3);
  CHECK(run("--config " + cfg.string() + " census --lo 1 --hi 500", "QC_MAX_D=1000") == 0);
  const auto m = nlohmann::json::parse(slurp(kWork / "fromfile" / "manifest.json"));
  CHECK(m["config"]["Z"] == 16.0);
  CHECK(m["config"]["max_d"] == 1000);
  CHECK(run("--config " + cfg.string() + " census --lo 1 --hi 50 --z 40") == 0);
  CHECK(nlohmann::json::parse(slurp(kWork / "fromfile" / "manifest.json"))["config"]["Z"] == 40.0);
  std::ofstream(cfg) << R"({"zed": 1})";
  CHECK(run("--config " + cfg.string() + " census --lo 1 --hi 50") == 2);
}

TEST_CASE_FIXTURE(Fresh, "moments and kernels subcommands") {
  const fs::path out = kWork / "mom";
  CHECK(run("moments --j 1 --grid 1e3:2:4 --out " + out.string()) == 0);
  const std::string csv = slurp(out / "moments.csv");
  CHECK(csv.rfind("X,j,S,fit_leading,predicted,ratio\n", 0) == 0);
  const auto j = nlohmann::json::parse(slurp(out / "moments.json"));
  CHECK(j["values"].size() == 4);
  CHECK(j["dyadic"].size() == 4);
  CHECK(run("moments --j 3 --grid 1e3:2:4 --out " + out.string()) == 2);  // too few points for degree 6
  CHECK(run("moments --grid 1e3x2 --out " + out.string()) == 2);
  CHECK(run("kernels --out " + (kWork / "k").string()) == 0);
  CHECK(fs::exists(kWork / "k" / "omega3.bin"));
}
