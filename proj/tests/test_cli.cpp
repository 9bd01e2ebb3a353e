// Runs the sepprob binary end to end.
#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "sepprob/pipeline/manifest.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("sepprob-cli-test-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const std::string cmd = "cd '" + workdir().string() + "' && SEPPROB_CACHE_DIR=cache '" SEPPROB_CLI "' " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& name) {
  std::ifstream in(workdir() / name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& name, const std::string& content) {
  std::ofstream out(workdir() / name, std::ios::binary);
  out << content;
}

/// Moments of the uniform density on [a, b].
std::string uniform_moment_file(int count) {
  const oracle::Q a(-1, 16), b(1, 256);
  json doc;
  doc["alpha"] = "1/2";
  doc["interval"] = {"-1/16", "1/256"};
  json ms = json::array();
  for (int n = 0; n < count; ++n) {
    oracle::Q m = (oracle::qpow(b, n + 1) - oracle::qpow(a, n + 1)) / (oracle::Q(n + 1) * (b - a));
    m.canonicalize();
    ms.push_back(m.get_str());
  }
  doc["moments"] = ms;
  doc["source"] = "uniform";
  return doc.dump();
}

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("mc estimate --ensemble trebit --samples 10").code == 2);
  CHECK(run("hyper eval --upper 1,1 --lower 2 --z 2").code == 2);
  Run pole = run("hyper family --alpha -2 --k 1 --digits 20");
  CHECK(pole.code == 2);
  CHECK(pole.out.find("alpha+2") != std::string::npos);
  put("bad-moments.json", R"({"alpha":"1/2","interval":["-1/16","1/256"],"moments":["1","x"]})");
  Run bad = run("reconstruct --moments bad-moments.json --degree 1");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("moments[1]") != std::string::npos);
  CHECK(run("table check --table missing.json").code == 2);
}

TEST_CASE("cli: verification failures exit 4") {
  put("t-bad.json", R"({"rows":[{"alpha":"2","value":"26/324"}]})");
  Run r = run("table check --table t-bad.json");
  CHECK(r.code == 4);
  CHECK(r.out.find("mismatch") != std::string::npos);

  put("t-wrong.json", R"({"rows":[{"alpha":"1/2","value":"1/3"}]})");
  r = run("verify --table t-wrong.json --samples 20000 --ensembles rebit --out v-wrong.json");
  CHECK(r.code == 4);
  CHECK(json::parse(slurp("v-wrong.json"))["rows"][0]["verdict"] == "FAIL");
}

TEST_CASE("cli: numerical failures exit 3") {
  put("t-three.json", R"({"rows":[{"alpha":"1","value":"8/33"},{"alpha":"2","value":"26/323"},{"alpha":"3","value":"2999/103385"}]})");
  Run r = run("formula fit --table t-three.json --ansatz-degree 2 --holdout half-integers --digits 30 --out f.json");
  CHECK(r.code == 3);
}

TEST_CASE("cli: mc estimate is deterministic across thread counts and writes a manifest") {
  REQUIRE(run("mc estimate --ensemble rebit --samples 3000 --seed 9 --threads 1 --out a.json").code == 0);
  REQUIRE(run("mc estimate --ensemble rebit --samples 3000 --seed 9 --threads 3 --out b.json").code == 0);
  json a = json::parse(slurp("a.json")), b = json::parse(slurp("b.json"));
  CHECK(a["separable"] == b["separable"]);
  CHECK(a["estimate"] == b["estimate"]);
  CHECK(a["alpha"] == "1/2");
  REQUIRE(run("mc estimate --ensemble rebit --samples 3000 --seed 9 --threads 3 --out c.json").code == 0);
  CHECK(slurp("b.json") == slurp("c.json"));

  json m = json::parse(slurp("a.json.manifest.json"));
  CHECK(m["command"] == "mc estimate");
  CHECK(m["seeds"][0] == 9);
  CHECK(m["outputs"][0]["sha256"] == sepprob::sha256_hex(slurp("a.json")));
  CHECK(slurp("a.json").find("started") == std::string::npos);

  REQUIRE(run("mc moments --ensemble qubit --samples 2000 --max-n 2 --max-k 1 --seed 2").code == 0);
  json mom = json::parse(slurp("moments-empirical.json"));
  CHECK(mom["entries"].size() == 6);
  CHECK(mom["entries"][0]["mean"] == 1.0);
}

TEST_CASE("cli: reconstruct writes identical traces on reruns") {
  put("uniform.json", uniform_moment_file(12));
  Run r = run("reconstruct --moments uniform.json --degree 10 --degrees 0,2,4 --mode exact --trace t1.csv --out r1.json");
  REQUIRE(r.code == 0);
  REQUIRE(run("reconstruct --moments uniform.json --degree 10 --degrees 0,2,4 --mode exact --trace t2.csv --out r2.json")
              .code == 0);
  CHECK(slurp("t1.csv") == slurp("t2.csv"));
  CHECK(slurp("r1.json") == slurp("r2.json"));
  CHECK(json::parse(slurp("r1.json"))["estimate_rational"] == "1/17");
  CHECK(slurp("t1.csv").rfind("degree,estimate_rational,estimate_decimal\n", 0) == 0);
  CHECK(fs::exists(workdir() / "cache"));

  r = run("reconstruct --moments uniform.json --degree 10 --mode float --digits 30");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["estimate_decimal"].get<std::string>().rfind("0.0588235294117647058", 0) == 0);
  CHECK(run("--no-cache reconstruct --moments uniform.json --degree 40").code == 2);
}

TEST_CASE("cli: hyper, formula, recognize, fitline") {
  Run r = run("hyper eval --upper 1,1 --lower 2 --z 1/2 --digits 30");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["midpoint"].get<std::string>().rfind("1.386294361119890618834464242", 0) == 0);

  put("deg.json", R"({"affine":{"num":["1"],"den":["1"]},"weights":[{"num":["0"],"den":["1"]},{"num":["0"],"den":["1"]},
      {"num":["0"],"den":["1"]},{"num":["0"],"den":["1"]},{"num":["0"],"den":["1"]},{"num":["0"],"den":["1"]}],
      "description":"constant"})");
  r = run("formula eval --config deg.json --alpha 7 --digits 20");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["exact"] == "1");

  r = run("recognize --value 0.453125 --max-den 1000000");
  REQUIRE(r.code == 0);
  json rec = json::parse(r.out);
  CHECK(rec["form"] == "rational");
  CHECK(rec["p"] == "29");
  CHECK(rec["q"] == "64");
  CHECK(json::parse(run("recognize --value 0.33333 --max-den 1000000").out)["form"] == "none");
  put("value.txt", oracle::long_division(26, 323, 40) + "\n");
  r = run("recognize --value value.txt --max-den 1e40");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["q"] == "323");
  CHECK(run("recognize --value 0.453125 --digits-required 10").code == 2);

  std::string rows;
  for (int a = 1; a <= 4; ++a) rows += std::string(a > 1 ? "," : "") + R"({"alpha":")" + std::to_string(a) + R"(","value":"1/)" + std::to_string(1 << a) + "\"}";
  put("pow2.json", "{\"rows\":[" + rows + "]}");
  REQUIRE(run("fitline --table pow2.json --csv f1.csv --svg f1.svg").code == 0);
  REQUIRE(run("fitline --table pow2.json --csv f2.csv --svg f2.svg").code == 0);
  CHECK(slurp("f1.csv") == slurp("f2.csv"));
  CHECK(slurp("f1.csv").find("2,-1.386294361120,-1.386294361120,0.000000000000") != std::string::npos);
  CHECK(slurp("f1.svg").find("data-lnp=") != std::string::npos);
  json m = json::parse(slurp("f1.csv.manifest.json"));
  CHECK(m["outputs"].size() == 2);
  CHECK(m["inputs"][0]["sha256"] == sepprob::sha256_hex(slurp("pow2.json")));
}
