// End-to-end checks of the command-line tool: file formats, exit codes,
// determinism, and the no-partial-output contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = GRASSFLOW_CLI_PATH;

struct Run {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd =
      cli + " " + args + " > " + out_file.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out_file)};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("grassflow_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};
int TempDir::counter = 0;

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("flow-length: real debug scalar gives pi/2") {
  TempDir tmp;
  write(tmp.path / "scalar_a.json",
        R"({"real_debug": true, "p": 1, "q": 1, "A": [7]})");
  const Run r = run_cli("flow-length --input " +
                            (tmp.path / "scalar_a.json").string(),
                        tmp.path);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["length"].get<double>() - 1.5707963267948966) <= 1e-6);
}

TEST_CASE("curve-partition: the p=1, a=2 curve has its root at -0.5") {
  TempDir tmp;
  write(tmp.path / "curve_p1.json",
        R"({"p": 1, "q": 1, "E": [1, 0], "D": [2, 1]})");
  const Run r = run_cli("curve-partition --input " +
                            (tmp.path / "curve_p1.json").string(),
                        tmp.path);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["roots"].size() == 1);
  CHECK(std::abs(j["roots"][0].get<double>() + 0.5) <= 1e-9);
}

TEST_CASE("curve-length: finite range of the 1-d graph curve") {
  TempDir tmp;
  write(tmp.path / "curve.json",
        R"({"p": 1, "q": 1, "E": [1, 0], "D": [0, 1]})");
  const Run r = run_cli("curve-length --t0 0 --t1 1 --input " +
                            (tmp.path / "curve.json").string(),
                        tmp.path);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["length"].get<double>() - std::atan(1.0)) <= 1e-8);
}

TEST_CASE("curve-analyze: report fields are present and sane") {
  TempDir tmp;
  write(tmp.path / "curve.json",
        R"({"p": 1, "q": 1, "E": [1, 0], "D": [0.5, 1.2]})");
  const fs::path out = tmp.path / "report.json";
  const Run r = run_cli("curve-analyze --input " +
                            (tmp.path / "curve.json").string() +
                            " --output " + out.string(),
                        tmp.path);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["total_length"].get<double>() > 0.0);
  CHECK(j.contains("partition"));
  CHECK(j.contains("monotonicity"));
  for (const auto& v : j["monotonicity"]) CHECK(v["ok"].get<bool>());
}

TEST_CASE("flow-ensemble: identical seeds give byte-identical outputs") {
  TempDir tmp;
  const fs::path out1 = tmp.path / "ens1.json";
  const fs::path out2 = tmp.path / "ens2.json";
  const std::string args =
      "flow-ensemble --m 2 --n 1 --ensemble 20 --seed 7 --output ";
  REQUIRE(run_cli(args + out1.string(), tmp.path).exit_code == 0);
  REQUIRE(run_cli(args + out2.string(), tmp.path).exit_code == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("flow-ensemble: different seeds differ") {
  TempDir tmp;
  const fs::path out1 = tmp.path / "s1.json";
  const fs::path out2 = tmp.path / "s2.json";
  REQUIRE(run_cli("flow-ensemble --m 1 --n 1 --ensemble 10 --seed 1 --output " +
                      out1.string(),
                  tmp.path)
              .exit_code == 0);
  REQUIRE(run_cli("flow-ensemble --m 1 --n 1 --ensemble 10 --seed 2 --output " +
                      out2.string(),
                  tmp.path)
              .exit_code == 0);
  CHECK(slurp(out1) != slurp(out2));
}

TEST_CASE("atomicity: summary JSON plus per-cell CSV") {
  TempDir tmp;
  write(tmp.path / "family.json", R"({
    "grid": [8],
    "generator": {"name": "sine_scale",
                  "base": {"m": 1, "n": 1, "re": [1.0], "im": [0.5]}}
  })");
  const fs::path out = tmp.path / "atom.json";
  const Run r = run_cli("atomicity --input " +
                            (tmp.path / "family.json").string() +
                            " --output " + out.string(),
                        tmp.path);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["cells"].get<int>() == 8);
  CHECK(j["sup_length"].get<double>() > 0.0);
  const std::string csv = slurp(tmp.path / "atom.csv");
  CHECK(csv.rfind("i0,x0,length\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 cells
}

TEST_CASE("errors: unknown command and bad input exit 2") {
  TempDir tmp;
  CHECK(run_cli("no-such-command", tmp.path).exit_code == 2);

  write(tmp.path / "bad.json", R"({"p": 1, "q": 1, "E": [1, 0]})");
  CHECK(run_cli("curve-partition --input " + (tmp.path / "bad.json").string(),
                tmp.path)
            .exit_code == 2);

  CHECK(run_cli("flow-length --input " + (tmp.path / "missing.json").string(),
                tmp.path)
            .exit_code == 2);
}

TEST_CASE("errors: a failing run leaves no partial output file") {
  TempDir tmp;
  write(tmp.path / "bad.json", R"({"p": 1, "q": 1, "E": [0, 0], "D": [1, 1]})");
  const fs::path out = tmp.path / "never_written.json";
  const Run r = run_cli("curve-analyze --input " +
                            (tmp.path / "bad.json").string() + " --output " +
                            out.string(),
                        tmp.path);
  CHECK(r.exit_code == 2);
  CHECK(!fs::exists(out));
  CHECK(!fs::exists(out.string() + ".tmp"));
}
