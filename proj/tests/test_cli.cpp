#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "solitonlab/cli.hpp"

using namespace solitonlab;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("solitonlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets table carries the derived quantities and flags", "[cli]") {
  const auto r = run({"presets", "--m", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("245") != std::string::npos);                 // CaP D-hat
  CHECK(r.out.find("0.47107438016528924") != std::string::npos);  // 57/121
  CHECK(r.out.find("1.7272727272727273") != std::string::npos);   // 19/11
  CHECK(r.out.find("non-hyperbolic critical point") != std::string::npos);  // CP row

  const auto r2 = run({"presets", "--m", "2"});
  REQUIRE(r2.code == 0);
  CHECK(r2.out.find("(boundary)") != std::string::npos);  // F family has D-hat = 0 at m = 2
}

TEST_CASE("integrate writes CSV plus events sidecar and is byte-stable", "[cli]") {
  const auto csv1 = temp_file("solitonlab_test_run1.csv");
  const auto csv2 = temp_file("solitonlab_test_run2.csv");
  const std::vector<std::string> args = {
      "integrate", "--preset", "hp",  "--m", "1",   "--C",     "-1",  "--locus", "soliton",
      "--coeffs",  "-0.2",     "0.9", "0.4", "--s-max", "20",  "--sample-ds", "0.5"};
  auto with_out = [&](const std::filesystem::path& p) {
    auto a = args;
    a.push_back("--out");
    a.push_back(p.string());
    return a;
  };
  const auto r1 = run(with_out(csv1));
  REQUIRE(r1.code == 0);
  const auto r2 = run(with_out(csv2));
  REQUIRE(r2.code == 0);
  const std::string body1 = slurp(csv1);
  CHECK(body1 == slurp(csv2));  // identical configs give byte-identical output
  CHECK(body1.find("# solitonlab") != std::string::npos);
  CHECK(body1.find("# params: d1=3 d2=4") != std::string::npos);
  CHECK(body1.find("s,X1,X2,Y1,Y2,L,t,u,cons_residual,S1,S2,K,F0,G,omega\n") !=
        std::string::npos);
  CHECK(body1.find("\r") == std::string::npos);

  // the sidecar parses and records the termination
  const auto side = nlohmann::json::parse(slurp(csv1.string() + ".events.json"));
  CHECK(side.at("termination").get<std::string>() == "HorizonReached");
  CHECK(side.at("max_invariant").get<double>() < 1e-8);

  std::filesystem::remove(csv1);
  std::filesystem::remove(csv2);
  std::filesystem::remove(csv1.string() + ".events.json");
  std::filesystem::remove(csv2.string() + ".events.json");
}

TEST_CASE("contradictory or invalid configs exit with code 64", "[cli]") {
  // Einstein locus with C != 0 is contradictory
  const auto r = run({"integrate", "--preset", "hp", "--m", "1", "--C", "-1", "--locus",
                      "einstein", "--s-max", "1"});
  CHECK(r.code == 64);
  CHECK(r.err.find("C = 0") != std::string::npos);

  CHECK(run({"integrate", "--preset", "nope"}).code == 64);
  CHECK(run({"integrate", "--preset", "cap", "--m", "3", "--s-max", "1"}).code == 64);
  CHECK(run({"bogus-subcommand"}).code == 64);
  CHECK(run({"integrate", "--preset", "hp", "--system", "multi", "--s-max", "1"}).code == 64);
}

TEST_CASE("eps < 0 is accepted with a warning", "[cli]") {
  const auto r = run({"integrate", "--preset", "hp", "--m", "1", "--eps", "-2", "--C", "-1",
                      "--locus", "soliton", "--coeffs", "-0.2", "0.9", "0.4", "--s-max", "5"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.err.find("no trapping guarantees") != std::string::npos);
}

TEST_CASE("search subcommands write JSON lines", "[cli]") {
  // an empty bracket range returns zero result lines but exits cleanly
  const auto empty = run({"search-symmetric", "--d1", "2", "--d2", "2", "--A1", "2", "--A2", "2",
                          "--eps", "-8", "--fbar-min", "0.9", "--fbar-max", "0.99"});
  CHECK(empty.code == 0);
  int lines = 0;
  std::istringstream ss(empty.out);
  for (std::string line; std::getline(ss, line);)
    if (!line.empty() && line[0] != '#') ++lines;
  CHECK(lines == 0);
}

TEST_CASE("count-critical reports the round-sphere count", "[cli]") {
  const auto r = run({"count-critical", "--d1", "3", "--d2", "4", "--A1", "6", "--A2", "12",
                      "--eps", "-14", "--fbar", "1.0", "--t0", "0.0005", "--s-max", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "0\n");
}

TEST_CASE("config file wins over flags with a warning", "[cli]") {
  const auto cfg = temp_file("solitonlab_test_cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"s_max": 3.0, "C": -1.0, "locus": "soliton", "coeffs": [-0.2, 0.9, 0.4]})";
  }
  const auto out = temp_file("solitonlab_test_cfg_run.csv");
  const auto r = run({"integrate", "--preset", "hp", "--m", "1", "--s-max", "50", "--config",
                      cfg.string(), "--out", out.string(), "--sample-ds", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning: config file overrides command-line --s-max") != std::string::npos);
  // the file value s_max = 3 is the one that ran
  const std::string body = slurp(out);
  CHECK(body.find("\n3,") != std::string::npos);
  CHECK(body.find("\n3.5,") == std::string::npos);
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
  std::filesystem::remove(out.string() + ".events.json");
}

TEST_CASE("version flag prints the tool version", "[cli]") {
  const auto r = run({"--version"});
  CHECK(r.code == 0);
  CHECK(r.out.find(kVersion) != std::string::npos);
}

TEST_CASE("installed binary runs end to end", "[cli]") {
  const std::string cmd = std::string(SOLITONLAB_CLI_PATH) + " presets --m 1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("blow-up runs exit with code 2", "[cli]") {
  // complex cone solutions (Delta < 0): X2 turns negative and the flow blows
  // up in finite time
  const auto r = run({"integrate", "--d1", "3", "--d2", "4", "--A1", "6", "--A2", "48", "--A3",
                      "30", "--locus", "einstein", "--coeffs", "0", "1", "0", "--s-max", "200"});
  CHECK(r.code == 2);
}

TEST_CASE("unwritable output paths exit with code 74", "[cli]") {
  const auto r = run({"integrate", "--preset", "hp", "--m", "1", "--s-max", "1", "--out",
                      "/nonexistent-dir/x.csv"});
  CHECK(r.code == 74);
}

TEST_CASE("search subcommands find desk-scale constructions", "[cli]") {
  auto jsonl_lines = [](const std::string& text) {
    int lines = 0;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);)
      if (!line.empty() && line[0] == '{') ++lines;
    return lines;
  };
  const auto sym = run({"search-symmetric", "--d1", "2", "--d2", "2", "--A1", "2", "--A2", "2",
                        "--eps", "-8", "--fbar-min", "0.01", "--fbar-max", "1.0"});
  REQUIRE(sym.code == 0);
  CHECK(jsonl_lines(sym.out) >= 1);
  CHECK(sym.out.find("fbar") != std::string::npos);

  const auto match = run({"match-sphere", "--d1", "2", "--d2", "3", "--fbar-min", "0.02",
                          "--fbar-max", "0.6", "--Fbar-min", "0.02", "--Fbar-max", "0.6"});
  REQUIRE(match.code == 0);
  CHECK(jsonl_lines(match.out) >= 1);
  CHECK(match.out.find("residual") != std::string::npos);
}

TEST_CASE("verify-asymptotics subcommand reports claims", "[cli]") {
  const auto r = run({"verify-asymptotics", "--preset", "hp", "--m", "1", "--regime", "ricciflat",
                      "--s-max", "200", "--coeffs", "0", "1", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"pass\":true") != std::string::npos);
  CHECK(r.out.find("\"pass\":false") == std::string::npos);
  CHECK(r.err.find("all claims pass") != std::string::npos);
}

TEST_CASE("every integrable system is reachable from the CLI", "[cli]") {
  CHECK(run({"integrate", "--preset", "hp", "--m", "1", "--system", "polynomial", "--C", "-1",
             "--locus", "soliton", "--coeffs", "-0.2", "0.9", "0.4", "--s-max", "5"})
            .code == 0);
  CHECK(run({"integrate", "--preset", "hp", "--m", "1", "--system", "planar", "--s-max", "5"})
            .code == 0);
  CHECK(run({"integrate", "--preset", "hp", "--m", "1", "--system", "profile", "--eps", "-14",
             "--fbar", "1.0", "--t0", "0.001", "--s-max", "0.5"})
            .code == 0);
  CHECK(run({"integrate", "--preset", "hp", "--m", "1", "--system", "hat", "--eps", "-14",
             "--fbar", "1.0", "--t0", "0.001", "--s-max", "0.5"})
            .code == 0);
  const auto multi = run({"integrate", "--system", "multi", "--factors", "3:2,4:12", "--mq", "5",
                          "--lambda-virtual", "0.2", "--delta", "1e-5", "--s-max", "10"});
  CHECK(multi.code == 0);
}
