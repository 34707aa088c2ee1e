// End-to-end checks of the bcbp binary: output formats, cache behavior,
// exit codes.

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "bcbp/report_io.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

CommandResult run(const std::string& args) {
  const std::string cmd = std::string(BCBP_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    result.output.append(buf.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("bcbp_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string strip_elapsed(std::string line) {
  auto j = nlohmann::json::parse(line);
  j["elapsed_ms"] = 0;
  return j.dump();
}

}  // namespace

TEST_CASE("solve emits one json record") {
  const auto r = run("solve --n 34");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["n"] == 34);
  CHECK(j["j_hat"] == 5);
  CHECK(j["solutions"].size() == 5);
  CHECK(j["j_full"].is_string());
}

TEST_CASE("solve csv format") {
  const auto r = run("solve --n 8 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.starts_with("n,j_hat,families,elapsed_ms\n8,1,heart,"));
}

TEST_CASE("solve cache round trip is stable") {
  TempDir tmp;
  const std::string flags = " --n 26 --cache-dir " + tmp.path.string();
  const auto first = run("solve" + flags);
  REQUIRE(first.exit_code == 0);
  CHECK(std::filesystem::exists(tmp.path / "v1" / "n26.json"));

  const auto second = run("solve" + flags);
  REQUIRE(second.exit_code == 0);
  CHECK(second.output == first.output);  // cache hit replays the record
  CHECK(strip_elapsed(second.output) == strip_elapsed(first.output));

  const auto recomputed = run("solve" + flags + " --recompute");
  REQUIRE(recomputed.exit_code == 0);
  CHECK(strip_elapsed(recomputed.output) == strip_elapsed(first.output));
}

TEST_CASE("table range output") {
  const auto r = run("table --from 1 --to 9 --format csv --density");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("\n8,1,heart,") != std::string::npos);
  CHECK(r.output.find("# density,8/9") != std::string::npos);
}

TEST_CASE("interpolate the data behind the degree-7 polynomial") {
  const auto r = run("interpolate --vector 1,-1,-1,1,1,-1,-1,-1,1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["degree"] == 7);
  CHECK(j["bisects"] == true);
  const std::vector<std::string> expected{"1",     "0",     "28/9", "-481/90",
                                          "203/72", "-47/72", "5/72", "-1/360"};
  CHECK(j["coefficients"].get<std::vector<std::string>>() == expected);
}

TEST_CASE("gap subcommand") {
  const auto r = run("gap --n 8");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j["gamma"] == 1);
  CHECK(j["solution_count"] == 6);

  const auto big = run("gap --n 60");
  REQUIRE(big.exit_code == 0);
  CHECK(nlohmann::json::parse(big.output)["status"] == "not_computed");
}

TEST_CASE("exit codes") {
  CHECK(run("solve").exit_code == 1);             // missing --n
  CHECK(run("nonsense").exit_code == 1);          // unknown subcommand
  CHECK(run("solve --n 48 --max-frontier 10").exit_code == 2);
  CHECK(run("interpolate --vector 1,0,1").exit_code == 1);
}

TEST_CASE("verify oracle suite") {
  const auto r = run("verify --suite oracle --max-n 14");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("oracle:") != std::string::npos);
}
