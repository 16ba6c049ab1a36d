// Runs the krotor binary and checks exit codes and outputs.
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run krotor(const std::string& args) {
  const std::string cmd = std::string(KROTOR_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count_data_rows(const std::string& text) {
  std::istringstream is(text);
  int rows = 0;
  for (std::string line; std::getline(is, line);)
    if (!line.empty() && line[0] != '#') ++rows;
  return rows - 1;  // header row
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("krotor_test_" + name);
}

}  // namespace

TEST_CASE("spectrum subcommand") {
  const Run r = krotor("spectrum --p 0.3");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# krotor spectrum\n", 0) == 0);
  CHECK(count_data_rows(r.out) == 151);
  CHECK(krotor("spectrum --p 0.3").out == r.out);

  const Run small = krotor("spectrum --p 0.3 --lmax 40 --format json");
  REQUIRE(small.code == 0);
  const auto doc = nlohmann::json::parse(small.out);
  CHECK(doc["rows"].size() == 41);
  CHECK(doc["config"]["l_max"] == "40");
}

TEST_CASE("writes to --out") {
  const auto path = temp_file("bands.csv");
  std::filesystem::remove(path);
  const Run r = krotor("bands --p 0.3 --kgrid 5 --out " + path.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(count_data_rows(ss.str()) == 5);
  CHECK(ss.str().find("# kgrid=5") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("edge subcommand") {
  const Run r = krotor("edge --p 1");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["status"] == "ok");
  CHECK(doc["outside_perturbative_validity"] == false);
  CHECK(doc["deltas"]["energy_abs"].get<double>() < 5e-2);

  const Run strong = krotor("edge --p 3");
  REQUIRE(strong.code == 0);
  const auto d3 = nlohmann::json::parse(strong.out);
  CHECK(d3["outside_perturbative_validity"] == true);
  CHECK(d3["status"] == "ok");
}

TEST_CASE("propagate subcommand") {
  const Run r = krotor("propagate --p 0 --init delta:0 --kicks 10");
  REQUIRE(r.code == 0);
  CHECK(count_data_rows(r.out) == 11);

  const Run edge = krotor("propagate --p 0.3 --init edge --kicks 100 --format json");
  REQUIRE(edge.code == 0);
  const auto doc = nlohmann::json::parse(edge.out);
  const double e0 = doc["rows"][0]["energy"];
  for (const auto& row : doc["rows"]) CHECK(std::abs(row["energy"].get<double>() - e0) / e0 < 1e-6);
}

TEST_CASE("config errors exit 2") {
  CHECK(krotor("propagate --init wave:3").code == 2);
  CHECK(krotor("bands --p 0").code == 2);
  CHECK(krotor("edge --p 0").code == 2);
  CHECK(krotor("spectrum --tau-frac 1/0").code == 2);
  CHECK(krotor("spectrum --mode fast").code == 2);
  CHECK(krotor("spectrum --format xml").code == 2);
  CHECK(krotor("spectrum --lmax 3").code == 2);
  CHECK(krotor("spectrum --p -1").code == 2);
  CHECK(krotor("spectrum --bogus").code == 2);
  CHECK(krotor("").code == 2);
}

TEST_CASE("numerical failures exit 3") {
  CHECK(krotor("spectrum --quad-order 20").code == 3);
  CHECK(krotor("verify --quad-order 20").code == 3);
}

TEST_CASE("verify gates truncation-sensitive checks") {
  const Run r = krotor("verify --lmax 12");
  CHECK(r.out.find("[SKIP] A1") != std::string::npos);
  CHECK(r.out.find("[SKIP] SP1") != std::string::npos);
  CHECK(r.out.find("[PASS] A7") != std::string::npos);
  CHECK(r.code == (r.out.find("[FAIL]") == std::string::npos ? 0 : 1));
}

TEST_CASE("verify at the default config") {
  const Run r = krotor("verify");
  for (int i = 1; i <= 12; ++i) CHECK(r.out.find("A" + std::to_string(i) + " ") != std::string::npos);
  CHECK(r.code == 0);
}
