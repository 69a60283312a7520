// Drives the built CLI binary: exit codes, named outputs, byte stability.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QCLONE_CLI_BIN) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

std::string drop_last_field(const std::string& line) {
  const auto pos = line.rfind(',');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

TEST_CASE("verify passes at default tolerances and reports checks") {
  const RunResult r = run_cli("verify --m 3 --trials 20 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("f_predicted=0.83333333333333") != std::string::npos);

  const RunResult m2 = run_cli("verify --m 2 --trials 10 --seed 3");
  CHECK(m2.exit_code == 0);
  CHECK(m2.out.find("m2_identity") != std::string::npos);
  CHECK(m2.out.find("f_predicted=1") != std::string::npos);
}

TEST_CASE("verify fails closed on an unattainable tolerance") {
  const RunResult r = run_cli("verify --m 3 --trials 5 --seed 7 --tol 1e-30");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("verify beyond the dense cap runs analytic checks only") {
  const RunResult r = run_cli("verify --m 64 --trials 5 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("analytic-path checks only") != std::string::npos);
  CHECK(r.out.find("oracle_equivalence") == std::string::npos);
}

TEST_CASE("sweep emits the fixed header and the predicted f per row") {
  const RunResult r = run_cli("sweep --m-min 2 --m-max 6 --trials 3 --seed 5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1 + 5 * 3);
  CHECK(lines[0] ==
        "M,seed,f_measured,f_predicted,residual,oracle_gap,wall_time_ms");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 7);
    const int m = std::stoi(fields[0]);
    const double f_measured = std::stod(fields[2]);
    const double f_predicted = std::stod(fields[3]);
    CHECK(f_predicted == (m + 2.0) / (2.0 * m));
    CHECK(std::abs(f_measured - f_predicted) < 1e-9);
    CHECK(std::stod(fields[4]) < 1e-10);
    CHECK(std::stod(fields[5]) < 1e-12);
  }
}

TEST_CASE("sweep output is byte-stable modulo the timing column") {
  const std::string args = "sweep --m-min 2 --m-max 4 --trials 2 --seed 11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  const auto la = lines_of(a.out);
  const auto lb = lines_of(b.out);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    CHECK(drop_last_field(la[i]) == drop_last_field(lb[i]));
  }
}

TEST_CASE("sweep f_measured is seed-independent while states differ") {
  const RunResult a = run_cli("sweep --m-min 3 --m-max 3 --trials 4 --seed 1");
  const RunResult b = run_cli("sweep --m-min 3 --m-max 3 --trials 4 --seed 2");
  const auto la = lines_of(a.out);
  const auto lb = lines_of(b.out);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 1; i < la.size(); ++i) {
    const auto fa = fields_of(la[i]);
    const auto fb = fields_of(lb[i]);
    CHECK(fa[1] != fb[1]);  // different record seeds
    CHECK(std::abs(std::stod(fa[2]) - std::stod(fb[2])) < 1e-9);
  }
}

TEST_CASE("sweep rejects a bad range") {
  CHECK(run_cli("sweep --m-min 5 --m-max 3").exit_code == 2);
  CHECK(run_cli("sweep --m-min 1 --m-max 3").exit_code == 2);
}

TEST_CASE("clone reports the named marginals") {
  const RunResult pure = run_cli("clone --bloch 0 0 1 --m 3");
  REQUIRE(pure.exit_code == 0);
  const auto lines = lines_of(pure.out);
  REQUIRE(lines.size() == 2);
  const auto fields = fields_of(lines[1]);
  REQUIRE(fields.size() == 11);
  CHECK(std::abs(std::stod(fields[0]) - 11.0 / 12) < 1e-13);
  CHECK(std::abs(std::stod(fields[6]) - 1.0 / 12) < 1e-13);

  const RunResult center = run_cli("clone --bloch 0 0 0 --m 7");
  const auto center_fields = fields_of(lines_of(center.out)[1]);
  CHECK(std::abs(std::stod(center_fields[0]) - 0.5) < 1e-14);
  CHECK(std::abs(std::stod(center_fields[2])) < 1e-14);
  CHECK(center_fields[8] == "nan");  // f unidentifiable at the center

  const RunResult tilted = run_cli("clone --bloch 0 0 0.5 --m 4");
  const auto tilted_fields = fields_of(lines_of(tilted.out)[1]);
  CHECK(std::abs(std::stod(tilted_fields[0]) - 11.0 / 16) < 1e-13);
  CHECK(std::abs(std::stod(tilted_fields[6]) - 5.0 / 16) < 1e-13);
}

TEST_CASE("clone json round-trips through a parser") {
  const RunResult r = run_cli("clone --bloch 0 0 0.5 --m 100000 --format json");
  REQUIRE(r.exit_code == 0);
  const auto parsed = nlohmann::json::parse(r.out);
  CHECK(parsed.at("path") == "analytic");
  CHECK(std::abs(parsed.at("f").get<double>() -
                 parsed.at("f_predicted").get<double>()) < 1e-9);
}

TEST_CASE("clone rejects a Bloch vector outside the ball") {
  CHECK(run_cli("clone --bloch 2 0 0 --m 3").exit_code == 2);
  CHECK(run_cli("clone --bloch 0.8 0.8 0.8 --m 3").exit_code == 2);
}

TEST_CASE("baseline contrasts the two machines") {
  const RunResult r = run_cli("baseline --bloch 0 0 0.5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);

  const auto cloner = fields_of(lines[1]);
  CHECK(cloner[0] == "cloner_2to2");
  CHECK(std::stod(cloner[1]) < 1e-13);

  const auto projection = fields_of(lines[2]);
  CHECK(projection[0] == "symmetric_projection");
  CHECK(std::abs(std::stod(projection[1]) - 3.0 / 52) < 1e-12);
  CHECK(std::abs(std::stod(projection[2]) - 13.0 / 16) < 1e-13);

  const RunResult center = run_cli("baseline --bloch 0 0 0");
  const auto center_lines = lines_of(center.out);
  CHECK(std::stod(fields_of(center_lines[1])[1]) < 1e-13);
  CHECK(std::stod(fields_of(center_lines[2])[1]) < 1e-12);
  CHECK(std::abs(std::stod(fields_of(center_lines[2])[2]) - 0.75) < 1e-14);
}

TEST_CASE("verify, clone and baseline are byte-stable") {
  for (const char* args : {"verify --m 4 --trials 10 --seed 9",
                           "clone --bloch 0.3 -0.2 0.4 --m 5",
                           "baseline --bloch 0.3 -0.2 0.4"}) {
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("missing subcommand is a usage error") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
}
