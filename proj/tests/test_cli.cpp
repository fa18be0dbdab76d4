// End-to-end checks of the installed CLI binary. RADE_CLI_PATH is injected
// by the build; commands run through popen with stderr folded into stdout.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(RADE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
    result.output.append(buf.data(), got);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_file(const std::string& name, const std::string& content) {
  std::ofstream out(name);
  out << content;
  return name;
}

}  // namespace

TEST_CASE("bound subcommand with explicit parameters") {
  RunResult r = run_cli("bound era-bd --z 1 --n 1 --m 1000000 --delta 0.05");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["method"] == "ERA_BD");
  CHECK(std::abs(j["value"].get<double>() - 2.447746830680816546e-3) < 1e-15);

  RunResult sd = run_cli("bound sd-bd --c 1 --m 1000000 --delta 0.05");
  REQUIRE(sd.exit_code == 0);
  CHECK(std::abs(nlohmann::json::parse(sd.output)["value"].get<double>() -
                 1.223873415340408273e-3) < 1e-15);

  // scientific notation on numeric flags
  RunResult sci = run_cli("bound era-bd --z 1 --n 1 --m 1e6 --delta 5e-2");
  REQUIRE(sci.exit_code == 0);
  CHECK(std::abs(nlohmann::json::parse(sci.output)["value"].get<double>() -
                 2.447746830680816546e-3) < 1e-15);
}

TEST_CASE("bound subcommand error paths") {
  RunResult r = run_cli("bound era-bd --z 1 --n 1 --m 1000000 --delta 1.5");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("delta") != std::string::npos);

  RunResult unknown = run_cli("bound no-such --delta 0.05");
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("stats subcommand") {
  write_file("cli_stats.csv", "#range,0,1\n0,1\n0,1\n");
  RunResult r = run_cli("stats --input cli_stats.csv");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["z_hat"] == 1.0);
  CHECK(j["nu_hat"] == 1.0);
  CHECK(j["wvar_hat"] == 1.0);
  CHECK(j["eta_hat"] == 1.0);
  CHECK(j["gamma_hat"] == 0.0);
  CHECK(j["m"] == 2);
  std::remove("cli_stats.csv");
}

TEST_CASE("stats rejects files without the range header") {
  write_file("cli_norange.csv", "0,1\n0,1\n");
  RunResult r = run_cli("stats --input cli_norange.csv");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("#range") != std::string::npos);
  std::remove("cli_norange.csv");
}

TEST_CASE("bound from a csv file matches the stats pipeline") {
  write_file("cli_cls.csv", "#range,0,1\n0,1\n0,1\n");
  RunResult r =
      run_cli("bound era-sb-nu --input cli_cls.csv --n 4 --sigma-seed 9 --delta 0.05");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["method"] == "ERA_SB_NU");
  CHECK(j["inputs"]["nu_hat"] == 1.0);
  CHECK(j["inputs"]["sigma_seed"] == 9.0);
  std::remove("cli_cls.csv");
}

TEST_CASE("bound era-sb-nu on the all-zero class returns zero") {
  write_file("cli_zero.csv", "#range,0,1\n0\n0\n");
  RunResult r = run_cli("bound era-sb-nu --input cli_zero.csv --n 2 --delta 0.05");
  REQUIRE(r.exit_code == 0);
  CHECK(nlohmann::json::parse(r.output)["value"] == 0.0);
  std::remove("cli_zero.csv");
}

TEST_CASE("verify subcommand exit codes") {
  write_file("cli_verify.csv", "#range,0,1\n0,1\n0,0\n");
  RunResult ok = run_cli("verify mcera --input cli_verify.csv --n 2");
  CHECK(ok.exit_code == 0);
  auto j = nlohmann::json::parse(ok.output);
  CHECK(j["passed"] == true);

  RunResult missing_m = run_cli("verify sd-pos --input cli_verify.csv");
  CHECK(missing_m.exit_code == 1);

  RunResult sd = run_cli("verify sd-pos --input cli_verify.csv --m 3");
  CHECK(sd.exit_code == 0);

  RunResult weighted = run_cli("verify eta --input cli_verify.csv --m 3 --mu 0.25,0.75");
  CHECK(weighted.exit_code == 0);
  std::remove("cli_verify.csv");
}

TEST_CASE("sweep subcommand is deterministic") {
  RunResult a = run_cli("sweep --figure 1 --n 10 --grid 40 -o cli_sweep_a.csv");
  RunResult b = run_cli("sweep --figure 1 --n 10 --grid 40 -o cli_sweep_b.csv");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  std::ifstream fa("cli_sweep_a.csv"), fb("cli_sweep_b.csv");
  std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  CHECK(sa.find("sweep_var,mcera,bd,sb") != std::string::npos);
  // 40 data rows
  std::size_t rows = 0;
  std::size_t pos = sa.find("sweep_var");
  pos = sa.find('\n', pos) + 1;
  while (pos < sa.size() && pos != std::string::npos) {
    ++rows;
    pos = sa.find('\n', pos);
    if (pos == std::string::npos) break;
    ++pos;
  }
  CHECK(rows == 40);
  std::remove("cli_sweep_a.csv");
  std::remove("cli_sweep_b.csv");
}

TEST_CASE("coverage subcommand") {
  RunResult r = run_cli(
      "coverage --bound era-bd --trials 300 --delta 0.1 --seed 7 --domain-size 4 --k 3 "
      "--m 6 --n 2");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["failure_frequency"].get<double>() <= 0.1);
  CHECK(j["seed"] == 7);

  RunResult again = run_cli(
      "coverage --bound era-bd --trials 300 --delta 0.1 --seed 7 --domain-size 4 --k 3 "
      "--m 6 --n 2");
  CHECK(r.output == again.output);

  // enumeration capacity exceeded -> exit code 3
  RunResult cap = run_cli("coverage --bound era-bd --trials 10 --delta 0.1 --m 21");
  CHECK(cap.exit_code == 3);
}

TEST_CASE("unknown subcommand fails cleanly") {
  RunResult r = run_cli("frobnicate");
  CHECK(r.exit_code != 0);
}
