#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "widthlab/report.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path = "cli_stdout.tmp";
  const std::string cmd = std::string(WIDTHLAB_CLI_PATH) + " " + args + " > " + out_path + " 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(out_path.c_str());
  std::remove("cli_stderr.tmp");
  const int code = WEXITSTATUS(status);
  return RunResult{code, ss.str()};
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("width subcommands") {
  auto r = run_cli("width exact --M 10 --n 4 --p 1 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.stdout_text) == "2.449489742783178");

  r = run_cli("width exact --M 7 --n 3 --p 2 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.stdout_text) == "1.0");

  r = run_cli("width bernstein --s 1 --d 1 --p 1 --q inf");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.stdout_text) == "P_LE_2_LE_Q -1.5");

  r = run_cli("width regime --p 1 --q inf");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.stdout_text) == "BERNSTEIN_GAP");

  r = run_cli("width regime --p 3 --q 2");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.stdout_text) == "BERNSTEIN_SHARP");
}

TEST_CASE("usage and input errors exit with 1") {
  CHECK(run_cli("width exact --M 10 --n 4 --p 1").exit_code == 1);       // missing flag
  CHECK(run_cli("width exact --M 10 --n 12 --p 1 --q 2").exit_code == 1);  // n >= M
  CHECK(run_cli("width exact --M 10 --n 4 --p 2 --q 1").exit_code == 1);   // p > q
  CHECK(run_cli("frobnicate").exit_code == 1);                             // unknown subcommand
  CHECK(run_cli("besov norm --input missing.txt --s 1 --q 2").exit_code == 1);
}

TEST_CASE("project subcommand writes a sound report") {
  const std::string out = "project_report.json";
  const auto r = run_cli("project --M 10 --n 4 --p 1 --q 2 --samples 2000 --seed 1 --out " + out);
  CHECK(r.exit_code == 0);
  const widthlab::ExperimentReport rep = widthlab::load_report_json(out);
  CHECK(rep.command == "project");
  CHECK(rep.all_pass());
  std::remove(out.c_str());
}

TEST_CASE("certify subcommand reports PASS and is deterministic") {
  const std::string out1 = "certify_report_1.json";
  const std::string out2 = "certify_report_2.json";
  const std::string flags = "certify --M 8 --n 3 --p 1 --q 2 --samples 2000 --calib-samples 2000 --seed 1 --out ";
  const auto r1 = run_cli(flags + out1);
  CHECK(r1.exit_code == 0);
  const auto r2 = run_cli(flags + out2);
  CHECK(r2.exit_code == 0);

  const widthlab::ExperimentReport rep1 = widthlab::load_report_json(out1);
  const widthlab::ExperimentReport rep2 = widthlab::load_report_json(out2);
  CHECK(rep1.all_pass());
  CHECK(rep1.measured == rep2.measured);  // identical seeds, identical measurements
  CHECK(rep1.theory == rep2.theory);
  CHECK(rep1.seeds == rep2.seeds);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("besov norm subcommand reads grid files") {
  // constant 1: seminorm 0, L_q norm = (res/(res-1))^{1/q}
  {
    std::ofstream grid("const_grid.txt");
    grid << "d=1\nres=64\n";
    for (int i = 0; i < 64; ++i) grid << "1.0\n";
  }
  const auto r = run_cli("besov norm --input const_grid.txt --s 1 --r 1 --q inf");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("Besov norm     = 1.0") != std::string::npos);
  std::remove("const_grid.txt");
}

TEST_CASE("besov experiment emits CSV with one row per n") {
  const std::string out = "experiment_rows.csv";
  const auto r = run_cli(
      "besov experiment --d 1 --s 1 --p 1 --q inf --n-list 4,8 --res 512 --samples 64 --seed 3 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("slope = ") != std::string::npos);
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "n,min_lp,theory_floor_exponent,samples,seed");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
  std::remove(out.c_str());
}
