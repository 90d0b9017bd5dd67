#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netmix/instance_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = fs::temp_directory_path() / ("netmix_cli_out_" + std::to_string(counter++));
  std::string cmd = std::string(NETMIX_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.stdout_text = buf.str();
  fs::remove(out);
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("solve fig3 centralized exits 0 with cost 11") {
  RunResult r = run_cli("solve --instance fig3 --algorithm centralized");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"cost\": 11") != std::string::npos);
}

TEST_CASE("butterfly two-unicast exits 1 with a feasible=false document") {
  RunResult r = run_cli("solve --instance butterfly --algorithm centralized");
  CHECK(r.exit_code == 1);
  CHECK(r.stdout_text.find("\"feasible\": false") != std::string::npos);
  CHECK(r.stdout_text.find("\"status\": \"infeasible\"") != std::string::npos);
}

TEST_CASE("butterfly with expansion exits 0 at cost 9") {
  RunResult r = run_cli("solve --instance butterfly --algorithm centralized --expand");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"cost\": 9") != std::string::npos);
  CHECK(r.stdout_text.find("\"expansion\"") != std::string::npos);
}

TEST_CASE("config errors exit 2") {
  CHECK(run_cli("solve --instance nosuchfile.json").exit_code == 2);
  CHECK(run_cli("solve --instance fig3 --algorithm nosuch").exit_code == 2);
  CHECK(run_cli("experiment --instance fig3 --realizations 3").exit_code == 2);
}

TEST_CASE("oracle and centralized agree via the CLI") {
  RunResult centralized = run_cli("solve --instance fig3 --algorithm centralized");
  RunResult oracle = run_cli("solve --instance fig3 --algorithm oracle");
  CHECK(centralized.exit_code == 0);
  CHECK(oracle.exit_code == 0);
  CHECK(oracle.stdout_text.find("\"cost\": 11") != std::string::npos);
}

TEST_CASE("path-cfl run is byte-identical under one seed") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_det";
  fs::create_directories(dir);
  std::string base = "solve --instance fig3 --algorithm path-cfl --seed 41 "
                     "--max-iterations 2000 ";
  RunResult a = run_cli(base + "--output " + (dir / "a.json").string() + " --trace-dir " +
                        (dir / "ta").string());
  RunResult b = run_cli(base + "--output " + (dir / "b.json").string() + " --trace-dir " +
                        (dir / "tb").string());
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "ta" / "engine_trace.csv") == slurp(dir / "tb" / "engine_trace.csv"));
  CHECK(slurp(dir / "ta" / "path_choices.csv") == slurp(dir / "tb" / "path_choices.csv"));
  CHECK(!slurp(dir / "ta" / "engine_trace.csv").empty());
  fs::remove_all(dir);
}

TEST_CASE("restart trace has a non-increasing running minimum ending at 11") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_restarts";
  fs::create_directories(dir);
  RunResult r = run_cli("solve --instance fig3 --algorithm path-cfl --restarts 20 --seed 5 "
                        "--max-iterations 1000 --output " +
                        (dir / "sol.json").string() + " --trace-dir " + dir.string());
  CHECK(r.exit_code == 0);
  std::istringstream csv(slurp(dir / "restarts.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "restart_index,feasible,cost,running_min");
  double last_min = 1e18;
  double final_min = 0;
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    size_t comma = line.rfind(',');
    std::string min_field = line.substr(comma + 1);
    if (!min_field.empty()) {
      double value = std::stod(min_field);
      CHECK(value <= last_min);
      last_min = value;
      final_min = value;
    }
  }
  CHECK(rows == 20);
  CHECK(final_min == 11);
  fs::remove_all(dir);
}

TEST_CASE("solve accepts a user-supplied instance document") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_file";
  fs::create_directories(dir);
  std::ofstream out(dir / "inst.json");
  out << netmix::serialize_instance(netmix::builtin("fig3"));
  out.close();
  RunResult r = run_cli("solve --instance " + (dir / "inst.json").string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"cost\": 11") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rlnc flag emits a code document") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_code";
  fs::create_directories(dir);
  RunResult r = run_cli("solve --instance fig3 --rlnc-q 5 --seed 3 --output " +
                        (dir / "sol.json").string() + " --code-output " +
                        (dir / "code.json").string());
  CHECK(r.exit_code == 0);
  std::string code = slurp(dir / "code.json");
  CHECK(code.find("\"q\": 5") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("experiment on sprint-core produces comparable means") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_exp";
  fs::create_directories(dir);
  RunResult r = run_cli("experiment --instance sprint-core --terminals 2 --q 2.0 "
                        "--realizations 40 --seed 12 --output " +
                        (dir / "stats.json").string() + " --csv " +
                        (dir / "costs.csv").string());
  CHECK(r.exit_code == 0);
  std::string stats = slurp(dir / "stats.json");
  CHECK(stats.find("\"realizations\": 40") != std::string::npos);
  CHECK(stats.find("\"expansion\"") != std::string::npos);
  CHECK(stats.find("\"problem1\"") != std::string::npos);
  CHECK(stats.find("\"routing\"") != std::string::npos);

  // q = 2 is multicast: expansion and problem1 means must match
  auto mean_of = [&](const std::string& name) {
    size_t at = stats.find("\"" + name + "\"");
    REQUIRE(at != std::string::npos);
    size_t mean_at = stats.find("\"mean_cost\":", at);
    return std::stod(stats.substr(mean_at + 12));
  };
  CHECK(mean_of("expansion") == doctest::Approx(mean_of("problem1")));

  std::string csv = slurp(dir / "costs.csv");
  CHECK(csv.find("realization,included,expansion_cost,problem1_cost,routing_cost") == 0);
  fs::remove_all(dir);
}

TEST_CASE("single-realization experiment mean equals that realization's cost") {
  fs::path dir = fs::temp_directory_path() / "netmix_cli_exp1";
  fs::create_directories(dir);
  RunResult r = run_cli("experiment --instance sprint-core --terminals 2 --q 1.0 "
                        "--realizations 1 --seed 4 --algorithms problem1 --output " +
                        (dir / "stats.json").string() + " --csv " + (dir / "costs.csv").string());
  CHECK(r.exit_code == 0);
  std::string stats = slurp(dir / "stats.json");
  std::string csv = slurp(dir / "costs.csv");
  // the lone CSV cost equals the reported mean
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  double cost = std::stod(row.substr(row.rfind(',') + 1));
  size_t mean_at = stats.find("\"mean_cost\":");
  double mean = std::stod(stats.substr(mean_at + 12));
  CHECK(cost == doctest::Approx(mean));
  fs::remove_all(dir);
}
