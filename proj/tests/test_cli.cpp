#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "nhcd/config.hpp"
#include "nhcd/io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "nhcd_test_cli";

int run(const std::string& args, const std::string& log = "cli.log") {
  fs::create_directories(kRoot);
  const std::string cmd = std::string(NHCD_CLI_PATH) + " " + args + " > " + (kRoot / log).string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_outputs(const fs::path& dir) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path p = entry.path();
    CAPTURE(p.string());
    if (p.extension() == ".csv") {
      CHECK(nhcd::validate_csv_file(p.string()) > 0);
    } else if (p.extension() == ".json") {
      std::ifstream in(p);
      CHECK(nhcd::validate_summary_json(in) > 0);
    }
  }
}

}  // namespace

TEST_CASE("encircle run is deterministic and schema-valid") {
  const fs::path a = kRoot / "run_a";
  const fs::path b = kRoot / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run("--experiment encircle --threads 4 --out " + a.string()) == 0);
  REQUIRE(run("--experiment encircle --threads 1 --out " + b.string()) == 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const fs::path other = b / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
    ++files;
  }
  CHECK(files == 11);
  CHECK(fs::exists(a / "trajectory_cw_full.csv"));
  CHECK(fs::exists(a / "drive_ccw.csv"));
  check_outputs(a);
}

TEST_CASE("other experiments write valid outputs") {
  const fs::path dir = kRoot / "others";
  fs::remove_all(dir);
  CHECK(run("--experiment apollonius --out " + (dir / "apollonius").string()) == 0);
  CHECK(fs::exists(dir / "apollonius" / "trajectory_ellipse_hermitian.csv"));
  check_outputs(dir / "apollonius");

  CHECK(run("--experiment period-sweep --direction cw --out " + (dir / "sweep").string()) == 0);
  CHECK(nhcd::validate_csv_file((dir / "sweep" / "period_sweep.csv").string()) == 9 * 2);

  CHECK(run("--experiment adiabaticity --out " + (dir / "adiabaticity").string()) == 0);
  check_outputs(dir / "adiabaticity");

  std::ofstream(kRoot / "topology.ini") << "[experiment]\nname = topology\n"
                                           "[topology]\nj_min_start = -1\nj_min_stop = 1\nj_min_count = 5\n";
  CHECK(run("--config " + (kRoot / "topology.ini").string() + " --out " + (dir / "topology").string()) == 0);
  CHECK(nhcd::validate_csv_file((dir / "topology" / "topology.csv").string()) == 5);
}

TEST_CASE("print-config round-trips") {
  REQUIRE(run("--experiment period-sweep --period 0.4 --cd full --print-config", "print.ini") == 0);
  const nhcd::ExperimentConfig c = nhcd::load_config((kRoot / "print.ini").string());
  CHECK(c.experiment == nhcd::ExperimentKind::PeriodSweep);
  CHECK(c.period == 0.4);
  CHECK(c.cd_modes == std::vector<nhcd::CdMode>{nhcd::CdMode::Full});
}

TEST_CASE("exit codes") {
  CHECK(run("--experiment bogus") == 2);
  CHECK(run("--no-such-flag") == 2);
  CHECK(run("") == 2);
  CHECK(run("--experiment encircle --direction up") == 2);
  CHECK(run("--experiment encircle --cd sideways") == 2);
  CHECK(run("--experiment encircle --dt -1") == 2);
  CHECK(run("--experiment encircle --gamma-e 0.1 --out " + (kRoot / "gamma").string()) == 2);
  std::ofstream(kRoot / "bad.ini") << "[experiment]\nname = encircle\n[schedule]\nspeed = 3\n";
  CHECK(run("--config " + (kRoot / "bad.ini").string()) == 2);
  CHECK(run("--config " + (kRoot / "bad.ini").string() + " --experiment topology") == 2);

  const std::string out = " --out " + (kRoot / "numerical").string();
  CHECK(run("--experiment encircle --jmin 0.29" + out) == 3);
  CHECK(run("--experiment encircle --dt 0.01" + out) == 3);
}
