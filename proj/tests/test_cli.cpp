// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "risopt/artifacts.hpp"

namespace fs = std::filesystem;

namespace
{

int run(const std::string &args)
{
  const std::string cmd = std::string(RISOPT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

long lines(const fs::path &p)
{
  const std::string s = slurp(p);
  return static_cast<long>(std::count(s.begin(), s.end(), '\n'));
}

fs::path workdir()
{
  const fs::path d = fs::current_path() / "cli_work";
  fs::create_directories(d);
  return d;
}

std::string q(const fs::path &p)
{
  return "'" + p.string() + "'";
}

// Shared optimized design for the downstream subcommands.
const fs::path &loads_file()
{
  static const fs::path p = [] {
    const fs::path out = workdir() / "loads.json";
    REQUIRE(run("optimize --out " + q(out)) == 0);
    return out;
  }();
  return p;
}

}  // namespace

TEST_CASE("model writes the matrix and a manifest", "[cli]")
{
  const fs::path out = workdir() / "zmat.csv";
  REQUIRE(run("model --out " + q(out)) == 0);
  CHECK(lines(out) == 257);
  CHECK(fs::exists(out.string() + ".manifest.json"));
  const fs::path nolos = workdir() / "zmat_nolos.csv";
  REQUIRE(run("model --zero-los --out " + q(nolos)) == 0);
  CHECK(slurp(out) != slurp(nolos));
}

TEST_CASE("optimize produces a loads artifact", "[cli]")
{
  const risopt::LoadsArtifact a = risopt::load_loads(loads_file());
  CHECK(a.elements.size() == 14);
  CHECK(a.pte > 0.0);
  CHECK(a.tightness_ratio < 1e-6);

  const fs::path again = workdir() / "loads_again.json";
  REQUIRE(run("optimize --out " + q(again)) == 0);
  CHECK(slurp(again) == slurp(loads_file()));

  const fs::path zmat = workdir() / "zmat_opt.csv";
  REQUIRE(run("model --zero-los --out " + q(zmat)) == 0);
  const fs::path from_matrix = workdir() / "loads_zmat.json";
  REQUIRE(run("optimize --zmat " + q(zmat) + " --frequency 3.55e9 --out " + q(from_matrix)) == 0);
  const risopt::LoadsArtifact b = risopt::load_loads(from_matrix);
  CHECK(b.pte == Catch::Approx(a.pte).epsilon(1e-6));
}

TEST_CASE("loose relaxation acceptance threshold maps to its exit code", "[cli]")
{
  CHECK(run("optimize --max-ratio 0 --out " + q(workdir() / "never.json")) == 3);
}

TEST_CASE("sweep covers the default receiver range", "[cli]")
{
  const fs::path out = workdir() / "sweep.csv";
  REQUIRE(run("sweep --loads " + q(loads_file()) + " --plate --out " + q(out)) == 0);
  CHECK(lines(out) == 47);
  CHECK(slurp(out).rfind("alpha_deg,beta_deg,pte,brcs_m2,brcs_db,plate_m2,plate_db\n", 0) == 0);
  const fs::path again = workdir() / "sweep_again.csv";
  REQUIRE(run("sweep --loads " + q(loads_file()) + " --plate --threads 3 --out " + q(again)) == 0);
  CHECK(slurp(out) == slurp(again));
  const fs::path realized = workdir() / "sweep_realized.csv";
  REQUIRE(run("sweep --loads " + q(loads_file()) + " --realized --alpha 0:10:5 --out " + q(realized)) == 0);
  CHECK(lines(realized) == 4);
}

TEST_CASE("sensitivity validates the element index", "[cli]")
{
  const fs::path out = workdir() / "sens.csv";
  REQUIRE(run("sensitivity --loads " + q(loads_file()) + " --element 3 --grid 0.5:1.5:0.25 --out " + q(out)) == 0);
  CHECK(lines(out) == 6);
  CHECK(run("sensitivity --loads " + q(loads_file()) + " --element 0 --out " + q(out)) == 2);
  CHECK(run("sensitivity --loads " + q(loads_file()) + " --element 15 --out " + q(out)) == 2);
}

TEST_CASE("oracle refuses large arrays and solves small ones", "[cli]")
{
  CHECK(run("oracle --out " + q(workdir() / "oracle_big.json")) == 5);
  const fs::path scene = workdir() / "pair.json";
  {
    std::ofstream s(scene);
    s << R"({"rows": 1, "cols": 2})";
  }
  const fs::path out = workdir() / "oracle.json";
  REQUIRE(run("oracle --scene " + q(scene) + " --grid -300:-10:16 --out " + q(out)) == 0);
  CHECK(fs::file_size(out) > 0);
}

TEST_CASE("timegate writes three spectra", "[cli]")
{
  const fs::path prefix = workdir() / "tg";
  REQUIRE(run("timegate --loads " + q(loads_file()) + " --band 2.05e9:5.05e9:201 --out " + q(prefix)) == 0);
  for (const char *suffix : {"_ungated.csv", "_gated.csv", "_time.csv"})
  {
    const fs::path p = prefix.string() + suffix;
    INFO(p);
    CHECK(fs::exists(p));
  }
  CHECK(lines(prefix.string() + "_ungated.csv") == 202);
  CHECK(lines(prefix.string() + "_gated.csv") == 202);
}

TEST_CASE("Monte Carlo is reproducible for a seed", "[cli]")
{
  const fs::path a = workdir() / "mc_a.csv";
  const fs::path b = workdir() / "mc_b.csv";
  REQUIRE(run("montecarlo --loads " + q(loads_file()) + " --trials 20 --seed 4 --out " + q(a)) == 0);
  REQUIRE(run("montecarlo --loads " + q(loads_file()) + " --trials 20 --seed 4 --threads 2 --out " + q(b)) == 0);
  CHECK(lines(a) == 21);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("bad invocations exit with the usage code", "[cli]")
{
  CHECK(run("sweep") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("sweep --loads /nonexistent.json --out " + q(workdir() / "x.csv")) == 2);
  CHECK(run("model --scene /nonexistent.json --out " + q(workdir() / "x.csv")) == 2);
}
