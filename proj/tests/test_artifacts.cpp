// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "risopt/artifacts.hpp"
#include "risopt/errors.hpp"

using namespace risopt;

namespace
{

LoadsArtifact sample()
{
  const VaractorModel m;
  LoadSolution sol;
  sol.pte = 2.5e-8;
  sol.objective = 2.5e-8;
  sol.tightness_ratio = 1e-14;
  for (int k = 0; k < 3; ++k)
  {
    const double x = k == 0 ? 40.0 : -60.0 * (k + 1);
    sol.ports.push_back({k + 3, x, {0.01 * k, -0.02}, 1e-12, false});
  }
  return make_loads_artifact(sol, m, 3.55e9);
}

}  // namespace

TEST_CASE("loads artifact maps reactances onto the varactor", "[artifacts]")
{
  const LoadsArtifact a = sample();
  REQUIRE(a.elements.size() == 3);
  CHECK(a.elements[0].element == 1);
  CHECK(a.elements[0].clipped);
  CHECK(a.elements[0].realized_reactance == Catch::Approx(-21.35).margin(0.005));
  CHECK(a.elements[1].reactance_ohms == -120.0);
  CHECK_FALSE(a.elements[1].clipped);
  CHECK(a.elements[1].capacitance == Catch::Approx(capacitance_of_reactance(-120.0, 3.55e9)));
  CHECK(a.series_resistance == 5.4);

  const SceneConfig s;
  const LoadSet opt = a.optimal_loads(s);
  CHECK(opt.loads[0] == cdouble(5.4, 40.0));
  const LoadSet real = a.realized_loads(s, VaractorModel{});
  CHECK(real.loads[0].imag() == Catch::Approx(-21.35).margin(0.005));
  CHECK(real.loads[2].imag() == Catch::Approx(-180.0).epsilon(1e-12));
}

TEST_CASE("loads JSON round trip", "[artifacts]")
{
  const LoadsArtifact a = sample();
  const std::string text = loads_to_json_text(a);
  const LoadsArtifact b = loads_from_json_text(text);
  CHECK(b.frequency == a.frequency);
  CHECK(b.pte == a.pte);
  REQUIRE(b.elements.size() == a.elements.size());
  for (std::size_t k = 0; k < a.elements.size(); ++k)
  {
    CHECK(b.elements[k].reactance_ohms == a.elements[k].reactance_ohms);
    CHECK(b.elements[k].capacitance == Catch::Approx(a.elements[k].capacitance).epsilon(1e-15));
    CHECK(b.elements[k].clipped == a.elements[k].clipped);
  }
  REQUIRE(b.ports.size() == 3);
  CHECK(b.ports[1].current == a.ports[1].current);
  CHECK(loads_to_json_text(b) == text);

  const auto path = std::filesystem::temp_directory_path() / "risopt_test_loads.json";
  save_loads(a, path);
  CHECK(load_loads(path).elements.size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("malformed loads JSON is a parse error", "[artifacts]")
{
  CHECK_THROWS_AS(loads_from_json_text("not json"), ParseError);
  CHECK_THROWS_AS(loads_from_json_text("[]"), ParseError);
  nlohmann::json j = nlohmann::json::parse(loads_to_json_text(sample()));
  j.erase("frequency_hz");
  CHECK_THROWS_AS(loads_from_json_text(j.dump()), ParseError);
  j = nlohmann::json::parse(loads_to_json_text(sample()));
  j["elements"][0].erase("capacitance_pf");
  CHECK_THROWS_AS(loads_from_json_text(j.dump()), ParseError);
  j = nlohmann::json::parse(loads_to_json_text(sample()));
  j["elements"][1]["element"] = 7;
  CHECK_THROWS_AS(loads_from_json_text(j.dump()), ParseError);
  CHECK_THROWS_AS(load_loads("/nonexistent/loads.json"), ConfigError);
}

TEST_CASE("CSV writers emit fixed headers", "[artifacts]")
{
  SweepResult rows{{0.0, -10.0, 1e-8, 0.01, -20.0}, {1.0, -10.0, 2e-8, 0.02, -16.99}};
  std::ostringstream a;
  write_sweep_csv(a, rows);
  CHECK(a.str().rfind("alpha_deg,beta_deg,pte,brcs_m2,brcs_db\n", 0) == 0);
  const std::vector<double> plate{0.5, 0.4};
  std::ostringstream b;
  write_sweep_csv(b, rows, &plate);
  CHECK(b.str().rfind("alpha_deg,beta_deg,pte,brcs_m2,brcs_db,plate_m2,plate_db\n", 0) == 0);
  const std::vector<double> short_plate{0.5};
  std::ostringstream c;
  CHECK_THROWS_AS(write_sweep_csv(c, rows, &short_plate), ConfigError);

  std::ostringstream d;
  write_sensitivity_csv(d, {{1e-12, -30.0}});
  CHECK(d.str() == "capacitance_pf,brcs_db\n1,-30\n");
  std::ostringstream e;
  MonteCarloResult mc;
  mc.brcs_db = {-30.5, -31.0};
  write_montecarlo_csv(e, mc);
  CHECK(e.str() == "trial,brcs_db\n0,-30.5\n1,-31\n");

  FrequencyResponse fr;
  fr.f_start = 1e9;
  fr.f_stop = 2e9;
  fr.values = {{1.0, 0.0}, {0.0, -1.0}};
  std::ostringstream f;
  write_response_csv(f, fr);
  CHECK(f.str() == "freq_hz,re,im\n1000000000,1,0\n2000000000,0,-1\n");

  TimeResponse tr;
  tr.dt = 1e-9;
  tr.samples = {{1.0, 0.0}, {0.0, 0.0}};
  std::ostringstream g;
  write_time_csv(g, tr);
  CHECK(g.str() == "t_ns,magnitude_db\n0,0\n1,-300\n");
}

TEST_CASE("run manifest records provenance of a run", "[artifacts]")
{
  RunManifest m;
  m.command = "sweep";
  m.config_json = R"({"beta": -10})";
  m.inputs = {"loads.json"};
  m.outputs = {"sweep.csv"};
  const nlohmann::json j = nlohmann::json::parse(manifest_to_json_text(m));
  CHECK(j.at("command") == "sweep");
  CHECK(j.at("config").at("beta") == -10);
  CHECK(j.at("outputs").size() == 1);
  CHECK(j.at("tool_version").get<std::string>().rfind("risopt ", 0) == 0);
}
