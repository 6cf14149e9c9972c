// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: model, optimize, sweep, sensitivity, oracle, timegate, montecarlo.
// Exit codes: 0 ok, 1 other failure, 2 configuration/IO/usage, 3 relaxation not tight,
// 4 infeasible, 5 refused complexity.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "risopt/artifacts.hpp"
#include "risopt/errors.hpp"
#include "risopt/evaluation.hpp"
#include "risopt/network_io.hpp"
#include "risopt/qcqp.hpp"
#include "risopt/scene.hpp"
#include "risopt/timegate.hpp"
#include "risopt/varactor.hpp"
#include "risopt/version.hpp"

namespace
{

using namespace risopt;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Common
{
  std::string scene_path;
  int threads = 1;
  double tol = 1e-8;
};

struct Range
{
  double start;
  double stop;
  double third;  // step, or point count for count-style ranges
};

Range parse_range(const std::string &text, const char *what)
{
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':'))
  {
    try
    {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size())
      {
        throw std::invalid_argument(item);
      }
    }
    catch (const std::exception &)
    {
      throw ConfigError(std::string(what) + ": cannot parse '" + text + "' as start:stop:step");
    }
  }
  if (parts.size() != 3)
  {
    throw ConfigError(std::string(what) + ": expected start:stop:step, got '" + text + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

// Inclusive of stop when it falls on the grid (within 1e-9 of a step).
std::vector<double> stepped(const Range &r, const char *what)
{
  if (!(r.third > 0.0) || r.stop < r.start)
  {
    throw ConfigError(std::string(what) + ": need step > 0 and stop >= start");
  }
  const auto n = static_cast<std::size_t>(std::floor((r.stop - r.start) / r.third + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out[i] = r.start + static_cast<double>(i) * r.third;
  }
  return out;
}

std::vector<double> counted(const Range &r, const char *what)
{
  const double n = r.third;
  if (!(n >= 1.0) || n != std::floor(n) || r.stop < r.start || (n == 1.0 && r.stop != r.start))
  {
    throw ConfigError(std::string(what) + ": need lo:hi:points with integer points >= 1 and hi >= lo");
  }
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    out[i] = count == 1 ? r.start : r.start + (r.stop - r.start) * static_cast<double>(i) / (n - 1.0);
  }
  return out;
}

SceneConfig scene_of(const Common &c)
{
  SceneConfig s = c.scene_path.empty() ? SceneConfig{} : load_scene(c.scene_path);
  s.validate();
  return s;
}

void write_csv(const std::string &path, const std::function<void(std::ostream &)> &fn)
{
  std::ostringstream os;
  fn(os);
  write_text_file(path, os.str());
}

void emit_manifest(const std::string &command, const std::string &config_json, std::vector<std::string> inputs,
                   const std::vector<std::string> &outputs, Clock::time_point t0)
{
  RunManifest m;
  m.command = command;
  m.config_json = config_json;
  m.inputs = std::move(inputs);
  m.outputs = outputs;
  m.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  save_manifest(m, outputs.front() + ".manifest.json");
}

std::vector<std::string> present(std::initializer_list<std::string> paths)
{
  std::vector<std::string> out;
  for (const auto &p : paths)
  {
    if (!p.empty())
    {
      out.push_back(p);
    }
  }
  return out;
}

double condition_estimate(const Eigen::MatrixXcd &z)
{
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(z);
  const auto &sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] == 0.0)
  {
    return INFINITY;
  }
  return sv[0] / sv[sv.size() - 1];
}

// ---- model ----

struct ModelArgs
{
  bool zero_los = false;
  std::string out = "zmat.csv";
};

int cmd_model(const Common &c, const ModelArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  PortNetwork net = build_scene_matrix(scene);
  if (a.zero_los)
  {
    net = zero_los(net);
  }
  save_matrix(net, a.out);
  std::printf("N = %d RIS elements, %d ports, condition estimate %.6g\n", net.element_count(), net.n_ports(),
              condition_estimate(net.z));
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["zero_los"] = a.zero_los;
  emit_manifest("model", cfg.dump(), present({c.scene_path}), {a.out}, t0);
  return 0;
}

// ---- optimize ----

struct OptimizeArgs
{
  std::string zmat;
  std::string out = "loads.json";
  bool keep_los = false;
  double frequency = 0.0;
  double max_ratio = 1e-4;
};

int cmd_optimize(const Common &c, const OptimizeArgs &a)
{
  const auto t0 = Clock::now();
  SceneConfig scene = scene_of(c);
  PortNetwork net;
  if (!a.zmat.empty())
  {
    net = load_matrix(a.zmat);
    if (a.frequency > 0.0)
    {
      scene.frequency = a.frequency;
    }
  }
  else
  {
    net = build_scene_matrix(scene);
  }
  if (!a.keep_los)
  {
    net = zero_los(net);
  }
  const VaractorModel model;
  const QcqpLift lift = build_lift(net, scene.receiver_impedance, 1.0, model.series_resistance);
  for (const auto &w : lift.warnings)
  {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  const SdpSolution sol = solve_sdp(lift, c.tol);
  RecoverOptions ro;
  ro.max_tightness_ratio = a.max_ratio;
  ro.indeterminate_reactance = 0.5 * (model.x_min(scene.frequency) + model.x_max(scene.frequency));
  const LoadSolution ls = recover_solution(sol, lift, ro);
  const LoadsArtifact art = make_loads_artifact(ls, model, scene.frequency);
  save_loads(art, a.out);

  int clipped = 0;
  for (const auto &e : art.elements)
  {
    clipped += e.clipped ? 1 : 0;
  }
  std::printf("PTE %.10g  objective %.10g W  tightness %.3g  gap %.3g  iterations %d\n", ls.pte, ls.objective,
              ls.tightness_ratio, sol.duality_gap, sol.iterations);
  std::printf("%zu elements, %d clipped to the varactor range, max passivity residual %.3g\n", art.elements.size(),
              clipped, ls.max_passivity_residual);
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["tol"] = c.tol;
  cfg["keep_los"] = a.keep_los;
  emit_manifest("optimize", cfg.dump(), present({c.scene_path, a.zmat}), {a.out}, t0);
  return 0;
}

// ---- sweep ----

struct LoadChoice
{
  std::string loads;
  bool realized = false;
  bool keep_los = false;
};

LoadSet chosen_loads(const SceneConfig &scene, const LoadChoice &l, LoadsArtifact *out = nullptr)
{
  if (l.loads.empty())
  {
    throw ConfigError("--loads is required");
  }
  LoadsArtifact art = load_loads(l.loads);
  if (static_cast<int>(art.elements.size()) != scene.element_count())
  {
    throw ConfigError("loads file has " + std::to_string(art.elements.size()) + " elements, scene has " +
                      std::to_string(scene.element_count()));
  }
  const LoadSet set = l.realized ? art.realized_loads(scene, VaractorModel{}) : art.optimal_loads(scene);
  if (out != nullptr)
  {
    *out = std::move(art);
  }
  return set;
}

struct SweepArgs
{
  LoadChoice load;
  double beta = -10.0;
  std::string alpha = "0:45:1";
  std::string out = "brcs.csv";
  bool plate = false;
  double plate_width = 0.308;
  double plate_height = 0.096;
};

int cmd_sweep(const Common &c, const SweepArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  const LoadSet loads = chosen_loads(scene, a.load);
  const std::vector<double> alphas = stepped(parse_range(a.alpha, "--alpha"), "--alpha");
  const SweepResult rows = angle_sweep(scene, loads, a.beta, alphas, !a.load.keep_los, c.threads);
  std::vector<double> plate;
  if (a.plate)
  {
    for (double al : alphas)
    {
      plate.push_back(plate_brcs(a.plate_width, a.plate_height, al, a.beta, scene.frequency));
    }
  }
  write_csv(a.out, [&](std::ostream &os) { write_sweep_csv(os, rows, a.plate ? &plate : nullptr); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    if (rows[i].brcs_db > rows[best].brcs_db)
    {
      best = i;
    }
  }
  std::printf("%zu rows, maximum %.3f dBsm at alpha = %g deg\n", rows.size(), rows[best].brcs_db, rows[best].alpha);
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["beta_deg"] = a.beta;
  cfg["alpha"] = a.alpha;
  cfg["realized"] = a.load.realized;
  cfg["plate"] = a.plate;
  emit_manifest("sweep", cfg.dump(), present({c.scene_path, a.load.loads}), {a.out}, t0);
  return 0;
}

// ---- sensitivity ----

struct SensitivityArgs
{
  LoadChoice load;
  int element = 0;
  std::string grid = "0.23:2.1:0.01";
  std::string out = "sensitivity.csv";
};

int cmd_sensitivity(const Common &c, const SensitivityArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  if (a.element < 1 || a.element > scene.element_count())
  {
    throw ConfigError("--element must lie in 1.." + std::to_string(scene.element_count()));
  }
  LoadsArtifact art;
  const LoadSet loads = chosen_loads(scene, a.load, &art);
  std::vector<double> grid = stepped(parse_range(a.grid, "--grid"), "--grid");
  for (double &g : grid)
  {
    g *= 1e-12;
  }
  const VaractorModel model;
  const auto curve = sensitivity_sweep(scene, loads, model, a.element, grid, !a.load.keep_los);
  write_csv(a.out, [&](std::ostream &os) { write_sensitivity_csv(os, curve); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
  {
    if (curve[i].brcs_db > curve[best].brcs_db)
    {
      best = i;
    }
  }
  const ElementLoad &e = art.elements[static_cast<std::size_t>(a.element - 1)];
  std::printf("element %d: maximum %.3f dBsm at %.4g pF, C_opt %.4g pF%s\n", a.element, curve[best].brcs_db,
              curve[best].capacitance * 1e12, e.capacitance * 1e12, e.clipped ? " (clipped)" : "");
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["element"] = a.element;
  cfg["grid_pf"] = a.grid;
  cfg["realized"] = a.load.realized;
  emit_manifest("sensitivity", cfg.dump(), present({c.scene_path, a.load.loads}), {a.out}, t0);
  return 0;
}

// ---- oracle ----

struct OracleArgs
{
  std::string zmat;
  std::string grid = "-300:-10:64";
  std::string out = "oracle.json";
  bool keep_los = false;
};

int cmd_oracle(const Common &c, const OracleArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  PortNetwork net = a.zmat.empty() ? build_scene_matrix(scene) : load_matrix(a.zmat);
  if (!a.keep_los)
  {
    net = zero_los(net);
  }
  const std::vector<double> grid = counted(parse_range(a.grid, "--grid"), "--grid");
  const VaractorModel model;
  const BruteForceResult r = brute_force_pte(net, grid, scene.receiver_impedance, scene.source_impedance,
                                             model.series_resistance, c.threads);
  json j;
  j["pte"] = r.pte_best;
  j["reactance_ohms"] = r.x_best;
  j["evaluations"] = r.evaluations;
  j["grid"] = a.grid;
  write_text_file(a.out, j.dump(2) + "\n");
  std::printf("grid oracle PTE %.10g after %zu evaluations\n", r.pte_best, r.evaluations);
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["grid"] = a.grid;
  emit_manifest("oracle", cfg.dump(), present({c.scene_path, a.zmat}), {a.out}, t0);
  return 0;
}

// ---- timegate ----

struct TimegateArgs
{
  std::string loads;
  std::string band = "2.05e9:5.05e9:601";
  std::string out = "timegate";
  bool no_los = false;
  double width_ns = 10.0;
  int pad = 8;
};

int cmd_timegate(const Common &c, const TimegateArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  if (a.loads.empty())
  {
    throw ConfigError("--loads is required");
  }
  const LoadsArtifact art = load_loads(a.loads);
  if (static_cast<int>(art.elements.size()) != scene.element_count())
  {
    throw ConfigError("loads file does not match the scene's element count");
  }
  const Range band = parse_range(a.band, "--band");
  FrequencyGrid grid;
  grid.f_start = band.start;
  grid.f_stop = band.stop;
  if (band.third < 2.0 || band.third != std::floor(band.third))
  {
    throw ConfigError("--band: expected f_start:f_stop:points with integer points >= 2");
  }
  grid.n_points = static_cast<std::size_t>(band.third);

  VaractorModel model;
  model.series_resistance = art.series_resistance;
  const std::vector<double> caps = art.capacitances();
  const FrequencyResponse ris = synthesize_response(scene, model, caps, grid, false, c.threads);
  const FrequencyResponse measured =
      a.no_los ? ris : synthesize_response(scene, model, caps, grid, true, c.threads);

  GateConfig gate = auto_gate(scene);
  gate.width = a.width_ns * 1e-9;
  const TimeResponse time = to_time(measured, a.pad);
  FrequencyResponse gated = to_frequency(apply_gate(time, gate));
  const cdouble gain = gate_gain(measured, gate, a.pad);
  for (auto &v : gated.values)
  {
    v /= gain;
  }

  const std::string ungated_path = a.out + "_ungated.csv";
  const std::string gated_path = a.out + "_gated.csv";
  const std::string time_path = a.out + "_time.csv";
  write_csv(ungated_path, [&](std::ostream &os) { write_response_csv(os, measured); });
  write_csv(gated_path, [&](std::ostream &os) { write_response_csv(os, gated); });
  write_csv(time_path, [&](std::ostream &os) { write_time_csv(os, time); });

  const std::size_t k = measured.center_index();
  const double fidelity =
      20.0 * std::log10(std::abs(gated.values[k]) / std::abs(ris.values[k]));
  std::printf("gate %.3f..%.3f ns, band center %.6g Hz\n", gate.start * 1e9, (gate.start + gate.width) * 1e9,
              measured.frequency(k));
  std::printf("RIS-path fidelity at band center: %+.4f dB\n", fidelity);
  if (!a.no_los)
  {
    FrequencyResponse los = measured;
    for (std::size_t i = 0; i < los.size(); ++i)
    {
      los.values[i] -= ris.values[i];
    }
    const double suppression =
        20.0 * std::log10(std::abs(los.values[k]) / std::abs(gated_center_value(los, gate, a.pad)));
    std::printf("LOS suppression at band center: %.2f dB\n", suppression);
  }
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["band"] = a.band;
  cfg["no_los"] = a.no_los;
  cfg["gate_start_s"] = gate.start;
  cfg["gate_width_s"] = gate.width;
  cfg["gate_taper"] = gate.taper;
  cfg["pad_factor"] = a.pad;
  emit_manifest("timegate", cfg.dump(), present({c.scene_path, a.loads}), {ungated_path, gated_path, time_path}, t0);
  return 0;
}

// ---- montecarlo ----

struct MonteCarloArgs
{
  LoadChoice load;
  int trials = 500;
  std::uint64_t seed = 1;
  std::string out = "montecarlo.csv";
};

int cmd_montecarlo(const Common &c, const MonteCarloArgs &a)
{
  const auto t0 = Clock::now();
  const SceneConfig scene = scene_of(c);
  if (a.load.loads.empty())
  {
    throw ConfigError("--loads is required");
  }
  const LoadsArtifact art = load_loads(a.load.loads);
  VaractorModel model;
  model.series_resistance = art.series_resistance;
  const std::vector<double> caps = art.capacitances();
  const MonteCarloResult r =
      tolerance_monte_carlo(scene, model, caps, a.trials, a.seed, !a.load.keep_los, c.threads);
  write_csv(a.out, [&](std::ostream &os) { write_montecarlo_csv(os, r); });
  std::printf("%d trials: mean %.3f dBsm, p5 %.3f, p95 %.3f, spread %.3f dB\n", a.trials, r.mean, r.p5, r.p95,
              r.p95 - r.p5);
  json cfg = json::parse(scene_to_json_text(scene));
  cfg["trials"] = a.trials;
  cfg["seed"] = a.seed;
  emit_manifest("montecarlo", cfg.dump(), present({c.scene_path, a.load.loads}), {a.out}, t0);
  return 0;
}

void add_common(CLI::App *sub, Common &c)
{
  sub->add_option("--scene", c.scene_path, "scene JSON (defaults to the built-in 7x2 scene)");
  sub->add_option("--threads", c.threads, "worker thread cap")->check(CLI::PositiveNumber);
}

void add_load_choice(CLI::App *sub, LoadChoice &l)
{
  sub->add_option("--loads", l.loads, "loads JSON from 'optimize'")->required();
  sub->add_flag("--realized", l.realized, "use clipped hardware capacitances instead of the optimal reactances");
  sub->add_flag("--keep-los", l.keep_los, "keep the direct Tx-Rx coupling");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"RIS load design toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("risopt ") + kVersion);

  Common common;

  ModelArgs model_args;
  auto *model = app.add_subcommand("model", "build the multiport impedance matrix");
  add_common(model, common);
  model->add_flag("--zero-los", model_args.zero_los, "zero the direct Tx-Rx coupling");
  model->add_option("--out", model_args.out, "matrix CSV");

  OptimizeArgs opt_args;
  auto *optimize = app.add_subcommand("optimize", "optimal reactive loads by semidefinite relaxation");
  add_common(optimize, common);
  optimize->add_option("--zmat", opt_args.zmat, "impedance matrix CSV instead of a scene");
  optimize->add_option("--frequency", opt_args.frequency, "frequency of --zmat in Hz (defaults to the scene's)");
  optimize->add_option("--out", opt_args.out, "loads JSON");
  optimize->add_option("--tol", common.tol, "relative solver tolerance");
  optimize->add_option("--max-ratio", opt_args.max_ratio, "largest accepted lambda2/lambda1");
  optimize->add_flag("--keep-los", opt_args.keep_los, "keep the direct Tx-Rx coupling");

  SweepArgs sweep_args;
  auto *sweep = app.add_subcommand("sweep", "bistatic RCS over receiver angles");
  add_common(sweep, common);
  add_load_choice(sweep, sweep_args.load);
  sweep->add_option("--beta", sweep_args.beta, "transmitter angle in degrees");
  sweep->add_option("--alpha", sweep_args.alpha, "receiver angles start:stop:step in degrees");
  sweep->add_option("--out", sweep_args.out, "sweep CSV");
  sweep->add_flag("--plate", sweep_args.plate, "add the flat-plate baseline columns");
  sweep->add_option("--plate-width", sweep_args.plate_width, "plate width along the scan plane in m");
  sweep->add_option("--plate-height", sweep_args.plate_height, "plate height in m");

  SensitivityArgs sens_args;
  auto *sens = app.add_subcommand("sensitivity", "bistatic RCS while one element's capacitance varies");
  add_common(sens, common);
  add_load_choice(sens, sens_args.load);
  sens->add_option("--element", sens_args.element, "element index, 1-based")->required();
  sens->add_option("--grid", sens_args.grid, "capacitances start:stop:step in pF");
  sens->add_option("--out", sens_args.out, "sensitivity CSV");

  OracleArgs oracle_args;
  auto *oracle = app.add_subcommand("oracle", "exhaustive grid search over reactances (N <= 3)");
  add_common(oracle, common);
  oracle->add_option("--zmat", oracle_args.zmat, "impedance matrix CSV instead of a scene");
  oracle->add_option("--grid", oracle_args.grid, "reactances lo:hi:points in ohm");
  oracle->add_option("--out", oracle_args.out, "result JSON");
  oracle->add_flag("--keep-los", oracle_args.keep_los, "keep the direct Tx-Rx coupling");

  TimegateArgs tg_args;
  auto *tg = app.add_subcommand("timegate", "broadband response, time gate, gated spectrum");
  add_common(tg, common);
  tg->add_option("--loads", tg_args.loads, "loads JSON from 'optimize'")->required();
  tg->add_option("--band", tg_args.band, "f_start:f_stop:points in Hz");
  tg->add_option("--out", tg_args.out, "output prefix");
  tg->add_flag("--no-los", tg_args.no_los, "synthesize without the direct path");
  tg->add_option("--width", tg_args.width_ns, "gate width in ns");
  tg->add_option("--pad", tg_args.pad, "zero padding factor")->check(CLI::PositiveNumber);

  MonteCarloArgs mc_args;
  auto *mc = app.add_subcommand("montecarlo", "bistatic RCS spread under capacitance tolerance");
  add_common(mc, common);
  mc->add_option("--loads", mc_args.load.loads, "loads JSON from 'optimize'")->required();
  mc->add_flag("--keep-los", mc_args.load.keep_los, "keep the direct Tx-Rx coupling");
  mc->add_option("--trials", mc_args.trials, "number of trials")->check(CLI::PositiveNumber);
  mc->add_option("--seed", mc_args.seed, "random seed");
  mc->add_option("--out", mc_args.out, "Monte Carlo CSV");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try
  {
    if (*model) return cmd_model(common, model_args);
    if (*optimize) return cmd_optimize(common, opt_args);
    if (*sweep) return cmd_sweep(common, sweep_args);
    if (*sens) return cmd_sensitivity(common, sens_args);
    if (*oracle) return cmd_oracle(common, oracle_args);
    if (*tg) return cmd_timegate(common, tg_args);
    if (*mc) return cmd_montecarlo(common, mc_args);
  }
  catch (const NotTightError &e)
  {
    std::fprintf(stderr, "error: %s (ratio %.3g)\n", e.what(), e.ratio());
    return 3;
  }
  catch (const InfeasibleError &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  catch (const ComplexityError &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  }
  catch (const ConfigError &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  catch (const ParseError &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  catch (const RangeError &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
