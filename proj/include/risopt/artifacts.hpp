// SPDX-License-Identifier: Apache-2.0

#ifndef RISOPT_ARTIFACTS_HPP
#define RISOPT_ARTIFACTS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risopt/evaluation.hpp"
#include "risopt/qcqp.hpp"
#include "risopt/timegate.hpp"
#include "risopt/varactor.hpp"

namespace risopt
{

/// One RIS element of an optimized design: the optimizer's reactance and its hardware mapping.
struct ElementLoad
{
  int element = 0;                 // 1-based
  double reactance_ohms = 0.0;     // optimizer output, before clipping
  double realized_reactance = 0.0;  // after clipping to the varactor range
  double capacitance = 0.0;        // F
  double voltage = 0.0;            // V
  bool clipped = false;
  bool clamped = false;
};

/// Contents of loads.json.
struct LoadsArtifact
{
  double frequency = 0.0;
  double pte = 0.0;
  double objective_watts = 0.0;
  double tightness_ratio = 0.0;
  double series_resistance = 0.0;
  std::vector<ElementLoad> elements;
  std::vector<PortLoad> ports;

  std::vector<double> capacitances() const;

  /// R_s + j x with the optimizer's reactances.
  LoadSet optimal_loads(const SceneConfig &scene) const;

  /// R_s + j x(C) with the clipped hardware capacitances at the scene frequency.
  LoadSet realized_loads(const SceneConfig &scene, const VaractorModel &model) const;
};

LoadsArtifact make_loads_artifact(const LoadSolution &solution, const VaractorModel &model, double frequency);

std::string loads_to_json_text(const LoadsArtifact &loads);
LoadsArtifact loads_from_json_text(const std::string &text);
void save_loads(const LoadsArtifact &loads, const std::filesystem::path &path);
LoadsArtifact load_loads(const std::filesystem::path &path);

void write_sweep_csv(std::ostream &os, const SweepResult &rows, const std::vector<double> *plate_m2 = nullptr);
void write_sensitivity_csv(std::ostream &os, const std::vector<SensitivityPoint> &curve);
void write_montecarlo_csv(std::ostream &os, const MonteCarloResult &result);
void write_response_csv(std::ostream &os, const FrequencyResponse &response);

/// `t_ns,magnitude_db`, magnitudes relative to 1 and floored at -300 dB.
void write_time_csv(std::ostream &os, const TimeResponse &response);

/// Written next to every output as <output>.manifest.json.
struct RunManifest
{
  std::string command;
  std::string config_json = "{}";
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;
};

std::string manifest_to_json_text(const RunManifest &manifest);
void save_manifest(const RunManifest &manifest, const std::filesystem::path &path);

/// Writes `text` to `path`; throws Error on I/O failure.
void write_text_file(const std::filesystem::path &path, const std::string &text);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace risopt

#endif  // RISOPT_ARTIFACTS_HPP
