// SPDX-License-Identifier: Apache-2.0

#include "risopt/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "risopt/errors.hpp"
#include "risopt/version.hpp"

namespace risopt
{
namespace
{

using nlohmann::json;

std::string num(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T required(const json &j, const char *key)
{
  if (!j.contains(key))
  {
    throw ParseError(std::string("loads JSON: missing field '") + key + "'");
  }
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw ParseError(std::string("loads JSON: field '") + key + "': " + e.what());
  }
}

}  // namespace

std::vector<double> LoadsArtifact::capacitances() const
{
  std::vector<double> out;
  out.reserve(elements.size());
  for (const auto &e : elements)
  {
    out.push_back(e.capacitance);
  }
  return out;
}

LoadSet LoadsArtifact::optimal_loads(const SceneConfig &scene) const
{
  LoadSet out;
  out.source_impedance = scene.source_impedance;
  out.receiver_impedance = scene.receiver_impedance;
  for (const auto &e : elements)
  {
    out.loads.emplace_back(series_resistance, e.reactance_ohms);
  }
  return out;
}

LoadSet LoadsArtifact::realized_loads(const SceneConfig &scene, const VaractorModel &model) const
{
  VaractorModel m = model;
  m.series_resistance = series_resistance;
  const std::vector<double> caps = capacitances();
  return loads_from_capacitances(scene, m, caps, scene.frequency);
}

LoadsArtifact make_loads_artifact(const LoadSolution &solution, const VaractorModel &model, double frequency)
{
  LoadsArtifact out;
  out.frequency = frequency;
  out.pte = solution.pte;
  out.objective_watts = solution.objective;
  out.tightness_ratio = solution.tightness_ratio;
  out.series_resistance = model.series_resistance;
  out.ports = solution.ports;
  for (std::size_t k = 0; k < solution.ports.size(); ++k)
  {
    const PortLoad &p = solution.ports[k];
    const BiasPoint b = bias_point(model, p.reactance, frequency);
    out.elements.push_back({static_cast<int>(k) + 1, p.reactance, b.reactance, b.capacitance, b.voltage, b.clipped,
                            b.clamped});
  }
  return out;
}

std::string loads_to_json_text(const LoadsArtifact &loads)
{
  json j;
  j["frequency_hz"] = loads.frequency;
  j["pte"] = loads.pte;
  j["objective_watts"] = loads.objective_watts;
  j["tightness_ratio"] = loads.tightness_ratio;
  j["series_resistance"] = loads.series_resistance;
  json elements = json::array();
  for (const auto &e : loads.elements)
  {
    elements.push_back({{"element", e.element},
                        {"reactance_ohms", e.reactance_ohms},
                        {"realized_reactance_ohms", e.realized_reactance},
                        {"capacitance_pf", e.capacitance * 1e12},
                        {"voltage_v", e.voltage},
                        {"clipped", e.clipped},
                        {"clamped", e.clamped}});
  }
  j["elements"] = elements;
  json ports = json::array();
  for (const auto &p : loads.ports)
  {
    ports.push_back({{"port", p.port},
                     {"reactance_ohms", p.reactance},
                     {"current_re", p.current.real()},
                     {"current_im", p.current.imag()},
                     {"passivity_residual", p.passivity_residual},
                     {"indeterminate", p.indeterminate}});
  }
  j["ports"] = ports;
  return j.dump(2) + "\n";
}

LoadsArtifact loads_from_json_text(const std::string &text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::exception &e)
  {
    throw ParseError(std::string("loads JSON: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ParseError("loads JSON: top level must be an object");
  }
  LoadsArtifact out;
  out.frequency = required<double>(j, "frequency_hz");
  out.pte = j.value("pte", 0.0);
  out.objective_watts = j.value("objective_watts", 0.0);
  out.tightness_ratio = j.value("tightness_ratio", 0.0);
  out.series_resistance = required<double>(j, "series_resistance");
  if (!j.contains("elements") || !j["elements"].is_array())
  {
    throw ParseError("loads JSON: 'elements' must be an array");
  }
  for (const auto &e : j["elements"])
  {
    ElementLoad el;
    el.element = required<int>(e, "element");
    el.reactance_ohms = required<double>(e, "reactance_ohms");
    el.capacitance = required<double>(e, "capacitance_pf") * 1e-12;
    el.realized_reactance = e.value("realized_reactance_ohms", reactance_of_capacitance(el.capacitance, out.frequency));
    el.voltage = e.value("voltage_v", 0.0);
    el.clipped = e.value("clipped", false);
    el.clamped = e.value("clamped", false);
    if (el.element != static_cast<int>(out.elements.size()) + 1)
    {
      throw ParseError("loads JSON: elements must be listed in order 1..N");
    }
    out.elements.push_back(el);
  }
  if (j.contains("ports"))
  {
    for (const auto &p : j["ports"])
    {
      PortLoad pl;
      pl.port = required<int>(p, "port");
      pl.reactance = required<double>(p, "reactance_ohms");
      pl.current = {p.value("current_re", 0.0), p.value("current_im", 0.0)};
      pl.passivity_residual = p.value("passivity_residual", 0.0);
      pl.indeterminate = p.value("indeterminate", false);
      out.ports.push_back(pl);
    }
  }
  return out;
}

void save_loads(const LoadsArtifact &loads, const std::filesystem::path &path)
{
  write_text_file(path, loads_to_json_text(loads));
}

LoadsArtifact load_loads(const std::filesystem::path &path)
{
  return loads_from_json_text(read_text_file(path));
}

void write_sweep_csv(std::ostream &os, const SweepResult &rows, const std::vector<double> *plate_m2)
{
  if (plate_m2 != nullptr && plate_m2->size() != rows.size())
  {
    throw ConfigError("plate column length differs from sweep length");
  }
  os << "alpha_deg,beta_deg,pte,brcs_m2,brcs_db";
  if (plate_m2 != nullptr)
  {
    os << ",plate_m2,plate_db";
  }
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const SweepRow &r = rows[i];
    os << num(r.alpha) << ',' << num(r.beta) << ',' << num(r.pte) << ',' << num(r.brcs) << ',' << num(r.brcs_db);
    if (plate_m2 != nullptr)
    {
      os << ',' << num((*plate_m2)[i]) << ',' << num(to_db((*plate_m2)[i]));
    }
    os << '\n';
  }
}

void write_sensitivity_csv(std::ostream &os, const std::vector<SensitivityPoint> &curve)
{
  os << "capacitance_pf,brcs_db\n";
  for (const auto &p : curve)
  {
    os << num(p.capacitance * 1e12) << ',' << num(p.brcs_db) << '\n';
  }
}

void write_montecarlo_csv(std::ostream &os, const MonteCarloResult &result)
{
  os << "trial,brcs_db\n";
  for (std::size_t t = 0; t < result.brcs_db.size(); ++t)
  {
    os << t << ',' << num(result.brcs_db[t]) << '\n';
  }
}

void write_response_csv(std::ostream &os, const FrequencyResponse &response)
{
  os << "freq_hz,re,im\n";
  for (std::size_t k = 0; k < response.size(); ++k)
  {
    os << num(response.frequency(k)) << ',' << num(response.values[k].real()) << ','
       << num(response.values[k].imag()) << '\n';
  }
}

void write_time_csv(std::ostream &os, const TimeResponse &response)
{
  os << "t_ns,magnitude_db\n";
  for (std::size_t m = 0; m < response.samples.size(); ++m)
  {
    const double mag = std::abs(response.samples[m]);
    const double db = mag > 1e-15 ? 20.0 * std::log10(mag) : -300.0;
    os << num(static_cast<double>(m) * response.dt * 1e9) << ',' << num(db) << '\n';
  }
}

std::string manifest_to_json_text(const RunManifest &manifest)
{
  json j;
  j["command"] = manifest.command;
  try
  {
    j["config"] = json::parse(manifest.config_json);
  }
  catch (const json::exception &)
  {
    j["config"] = manifest.config_json;
  }
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  j["tool_version"] = std::string("risopt ") + kVersion;
  j["wall_time_s"] = manifest.wall_time_s;
  return j.dump(2) + "\n";
}

void save_manifest(const RunManifest &manifest, const std::filesystem::path &path)
{
  write_text_file(path, manifest_to_json_text(manifest));
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  }
  out << text;
  if (!out)
  {
    throw ConfigError("failed writing '" + path.string() + "'");
  }
}

std::string read_text_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ConfigError("cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace risopt
