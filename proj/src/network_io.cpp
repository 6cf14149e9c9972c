// SPDX-License-Identifier: Apache-2.0

#include "risopt/network_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>
#include <utility>
#include <vector>

#include "risopt/errors.hpp"

namespace risopt
{

namespace
{

constexpr const char *kMatrixHeader = "port_i,port_j,re_ohms,im_ohms";

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string &line, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line)
  {
    if (ch == sep)
    {
      out.push_back(cur);
      cur.clear();
    }
    else
    {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string &s, int line_no)
{
  std::size_t used = 0;
  double v = 0.0;
  try
  {
    v = std::stod(s, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used == 0 || used != s.size())
  {
    throw ParseError("line " + std::to_string(line_no) + ": invalid number '" + s + "'");
  }
  return v;
}

int parse_index(const std::string &s, int line_no)
{
  std::size_t used = 0;
  long v = 0;
  try
  {
    v = std::stol(s, &used);
  }
  catch (const std::exception &)
  {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 1)
  {
    throw ParseError("line " + std::to_string(line_no) + ": invalid port index '" + s + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

void save_matrix(const PortNetwork &net, std::ostream &out)
{
  out << kMatrixHeader << '\n';
  for (int i = 0; i < net.n_ports(); ++i)
  {
    for (int j = 0; j < net.n_ports(); ++j)
    {
      const cdouble v = net.z(i, j);
      out << (i + 1) << ',' << (j + 1) << ',' << format_double(v.real()) << ',' << format_double(v.imag())
          << '\n';
    }
  }
}

void save_matrix(const PortNetwork &net, const std::string &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  save_matrix(net, out);
}

PortNetwork load_matrix(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw ParseError("empty impedance matrix file");
  }
  if (!line.empty() && line.back() == '\r')
  {
    line.pop_back();
  }
  if (line != kMatrixHeader)
  {
    throw ParseError("expected header '" + std::string(kMatrixHeader) + "', got '" + line + "'");
  }

  std::map<std::pair<int, int>, cdouble> entries;
  int max_index = 0;
  int line_no = 1;
  while (std::getline(in, line))
  {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (line.empty())
    {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 4)
    {
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields");
    }
    const int i = parse_index(fields[0], line_no);
    const int j = parse_index(fields[1], line_no);
    const cdouble v(parse_double(fields[2], line_no), parse_double(fields[3], line_no));
    if (!entries.emplace(std::make_pair(i, j), v).second)
    {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate entry (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
    }
    max_index = std::max({max_index, i, j});
  }

  const auto n = static_cast<std::size_t>(max_index);
  if (n < 2)
  {
    throw ParseError("impedance matrix needs at least the Tx and Rx ports");
  }
  if (entries.size() != n * n)
  {
    throw ParseError("impedance matrix is not square/complete: " + std::to_string(entries.size()) +
                     " entries for " + std::to_string(n) + " ports");
  }

  PortNetwork net;
  net.z.resize(max_index, max_index);
  for (const auto &[ij, v] : entries)
  {
    net.z(ij.first - 1, ij.second - 1) = v;
  }
  const double asym = net.relative_asymmetry();
  if (asym > kSymmetryTolerance)
  {
    throw ParseError("impedance matrix is not reciprocal: max relative asymmetry " + format_double(asym));
  }
  net.los_zeroed = net.z(0, 1) == 0.0 && net.z(1, 0) == 0.0;
  return net;
}

PortNetwork load_matrix(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ConfigError("cannot open '" + path + "'");
  }
  return load_matrix(in);
}

namespace
{

using nlohmann::json;

cdouble complex_from(const json &j, const char *key)
{
  if (j.is_number())
  {
    return {j.get<double>(), 0.0};
  }
  if (j.is_array() && j.size() == 2)
  {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("re"))
  {
    return {j.at("re").get<double>(), j.value("im", 0.0)};
  }
  throw ConfigError(std::string("scene: '") + key + "' must be a number or [re, im]");
}

void read_dipole(const json &j, const std::string &prefix, DipoleSpec &d)
{
  auto get = [&](const std::string &name, double &field) {
    if (auto it = j.find(prefix + name); it != j.end())
    {
      field = it->get<double>();
    }
  };
  if (auto it = j.find(prefix.substr(0, prefix.size() - 1)); it != j.end() && it->is_object())
  {
    d.length = it->value("length", d.length);
    d.strip_width = it->value("strip_width", d.strip_width);
    d.feed_gap = it->value("feed_gap", d.feed_gap);
  }
  get("length", d.length);
  get("strip_width", d.strip_width);
  get("feed_gap", d.feed_gap);
}

bool has_dipole(const json &j, const std::string &prefix)
{
  return j.contains(prefix.substr(0, prefix.size() - 1)) || j.contains(prefix + "length") ||
         j.contains(prefix + "strip_width") || j.contains(prefix + "feed_gap");
}

}  // namespace

SceneConfig scene_from_json_text(const std::string &text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError(std::string("scene JSON: ") + e.what());
  }
  if (!j.is_object())
  {
    throw ConfigError("scene JSON must be an object");
  }

  SceneConfig s;
  try
  {
    s.frequency = j.value("frequency", s.frequency);
    s.rows = j.value("rows", s.rows);
    s.cols = j.value("cols", s.cols);
    s.col_spacing = j.value("col_spacing", s.col_spacing);
    s.row_spacing = j.value("row_spacing", s.row_spacing);
    read_dipole(j, "element_", s.element);
    if (has_dipole(j, "tx_element_"))
    {
      DipoleSpec d = s.element;
      read_dipole(j, "tx_element_", d);
      s.tx_element = d;
    }
    if (has_dipole(j, "rx_element_"))
    {
      DipoleSpec d = s.element;
      read_dipole(j, "rx_element_", d);
      s.rx_element = d;
    }
    s.tx_angle_beta = j.value("tx_angle_beta", s.tx_angle_beta);
    s.rx_angle_alpha = j.value("rx_angle_alpha", s.rx_angle_alpha);
    s.tx_distance = j.value("tx_distance", s.tx_distance);
    s.rx_distance = j.value("rx_distance", s.rx_distance);
    s.tx_gain = j.value("tx_gain", s.tx_gain);
    s.rx_gain = j.value("rx_gain", s.rx_gain);
    if (j.contains("source_impedance"))
    {
      s.source_impedance = complex_from(j["source_impedance"], "source_impedance");
    }
    if (j.contains("receiver_impedance"))
    {
      s.receiver_impedance = complex_from(j["receiver_impedance"], "receiver_impedance");
    }
  }
  catch (const json::exception &e)
  {
    throw ConfigError(std::string("scene JSON: ") + e.what());
  }
  s.validate();
  return s;
}

SceneConfig load_scene(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open scene file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return scene_from_json_text(ss.str());
}

std::string scene_to_json_text(const SceneConfig &s)
{
  json j;
  j["frequency"] = s.frequency;
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["col_spacing"] = s.col_spacing;
  j["row_spacing"] = s.row_spacing;
  j["element_length"] = s.element.length;
  j["element_strip_width"] = s.element.strip_width;
  j["element_feed_gap"] = s.element.feed_gap;
  if (s.tx_element)
  {
    j["tx_element_length"] = s.tx_element->length;
    j["tx_element_strip_width"] = s.tx_element->strip_width;
    j["tx_element_feed_gap"] = s.tx_element->feed_gap;
  }
  if (s.rx_element)
  {
    j["rx_element_length"] = s.rx_element->length;
    j["rx_element_strip_width"] = s.rx_element->strip_width;
    j["rx_element_feed_gap"] = s.rx_element->feed_gap;
  }
  j["tx_angle_beta"] = s.tx_angle_beta;
  j["rx_angle_alpha"] = s.rx_angle_alpha;
  j["tx_distance"] = s.tx_distance;
  j["rx_distance"] = s.rx_distance;
  j["tx_gain"] = s.tx_gain;
  j["rx_gain"] = s.rx_gain;
  j["source_impedance"] = {s.source_impedance.real(), s.source_impedance.imag()};
  j["receiver_impedance"] = {s.receiver_impedance.real(), s.receiver_impedance.imag()};
  return j.dump(2);
}

}  // namespace risopt
