// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "risopt/errors.hpp"
#include "risopt/network_io.hpp"

using namespace risopt;

namespace
{

std::string dump(const PortNetwork &net)
{
  std::ostringstream os;
  save_matrix(net, os);
  return os.str();
}

PortNetwork parse(const std::string &text)
{
  std::istringstream is(text);
  return load_matrix(is);
}

}  // namespace

TEST_CASE("impedance matrix CSV round trip", "[io]")
{
  const PortNetwork net = build_scene_matrix(SceneConfig{});
  const std::string text = dump(net);
  CHECK(text.rfind("port_i,port_j,re_ohms,im_ohms\n", 0) == 0);
  const PortNetwork back = parse(text);
  REQUIRE(back.n_ports() == 16);
  CHECK(back.element_count() == 14);
  CHECK((back.z - net.z).cwiseAbs().maxCoeff() <= 1e-12 * net.z.cwiseAbs().maxCoeff());
  CHECK_FALSE(back.los_zeroed);
  CHECK(parse(dump(zero_los(net))).los_zeroed);
  // 16^2 data rows plus the header.
  CHECK(std::count(text.begin(), text.end(), '\n') == 257);
}

TEST_CASE("asymmetric matrix is rejected with its asymmetry", "[io]")
{
  PortNetwork net = build_scene_matrix(SceneConfig{});
  net.z(0, 1) *= 1.1;
  try
  {
    parse(dump(net));
    FAIL("expected a parse error");
  }
  catch (const ParseError &e)
  {
    CHECK(std::string(e.what()).find("asymmetry") != std::string::npos);
  }
}

TEST_CASE("malformed matrix files are rejected", "[io]")
{
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("i,j,re,im\n1,1,1,0\n"), ParseError);
  const std::string header = "port_i,port_j,re_ohms,im_ohms\n";
  // missing (2,2)
  CHECK_THROWS_AS(parse(header + "1,1,50,0\n1,2,1,0\n2,1,1,0\n"), ParseError);
  // duplicate
  CHECK_THROWS_AS(parse(header + "1,1,50,0\n1,1,50,0\n1,2,1,0\n2,1,1,0\n2,2,50,0\n"), ParseError);
  // bad number
  CHECK_THROWS_AS(parse(header + "1,1,abc,0\n1,2,1,0\n2,1,1,0\n2,2,50,0\n"), ParseError);
  // zero index
  CHECK_THROWS_AS(parse(header + "0,1,1,0\n"), ParseError);
  // wrong field count
  CHECK_THROWS_AS(parse(header + "1,1,50\n"), ParseError);
  const PortNetwork ok = parse(header + "1,1,50,1\n1,2,0,0\n2,1,0,0\n2,2,60,-2\n");
  CHECK(ok.n_ports() == 2);
  CHECK(ok.los_zeroed);
}

TEST_CASE("scene JSON round trip and defaults", "[io]")
{
  SceneConfig s;
  s.rows = 1;
  s.cols = 4;
  s.rx_angle_alpha = 30.0;
  s.receiver_impedance = {50.0, 5.0};
  DipoleSpec tx;
  tx.length = 0.04;
  s.tx_element = tx;
  const SceneConfig back = scene_from_json_text(scene_to_json_text(s));
  CHECK(back.rows == 1);
  CHECK(back.cols == 4);
  CHECK(back.rx_angle_alpha == 30.0);
  CHECK(back.receiver_impedance == cdouble(50.0, 5.0));
  REQUIRE(back.tx_element.has_value());
  CHECK(back.tx_element->length == 0.04);
  CHECK_FALSE(back.rx_element.has_value());

  const SceneConfig def = scene_from_json_text("{}");
  CHECK(def.element_count() == 14);
  CHECK(def.frequency == 3.55e9);
}

TEST_CASE("scene JSON accepts flat and nested element fields", "[io]")
{
  const SceneConfig flat = scene_from_json_text(R"({"element_length": 0.03, "element_strip_width": 0.004})");
  CHECK(flat.element.length == 0.03);
  CHECK(flat.element.strip_width == 0.004);
  const SceneConfig nested = scene_from_json_text(R"({"element": {"length": 0.03, "strip_width": 0.004}})");
  CHECK(nested.element.length == 0.03);
  CHECK(nested.element.strip_width == 0.004);
}

TEST_CASE("invalid scene JSON is a configuration error", "[io]")
{
  CHECK_THROWS_AS(scene_from_json_text("{"), ConfigError);
  CHECK_THROWS_AS(scene_from_json_text("[1,2]"), ConfigError);
  CHECK_THROWS_AS(scene_from_json_text(R"({"rows": "two"})"), ConfigError);
  CHECK_THROWS_AS(scene_from_json_text(R"({"col_spacing": 0.01})"), ConfigError);
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), ConfigError);
}
