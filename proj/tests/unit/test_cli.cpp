#include <doctest.h>

#include <json.hpp>

#include "relaxlab/cli/config.hpp"
#include "relaxlab/cli/plot.hpp"
#include "relaxlab/cli/results.hpp"
#include "relaxlab/errors.hpp"

using namespace relaxlab::cli;
using nlohmann::json;

namespace {

std::string rejected_path(const json& tree) {
  try {
    parse_config(tree);
  } catch (const relaxlab::ConfigError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const auto c = parse_config({{"experiment", "spectrum"}});
  CHECK(c.spec.experiment == "spectrum");
  CHECK(c.spec.grid.N == 64);
  CHECK(c.spec.model.a == std::vector<double>{1.0});
  CHECK(c.spec.data.size() == 1);
  CHECK(c.output == "runs");
  const auto hash = config_hash(c);
  CHECK(hash.size() == 16);
  CHECK(hash == config_hash(parse_config({{"experiment", "spectrum"}})));
}

TEST_CASE("invalid configs name the offending key") {
  CHECK(rejected_path({{"model", {{"a", {-1.0}}}}}) == "model.a[0]");
  CHECK(rejected_path({{"experiment", "decay"}, {"model", {{"eps", {0.1, 0.2}}}}}) == "model.eps");
  CHECK(rejected_path({{"grid", {{"N", 63}}}}) == "grid.N");
  CHECK(rejected_path({{"experiment", "nope"}}) == "experiment");
  CHECK(rejected_path({{"model", {{"a", {1.0, 1.0}}}}}) == "model.a");
  CHECK_FALSE(rejected_path({{"model", {{"colour", 1}}}}).empty());
  CHECK_FALSE(rejected_path({{"stepper", {{"layer_span", 5.0}}}}).empty());
}

TEST_CASE("serialization round-trips") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto c = parse_config(preset(name));
    const auto tree = serialize_config(c);
    const auto again = parse_config(tree);
    CHECK(serialize_config(again) == tree);
    CHECK(config_hash(again) == config_hash(c));
  }
  auto c = parse_config({{"experiment", "spectrum"}});
  const auto hash = config_hash(c);
  c.output = "elsewhere";
  c.spec.jobs = 4;
  CHECK(config_hash(c) == hash);
  c.spec.seed = 2;
  CHECK(config_hash(c) != hash);
  CHECK_THROWS(preset("thm9"));
}

TEST_CASE("plots") {
  CHECK_THROWS_AS(curves_from_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(curves_from_csv("x,y\n"), std::invalid_argument);
  const std::string csv = "x,y\n1,1\n2,0.5\n4,0.25\n";
  const auto curves = curves_from_csv(csv);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].y == std::vector<double>{1.0, 0.5, 0.25});
  const auto svg = plot_csv(csv, PlotKind::loglog);
  CHECK(svg == plot_csv(csv, PlotKind::loglog));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  const auto od = plot_csv("inv_eps,omega,regime\n1,0.5,low\n2,2,transitional\n4,0.5,high\n", PlotKind::overdamping);
  CHECK(od.find("omega") != std::string::npos);
  CHECK(parse_plot_kind("overdamping") == PlotKind::overdamping);
  CHECK_THROWS(parse_plot_kind("pie"));

  const std::string norms = "t,name,s,p,r,window,value\n0,u,0,2,1,full,1\n1,u,0,2,1,full,0.5\n";
  const auto series = curves_from_csv(norms);
  REQUIRE(series.size() == 1);
  CHECK(series[0].x == std::vector<double>{0.0, 1.0});
}

TEST_CASE("result files") {
  relaxlab::harness::Report r;
  r.experiment = "x";
  r.norms.push_back({0.5, "u", 0.0, 2.0, 1.0, "full", 0.25});
  r.scalars.push_back({"s", 1.5});
  r.add_check("c", true, "ok");
  CHECK(norms_csv(r).rfind("t,name,s,p,r,window,value\n", 0) == 0);
  const auto fits = json::parse(fits_json(r));
  CHECK(fits["passed"] == true);
  CHECK(fits["scalars"]["s"] == 1.5);
  CHECK(fits_json(r).find("seconds") == std::string::npos);
}
