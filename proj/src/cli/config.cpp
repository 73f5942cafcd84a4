#include "relaxlab/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "relaxlab/errors.hpp"

namespace relaxlab::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

/// Object reader that remembers which keys were consumed.
class Node {
 public:
  Node(const json& tree, std::string path) : tree_(tree), path_(std::move(path)) {
    if (!tree_.is_object()) throw ConfigError(where(), "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "<root>" : path_; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = tree_.find(key);
    return it == tree_.end() || it->is_null() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(at(key), "expected a number");
    return v->get<double>();
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v->get<long long>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(at(key), "expected a string");
    return v->get<std::string>();
  }

  /// Scalar or array of numbers.
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number()) return {v->get<double>()};
    if (!v->is_array() || v->empty()) throw ConfigError(at(key), "expected a number or a nonempty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number_integer()) return {v->get<int>()};
    if (!v->is_array() || v->empty()) throw ConfigError(at(key), "expected an integer or a nonempty array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number_integer()) throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back((*v)[i].get<int>());
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : tree_.items())
      if (!seen_.count(key)) throw ConfigError(at(key), "unknown key");
  }

 private:
  const json& tree_;
  std::string path_;
  std::set<std::string> seen_;
};

/// Re-throws parse failures of enum-like strings as ConfigError at `path`.
template <class F>
auto named(const std::string& path, F&& parse) {
  try {
    return parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

const std::set<std::string> kExperiments{"simulate", "epsilon-convergence", "decay", "overdamping", "spectrum",
                                         "selftest"};

harness::ModelSetup parse_model(const json& tree, const std::string& experiment) {
  Node node(tree, "model");
  harness::ModelSetup m;
  m.flux = node.string("flux", m.flux);
  const bool burgers2 = m.flux == "burgers2d";
  m.d = static_cast<int>(node.integer("d", burgers2 ? 2 : 1));
  m.n = static_cast<int>(node.integer("n", burgers2 ? 2 : 1));
  if (m.d < 1 || m.d > 3) throw ConfigError("model.d", "1 <= d <= 3 required");
  if (m.n < 1 || m.n > models::Flux::kMaxComponents) throw ConfigError("model.n", "1 <= n <= 4 required");
  m.a = node.numbers("a", std::vector<double>(m.d, 1.0));
  if (static_cast<int>(m.a.size()) != m.d) throw ConfigError("model.a", "needs one entry per direction (d)");
  for (std::size_t i = 0; i < m.a.size(); ++i)
    if (!(m.a[i] > 0.0)) throw ConfigError("model.a[" + std::to_string(i) + "]", "a_i > 0 required");
  if (const json* e = node.find("eps"); e && e->is_array() && e->size() > 1 && experiment == "decay")
    throw ConfigError("model.eps", "decay is a single-eps study; give one value");
  m.eps = node.numbers("eps", m.eps);
  for (std::size_t i = 0; i < m.eps.size(); ++i)
    if (!(m.eps[i] > 0.0)) throw ConfigError("model.eps[" + std::to_string(i) + "]", "eps > 0 required");
  m.k0 = static_cast<int>(node.integer("k0", m.k0));
  if (const json* terms = node.find("terms")) {
    if (!terms->is_array()) throw ConfigError("model.terms", "expected an array of monomials");
    for (std::size_t i = 0; i < terms->size(); ++i) {
      Node t((*terms)[i], "model.terms[" + std::to_string(i) + "]");
      models::Monomial mono;
      mono.direction = static_cast<int>(t.integer("direction", 0));
      mono.component = static_cast<int>(t.integer("component", 0));
      mono.exponents = t.integers("exponents", {});
      mono.coefficient = t.number("coefficient", 0.0);
      t.finish();
      m.terms.push_back(mono);
    }
  }
  if (m.flux != "polynomial" && !m.terms.empty()) throw ConfigError("model.terms", "only used with flux = polynomial");
  node.finish();
  named("model.flux", [&] { return m.make_flux(); });
  return m;
}

harness::InitialDataSpec parse_data(const json& tree, const std::string& path) {
  Node node(tree, path);
  harness::InitialDataSpec d;
  d.kind = named(node.at("kind"), [&] { return harness::parse_data_kind(node.string("kind", "gaussian_bump")); });
  d.amplitude = node.number("amplitude", d.amplitude);
  d.sigma1 = node.number("sigma1", d.sigma1);
  const long long seed = node.integer("seed", 0);
  if (seed < 0) throw ConfigError(node.at("seed"), "must be nonnegative (0 derives it from the run seed)");
  d.seed = static_cast<std::uint64_t>(seed);
  d.mode = node.integers("mode", d.mode);
  d.width = node.number("width", d.width);
  d.preparation =
      named(node.at("preparation"), [&] { return harness::parse_preparation(node.string("preparation", "darcy_prepared")); });
  d.v_scale = node.number("v_scale", d.v_scale);
  d.v_eps_power = node.number("v_eps_power", d.v_eps_power);
  d.eta = node.number("eta", d.eta);
  if (!(d.amplitude >= 0.0)) throw ConfigError(node.at("amplitude"), "must be nonnegative");
  if (!(d.width > 0.0)) throw ConfigError(node.at("width"), "must be positive");
  if (!(d.v_scale >= 0.0)) throw ConfigError(node.at("v_scale"), "must be nonnegative");
  if (!(d.eta > 0.0)) throw ConfigError(node.at("eta"), "must be positive");
  node.finish();
  return d;
}

integrators::StepperConfig parse_stepper(const json& tree) {
  Node node(tree, "stepper");
  integrators::StepperConfig c;
  c.scheme = named("stepper.scheme", [&] { return integrators::parse_scheme(node.string("scheme", "imex_ssp2")); });
  c.cfl = node.number("cfl", c.cfl);
  c.dt_max = node.number("dt_max", c.dt_max);
  c.dt_min = node.number("dt_min", c.dt_min);
  c.t_end = node.number("t_end", c.t_end);
  c.sample_every = static_cast<int>(node.integer("sample_every", c.sample_every));
  c.sample_ratio = node.number("sample_ratio", c.sample_ratio);
  c.dense_until = node.number("dense_until", c.dense_until);
  c.layer_factor = node.number("layer_factor", c.layer_factor);
  c.layer_span = node.number("layer_span", c.layer_span);
  node.finish();
  named("stepper", [&] {
    c.validate();
    return 0;
  });
  return c;
}

integrators::TrackerSpec parse_tracker(const json& tree, const std::string& path) {
  Node node(tree, path);
  integrators::TrackerSpec t;
  t.field = node.string("field", t.field);
  t.s = node.number("s", t.s);
  if (const json* p = node.find("p")) {
    if (p->is_number())
      t.p = p->get<double>();
    else if (p->is_string() && p->get<std::string>() == "inf")
      t.p = std::numeric_limits<double>::infinity();
    else
      throw ConfigError(node.at("p"), "expected a number or \"inf\"");
  }
  t.r = node.number("r", t.r);
  t.window = named(node.at("window"), [&] { return integrators::parse_window(node.string("window", "full")); });
  node.finish();
  if (!(t.p >= 1.0)) throw ConfigError(node.at("p"), "p >= 1 required");
  if (!(t.r >= 1.0)) throw ConfigError(node.at("r"), "r >= 1 required");
  return t;
}

harness::StudySetup parse_study(const json& tree) {
  Node node(tree, "study");
  harness::StudySetup s;
  s.p = node.number("p", s.p);
  s.sigma = node.numbers("sigma", s.sigma);
  s.fit_lo = node.number("fit_lo", s.fit_lo);
  s.fit_hi = node.number("fit_hi", s.fit_hi);
  s.cutoff_factor = node.number("cutoff_factor", s.cutoff_factor);
  s.difference = node.boolean("difference", s.difference);
  s.half_eps_check = node.boolean("half_eps_check", s.half_eps_check);
  s.half_eps_tolerance = node.number("half_eps_tolerance", s.half_eps_tolerance);
  s.mode = node.integers("mode", s.mode);
  s.points = static_cast<int>(node.integer("points", s.points));
  s.window_lo = node.number("window_lo", s.window_lo);
  s.window_hi = node.number("window_hi", s.window_hi);
  s.steps_per_time = node.number("steps_per_time", s.steps_per_time);
  s.overdamping_N = static_cast<int>(node.integer("overdamping_N", s.overdamping_N));
  s.functional = node.boolean("functional", s.functional);
  s.uniformity = node.boolean("uniformity", s.uniformity);
  s.growth_after = node.number("growth_after", s.growth_after);
  s.growth_tolerance = node.number("growth_tolerance", s.growth_tolerance);
  s.ratio_spread = node.number("ratio_spread", s.ratio_spread);
  s.dump_fields = node.boolean("dump_fields", s.dump_fields);
  node.finish();
  if (!(s.p >= 1.0)) throw ConfigError("study.p", "p >= 1 required");
  if (s.points < 2) throw ConfigError("study.points", "at least 2 points");
  if (!(s.window_lo < s.window_hi)) throw ConfigError("study.window_lo", "must be below study.window_hi");
  if (!(s.steps_per_time > 0.0)) throw ConfigError("study.steps_per_time", "must be positive");
  if (s.overdamping_N < 4 || s.overdamping_N % 2) throw ConfigError("study.overdamping_N", "even and >= 4");
  return s;
}

json tracker_json(const integrators::TrackerSpec& t) {
  json j{{"field", t.field}, {"s", t.s}, {"r", t.r}, {"window", integrators::window_name(t.window)}};
  if (std::isinf(t.p))
    j["p"] = "inf";
  else
    j["p"] = t.p;
  return j;
}

}  // namespace

RunConfig parse_config(const json& tree) {
  Node root(tree, "");
  RunConfig out;
  auto& spec = out.spec;
  spec.experiment = root.string("experiment", spec.experiment);
  if (!kExperiments.count(spec.experiment))
    throw ConfigError("experiment",
                      "unknown experiment '" + spec.experiment +
                          "' (simulate | epsilon-convergence | decay | overdamping | spectrum | selftest)");
  const long long seed = root.integer("seed", 1);
  if (seed < 0) throw ConfigError("seed", "must be nonnegative");
  spec.seed = static_cast<std::uint64_t>(seed);
  spec.jobs = static_cast<int>(root.integer("jobs", 1));
  if (spec.jobs < 1) throw ConfigError("jobs", "must be >= 1");
  out.output = root.string("output", out.output);

  static const json empty = json::object();
  const json* model = root.find("model");
  spec.model = parse_model(model ? *model : empty, spec.experiment);

  const json* grid = root.find("grid");
  Node g(grid ? *grid : empty, "grid");
  spec.grid.N = static_cast<int>(g.integer("N", spec.grid.N));
  spec.grid.L = g.number("L", spec.grid.L);
  g.finish();
  if (spec.grid.N < 4 || spec.grid.N % 2) throw ConfigError("grid.N", "even and >= 4");
  if (!(spec.grid.L > 0.0)) throw ConfigError("grid.L", "must be positive");

  spec.data.clear();
  if (const json* data = root.find("data")) {
    if (data->is_array()) {
      if (data->empty()) throw ConfigError("data", "at least one entry");
      for (std::size_t i = 0; i < data->size(); ++i)
        spec.data.push_back(parse_data((*data)[i], "data[" + std::to_string(i) + "]"));
    } else {
      spec.data.push_back(parse_data(*data, "data"));
    }
  } else {
    spec.data.push_back(parse_data(empty, "data"));
  }

  const json* stepper = root.find("stepper");
  spec.stepper = parse_stepper(stepper ? *stepper : empty);

  if (const json* trackers = root.find("trackers")) {
    if (!trackers->is_array()) throw ConfigError("trackers", "expected an array");
    for (std::size_t i = 0; i < trackers->size(); ++i)
      spec.trackers.push_back(parse_tracker((*trackers)[i], "trackers[" + std::to_string(i) + "]"));
  }

  const json* study = root.find("study");
  spec.study = parse_study(study ? *study : empty);

  if (const json* expect = root.find("expect")) {
    if (!expect->is_array()) throw ConfigError("expect", "expected an array");
    for (std::size_t i = 0; i < expect->size(); ++i) {
      Node e((*expect)[i], "expect[" + std::to_string(i) + "]");
      harness::Expectation x;
      x.name = e.string("name", "");
      x.min = e.number("min", x.min);
      x.max = e.number("max", x.max);
      e.finish();
      if (x.name.empty()) throw ConfigError(e.at("name"), "required");
      spec.expect.push_back(x);
    }
  }
  root.finish();
  return out;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  json tree;
  try {
    tree = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(tree);
}

json serialize_config(const RunConfig& config) {
  const auto& spec = config.spec;
  const auto& m = spec.model;
  json terms = json::array();
  for (const auto& t : m.terms)
    terms.push_back({{"direction", t.direction},
                     {"component", t.component},
                     {"exponents", t.exponents},
                     {"coefficient", t.coefficient}});
  json data = json::array();
  for (const auto& d : spec.data)
    data.push_back({{"kind", harness::data_kind_name(d.kind)},
                    {"amplitude", d.amplitude},
                    {"sigma1", d.sigma1},
                    {"seed", d.seed},
                    {"mode", d.mode},
                    {"width", d.width},
                    {"preparation", harness::preparation_name(d.preparation)},
                    {"v_scale", d.v_scale},
                    {"v_eps_power", d.v_eps_power},
                    {"eta", d.eta}});
  const auto& c = spec.stepper;
  json trackers = json::array();
  for (const auto& t : spec.trackers) trackers.push_back(tracker_json(t));
  const auto& s = spec.study;
  json expect = json::array();
  for (const auto& e : spec.expect) {
    json x{{"name", e.name}};
    if (std::isfinite(e.min)) x["min"] = e.min;
    if (std::isfinite(e.max)) x["max"] = e.max;
    expect.push_back(x);
  }
  return json{
      {"experiment", spec.experiment},
      {"seed", spec.seed},
      {"jobs", spec.jobs},
      {"output", config.output},
      {"model",
       {{"flux", m.flux}, {"n", m.n}, {"d", m.d}, {"a", m.a}, {"eps", m.eps}, {"k0", m.k0}, {"terms", terms}}},
      {"grid", {{"N", spec.grid.N}, {"L", spec.grid.L}}},
      {"data", data},
      {"stepper",
       {{"scheme", integrators::scheme_name(c.scheme)},
        {"cfl", c.cfl},
        {"dt_max", c.dt_max},
        {"dt_min", c.dt_min},
        {"t_end", c.t_end},
        {"sample_every", c.sample_every},
        {"sample_ratio", c.sample_ratio},
        {"dense_until", c.dense_until},
        {"layer_factor", c.layer_factor},
        {"layer_span", c.layer_span}}},
      {"trackers", trackers},
      {"study",
       {{"p", s.p},
        {"sigma", s.sigma},
        {"fit_lo", s.fit_lo},
        {"fit_hi", s.fit_hi},
        {"cutoff_factor", s.cutoff_factor},
        {"difference", s.difference},
        {"half_eps_check", s.half_eps_check},
        {"half_eps_tolerance", s.half_eps_tolerance},
        {"mode", s.mode},
        {"points", s.points},
        {"window_lo", s.window_lo},
        {"window_hi", s.window_hi},
        {"steps_per_time", s.steps_per_time},
        {"overdamping_N", s.overdamping_N},
        {"functional", s.functional},
        {"uniformity", s.uniformity},
        {"growth_after", s.growth_after},
        {"growth_tolerance", s.growth_tolerance},
        {"ratio_spread", s.ratio_spread},
        {"dump_fields", s.dump_fields}}},
      {"expect", expect},
  };
}

std::string config_hash(const RunConfig& config) {
  json tree = serialize_config(config);
  tree.erase("output");
  tree.erase("jobs");
  const std::string canonical = tree.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> preset_names() {
  return {"thm1-uniform", "thm2-epsilon", "thm3-decay-1d", "thm3-decay-2d", "fig1-overdamping", "selftest"};
}

json preset(const std::string& name) {
  if (name == "selftest") return {{"experiment", "selftest"}};
  if (name == "fig1-overdamping")
    return {{"experiment", "overdamping"},
            {"model", {{"flux", "zero"}, {"d", 1}, {"a", {1.0}}}},
            {"grid", {{"N", 8}, {"L", 2.0 * kPi}}},
            {"study", {{"mode", {1}}, {"points", 20}}}};
  if (name == "thm1-uniform")
    return {{"experiment", "simulate"},
            {"model", {{"flux", "burgers1d"}, {"a", {1.0}}, {"eps", {1.0, 0.5, 0.1, 0.02}}}},
            {"grid", {{"N", 1024}, {"L", 32.0 * kPi}}},
            {"data",
             {{{"kind", "single_mode"}, {"mode", {64}}, {"amplitude", 0.1}},
              {{"kind", "single_mode"},
               {"mode", {64}},
               {"amplitude", 0.1},
               {"preparation", "ill_prepared"},
               {"v_scale", 0.1}}}},
            {"stepper", {{"t_end", 50.0}, {"dt_max", 0.01}, {"sample_ratio", 1.02}, {"dense_until", 1.0}}},
            {"study", {{"functional", true}, {"uniformity", true}}}};
  if (name == "thm2-epsilon")
    return {{"experiment", "epsilon-convergence"},
            {"model", {{"flux", "burgers1d"}, {"a", {1.0}}, {"eps", {0.2, 0.1, 0.05, 0.025}}}},
            {"grid", {{"N", 256}, {"L", 2.0 * kPi}}},
            {"data",
             {{"kind", "gaussian_bump"},
              {"amplitude", 0.1},
              {"width", 2.0},
              {"preparation", "ill_prepared"},
              {"v_scale", 0.5},
              {"v_eps_power", 1.0}}},
            {"stepper", {{"t_end", 2.0}, {"dt_max", 0.002}, {"layer_factor", 0.05}, {"dense_until", 0.05}, {"sample_every", 10}}},
            {"expect", {{{"name", "sup_du"}, {"min", 0.85}, {"max", 1.15}}, {{"name", "int_Z_low"}, {"min", 0.85}}}}};
  if (name == "thm3-decay-1d")
    return {{"experiment", "decay"},
            {"model", {{"flux", "burgers1d"}, {"a", {0.01}}, {"eps", 0.5}}},
            {"grid", {{"N", 4096}, {"L", 200.0 * kPi}}},
            {"data", {{"kind", "random_spectrum"}, {"sigma1", -0.5}, {"amplitude", 0.0005}, {"seed", 7}}},
            {"stepper", {{"t_end", 500.0}, {"dt_max", 0.05}, {"sample_ratio", 1.05}, {"dense_until", 1.0}}},
            {"study", {{"sigma", {0.0}}, {"fit_lo", 5.0}, {"fit_hi", 500.0}}},
            {"expect", {{{"name", "u[sigma=0]"}, {"min", -0.30}, {"max", -0.20}}}}};
  if (name == "thm3-decay-2d")
    return {{"experiment", "decay"},
            {"model", {{"flux", "burgers2d"}, {"a", {0.25, 0.25}}, {"eps", 0.05}}},
            {"grid", {{"N", 256}, {"L", 64.0 * kPi}}},
            {"data",
             {{"kind", "random_spectrum"},
              {"sigma1", -1.0},
              {"amplitude", 0.05},
              {"seed", 7},
              {"preparation", "ill_prepared"},
              {"v_scale", 0.005},
              {"v_eps_power", 1.0}}},
            {"stepper",
             {{"t_end", 50.0},
              {"dt_max", 0.05},
              {"layer_factor", 0.5},
              {"layer_span", 20.0},
              {"sample_ratio", 1.05},
              {"dense_until", 0.05}}},
            {"study",
             {{"sigma", {0.0}},
              {"fit_lo", 10.0},
              {"fit_hi", 50.0},
              {"difference", true},
              {"half_eps_check", true}}},
            {"expect",
             {{{"name", "u[sigma=0]"}, {"min", -0.6}, {"max", -0.4}},
              {{"name", "du[sigma=0]"}, {"min", -1.15}, {"max", -0.85}}}}};
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace relaxlab::cli
