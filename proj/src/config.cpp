#include "ymgap/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ymgap/util.hpp"

namespace ymgap::cli {

using json = nlohmann::ordered_json;

static const std::string kMod = "config";

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(kMod, path + " " + what);
}

// Wraps one JSON object and tracks which keys were consumed, so anything
// left over is reported as an unknown field with its full dotted path.
struct ObjReader {
  json obj;
  std::string path;

  ObjReader(json o, std::string p) : obj(std::move(o)), path(std::move(p)) {
    if (!obj.is_object()) bad(path, "must be an object");
  }

  bool has(const std::string& key) const { return obj.contains(key); }

  json take(const std::string& key) {
    json v = obj.at(key);
    obj.erase(key);
    return v;
  }

  std::string sub(const std::string& key) const { return path.empty() ? key : path + "." + key; }

  void finish() const {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      bad(sub(it.key()), "is not a recognized field");
  }

  double num(const std::string& key, double fallback, double lo, double hi) {
    if (!has(key)) return fallback;
    json v = take(key);
    if (!v.is_number()) bad(sub(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < lo || x > hi)
      bad(sub(key), "must be in [" + format_double(lo) + ", " + format_double(hi) + "]");
    return x;
  }

  int integer(const std::string& key, int fallback, int lo, int hi) {
    if (!has(key)) return fallback;
    json v = take(key);
    if (!v.is_number_integer())
      bad(sub(key), "must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi)
      bad(sub(key), "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
  }

  std::string str(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    json v = take(key);
    if (!v.is_string()) bad(sub(key), "must be a string");
    return v.get<std::string>();
  }
};

void check_group(const std::string& s) {
  std::size_t i = 0;
  std::string family;
  while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) family += s[i++];
  std::string digits = s.substr(i);
  bool numeric = !digits.empty();
  for (char c : digits) numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
  if ((family != "su" && family != "so") || !numeric)
    bad("gauge_group", "must match (su|so)<N>, got '" + s + "'");
  const int n = std::stoi(digits);
  if (family == "su" && n < 2) bad("gauge_group", "su requires N >= 2");
  if (family == "so" && n < 3) bad("gauge_group", "so requires N >= 3");
  if (n > 8) bad("gauge_group", "N > 8 is outside the supported range");
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(kMod, std::string("not valid JSON: ") + e.what());
  }
  ObjReader top(root, "");

  RunConfig c;
  c.gauge_group = top.str("gauge_group", c.gauge_group);
  check_group(c.gauge_group);

  if (top.has("grid")) {
    ObjReader g(top.take("grid"), "grid");
    c.grid.n = g.integer("n", c.grid.n, 2, 32);
    c.grid.h = g.num("h", c.grid.h, 1e-6, 1e3);
    g.finish();
  }
  if (top.has("modes")) {
    ObjReader m(top.take("modes"), "modes");
    c.modes.m = m.integer("M", c.modes.m, 1, 64);
    c.modes.k_max = m.integer("k_max", c.modes.k_max, 1, 16);
    m.finish();
  }
  if (top.has("fock")) {
    ObjReader f(top.take("fock"), "fock");
    c.fock.n_max = f.integer("n_max", c.fock.n_max, 1, 64);
    c.fock.ordering_s = f.num("ordering_s", c.fock.ordering_s, 0.0, 2.0);
    f.finish();
  }
  if (top.has("solver")) {
    ObjReader s(top.take("solver"), "solver");
    c.solver.tol = s.num("tol", c.solver.tol, 1e-15, 0.999);
    c.solver.max_iter = s.integer("max_iter", c.solver.max_iter, 0, 1000000);
    c.solver.deflate_tol = s.num("deflate_tol", c.solver.deflate_tol, 1e-15, 1e-2);
    s.finish();
  }
  c.coupling = top.num("coupling", c.coupling, 0.0, 100.0);
  if (top.has("evolve")) {
    ObjReader e(top.take("evolve"), "evolve");
    c.evolve.dt = e.num("dt", c.evolve.dt, 1e-9, 10.0);
    c.evolve.steps = e.integer("steps", c.evolve.steps, 1, 1000000);
    e.finish();
  }
  if (top.has("propagate")) {
    ObjReader p(top.take("propagate"), "propagate");
    c.propagate.t = p.num("t", c.propagate.t, 0.0, 100.0);
    c.propagate.n_steps = p.integer("N", c.propagate.n_steps, 1, 1 << 20);
    c.propagate.quadrature = p.integer("quadrature", c.propagate.quadrature, 1, 128);
    p.finish();
  }

  if (!top.has("seed")) bad("seed", "is required (every randomized suite must be reproducible)");
  {
    json v = top.take("seed");
    if (!v.is_number_integer()) bad("seed", "must be a non-negative integer");
    if (!v.is_number_unsigned() && v.get<long long>() < 0)
      bad("seed", "must be a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  c.output_dir = top.str("output_dir", c.output_dir);
  if (c.output_dir.empty()) bad("output_dir", "must be non-empty");

  top.finish();
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), kMod, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["gauge_group"] = c.gauge_group;
  j["grid"] = {{"n", c.grid.n}, {"h", c.grid.h}};
  j["modes"] = {{"M", c.modes.m}, {"k_max", c.modes.k_max}};
  j["fock"] = {{"n_max", c.fock.n_max}, {"ordering_s", c.fock.ordering_s}};
  j["solver"] = {{"tol", c.solver.tol},
                 {"max_iter", c.solver.max_iter},
                 {"deflate_tol", c.solver.deflate_tol}};
  j["coupling"] = c.coupling;
  j["evolve"] = {{"dt", c.evolve.dt}, {"steps", c.evolve.steps}};
  j["propagate"] = {
      {"t", c.propagate.t}, {"N", c.propagate.n_steps}, {"quadrature", c.propagate.quadrature}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j.dump(2);
}

}  // namespace ymgap::cli
