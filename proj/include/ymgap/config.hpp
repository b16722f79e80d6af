#pragma once

#include <cstdint>
#include <string>

namespace ymgap::cli {

// One run's full configuration. Every field except seed has a default; the
// JSON schema, the defaults, and which pipeline reads which block are
// documented in docs/config.md. seed has no default so that every
// randomized suite is reproducible by construction.
struct RunConfig {
  std::string gauge_group = "su2";  // (su|so)<N>

  struct GridCfg {
    int n = 6;       // sites per axis, periodic
    double h = 1.0;  // lattice spacing
  } grid;

  struct ModesCfg {
    int m = 3;      // JSON key "M": number of lowest transversal modes kept
    int k_max = 2;  // admissible per-component momentum magnitude
  } modes;

  struct FockCfg {
    int n_max = 6;           // total-grade truncation
    double ordering_s = 1.0; // heat parameter reported by ordering checks
  } fock;

  struct SolverCfg {
    double tol = 1e-8;
    int max_iter = 0;  // 0 = dimension-derived cap
    double deflate_tol = 1e-10;
  } solver;

  double coupling = 1.0;

  struct EvolveCfg {
    double dt = 0.1;
    int steps = 40;
  } evolve;

  struct PropagateCfg {
    double t = 0.3;      // total time
    int n_steps = 16;    // JSON key "N": Chernoff subdivisions
    int quadrature = 8;  // step expansion degree, >= symbol degree
  } propagate;

  std::uint64_t seed = 0;  // mandatory in the JSON
  std::string output_dir = "ymgap_out";
};

// Parses and schema-validates. Violations throw with the offending field's
// dotted path in the message ("config: fock.n_max must be ..."); unknown
// keys are rejected the same way.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Canonical JSON echo of a parsed configuration: fixed key order, shortest
// round-tripping numbers. Embedded verbatim in every report header, so
// identical configurations produce identical bytes.
std::string config_to_json(const RunConfig& c);

}  // namespace ymgap::cli
