#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ymgap/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lattice gauge spectrum toolkit"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"lie-check", "structure-constant identities of the configured algebra"},
      {"classical-evolve", "leapfrog flow: drift orders and reversibility"},
      {"helmholtz-check", "projector identities on random connections"},
      {"fock-check", "quantization ordering equivalence on random symbols"},
      {"spectrum", "assemble, diagonalize, and bound one configuration"},
      {"gap-scan", "gap versus coupling sweep (CSV)"},
      {"propagate", "coherent-state amplitude with exact reference"},
  };

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  for (const auto& [name, desc] : subs) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", config_path, "JSON configuration file")->required();
    sc->add_option("--out", out_dir, "override config output_dir");
    sc->add_option("--seed", seed, "override config seed")->each([&](const std::string&) {
      seed_set = true;
    });
  }

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  return ymgap::cli::run(sub, config_path, out_dir, seed_set ? &seed : nullptr, std::cout);
}
