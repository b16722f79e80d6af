#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "ymgap/config.hpp"

namespace ymgap::cli {

// Exit codes of run(): kPass when every suite assertion holds, kAssert when
// the pipeline completed but an assertion failed (the report documenting the
// failure is kept), kConfig for schema violations, kError when the pipeline
// itself threw (partial artifacts are removed).
inline constexpr int kPass = 0;
inline constexpr int kAssert = 1;
inline constexpr int kConfig = 2;
inline constexpr int kError = 3;

bool is_subcommand(const std::string& name);

// Executes one pipeline with an already-validated configuration, writing
// <subcommand>_report.json plus the pipeline's CSV tables into
// cfg.output_dir. Identical (cfg, seed) produce identical bytes except for
// the timestamp field in the JSON header. log receives one line per
// artifact and per failed assertion.
int run_config(const std::string& subcommand, const RunConfig& cfg, std::ostream& log);

// Parses config_path, applies the optional output directory and seed
// overrides, and dispatches. Schema and I/O errors are reported on log and
// mapped to kConfig / kError rather than thrown.
int run(const std::string& subcommand, const std::string& config_path,
        const std::string& out_override, const std::uint64_t* seed_override, std::ostream& log);

}  // namespace ymgap::cli
