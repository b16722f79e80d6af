#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

namespace ymgap::io {

using SpMat = Eigen::SparseMatrix<std::complex<double>>;

// Collects the files one pipeline run writes so a failure can undo them.
// Files are written in place (reruns overwrite); rollback() removes every
// path this sink created or replaced in this run. keep() disarms rollback
// and is the normal exit.
class ArtifactSink {
 public:
  explicit ArtifactSink(std::string dir);
  ~ArtifactSink();

  ArtifactSink(const ArtifactSink&) = delete;
  ArtifactSink& operator=(const ArtifactSink&) = delete;

  // Writes content to <dir>/<name> and returns the full path.
  std::string write_text(const std::string& name, const std::string& content);

  void keep() { armed_ = false; }
  void rollback();

  const std::string& dir() const { return dir_; }
  const std::vector<std::string>& paths() const { return paths_; }

 private:
  std::string dir_;
  std::vector<std::string> paths_;
  bool armed_ = true;
};

// Sparse matrix as text: '#'-prefixed header lines carrying the dimensions
// and the entry format, then one "row col re im" line per stored entry in
// row-major order. Entry values use the shortest round-tripping decimal
// form, so dump -> parse -> dump is byte-stable.
std::string triplet_dump(const SpMat& m, const std::vector<std::string>& comments = {});
SpMat triplet_parse(const std::string& text);

// One CSV line (no trailing newline): cells joined by commas. Cells are
// written verbatim; callers keep commas and newlines out of them.
std::string csv_row(const std::vector<std::string>& cells);

std::string read_text_file(const std::string& path);

// UTC wall clock, ISO 8601 seconds precision. The only non-reproducible
// value a report may contain.
std::string iso_utc_now();

}  // namespace ymgap::io
