#include "ymgap/field_io.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ymgap/util.hpp"

namespace ymgap::io {

namespace fs = std::filesystem;

static const std::string kMod = "io";

ArtifactSink::ArtifactSink(std::string dir) : dir_(std::move(dir)) {
  require(!dir_.empty(), kMod, "output directory must be non-empty");
  std::error_code ec;
  fs::create_directories(dir_, ec);
  require(!ec, kMod, "cannot create output directory '" + dir_ + "': " + ec.message());
}

ArtifactSink::~ArtifactSink() {
  if (armed_) rollback();
}

std::string ArtifactSink::write_text(const std::string& name, const std::string& content) {
  require(name.find('/') == std::string::npos && name.find("..") == std::string::npos, kMod,
          "artifact name '" + name + "' must be a plain file name");
  const std::string path = (fs::path(dir_) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), kMod, "cannot open '" + path + "' for writing");
  out << content;
  out.close();
  require(out.good(), kMod, "write to '" + path + "' failed");
  paths_.push_back(path);
  return path;
}

void ArtifactSink::rollback() {
  std::error_code ec;
  for (const auto& p : paths_) fs::remove(p, ec);
  paths_.clear();
  armed_ = false;
}

std::string triplet_dump(const SpMat& m, const std::vector<std::string>& comments) {
  // Row-major entry order regardless of the in-memory storage order.
  struct Entry {
    int r, c;
    std::complex<double> v;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      entries.push_back({static_cast<int>(it.row()), static_cast<int>(it.col()), it.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });

  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "# rows=" << m.rows() << " cols=" << m.cols() << " nnz=" << entries.size() << "\n";
  out << "# format: row col re im (0-based indices)\n";
  for (const auto& e : entries)
    out << e.r << " " << e.c << " " << format_double(e.v.real()) << " "
        << format_double(e.v.imag()) << "\n";
  return out.str();
}

SpMat triplet_parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long rows = -1, cols = -1;
  std::vector<Eigen::Triplet<std::complex<double>>> trips;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("rows=");
      if (pos != std::string::npos)
        std::sscanf(line.c_str() + pos, "rows=%ld cols=%ld", &rows, &cols);
      continue;
    }
    long r, c;
    double re, im;
    require(std::sscanf(line.c_str(), "%ld %ld %lf %lf", &r, &c, &re, &im) == 4, kMod,
            "malformed triplet line: " + line);
    trips.emplace_back(static_cast<int>(r), static_cast<int>(c), std::complex<double>(re, im));
  }
  require(rows > 0 && cols > 0, kMod, "triplet text is missing the dimension header");
  for (const auto& t : trips)
    require(t.row() < rows && t.col() < cols, kMod, "triplet index outside declared dimensions");
  SpMat m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), kMod, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace ymgap::io
