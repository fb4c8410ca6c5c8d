#include "kpcyl/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace kpcyl {

namespace {

// all binary formats are little-endian float64; bail on big-endian hosts
void requireLittleEndian() {
  const std::uint16_t probe = 1;
  unsigned char byte;
  std::memcpy(&byte, &probe, 1);
  if (byte != 1) throw std::runtime_error("io: big-endian hosts are not supported");
}

void writeDoubles(std::ostream& out, const double* v, std::size_t n) {
  out.write(reinterpret_cast<const char*>(v), std::streamsize(n * sizeof(double)));
}

void readDoubles(std::istream& in, double* v, std::size_t n) {
  in.read(reinterpret_cast<char*>(v), std::streamsize(n * sizeof(double)));
  if (!in) throw std::runtime_error("io: truncated binary file");
}

void renameInto(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("io: cannot rename into '" + path + "'");
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void writeSnapshot(const std::string& path, const SpectralField& f, double time) {
  requireLittleEndian();
  const Grid& grid = f.grid();
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot open '" + tmp + "'");
    double header[4] = {double(grid.nx), double(grid.ny), grid.lx, time};
    writeDoubles(out, header, 4);
    std::vector<double> phys = f.toPhysical();
    writeDoubles(out, phys.data(), phys.size());
    if (!out) throw std::runtime_error("io: write failed for '" + tmp + "'");
  }
  renameInto(tmp, path);
}

SpectralField readSnapshot(const std::string& path, double& time) {
  requireLittleEndian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
  double header[4];
  readDoubles(in, header, 4);
  Grid grid(static_cast<int>(header[0]), static_cast<int>(header[1]), header[2]);
  time = header[3];
  std::vector<double> phys(grid.phys_size());
  readDoubles(in, phys.data(), phys.size());
  return SpectralField::fromPhysical(phys, grid);
}

void writeCheckpoint(const std::string& path, const SpectralField& f, double time,
                     const std::string& config_hash) {
  requireLittleEndian();
  const Grid& grid = f.grid();
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot open '" + tmp + "'");
    double header[4] = {double(grid.nx), double(grid.ny), grid.lx, time};
    writeDoubles(out, header, 4);
    // raw spectral coefficients so the restored state is bit-identical
    writeDoubles(out, reinterpret_cast<const double*>(f.data()), 2 * f.size());
    std::uint64_t hlen = config_hash.size();
    out.write(reinterpret_cast<const char*>(&hlen), sizeof hlen);
    out.write(config_hash.data(), std::streamsize(config_hash.size()));
    if (!out) throw std::runtime_error("io: write failed for '" + tmp + "'");
  }
  renameInto(tmp, path);
}

Checkpoint readCheckpoint(const std::string& path) {
  requireLittleEndian();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
  double header[4];
  readDoubles(in, header, 4);
  Grid grid(static_cast<int>(header[0]), static_cast<int>(header[1]), header[2]);
  Checkpoint cp;
  cp.time = header[3];
  cp.field = SpectralField(grid);
  readDoubles(in, reinterpret_cast<double*>(cp.field.data()), 2 * cp.field.size());
  std::uint64_t hlen = 0;
  in.read(reinterpret_cast<char*>(&hlen), sizeof hlen);
  if (!in || hlen > 4096) throw std::runtime_error("io: corrupt checkpoint '" + path + "'");
  cp.config_hash.resize(hlen);
  in.read(cp.config_hash.data(), std::streamsize(hlen));
  if (!in) throw std::runtime_error("io: truncated checkpoint '" + path + "'");
  return cp;
}

void atomicWriteFile(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot open '" + tmp + "'");
    out.write(contents.data(), std::streamsize(contents.size()));
    if (!out) throw std::runtime_error("io: write failed for '" + tmp + "'");
  }
  renameInto(tmp, path);
}

void writeTimeSeriesCsv(const std::string& path, const TimeSeries& series) {
  std::ostringstream out;
  out << "t";
  for (const auto& col : series.columns) out << "," << col;
  out << ",config_hash\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << fmt(series.times[i]);
    for (double v : series.rows[i]) out << "," << fmt(v);
    out << "," << series.config_hash << "\n";
  }
  atomicWriteFile(path, out.str());
}

}  // namespace kpcyl
