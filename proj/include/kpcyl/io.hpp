#pragma once

#include <cstdint>
#include <string>

#include "kpcyl/evolve.hpp"

namespace kpcyl {

// binary snapshot: nx, ny, lx, time as little-endian float64, then the
// row-major physical samples
void writeSnapshot(const std::string& path, const SpectralField& f, double time);
SpectralField readSnapshot(const std::string& path, double& time);

struct Checkpoint {
  SpectralField field;
  double time = 0.0;
  std::string config_hash;
};

// checkpoint = snapshot + config hash; resume is bit-exact for the same build
void writeCheckpoint(const std::string& path, const SpectralField& f, double time,
                     const std::string& config_hash);
Checkpoint readCheckpoint(const std::string& path);

// write-then-rename; no partially written file survives a failure
void atomicWriteFile(const std::string& path, const std::string& contents);

// gnuplot-friendly CSV: header "t,<columns>,config_hash", one row per record
void writeTimeSeriesCsv(const std::string& path, const TimeSeries& series);

}  // namespace kpcyl
