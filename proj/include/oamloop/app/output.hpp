#pragma once

#include "oamloop/app/scan.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace oamloop::app {

/// One row per scan point; every row carries the version tag and config hash.
void write_scan_csv(std::ostream &out, const ScanResult &scan,
                    const RunConfig &config);

/// One observable per row: version,config_hash,record,charge,omega_eV,
/// rho_ratio,observable,value.
void write_scan_long(std::ostream &out, const ScanResult &scan,
                     const RunConfig &config);

void write_summary(std::ostream &out, const std::vector<std::string> &lines,
                   const RunConfig &config);

/// <command>.csv, optionally <command>_long.csv, and <command>_summary.txt.
/// Returns the written paths.
std::vector<std::filesystem::path>
write_scan_files(const std::filesystem::path &dir, const ScanResult &scan,
                 const RunConfig &config);

/// plane_xy.dat, plane_xz.dat, ring_profile.csv, planes_summary.txt.
std::vector<std::filesystem::path>
write_planes_files(const std::filesystem::path &dir, const PlanesResult &planes,
                   const RunConfig &config);

} // namespace oamloop::app
