#include "oamloop/app/output.hpp"

#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/version.hpp"

#include <fstream>
#include <sstream>
#include <ostream>

namespace oamloop::app {

namespace {

std::ofstream open(const std::filesystem::path &p) {
  std::ofstream f(p);
  if (!f)
    throw ConfigError("cannot write " + p.string());
  f.precision(12);
  return f;
}

std::string ratio_text(const PointResult &r) {
  if (!r.rho_ratio)
    return "";
  std::ostringstream os;
  os.precision(12);
  os << *r.rho_ratio;
  return os.str();
}

} // namespace

void write_scan_csv(std::ostream &out, const ScanResult &scan,
                    const RunConfig &config) {
  out.precision(12);
  out << "version,config_hash,charge,omega_eV,rho_ratio,rho0_nm,"
         "intensity_W_cm2,mz_au,mz_muB,B_center_uT,B_center_au,"
         "mperp_over_mz,loop_current_nA,effective_radius_bohr,j_rho,j_phi,"
         "j_z,validity,perturbative,pruned,dominant\n";
  for (const auto &rec : scan.records) {
    const PointResult &r = rec.result;
    const auto &m = r.magnetics;
    out << version_tag << ',' << config.hash_hex() << ',' << r.charge << ','
        << r.omega_eV << ',' << ratio_text(r) << ',' << r.rho0_nm << ','
        << r.intensity << ',' << m.moment_au.z() << ',' << m.moment_z_muB
        << ',' << m.b_center_z_T * 1e6 << ',' << m.b_center_au.z() << ','
        << m.transverse_ratio << ','
        << units::ampere_from_au(m.loop_current_au) * 1e9 << ','
        << m.effective_radius << ',' << r.norms.rho << ',' << r.norms.phi
        << ',' << r.norms.z << ',' << r.validity << ','
        << (r.perturbative ? 1 : 0) << ',' << r.pruned << ',' << r.dominant
        << '\n';
  }
}

void write_scan_long(std::ostream &out, const ScanResult &scan,
                     const RunConfig &config) {
  out.precision(12);
  out << "version,config_hash,record,charge,omega_eV,rho_ratio,observable,"
         "value\n";
  std::size_t idx = 0;
  for (const auto &rec : scan.records) {
    const PointResult &r = rec.result;
    const auto &m = r.magnetics;
    const std::pair<const char *, double> obs[] = {
        {"mz_au", m.moment_au.z()},
        {"mz_muB", m.moment_z_muB},
        {"B_center_uT", m.b_center_z_T * 1e6},
        {"loop_current_nA", units::ampere_from_au(m.loop_current_au) * 1e9},
        {"j_rho", r.norms.rho},
        {"j_phi", r.norms.phi},
        {"j_z", r.norms.z},
        {"validity", r.validity},
    };
    for (const auto &[name, value] : obs)
      out << version_tag << ',' << config.hash_hex() << ',' << idx << ','
          << r.charge << ',' << r.omega_eV << ',' << ratio_text(r) << ','
          << name << ',' << value << '\n';
    ++idx;
  }
}

void write_summary(std::ostream &out, const std::vector<std::string> &lines,
                   const RunConfig &config) {
  out << "version: " << version_tag << '\n';
  out << "config_hash: " << config.hash_hex() << '\n';
  for (const auto &l : lines)
    out << l << '\n';
}

std::vector<std::filesystem::path>
write_scan_files(const std::filesystem::path &dir, const ScanResult &scan,
                 const RunConfig &config) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  std::string stem = scan.command;
  for (auto &ch : stem)
    if (ch == '-')
      ch = '_';
  {
    const auto p = dir / (stem + ".csv");
    auto f = open(p);
    write_scan_csv(f, scan, config);
    paths.push_back(p);
  }
  if (config.long_format) {
    const auto p = dir / (stem + "_long.csv");
    auto f = open(p);
    write_scan_long(f, scan, config);
    paths.push_back(p);
  }
  {
    std::vector<std::string> lines = scan.summary;
    std::size_t warned = 0;
    for (const auto &rec : scan.records)
      if (!rec.result.perturbative)
        ++warned;
    lines.push_back("records: " + std::to_string(scan.records.size()));
    lines.push_back("records_beyond_validity_threshold: " +
                    std::to_string(warned));
    const auto p = dir / (stem + "_summary.txt");
    auto f = open(p);
    write_summary(f, lines, config);
    paths.push_back(p);
  }
  return paths;
}

std::vector<std::filesystem::path>
write_planes_files(const std::filesystem::path &dir, const PlanesResult &pl,
                   const RunConfig &config) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto *s : {&pl.xy, &pl.xz}) {
    const auto p = dir / (s->plane == observables::Plane::xy ? "plane_xy.dat"
                                                            : "plane_xz.dat");
    auto f = open(p);
    f << "# " << version_tag << " config_hash=" << config.hash_hex() << '\n';
    observables::write_plane(f, *s);
    paths.push_back(p);
  }
  {
    const auto p = dir / "ring_profile.csv";
    auto f = open(p);
    f << "version,config_hash,rho_bohr,mean_abs_j\n";
    const std::size_t n = pl.ring_profile.size();
    for (std::size_t i = 0; i < n; ++i)
      f << version_tag << ',' << config.hash_hex() << ','
        << config.plane_extent * (i + 1) / n << ',' << pl.ring_profile[i]
        << '\n';
    paths.push_back(p);
  }
  {
    const auto p = dir / "planes_summary.txt";
    auto f = open(p);
    write_summary(f, pl.summary, config);
    paths.push_back(p);
  }
  return paths;
}

} // namespace oamloop::app
