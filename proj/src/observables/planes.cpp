#include "oamloop/observables.hpp"

#include "oamloop/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace oamloop::observables {

PlaneSample sample_current_plane(const CurrentEvaluator &current, Plane plane,
                                 double extent, int resolution) {
  if (resolution < 32)
    throw DomainError("plane resolution must be at least 32");
  if (!(extent > 0.0))
    throw DomainError("plane extent must be positive");
  PlaneSample s;
  s.plane = plane;
  s.extent = extent;
  s.resolution = resolution;
  const double h = 2.0 * extent / (resolution - 1);
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      const double u = -extent + ix * h, w = -extent + iy * h;
      s.points.push_back(plane == Plane::xy ? Vec3(u, w, 0.0)
                                            : Vec3(u, 0.0, w));
    }
  s.current.resize(s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i)
    s.current[i] = current(s.points[i]);
  return s;
}

void write_plane(std::ostream &out, const PlaneSample &s) {
  out << "# plane=" << (s.plane == Plane::xy ? "xy" : "xz")
      << " extent=" << s.extent << " resolution=" << s.resolution << '\n';
  out << "# x y z jx jy jz (atomic units)\n";
  out << std::setprecision(10);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Vec3 &p = s.points[i];
    const Vec3 &j = s.current[i];
    out << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << j.x() << ' '
        << j.y() << ' ' << j.z() << '\n';
  }
}

double integrated_magnitude(const PlaneSample &s) {
  const double h = 2.0 * s.extent / (s.resolution - 1);
  std::vector<double> m(s.current.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = s.current[i].norm();
  return numerics::pairwise_sum(std::span<const double>(m)) * h * h;
}

std::vector<double> ring_profile(const CurrentEvaluator &current,
                                 double rho_max, int n_rho, int n_phi) {
  std::vector<double> out(n_rho);
  std::vector<double> ring(n_phi);
  for (int i = 0; i < n_rho; ++i) {
    const double rho = rho_max * (i + 1) / n_rho;
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / n_phi;
      ring[k] = current(Vec3(rho * std::cos(phi), rho * std::sin(phi), 0.0))
                    .norm();
    }
    out[i] = numerics::pairwise_sum(std::span<const double>(ring)) / n_phi;
  }
  return out;
}

int count_maxima(const std::vector<double> &p, double rel_threshold) {
  if (p.empty())
    return 0;
  const double mx = *std::max_element(p.begin(), p.end());
  if (!(mx > 0.0))
    return 0;
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double left = i > 0 ? p[i - 1] : 0.0;
    const double right = i + 1 < p.size() ? p[i + 1] : 0.0;
    if (p[i] > left && p[i] >= right && p[i] > rel_threshold * mx)
      ++count;
  }
  return count;
}

double azimuthal_variation(const CurrentEvaluator &current, double rho,
                           int n_phi) {
  std::vector<double> v(n_phi);
  for (int k = 0; k < n_phi; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_phi;
    v[k] = current(Vec3(rho * std::cos(phi), rho * std::sin(phi), 0.0)).norm();
  }
  const double mean = numerics::pairwise_sum(std::span<const double>(v)) / n_phi;
  if (!(mean > 0.0))
    return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / mean;
}

} // namespace oamloop::observables
