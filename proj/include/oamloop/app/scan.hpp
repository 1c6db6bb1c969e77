#pragma once

#include "oamloop/app/model.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace oamloop::app {

/// Evaluates f(0..n-1) on up to `threads` workers; results are stored by
/// index, so the output never depends on scheduling. The first exception
/// thrown by any task is rethrown.
template <typename F>
auto parallel_map(std::size_t n, int threads, F &&f)
    -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n)
          return;
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error)
            error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  return out;
}

struct ScanRecord {
  std::vector<double> axes; ///< values in axis_names order
  PointResult result;
};

struct ScanResult {
  std::string command;
  std::vector<std::string> axis_names;
  std::vector<ScanRecord> records;
  /// "key: value" lines for the run summary
  std::vector<std::string> summary;
};

/// m_z versus photon energy at fixed charge and offset.
ScanResult run_spectrum(const Model &model, int threads);

/// photon energy x rho0/rho_max grid at fixed charge.
ScanResult run_heatmap(const Model &model, int threads);

struct ChargeSweepAnalysis {
  int cutoff = -1;     ///< largest charge with nonzero response; -1 if none
  bool cutoff_found = false; ///< a swept charge above the cutoff is zero
  int argmax = 0;
  double flatness = -1.0; ///< |B(20) - B(14)| / |B(14)|, -1 if not swept
};

/// One record per charge at fixed photon energy and offset.
ScanResult run_charge_sweep(const Model &model, int threads,
                            ChargeSweepAnalysis *analysis = nullptr);

ChargeSweepAnalysis analyze_charge_sweep(const ScanResult &sweep);

struct PlanesResult {
  observables::PlaneSample xy, xz;
  std::vector<double> ring_profile;
  int ring_count = 0;
  double azimuthal_variation = 0.0;
  double refinement_change = 0.0; ///< |I_64 - I_32| / I_64 of sum |j| dA
  double omega_eV = 0.0;
  double offset_bohr = 0.0;
  bool empty = false;
  std::vector<std::string> summary;
};

PlanesResult run_planes(const Model &model, int threads);

} // namespace oamloop::app
