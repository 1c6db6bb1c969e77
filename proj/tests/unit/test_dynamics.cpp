#include "oamloop/constants.hpp"
#include "oamloop/dynamics.hpp"
#include "oamloop/error.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace oamloop;
using namespace oamloop::dynamics;
using Catch::Matchers::WithinRel;

namespace {

const double w0 = units::nm_to_bohr(50.0);

struct Setup {
  structure::Basis basis;
  std::vector<std::size_t> states;
  std::unique_ptr<coupling::Workspace> ws;
};

Setup make_setup(bool reduced) {
  auto mc = structure::default_model();
  if (reduced) {
    mc.bands.erase(mc.bands.begin()); // no band 1
    mc.bands[0].l_max = 2;
    mc.bands[0].electron_count = 18;
    mc.bands[1].l_max = 2;
  }
  Setup s;
  s.basis = structure::build_basis(mc);
  s.states = s.basis.band_orbitals(2);
  for (auto i : s.basis.band_orbitals(3))
    s.states.push_back(i);
  const double breaks[] = {0.0, 0.5, 26.8};
  const int counts[] = {16, reduced ? 64 : 128};
  s.ws = std::make_unique<coupling::Workspace>(
      s.basis, numerics::build_composite_grid(breaks, counts, reduced ? 24 : 40, 5),
      s.states);
  return s;
}

const Setup &full() {
  static const Setup s = make_setup(false);
  return s;
}

const Setup &reduced() {
  static const Setup s = make_setup(true);
  return s;
}

beam::VortexPulse pulse(double omega_eV, int m = 1, double ratio = 0.0) {
  beam::VortexPulse b;
  b.omega = units::ev_to_hartree(omega_eV);
  b.amplitude = beam::amplitude_from_intensity(3e13, b.omega);
  b.charge = m;
  b.waist = w0;
  b.delta = beam::delta_from_fwhm(10.0);
  b.offset = ratio == 0.0 ? 0.0 : ratio * beam::rho_max(m, w0);
  return b;
}

// int_{-T}^{T} exp(i a t - delta t^2) dt by Gauss-Legendre on many panels
double gaussian_integral(double a, double delta) {
  const double T = 12.0 / std::sqrt(delta);
  const int panels = 400;
  cplx s{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const auto rule = numerics::gauss_legendre(
        16, -T + 2 * T * p / panels, -T + 2 * T * (p + 1) / panels);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = rule.nodes[i];
      s += rule.weights[i] * std::exp(cplx(-delta * t * t, a * t));
    }
  }
  return s.real();
}

double band_energy(int n, int l) {
  const auto &b = full().basis;
  return structure::parabolic_energy(b.band(n), l, b.cage_radius);
}

} // namespace

TEST_CASE("spectral factor against direct integration") {
  const double delta = 1.6e-5;
  for (double d : {0.2, 0.3, 0.35})
    for (double w : {0.25, 0.3, 0.31, 0.4}) {
      const double oracle = gaussian_integral(d - w, delta) + gaussian_integral(d + w, delta);
      CHECK_THAT(spectral_factor(d - 0.5, -0.5, w, delta),
                 Catch::Matchers::WithinAbs(oracle, 1e-9 * std::sqrt(std::numbers::pi / delta)));
    }
}

TEST_CASE("spectral factor examples") {
  const double delta = 1.6e-5, w = 0.294;
  const double peak = std::sqrt(std::numbers::pi / delta);
  CHECK_THAT(spectral_factor(0.0, -w, w, delta),
             WithinRel(peak * (1 + std::exp(-w * w / delta)), 1e-14));
  CHECK(std::abs(spectral_factor(0.0, -w, w, delta) - peak) <= peak * std::exp(-w * w / delta) + 1e-12);
  const double detuned = spectral_factor(0.0, -(w + 6 * std::sqrt(delta)), w, delta);
  CHECK_THAT(detuned / spectral_factor(0.0, -w, w, delta), WithinRel(std::exp(-9.0), 1e-12));
  for (double d : {0.1, 0.29, 0.5})
    for (double om : {0.2, 0.3})
      CHECK(spectral_factor(d, 0.0, om, delta) == spectral_factor(-d, 0.0, -om, delta));
  CHECK_THROWS_AS(spectral_factor(0.0, -w, w, 0.0), DomainError);
}

TEST_CASE("spectral factor peaks at omega = gap") {
  const double delta = 1.6e-5, gap = 0.31;
  double best_w = 0.0, best = 0.0;
  const double step = 1e-5;
  for (int i = 1; i < 60000; ++i) {
    const double w = i * step;
    const double g = spectral_factor(gap, 0.0, w, delta);
    if (g > best) {
      best = g;
      best_w = w;
    }
  }
  CHECK(std::abs(best_w - gap) <= step);
}

TEST_CASE("amplitudes are first order in A0") {
  const auto &s = full();
  beam::VortexPulse b = pulse(8.0, 1, 0.2);
  const auto t1 = coupling::build_transition_set(s.basis, b, *s.ws);
  b.amplitude *= 2.0;
  const auto t2 = coupling::build_transition_set(s.basis, b, *s.ws);
  const auto e1 = excite(s.basis, t1), e2 = excite(s.basis, t2);
  CHECK(e2.amplitudes == 2.0 * e1.amplitudes);
  const Eigen::MatrixXd p1 = e1.populations(), p2 = e2.populations();
  CHECK((p2 - 4.0 * p1).cwiseAbs().maxCoeff() <= 1e-12 * p2.maxCoeff());
  // B = i G M
  for (Eigen::Index r = 0; r < t1.raw.rows(); ++r)
    for (Eigen::Index c = 0; c < t1.raw.cols(); ++c)
      CHECK(e1.amplitudes(r, c) == I * e1.spectral(r, c) * t1.effective()(r, c));
}

TEST_CASE("far off-resonant narrow-band pulse excites nothing") {
  const auto &s = full();
  // |G|^2 has an energy FWHM of 2 sqrt(2 delta ln 2) = 0.5 eV
  const double bw = units::ev_to_hartree(0.5);
  const double delta = bw * bw / (8 * std::log(2.0));
  beam::VortexPulse res = pulse(8.0, 1, 0.2);
  res.delta = delta;
  beam::VortexPulse off = res;
  off.omega = units::ev_to_hartree(22.0); // >= 10 eV from every gap
  for (auto k : s.basis.occupied_in(2))
    for (auto j : s.basis.unoccupied_in(3)) {
      const double gap = units::hartree_to_ev(s.basis.orbitals[j].energy - s.basis.orbitals[k].energy);
      REQUIRE(std::abs(22.0 - gap) >= 10.0);
    }
  const auto pr = excite(s.basis, coupling::build_transition_set(s.basis, res, *s.ws)).populations();
  const auto po = excite(s.basis, coupling::build_transition_set(s.basis, off, *s.ws)).populations();
  CHECK(po.maxCoeff() < 1e-30 * pr.maxCoeff());
}

TEST_CASE("default pulse stays perturbative and strong pulses warn") {
  const auto &s = full();
  const double gap = units::hartree_to_ev(band_energy(3, 3) - band_energy(2, 3));
  const auto weak = excite(s.basis, coupling::build_transition_set(s.basis, pulse(gap), *s.ws));
  CHECK(weak.validity > 0.0);
  CHECK(weak.validity < 0.05);
  CHECK(weak.perturbative());
  CHECK(weak.warnings.empty());

  beam::VortexPulse strong = pulse(gap);
  strong.amplitude *= 10.0;
  const auto hot = excite(s.basis, coupling::build_transition_set(s.basis, strong, *s.ws));
  CHECK_FALSE(hot.perturbative());
  CHECK_FALSE(hot.warnings.empty());
  // validity is the largest excited population of any single source
  CHECK_THAT(hot.validity, WithinRel(hot.populations().colwise().sum().maxCoeff(), 1e-14));
}

TEST_CASE("population table dump") {
  const auto &s = full();
  const auto t = coupling::build_transition_set(s.basis, pulse(8.0), *s.ws);
  std::ostringstream out;
  write_population_table(out, excite(s.basis, t), t);
  CHECK(out.str().rfind("# k j e_k e_j |M| G |B|^2", 0) == 0);
}

TEST_CASE("propagation oracle: zero field and norm") {
  const auto &s = reduced();
  beam::VortexPulse b = pulse(8.0, 1, 0.2);
  b.amplitude = 0.0;
  const auto sources = s.basis.occupied_in(2);
  const auto r = propagate_oracle(s.basis, *s.ws, s.states, sources, b);
  for (std::size_t c = 0; c < sources.size(); ++c)
    for (std::size_t i = 0; i < s.states.size(); ++i) {
      const cplx expected = s.states[i] == sources[c] ? 1.0 : 0.0;
      CHECK(std::abs(r.coefficients(i, c) - expected) < 1e-12);
    }
  CHECK(r.dt <= 0.05 * 2 * std::numbers::pi / b.omega);
}

namespace {

struct Comparison {
  double max_rel = 0.0, max_pop = 0.0, drift = 0.0;
};

Comparison compare(double amplitude) {
  const auto &s = reduced();
  const double omega = band_energy(3, 1) - band_energy(2, 0);
  beam::VortexPulse b = pulse(units::hartree_to_ev(omega), 1, 0.2);
  b.amplitude = amplitude;
  const auto t = coupling::build_transition_set(s.basis, b, *s.ws);
  const auto e = excite(s.basis, t);
  const auto o = propagate_oracle(s.basis, *s.ws, s.states, t.sources, b);
  const Eigen::MatrixXd pop = e.populations();
  Comparison out;
  out.max_pop = pop.maxCoeff();
  out.drift = o.max_norm_drift;
  for (Eigen::Index c = 0; c < pop.cols(); ++c)
    for (Eigen::Index r = 0; r < pop.rows(); ++r) {
      if (pop(r, c) < 1e-3 * out.max_pop)
        continue;
      const auto it = std::find(s.states.begin(), s.states.end(), t.targets[r]);
      const double exact = std::norm(o.coefficients(it - s.states.begin(), c));
      out.max_rel = std::max(out.max_rel, std::abs(exact - pop(r, c)) / exact);
    }
  return out;
}

} // namespace

TEST_CASE("first-order populations agree with direct propagation") {
  // scale the field so the strongest population is about 1e-4
  const Comparison probe = compare(1e-3);
  const double a = 1e-3 * std::sqrt(1e-4 / probe.max_pop);
  const Comparison weak = compare(a);
  CHECK(weak.max_pop < 1e-3);
  CHECK(weak.max_rel < 0.02);
  CHECK(weak.drift < 1e-8);

  // the residual is second order: halving A0 cuts it by four
  const Comparison strong = compare(8 * a);
  const Comparison half = compare(4 * a);
  const double ratio = strong.max_rel / half.max_rel;
  INFO("errors " << strong.max_rel << " " << half.max_rel);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("oracle step-size monitor throws") {
  const auto &s = reduced();
  beam::VortexPulse b = pulse(8.0, 1, 0.2);
  b.amplitude = 0.05;
  OracleOptions opts;
  opts.dt = 8.0; // far above the carrier period
  CHECK_THROWS_AS(propagate_oracle(s.basis, *s.ws, s.states, s.basis.occupied_in(2), b, opts),
                  NumericalError);
}
