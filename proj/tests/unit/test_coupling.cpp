#include "oamloop/constants.hpp"
#include "oamloop/coupling.hpp"
#include "oamloop/error.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace oamloop;
using namespace oamloop::coupling;
using structure::Basis;

namespace {

const double w0 = units::nm_to_bohr(50.0);

const Basis &basis() {
  static const Basis b = structure::build_basis(structure::default_model());
  return b;
}

numerics::QuadratureGrid default_grid() {
  const double breaks[] = {0.0, 0.5, 26.8};
  const int counts[] = {16, 128};
  return numerics::build_composite_grid(breaks, counts, 40, 5);
}

std::vector<std::size_t> bands23() {
  auto v = basis().band_orbitals(2);
  for (auto i : basis().band_orbitals(3))
    v.push_back(i);
  return v;
}

const Workspace &workspace() {
  static const Workspace ws(basis(), default_grid(), bands23());
  return ws;
}

beam::VortexPulse pulse(int m, double ratio = 0.0) {
  beam::VortexPulse b;
  b.amplitude = 0.002;
  b.charge = m;
  b.waist = w0;
  b.omega = units::ev_to_hartree(8.0);
  b.delta = 1.6e-5;
  b.offset = ratio == 0.0 ? 0.0 : ratio * beam::rho_max(m, w0);
  return b;
}

Vec3 random_point(std::mt19937_64 &rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), r(rmin, rmax);
  Vec3 d;
  do
    d = Vec3(u(rng), u(rng), u(rng));
  while (d.norm() < 1e-3 || d.norm() > 1.0);
  return r(rng) * d.normalized();
}

int m_of(std::size_t i) { return dominant_m(basis().orbitals[i]); }
int l_of(std::size_t i) { return basis().orbitals[i].l; }

} // namespace

TEST_CASE("uniform field reduces to -i A.grad psi") {
  beam::VortexPulse b = pulse(0);
  b.waist = 1e12; // flat over the cage
  std::mt19937_64 rng(8);
  const auto &o = basis().orbitals[basis().band_orbitals(3)[0]];
  for (int i = 0; i < 10; ++i) {
    const Vec3 p = random_point(rng, 1.0, 12.0);
    const cplx expected =
        -I * beam::spatial_mode(b, p).value * structure::evaluate_gradient(o, basis(), p).x();
    CHECK(std::abs(apply_interaction(b, o, basis(), p) - expected) <
          1e-14 * std::abs(expected) + 1e-300);
  }
}

TEST_CASE("expanded and unexpanded operator forms agree") {
  std::mt19937_64 rng(50);
  const auto targets = bands23();
  for (int m : {0, 1, 3})
    for (int i = 0; i < 50; ++i) {
      beam::VortexPulse b = pulse(m == 0 ? 1 : m, 0.4);
      b.charge = m;
      const auto &o = basis().orbitals[targets[i % targets.size()]];
      const Vec3 p = random_point(rng, 2.0, 14.0);
      const cplx a = apply_interaction(b, o, basis(), p);
      const cplx u = apply_interaction_unexpanded(b, o, basis(), p);
      const double scale = b.amplitude *
                           std::max(std::abs(structure::evaluate_orbital(o, basis(), p)),
                                    structure::evaluate_gradient(o, basis(), p).norm());
      CHECK(std::abs(a - u) <= 1e-10 * std::max(scale, 1e-12));
    }
}

TEST_CASE("centered m = 1 beam on an s orbital has Fourier components 0 and 2") {
  const beam::VortexPulse b = pulse(1);
  const auto &s = basis().orbitals[basis().band_orbitals(3)[0]];
  REQUIRE(s.l == 0);
  const int n = 64;
  for (double theta : {0.7, 1.3}) {
    const double r = 6.0;
    std::vector<cplx> f(n);
    for (int k = 0; k < n; ++k) {
      const double phi = 2 * std::numbers::pi * k / n;
      f[k] = apply_interaction(
          b, s, basis(),
          r * Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)));
    }
    double biggest = 0.0, stray = 0.0;
    for (int q = -n / 2 + 1; q < n / 2; ++q) {
      cplx c{0.0, 0.0};
      for (int k = 0; k < n; ++k)
        c += f[k] * std::exp(-I * (2 * std::numbers::pi * q * k / n));
      const double mag = std::abs(c) / n;
      if (q == 0 || q == 2)
        biggest = std::max(biggest, mag);
      else
        stray = std::max(stray, mag);
    }
    CHECK(biggest > 0.0);
    CHECK(stray < 1e-10 * biggest);
  }
}

TEST_CASE("default transition table shape, zero field and linearity") {
  const auto set = build_transition_set(basis(), pulse(1), workspace());
  CHECK(set.raw.rows() == 16);
  CHECK(set.raw.cols() == 30);
  CHECK(set.sources.size() == 30);
  CHECK(set.targets.size() == 16);

  beam::VortexPulse zero = pulse(1);
  zero.amplitude = 0.0;
  const auto z = build_transition_set(basis(), zero, workspace());
  CHECK(z.raw.cwiseAbs().maxCoeff() == 0.0);

  beam::VortexPulse twice = pulse(1, 0.3);
  const auto one = build_transition_set(basis(), twice, workspace());
  twice.amplitude *= 2.0;
  const auto two = build_transition_set(basis(), twice, workspace());
  CHECK(two.raw == 2.0 * one.raw);
  const auto rescaled = rescale(one, twice.amplitude);
  CHECK((rescaled.raw - two.raw).cwiseAbs().maxCoeff() <= 1e-15 * two.max_abs);
}

TEST_CASE("azimuthal and parity selection for centered beams") {
  for (int m = 0; m <= 9; ++m) {
    const auto set = build_transition_set(basis(), pulse(m), workspace());
    auto allowed_m = [&](Eigen::Index r, Eigen::Index c) {
      const int dm = m_of(set.targets[r]) - m_of(set.sources[c]);
      return dm == m - 1 || dm == m + 1;
    };
    auto allowed_parity = [&](Eigen::Index r, Eigen::Index c) {
      return (l_of(set.targets[r]) + l_of(set.sources[c]) + m + 1) % 2 == 0;
    };
    double scale = 0.0;
    for (Eigen::Index r = 0; r < set.raw.rows(); ++r)
      for (Eigen::Index c = 0; c < set.raw.cols(); ++c)
        if (allowed_m(r, c) && allowed_parity(r, c))
          scale = std::max(scale, std::abs(set.raw(r, c)));
    double forbidden_m = 0.0, forbidden_parity = 0.0;
    for (Eigen::Index r = 0; r < set.raw.rows(); ++r)
      for (Eigen::Index c = 0; c < set.raw.cols(); ++c) {
        // no allowed pair at all: judge each entry by its integrand size
        const double v = scale > 0.0 ? std::abs(set.raw(r, c)) / scale
                                     : set.significance(r, c);
        if (!allowed_m(r, c))
          forbidden_m = std::max(forbidden_m, v);
        if (!allowed_parity(r, c))
          forbidden_parity = std::max(forbidden_parity, v);
        if (set.is_pruned(r, c))
          CHECK(set.effective()(r, c) == cplx{0.0, 0.0});
      }
    INFO("m_OAM = " << m << " allowed scale " << scale);
    CHECK(forbidden_m < 1e-10);
    CHECK(forbidden_parity < 1e-10);
  }
}

TEST_CASE("beyond the largest transferable charge nothing couples") {
  // occupied m >= -4 and target m <= 3 cap the centered transfer at dm = 8
  const auto at8 = build_transition_set(basis(), pulse(8), workspace());
  CHECK(at8.effective().cwiseAbs().maxCoeff() > 0.0);
  for (int m : {9, 10, 14}) {
    const auto set = build_transition_set(basis(), pulse(m), workspace());
    CHECK(set.effective().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("m = 0 couples dm = +-1 and m = 2 couples dm = 1, 3") {
  for (int m : {0, 2}) {
    const auto set = build_transition_set(basis(), pulse(m), workspace());
    const auto eff = set.effective();
    for (Eigen::Index r = 0; r < eff.rows(); ++r)
      for (Eigen::Index c = 0; c < eff.cols(); ++c)
        if (eff(r, c) != cplx{0.0, 0.0}) {
          const int dm = m_of(set.targets[r]) - m_of(set.sources[c]);
          if (m == 0)
            CHECK(std::abs(dm) == 1);
          else
            CHECK((dm == 1 || dm == 3));
        }
  }
}

TEST_CASE("at the intensity ring the dipole rule dl = 1 dominates") {
  const auto set = build_transition_set(basis(), pulse(1, 1.0), workspace());
  double dipole = 0.0, other = 0.0;
  for (Eigen::Index r = 0; r < set.raw.rows(); ++r)
    for (Eigen::Index c = 0; c < set.raw.cols(); ++c) {
      const double v = std::abs(set.raw(r, c));
      if (std::abs(l_of(set.targets[r]) - l_of(set.sources[c])) == 1)
        dipole = std::max(dipole, v);
      else
        other = std::max(other, v);
    }
  CHECK(other * 10.0 <= dipole);
}

TEST_CASE("real static field gives a Hermitian coupling matrix") {
  beam::VortexPulse b = pulse(0);
  b.offset = 200.0;
  const auto states = bands23();
  const auto h = coupling_matrix(workspace(), states, states, b).value;
  const double scale = h.cwiseAbs().maxCoeff();
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10 * scale);
  // degenerate d block of band 3
  std::vector<Eigen::Index> d;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (basis().orbitals[states[i]].n == 3 && l_of(states[i]) == 2)
      d.push_back(static_cast<Eigen::Index>(i));
  for (auto a : d)
    for (auto c : d)
      CHECK(std::abs(h(a, c) - std::conj(h(c, a))) < 1e-10 * scale);
}

TEST_CASE("slow pointwise path matches the tabulated one") {
  const auto grid = numerics::build_grid(0.5, 26.8, 24, 20, 5);
  const auto states = bands23();
  const Workspace ws(basis(), grid, states);
  const beam::VortexPulse b = pulse(2, 0.5);
  const std::vector<std::size_t> bras = {basis().band_orbitals(3)[4],
                                         basis().band_orbitals(3)[9]};
  const std::vector<std::size_t> kets = {basis().band_orbitals(2)[5],
                                         basis().band_orbitals(2)[20]};
  const auto m = coupling_matrix(ws, bras, kets, b).value;
  const double scale = m.cwiseAbs().maxCoeff();
  REQUIRE(scale > 0.0);
  for (std::size_t r = 0; r < bras.size(); ++r)
    for (std::size_t c = 0; c < kets.size(); ++c) {
      const cplx slow = matrix_element(basis(), bras[r], kets[c], b, grid);
      CHECK(std::abs(slow - m(r, c)) <= 1e-12 * scale);
    }
}

TEST_CASE("offset beam equals beam-centered evaluation of shifted orbitals") {
  const auto grid = numerics::build_grid(0.5, 26.8, 40, 24, 5);
  beam::VortexPulse shifted = pulse(3, 0.6);
  shifted.offset_angle = 0.9;
  beam::VortexPulse centered = shifted;
  centered.offset = 0.0;
  const Vec3 axis = beam::axis_position(shifted);
  const auto j = basis().band_orbitals(3)[6];
  const auto k = basis().band_orbitals(2)[11];
  const auto &oj = basis().orbitals[j];
  const auto &ok = basis().orbitals[k];
  // beam frame: s = r - rho0; the orbitals sit at +rho0
  cplx oracle{0.0, 0.0};
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < grid.angular_nodes.size(); ++ia) {
      const Vec3 r = grid.point(ir, ia);
      const Vec3 s = r - axis;
      const auto a = beam::spatial_mode(centered, s);
      const cplx h = -I * a.value * structure::evaluate_gradient(ok, basis(), s + axis).x() -
                     0.5 * I * a.gradient.x() * structure::evaluate_orbital(ok, basis(), s + axis);
      oracle += grid.weight(ir, ia) *
                std::conj(structure::evaluate_orbital(oj, basis(), s + axis)) * h;
    }
  const cplx direct = matrix_element(basis(), j, k, shifted, grid);
  CHECK(std::abs(direct - oracle) <= 1e-8 * std::abs(oracle));
}

TEST_CASE("rotating beam and polarization about z only changes phases") {
  beam::VortexPulse a = pulse(2, 0.5), b = a;
  b.offset_angle = 0.7;
  b.polarization = Vec3(std::cos(0.7), std::sin(0.7), 0.0);
  const auto sa = build_transition_set(basis(), a, workspace());
  const auto sb = build_transition_set(basis(), b, workspace());
  const double scale = sa.raw.cwiseAbs().maxCoeff();
  CHECK((sa.raw.cwiseAbs() - sb.raw.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-8 * scale);
}

TEST_CASE("pruning is recorded and auditable") {
  const auto set = build_transition_set(basis(), pulse(1), workspace());
  CHECK_FALSE(set.pruned.empty());
  const auto eff = set.effective();
  std::size_t zeros = 0;
  for (Eigen::Index r = 0; r < eff.rows(); ++r)
    for (Eigen::Index c = 0; c < eff.cols(); ++c)
      if (eff(r, c) == cplx{0.0, 0.0})
        ++zeros;
  CHECK(zeros == set.pruned.size());
  for (const auto &[r, c] : set.pruned)
    CHECK((std::abs(set.raw(r, c)) < 1e-14 * set.max_abs || set.significance(r, c) < 1e-13));
}

TEST_CASE("transition table dump") {
  const auto set = build_transition_set(basis(), pulse(1), workspace());
  std::ostringstream out;
  write_transition_table(out, set, basis());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# k j l_k m_k l_j m_j", 0) == 0);
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#')
      ++rows;
  CHECK(rows == 480);
}

TEST_CASE("grid exactness is enforced") {
  const auto coarse = numerics::build_grid(0.5, 26.8, 16, 14, 5);
  const Workspace ws(basis(), coarse, bands23());
  CHECK_NOTHROW(build_transition_set(basis(), pulse(1), ws));
  const auto too_coarse = numerics::build_grid(0.5, 26.8, 16, 12);
  const Workspace bad(basis(), too_coarse, bands23());
  CHECK_THROWS_AS(build_transition_set(basis(), pulse(1), bad), DomainError);
}

TEST_CASE("convergence metadata under grid refinement") {
  TransitionOptions opts;
  opts.convergence_check = true;
  const auto set = build_transition_set(basis(), pulse(1, 0.2), workspace(), opts);
  REQUIRE(set.convergence.size() == set.raw.size());
  CHECK(set.convergence.maxCoeff() < 1e-6);
}

TEST_CASE("workspace rejects the origin") {
  const double breaks[] = {0.0, 1.0};
  const int counts[] = {17};
  auto g = numerics::build_composite_grid(breaks, counts, 14, 5);
  g.radial_nodes[8] = 0.0;
  CHECK_THROWS_AS(Workspace(basis(), g, bands23()), SingularPointError);
}
