#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/structure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace oamloop::structure {

namespace {

const char *spectroscopic_letter(int l) {
  static const char *letters[] = {"s", "p", "d", "f", "g", "h", "i", "k", "l",
                                  "m", "n", "o", "q", "r", "t", "u", "v"};
  return l < 17 ? letters[l] : "x";
}

std::vector<int> default_fill_order(int l) {
  std::vector<int> order{0};
  for (int m = 1; m <= l; ++m) {
    order.push_back(m);
    order.push_back(-m);
  }
  return order;
}

void merge_terms(RadialFunction &f) {
  std::vector<RadialFunction::Term> merged;
  for (const auto &t : f.terms) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto &m) {
      return m.center == t.center && m.width == t.width;
    });
    if (it == merged.end())
      merged.push_back(t);
    else
      it->coefficient += t.coefficient;
  }
  f.terms = std::move(merged);
}

void axpy(RadialFunction &f, double a, const RadialFunction &g) {
  for (auto t : g.terms) {
    t.coefficient *= a;
    f.terms.push_back(t);
  }
  merge_terms(f);
}

void validate_bands(const std::vector<BandSpec> &bands) {
  if (bands.empty())
    throw ConfigError("model has no bands");
  std::set<int> seen;
  for (const auto &b : bands) {
    const std::string tag = "band " + std::to_string(b.n) + ": ";
    if (!seen.insert(b.n).second)
      throw ConfigError(tag + "duplicate band index");
    if (b.l_max < 0 || b.l_max > numerics::max_legendre_degree)
      throw ConfigError(tag + "l_max outside [0, 16]");
    if (!(b.shell_width > 0.0) || b.shell_radius < 0.0)
      throw ConfigError(tag + "shell radius/width must be positive");
    if (b.electron_count < 0 || b.electron_count % 2 != 0)
      throw ConfigError(tag + "electron count must be even and >= 0");
    const int capacity = 2 * (b.l_max + 1) * (b.l_max + 1);
    if (b.electron_count > capacity)
      throw ConfigError(tag + std::to_string(b.electron_count) +
                        " electrons exceed capacity " +
                        std::to_string(capacity));
  }
}

} // namespace

ModelConfig default_model() {
  ModelConfig m;
  m.cage_radius = 6.7;
  m.bands = {
      {1, -0.70, 9, 6.7, 0.6, 180},
      {2, -0.30, 5, 6.7, 0.9, 60},
      {3, -0.30 + 0.294, 3, 6.7, 3.0, 0},
  };
  return m;
}

double parabolic_energy(const BandSpec &band, int l, double cage_radius) {
  if (l < 0 || l > band.l_max)
    throw DomainError("l=" + std::to_string(l) + " outside band " +
                      std::to_string(band.n) + " (l_max=" +
                      std::to_string(band.l_max) + ")");
  return band.offset_energy + l * (l + 1.0) / (2.0 * cage_radius * cage_radius);
}

bool SymmetryCoefficients::covers(int l) const {
  return std::any_of(substates.begin(), substates.end(),
                     [l](const Substate &s) { return s.l == l; });
}

std::vector<const SymmetryCoefficients::Substate *>
SymmetryCoefficients::for_l(int l) const {
  std::vector<const Substate *> out;
  for (const auto &s : substates)
    if (s.l == l)
      out.push_back(&s);
  return out;
}

const BandSpec &Basis::band(int n) const {
  for (const auto &b : bands)
    if (b.n == n)
      return b;
  throw DomainError("no band " + std::to_string(n) + " in basis");
}

std::vector<std::size_t> Basis::band_orbitals(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < orbitals.size(); ++i)
    if (orbitals[i].n == n)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> Basis::occupied_in(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i : band_orbitals(n))
    if (orbitals[i].occupied)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> Basis::unoccupied_in(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i : band_orbitals(n))
    if (!orbitals[i].occupied)
      out.push_back(i);
  return out;
}

int Basis::max_l() const {
  int l = 0;
  for (const auto &b : bands)
    l = std::max(l, b.l_max);
  return l;
}

int Basis::occupied_electrons() const {
  int count = 0;
  for (const auto &o : orbitals)
    if (o.occupied)
      count += o.spin_degeneracy;
  return count;
}

Basis build_basis(const ModelConfig &config) {
  validate_bands(config.bands);
  if (!(config.cage_radius > 0.0))
    throw ConfigError("cage radius must be positive");

  Basis basis;
  basis.bands = config.bands;
  std::sort(basis.bands.begin(), basis.bands.end(),
            [](const BandSpec &a, const BandSpec &b) { return a.n < b.n; });
  basis.cage_radius = config.cage_radius;

  // radial_of[band position][l] -> index into basis.radials
  std::vector<std::vector<std::size_t>> radial_of(basis.bands.size());
  for (std::size_t bi = 0; bi < basis.bands.size(); ++bi) {
    const BandSpec &band = basis.bands[bi];
    radial_of[bi].resize(band.l_max + 1);
    for (int l = 0; l <= band.l_max; ++l) {
      RadialFunction f = gaussian_shell(band.shell_radius, band.shell_width);
      if (config.orthogonalize) {
        // Two Gram-Schmidt passes against lower bands that carry this l.
        for (int pass = 0; pass < 2; ++pass) {
          for (std::size_t lower = 0; lower < bi; ++lower) {
            if (basis.bands[lower].l_max < l)
              continue;
            const RadialFunction &g = basis.radials[radial_of[lower][l]];
            axpy(f, -radial_overlap(g, f), g);
          }
        }
        const double norm = std::sqrt(radial_overlap(f, f));
        for (auto &t : f.terms)
          t.coefficient /= norm;
      }
      // Reuse an identical radial function (typical when lower bands cover
      // every l of this band).
      std::size_t index = basis.radials.size();
      for (std::size_t k = 0; k < basis.radials.size(); ++k) {
        const auto &other = basis.radials[k].terms;
        if (other.size() == f.terms.size() &&
            std::equal(other.begin(), other.end(), f.terms.begin(),
                       [](const auto &a, const auto &b) {
                         return a.coefficient == b.coefficient &&
                                a.center == b.center && a.width == b.width;
                       })) {
          index = k;
          break;
        }
      }
      if (index == basis.radials.size())
        basis.radials.push_back(std::move(f));
      radial_of[bi][l] = index;
    }
  }

  const double max_shift = units::ev_to_hartree(0.5);
  for (const auto &[rep, shift] : config.rep_shift)
    if (std::abs(shift) > max_shift)
      throw ConfigError("symmetry splitting for '" + rep +
                        "' exceeds 0.5 eV");

  for (std::size_t bi = 0; bi < basis.bands.size(); ++bi) {
    const BandSpec &band = basis.bands[bi];
    struct Candidate {
      Orbital orbital;
      int priority;
    };
    std::vector<Candidate> band_orbitals;
    for (int l = 0; l <= band.l_max; ++l) {
      const double e0 = parabolic_energy(band, l, config.cage_radius);
      if (config.symmetry && config.symmetry->covers(l)) {
        int priority = 0;
        for (const auto *s : config.symmetry->for_l(l)) {
          Orbital o;
          o.n = band.n;
          o.l = l;
          o.rep = s->rep;
          o.lambda = s->lambda;
          auto shift = config.rep_shift.find(s->rep);
          o.energy = e0 + (shift != config.rep_shift.end() ? shift->second : 0.0);
          o.coefficients = s->coefficients;
          o.radial_index = radial_of[bi][l];
          band_orbitals.push_back({std::move(o), priority++});
        }
      } else {
        std::vector<int> fill = default_fill_order(l);
        if (auto it = config.partial_fill.find(band.n);
            it != config.partial_fill.end()) {
          std::vector<int> custom;
          for (int m : it->second)
            if (std::abs(m) <= l &&
                std::find(custom.begin(), custom.end(), m) == custom.end())
              custom.push_back(m);
          for (int m : fill)
            if (std::find(custom.begin(), custom.end(), m) == custom.end())
              custom.push_back(m);
          fill = std::move(custom);
        }
        for (int m = -l; m <= l; ++m) {
          Orbital o;
          o.n = band.n;
          o.l = l;
          o.rep = spectroscopic_letter(l);
          o.lambda = m + l;
          o.energy = e0;
          o.coefficients.assign(2 * l + 1, cplx{0.0, 0.0});
          o.coefficients[m + l] = 1.0;
          o.radial_index = radial_of[bi][l];
          const int priority = static_cast<int>(
              std::find(fill.begin(), fill.end(), m) - fill.begin());
          band_orbitals.push_back({std::move(o), priority});
        }
      }
    }

    // Occupy the lowest-energy spatial orbitals; ties within a shell follow
    // the fill priority.
    std::vector<std::size_t> order(band_orbitals.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto &oa = band_orbitals[a].orbital;
      const auto &ob = band_orbitals[b].orbital;
      if (oa.energy != ob.energy)
        return oa.energy < ob.energy;
      if (oa.l != ob.l)
        return oa.l < ob.l;
      return band_orbitals[a].priority < band_orbitals[b].priority;
    });
    const std::size_t n_occ = static_cast<std::size_t>(band.electron_count / 2);
    if (n_occ > order.size())
      throw ConfigError("band " + std::to_string(band.n) +
                        ": electron count exceeds available orbitals");
    for (std::size_t i = 0; i < n_occ; ++i)
      band_orbitals[order[i]].orbital.occupied = true;

    for (auto &c : band_orbitals)
      basis.orbitals.push_back(std::move(c.orbital));
  }
  return basis;
}

cplx angular_value(const Orbital &orbital, const Vec3 &unit) {
  cplx v{0.0, 0.0};
  for (int m = -orbital.l; m <= orbital.l; ++m) {
    const cplx c = orbital.coefficient(m);
    if (c != cplx{0.0, 0.0})
      v += c * numerics::spherical_harmonic(orbital.l, m, unit);
  }
  return v;
}

CVec3 angular_gradient(const Orbital &orbital, const Vec3 &unit) {
  CVec3 g = CVec3::Zero();
  for (int m = -orbital.l; m <= orbital.l; ++m) {
    const cplx c = orbital.coefficient(m);
    if (c != cplx{0.0, 0.0})
      g += c * numerics::spherical_harmonic_angular_gradient(orbital.l, m, unit);
  }
  return g;
}

cplx evaluate_orbital(const Orbital &orbital, const Basis &basis,
                      const Vec3 &point) {
  const double r = point.norm();
  const Vec3 unit = r > 0.0 ? Vec3(point / r) : Vec3(0.0, 0.0, 1.0);
  return basis.radials[orbital.radial_index].value(r) *
         angular_value(orbital, unit);
}

CVec3 evaluate_gradient(const Orbital &orbital, const Basis &basis,
                        const Vec3 &point) {
  const double r = point.norm();
  if (r < 1e-12)
    throw SingularPointError("orbital gradient undefined at the origin");
  const Vec3 unit = point / r;
  const RadialFunction &radial = basis.radials[orbital.radial_index];
  return radial.derivative(r) * angular_value(orbital, unit) *
             unit.cast<cplx>() +
         (radial.value(r) / r) * angular_gradient(orbital, unit);
}

} // namespace oamloop::structure
