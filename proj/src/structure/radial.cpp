#include "oamloop/constants.hpp"
#include "oamloop/structure.hpp"

#include <cmath>

namespace oamloop::structure {

namespace {

// int_0^inf r^2 exp(-(r - c)^2 / sigma^2) dr
double shell_moment(double c, double sigma) {
  const double s2 = sigma * sigma;
  const double g = std::exp(-c * c / s2);
  const double i0 = 0.5 * sigma * std::sqrt(units::pi) * (1.0 + std::erf(c / sigma));
  const double i1 = 0.5 * s2 * g;
  const double i2 = -0.5 * s2 * c * g + 0.5 * s2 * i0;
  return i2 + 2.0 * c * i1 + c * c * i0;
}

double term_overlap(const RadialFunction::Term &a, const RadialFunction::Term &b) {
  const double wa2 = a.width * a.width;
  const double wb2 = b.width * b.width;
  const double sum = wa2 + wb2;
  const double s2 = wa2 * wb2 / sum;
  const double center = (a.center * wb2 + b.center * wa2) / sum;
  const double d = a.center - b.center;
  const double k = std::exp(-d * d / (2.0 * sum));
  return a.coefficient * b.coefficient * k *
         shell_moment(center, std::sqrt(2.0 * s2));
}

} // namespace

RadialFunction gaussian_shell(double center, double width) {
  const double norm = 1.0 / std::sqrt(shell_moment(center, width));
  return RadialFunction{{{norm, center, width}}};
}

double RadialFunction::value(double r) const {
  double v = 0.0;
  for (const auto &t : terms) {
    const double u = (r - t.center) / t.width;
    v += t.coefficient * std::exp(-0.5 * u * u);
  }
  return v;
}

double RadialFunction::derivative(double r) const {
  double v = 0.0;
  for (const auto &t : terms) {
    const double u = (r - t.center) / t.width;
    v -= t.coefficient * u / t.width * std::exp(-0.5 * u * u);
  }
  return v;
}

double radial_overlap(const RadialFunction &f, const RadialFunction &g) {
  double s = 0.0;
  for (const auto &a : f.terms)
    for (const auto &b : g.terms)
      s += term_overlap(a, b);
  return s;
}

double radial_profile(const BandSpec &band, double r) {
  return gaussian_shell(band.shell_radius, band.shell_width).value(r);
}

} // namespace oamloop::structure
