#include "oamloop/error.hpp"
#include "oamloop/structure.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace oamloop::structure {

SymmetryCoefficients parse_symmetry_coefficients(std::istream &in) {
  using Key = std::tuple<int, std::string, int>;
  std::map<Key, std::size_t> index;
  SymmetryCoefficients table;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::istringstream row(line);
    int l = 0, lambda = 0, m = 0;
    std::string rep;
    double re = 0.0, im = 0.0;
    if (!(row >> l >> rep >> lambda >> m >> re >> im))
      throw ParseError("expected 'l rep lambda m re im'", line_no);
    std::string extra;
    if (row >> extra)
      throw ParseError("trailing field '" + extra + "'", line_no);
    if (l < 0 || l > numerics::max_legendre_degree || std::abs(m) > l)
      throw ParseError("invalid (l, m) = (" + std::to_string(l) + ", " +
                           std::to_string(m) + ")",
                       line_no);
    const Key key{l, rep, lambda};
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, table.substates.size()).first;
      table.substates.push_back({l, rep, lambda,
                                 std::vector<cplx>(2 * l + 1, cplx{0.0, 0.0})});
    }
    table.substates[it->second].coefficients[m + l] += cplx(re, im);
  }

  // Per-substate normalization, then orthonormality and completeness per l.
  std::map<int, std::vector<const SymmetryCoefficients::Substate *>> by_l;
  for (const auto &s : table.substates) {
    double norm = 0.0;
    for (const auto &c : s.coefficients)
      norm += std::norm(c);
    if (std::abs(norm - 1.0) > 1e-8)
      throw NormalizationError("substate (l=" + std::to_string(s.l) + ", " +
                               s.rep + ", " + std::to_string(s.lambda) +
                               ") has norm^2 " + std::to_string(norm));
    by_l[s.l].push_back(&s);
  }
  for (const auto &[l, subs] : by_l) {
    if (subs.size() != static_cast<std::size_t>(2 * l + 1))
      throw NormalizationError("l=" + std::to_string(l) + " has " +
                               std::to_string(subs.size()) +
                               " substates, expected " +
                               std::to_string(2 * l + 1));
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = a + 1; b < subs.size(); ++b) {
        cplx dot{0.0, 0.0};
        for (int k = 0; k < 2 * l + 1; ++k)
          dot += std::conj(subs[a]->coefficients[k]) * subs[b]->coefficients[k];
        if (std::abs(dot) > 1e-8)
          throw NormalizationError("substates of l=" + std::to_string(l) +
                                   " are not orthogonal");
      }
  }
  return table;
}

SymmetryCoefficients load_symmetry_coefficients(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open symmetry table '" + path + "'", 0);
  return parse_symmetry_coefficients(in);
}

} // namespace oamloop::structure
