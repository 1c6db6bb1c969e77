#include "oamloop/app/config.hpp"

#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace oamloop::app {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  return out;
}

struct Entry {
  std::string value;
  int line = 0; // 0: command-line override
};

class Document {
public:
  std::map<std::string, Entry> entries;

  [[noreturn]] void fail(const std::string &key, const std::string &msg) const {
    auto it = entries.find(key);
    if (it != entries.end() && it->second.line > 0)
      throw ParseError(key + ": " + msg, it->second.line);
    throw ConfigError("override " + key + ": " + msg);
  }

  bool has(const std::string &key) const { return entries.count(key) > 0; }

  const std::string *raw(const std::string &key) {
    auto it = entries.find(key);
    if (it == entries.end())
      return nullptr;
    used_.insert(key);
    return &it->second.value;
  }

  std::optional<double> number(const std::string &key) {
    const std::string *v = raw(key);
    if (!v)
      return std::nullopt;
    try {
      std::size_t pos = 0;
      const double d = std::stod(*v, &pos);
      if (pos != v->size() || !std::isfinite(d))
        throw std::invalid_argument("trailing");
      return d;
    } catch (const std::exception &) {
      fail(key, "expected a number, got '" + *v + "'");
    }
  }

  std::optional<int> integer(const std::string &key) {
    const std::string *v = raw(key);
    if (!v)
      return std::nullopt;
    try {
      std::size_t pos = 0;
      const long d = std::stol(*v, &pos);
      if (pos != v->size())
        throw std::invalid_argument("trailing");
      return static_cast<int>(d);
    } catch (const std::exception &) {
      fail(key, "expected an integer, got '" + *v + "'");
    }
  }

  std::optional<bool> boolean(const std::string &key) {
    const std::string *v = raw(key);
    if (!v)
      return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1")
      return true;
    if (*v == "false" || *v == "no" || *v == "0")
      return false;
    fail(key, "expected true/false, got '" + *v + "'");
  }

  std::optional<std::string> text(const std::string &key) {
    const std::string *v = raw(key);
    if (!v)
      return std::nullopt;
    return *v;
  }

  void check_unused() const {
    for (const auto &[k, e] : entries)
      if (!used_.count(k))
        fail(k, "unknown key");
  }

private:
  std::set<std::string> used_;
};

void flatten(const YAML::Node &node, const std::string &prefix,
             Document &doc) {
  const int line = node.Mark().line + 1;
  switch (node.Type()) {
  case YAML::NodeType::Map:
    for (const auto &kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (key.empty() || key.find('.') != std::string::npos)
        throw ParseError("invalid key '" + key + "'", kv.first.Mark().line + 1);
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, doc);
    }
    break;
  case YAML::NodeType::Sequence: {
    std::string joined;
    for (const auto &item : node) {
      if (!item.IsScalar())
        throw ParseError(prefix + ": list entries must be scalars",
                         item.Mark().line + 1);
      joined += (joined.empty() ? "" : ",") + item.Scalar();
    }
    doc.entries[prefix] = {joined, line};
    break;
  }
  case YAML::NodeType::Scalar:
    if (prefix.find('.') == std::string::npos)
      throw ParseError("'" + prefix + "' must be a block of keys", line);
    doc.entries[prefix] = {node.Scalar(), line};
    break;
  case YAML::NodeType::Null:
    if (!prefix.empty())
      doc.entries[prefix] = {"", line};
    break;
  default:
    throw ParseError("unsupported YAML node", line);
  }
}

Document read_document(std::istream &in) {
  Document doc;
  YAML::Node root;
  try {
    root = YAML::Load(in);
  } catch (const YAML::Exception &e) {
    throw ParseError(e.msg, e.mark.line + 1);
  }
  if (root.IsNull())
    return doc;
  if (!root.IsMap())
    throw ParseError("top level must be a map of blocks", root.Mark().line + 1);
  flatten(root, "", doc);
  return doc;
}

void apply_override(Document &doc, const std::string &ov) {
  const auto eq = ov.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + ov + "' is not key=value");
  const std::string key = trim(ov.substr(0, eq));
  const auto dot = key.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size())
    throw ConfigError("override key '" + key + "' must be block.key");
  doc.entries[key] = {trim(ov.substr(eq + 1)), 0};
}

template <typename T> void set_if(T &dst, const std::optional<T> &v) {
  if (v)
    dst = *v;
}

} // namespace

std::vector<double> parse_range(const std::string &text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
      throw ConfigError("range '" + text + "' must be start:stop:step");
    double a, b, h;
    try {
      a = std::stod(parts[0]);
      b = std::stod(parts[1]);
      h = std::stod(parts[2]);
    } catch (const std::exception &) {
      throw ConfigError("range '" + text + "' has non-numeric parts");
    }
    if (!(h > 0.0))
      throw ConfigError("range step must be positive");
    if (b < a)
      throw ConfigError("range '" + text + "' is empty");
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    if (n > 100000)
      throw ConfigError("range '" + text + "' has too many points");
    for (long i = 0; i <= n; ++i)
      out.push_back(a + static_cast<double>(i) * h);
  } else {
    for (const auto &p : split(text, ',')) {
      if (p.empty())
        continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(p, &pos));
        if (pos != p.size())
          throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        throw ConfigError("list entry '" + p + "' is not a number");
      }
    }
  }
  if (out.empty())
    throw ConfigError("range '" + text + "' is empty");
  return out;
}

std::uint64_t fnv1a(const std::string &text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double RunConfig::effective_r_max() const {
  if (r_max > 0.0)
    return r_max;
  double outer = 0.0;
  for (const auto &b : model.bands)
    outer = std::max(outer, b.shell_radius);
  return 4.0 * outer;
}

double RunConfig::delta() const {
  if (delta_au)
    return *delta_au;
  return beam::delta_from_fwhm(fwhm_fs.value_or(10.0));
}

double RunConfig::amplitude(double omega) const {
  if (amplitude_au)
    return *amplitude_au;
  return beam::amplitude_from_intensity(intensity_w_cm2.value_or(3e13), omega);
}

double RunConfig::intensity(double omega) const {
  if (amplitude_au)
    return beam::intensity_from_amplitude(*amplitude_au, omega);
  return intensity_w_cm2.value_or(3e13);
}

double RunConfig::offset_for(int q, std::optional<double> ratio_override) const {
  if (!ratio_override && rho0_nm)
    return units::nm_to_bohr(*rho0_nm);
  const double ratio = ratio_override ? *ratio_override : rho_ratio.value_or(0.0);
  if (ratio == 0.0)
    return 0.0;
  if (q == 0)
    throw ConfigError("rho0 as a ratio of rho_max needs a nonzero charge");
  return ratio * beam::rho_max(q, units::nm_to_bohr(waist_nm));
}

std::string resolved_yaml(const RunConfig &c) {
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;

  y << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "cage_radius" << YAML::Value << c.model.cage_radius;
  y << YAML::Key << "orthogonalize" << YAML::Value << c.model.orthogonalize;
  if (!c.symmetry_table.empty())
    y << YAML::Key << "symmetry_table" << YAML::Value << c.symmetry_table;
  if (!c.model.rep_shift.empty()) {
    y << YAML::Key << "rep_shift" << YAML::Value << YAML::BeginMap;
    for (const auto &[label, shift] : c.model.rep_shift)
      y << YAML::Key << label << YAML::Value << shift;
    y << YAML::EndMap;
  }
  y << YAML::EndMap;

  y << YAML::Key << "bands" << YAML::Value << YAML::BeginMap;
  for (const auto &b : c.model.bands) {
    y << YAML::Key << b.n << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "offset_energy" << YAML::Value << b.offset_energy;
    y << YAML::Key << "l_max" << YAML::Value << b.l_max;
    y << YAML::Key << "radius" << YAML::Value << b.shell_radius;
    y << YAML::Key << "width" << YAML::Value << b.shell_width;
    y << YAML::Key << "electrons" << YAML::Value << b.electron_count;
    if (auto it = c.model.partial_fill.find(b.n);
        it != c.model.partial_fill.end())
      y << YAML::Key << "fill" << YAML::Value << YAML::Flow << it->second;
    y << YAML::EndMap;
  }
  for (const auto &d : structure::default_model().bands)
    if (std::none_of(c.model.bands.begin(), c.model.bands.end(),
                     [&](const auto &b) { return b.n == d.n; }))
      y << YAML::Key << d.n << YAML::Value << YAML::BeginMap
        << YAML::Key << "enabled" << YAML::Value << false << YAML::EndMap;
  y << YAML::EndMap;

  y << YAML::Key << "pulse" << YAML::Value << YAML::BeginMap;
  if (c.amplitude_au)
    y << YAML::Key << "amplitude" << YAML::Value << *c.amplitude_au;
  else
    y << YAML::Key << "intensity" << YAML::Value
      << c.intensity_w_cm2.value_or(3e13);
  if (c.delta_au)
    y << YAML::Key << "delta" << YAML::Value << *c.delta_au;
  else
    y << YAML::Key << "fwhm_fs" << YAML::Value << c.fwhm_fs.value_or(10.0);
  y << YAML::Key << "omega_eV" << YAML::Value;
  if (c.omega_eV)
    y << *c.omega_eV;
  else
    y << "auto";
  y << YAML::Key << "charge" << YAML::Value << c.charge;
  y << YAML::Key << "radial_index" << YAML::Value << c.radial_index;
  y << YAML::Key << "waist_nm" << YAML::Value << c.waist_nm;
  if (c.rho0_nm)
    y << YAML::Key << "rho0_nm" << YAML::Value << *c.rho0_nm;
  else
    y << YAML::Key << "rho_ratio" << YAML::Value << c.rho_ratio.value_or(0.0);
  y << YAML::Key << "offset_angle" << YAML::Value << c.offset_angle;
  y << YAML::Key << "normalization" << YAML::Value
    << (c.normalization == beam::Normalization::peak ? "peak" : "literal");
  y << YAML::EndMap;

  if (!c.scan_omega_eV.empty() || !c.scan_rho_ratio.empty() ||
      !c.scan_charge.empty()) {
    y << YAML::Key << "scan" << YAML::Value << YAML::BeginMap;
    if (!c.scan_omega_eV.empty())
      y << YAML::Key << "omega_eV" << YAML::Value << YAML::Flow
        << c.scan_omega_eV;
    if (!c.scan_rho_ratio.empty())
      y << YAML::Key << "rho_ratio" << YAML::Value << YAML::Flow
        << c.scan_rho_ratio;
    if (!c.scan_charge.empty())
      y << YAML::Key << "charge" << YAML::Value << YAML::Flow
        << c.scan_charge;
    y << YAML::EndMap;
  }

  y << YAML::Key << "numerics" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "r_max" << YAML::Value << c.effective_r_max();
  y << YAML::Key << "r_cut" << YAML::Value << c.r_cut;
  y << YAML::Key << "radial_nodes" << YAML::Value << c.radial_nodes;
  y << YAML::Key << "inner_nodes" << YAML::Value << c.inner_nodes;
  y << YAML::Key << "angular_order" << YAML::Value << c.angular_order;
  y << YAML::Key << "eta" << YAML::Value << c.eta;
  y << YAML::Key << "validity_threshold" << YAML::Value
    << c.validity_threshold;
  y << YAML::Key << "prune_threshold" << YAML::Value << c.prune_threshold;
  y << YAML::Key << "cancellation_threshold" << YAML::Value
    << c.cancellation_threshold;
  y << YAML::Key << "convergence_check" << YAML::Value << c.convergence_check;
  y << YAML::Key << "resonance_min_eV" << YAML::Value << c.resonance_min_eV;
  y << YAML::Key << "resonance_max_eV" << YAML::Value << c.resonance_max_eV;
  y << YAML::EndMap;

  y << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "charge_convention" << YAML::Value
    << (c.convention == observables::ChargeConvention::electron
            ? "electron"
            : "probability");
  y << YAML::Key << "plane_extent" << YAML::Value << c.plane_extent;
  y << YAML::Key << "plane_resolution" << YAML::Value << c.plane_resolution;
  y << YAML::Key << "long_format" << YAML::Value << c.long_format;
  y << YAML::Key << "dump_transitions" << YAML::Value << c.dump_transitions;
  y << YAML::Key << "dump_populations" << YAML::Value << c.dump_populations;
  y << YAML::EndMap;

  y << YAML::EndMap;
  return std::string(y.c_str()) + "\n";
}

std::string RunConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

RunConfig parse_config(std::istream &in,
                       const std::vector<std::string> &overrides) {
  Document doc = read_document(in);
  for (const auto &ov : overrides)
    apply_override(doc, ov);

  RunConfig c;
  c.model = structure::default_model();

  // [model]
  set_if(c.model.cage_radius, doc.number("model.cage_radius"));
  set_if(c.symmetry_table, doc.text("model.symmetry_table"));
  set_if(c.model.orthogonalize, doc.boolean("model.orthogonalize"));
  if (!(c.model.cage_radius > 0.0))
    doc.fail("model.cage_radius", "must be positive");

  // [band.N]
  std::set<int> band_ids;
  for (const auto &[k, e] : doc.entries)
    if (k.rfind("bands.", 0) == 0) {
      const auto dot = k.find('.', 6);
      const std::string id = k.substr(6, dot - 6);
      try {
        std::size_t pos = 0;
        const int n = std::stoi(id, &pos);
        if (pos != id.size())
          throw std::invalid_argument("trailing");
        band_ids.insert(n);
      } catch (const std::exception &) {
        doc.fail(k, "bands must be keyed by an integer index");
      }
    }
  for (int n : band_ids) {
    const std::string p = "bands." + std::to_string(n) + ".";
    auto it = std::find_if(c.model.bands.begin(), c.model.bands.end(),
                           [n](const auto &b) { return b.n == n; });
    if (doc.has(p + "enabled") && !*doc.boolean(p + "enabled")) {
      if (it != c.model.bands.end())
        c.model.bands.erase(it);
      for (const char *key : {"offset_energy", "l_max", "radius", "width",
                              "electrons", "fill"})
        if (doc.has(p + key))
          doc.fail(p + key, "band is disabled");
      continue;
    }
    if (it == c.model.bands.end()) {
      for (const char *key : {"offset_energy", "l_max", "radius", "width",
                              "electrons"})
        if (!doc.has(p + key))
          throw ConfigError("new band " + std::to_string(n) +
                            " needs key '" + key + "'");
      c.model.bands.push_back({n, 0.0, 0, 0.0, 0.0, 0});
      it = c.model.bands.end() - 1;
    }
    set_if(it->offset_energy, doc.number(p + "offset_energy"));
    set_if(it->l_max, doc.integer(p + "l_max"));
    set_if(it->shell_radius, doc.number(p + "radius"));
    set_if(it->shell_width, doc.number(p + "width"));
    set_if(it->electron_count, doc.integer(p + "electrons"));
    if (auto fill = doc.text(p + "fill")) {
      std::vector<int> order;
      for (const auto &s : split(*fill, ',')) {
        try {
          order.push_back(std::stoi(s));
        } catch (const std::exception &) {
          doc.fail(p + "fill", "expected a comma list of m values");
        }
      }
      c.model.partial_fill[n] = order;
    }
  }
  std::sort(c.model.bands.begin(), c.model.bands.end(),
            [](const auto &a, const auto &b) { return a.n < b.n; });
  for (const auto &[k, e] : doc.entries)
    if (k.rfind("model.rep_shift.", 0) == 0)
      c.model.rep_shift[k.substr(16)] = *doc.number(k);

  // [pulse]
  c.intensity_w_cm2 = doc.number("pulse.intensity");
  c.amplitude_au = doc.number("pulse.amplitude");
  c.fwhm_fs = doc.number("pulse.fwhm_fs");
  c.delta_au = doc.number("pulse.delta");
  if (auto w = doc.text("pulse.omega_eV"); w && *w != "auto")
    c.omega_eV = doc.number("pulse.omega_eV");
  set_if(c.charge, doc.integer("pulse.charge"));
  set_if(c.radial_index, doc.integer("pulse.radial_index"));
  set_if(c.waist_nm, doc.number("pulse.waist_nm"));
  c.rho_ratio = doc.number("pulse.rho_ratio");
  c.rho0_nm = doc.number("pulse.rho0_nm");
  set_if(c.offset_angle, doc.number("pulse.offset_angle"));
  if (auto n = doc.text("pulse.normalization")) {
    if (*n == "peak")
      c.normalization = beam::Normalization::peak;
    else if (*n == "literal")
      c.normalization = beam::Normalization::literal;
    else
      doc.fail("pulse.normalization", "expected 'peak' or 'literal'");
  }

  if (c.intensity_w_cm2 && c.amplitude_au)
    doc.fail("pulse.amplitude", "give either intensity or amplitude, not both");
  if (c.fwhm_fs && c.delta_au)
    doc.fail("pulse.delta", "give either fwhm_fs or delta, not both");
  if (c.rho_ratio && c.rho0_nm)
    doc.fail("pulse.rho0_nm", "give either rho_ratio or rho0_nm, not both");
  if (c.intensity_w_cm2 && !(*c.intensity_w_cm2 >= 0.0))
    doc.fail("pulse.intensity", "must be >= 0");
  if (c.amplitude_au && !(*c.amplitude_au >= 0.0))
    doc.fail("pulse.amplitude", "must be >= 0");
  if (c.fwhm_fs && !(*c.fwhm_fs > 0.0))
    doc.fail("pulse.fwhm_fs", "must be positive");
  if (c.delta_au && !(*c.delta_au > 0.0))
    doc.fail("pulse.delta", "must be positive");
  if (c.omega_eV && !(*c.omega_eV > 0.0))
    doc.fail("pulse.omega_eV", "must be positive");
  if (!(c.waist_nm > 0.0))
    doc.fail("pulse.waist_nm", "must be positive");
  if (std::abs(c.charge) > 40)
    doc.fail("pulse.charge", "|charge| must be <= 40");
  if (c.radial_index < 0 || c.radial_index > 8)
    doc.fail("pulse.radial_index", "must be in [0, 8]");
  if (c.rho_ratio && *c.rho_ratio < 0.0)
    doc.fail("pulse.rho_ratio", "must be >= 0");
  if (c.rho_ratio && *c.rho_ratio != 0.0 && c.charge == 0)
    doc.fail("pulse.rho_ratio", "a ratio of rho_max needs a nonzero charge");

  // [scan]
  int axes = 0;
  try {
    if (auto s = doc.text("scan.omega_eV")) {
      c.scan_omega_eV = parse_range(*s);
      ++axes;
    }
  } catch (const ConfigError &e) {
    doc.fail("scan.omega_eV", e.what());
  }
  try {
    if (auto s = doc.text("scan.rho_ratio")) {
      c.scan_rho_ratio = parse_range(*s);
      ++axes;
    }
  } catch (const ConfigError &e) {
    doc.fail("scan.rho_ratio", e.what());
  }
  try {
    if (auto s = doc.text("scan.charge")) {
      for (double q : parse_range(*s)) {
        if (q != std::round(q) || std::abs(q) > 40)
          throw ConfigError("charges must be integers with |q| <= 40");
        c.scan_charge.push_back(static_cast<int>(q));
      }
      ++axes;
    }
  } catch (const ConfigError &e) {
    doc.fail("scan.charge", e.what());
  }
  if (axes > 2)
    throw ConfigError("at most two scan axes may be declared per run");
  for (double w : c.scan_omega_eV)
    if (!(w > 0.0))
      doc.fail("scan.omega_eV", "photon energies must be positive");
  for (double r : c.scan_rho_ratio)
    if (r < 0.0)
      doc.fail("scan.rho_ratio", "ratios must be >= 0");

  // [numerics]
  set_if(c.r_max, doc.number("numerics.r_max"));
  set_if(c.r_cut, doc.number("numerics.r_cut"));
  set_if(c.radial_nodes, doc.integer("numerics.radial_nodes"));
  set_if(c.inner_nodes, doc.integer("numerics.inner_nodes"));
  set_if(c.angular_order, doc.integer("numerics.angular_order"));
  set_if(c.eta, doc.number("numerics.eta"));
  set_if(c.validity_threshold, doc.number("numerics.validity_threshold"));
  set_if(c.prune_threshold, doc.number("numerics.prune_threshold"));
  set_if(c.cancellation_threshold,
         doc.number("numerics.cancellation_threshold"));
  set_if(c.convergence_check, doc.boolean("numerics.convergence_check"));
  set_if(c.resonance_min_eV, doc.number("numerics.resonance_min_eV"));
  set_if(c.resonance_max_eV, doc.number("numerics.resonance_max_eV"));
  if (c.r_max < 0.0)
    doc.fail("numerics.r_max", "must be positive (or 0 for automatic)");
  if (!(c.r_cut > 0.0) || c.r_cut >= c.effective_r_max())
    doc.fail("numerics.r_cut", "must lie inside (0, r_max)");
  if (c.radial_nodes < 16)
    doc.fail("numerics.radial_nodes", "must be >= 16");
  if (c.inner_nodes < 1)
    doc.fail("numerics.inner_nodes", "must be >= 1");
  if (!(c.eta > 0.0))
    doc.fail("numerics.eta", "must be positive");
  if (!(c.validity_threshold > 0.0))
    doc.fail("numerics.validity_threshold", "must be positive");
  if (c.resonance_max_eV <= c.resonance_min_eV)
    doc.fail("numerics.resonance_max_eV", "window is empty");
  {
    int lmax = 0;
    for (const auto &b : c.model.bands)
      lmax = std::max(lmax, b.l_max);
    if (c.angular_order < numerics::minimum_angular_order(lmax))
      doc.fail("numerics.angular_order",
               "must be >= 2*l_max+4 = " +
                   std::to_string(numerics::minimum_angular_order(lmax)));
  }

  // [output]
  if (auto s = doc.text("output.charge_convention")) {
    if (*s == "electron")
      c.convention = observables::ChargeConvention::electron;
    else if (*s == "probability")
      c.convention = observables::ChargeConvention::probability;
    else
      doc.fail("output.charge_convention",
               "expected 'electron' or 'probability'");
  }
  set_if(c.plane_extent, doc.number("output.plane_extent"));
  set_if(c.plane_resolution, doc.integer("output.plane_resolution"));
  set_if(c.long_format, doc.boolean("output.long_format"));
  set_if(c.dump_transitions, doc.boolean("output.dump_transitions"));
  set_if(c.dump_populations, doc.boolean("output.dump_populations"));
  if (!(c.plane_extent > 0.0))
    doc.fail("output.plane_extent", "must be positive");
  if (c.plane_resolution < 32)
    doc.fail("output.plane_resolution", "must be >= 32");

  doc.check_unused();

  c.canonical = resolved_yaml(c);
  c.hash = fnv1a(c.canonical);
  return c;
}

RunConfig load_config(const std::string &path,
                      const std::vector<std::string> &overrides) {
  if (path.empty()) {
    std::istringstream empty;
    return parse_config(empty, overrides);
  }
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, overrides);
}

} // namespace oamloop::app
