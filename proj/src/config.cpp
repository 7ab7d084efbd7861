#include "geomgate/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace geomgate {
namespace {

enum class Kind { kFrequency, kRate, kNumber, kInteger, kText, kAxis };

struct Entry {
  std::string value;
  std::string where;
};

using Values = std::map<std::string, Entry>;  // "section.key" -> entry

struct KeySpec {
  const char* section;
  const char* name;
  Kind kind;
};

constexpr KeySpec kKeys[] = {
    {"run", "experiment", Kind::kText},
    {"run", "out", Kind::kText},
    {"run", "jobs", Kind::kInteger},
    {"physics", "omega0", Kind::kFrequency},
    {"physics", "gamma1", Kind::kRate},
    {"physics", "gamma2", Kind::kRate},
    {"physics", "dephasing", Kind::kText},
    {"sweep", "scheme", Kind::kText},
    {"sweep", "gate", Kind::kText},
    {"sweep", "metric", Kind::kText},
    {"sweep", "axis1", Kind::kAxis},
    {"sweep", "axis2", Kind::kAxis},
    {"sweep", "zeta", Kind::kNumber},
    {"sweep", "delta", Kind::kNumber},
    {"numerics", "unitary_tol", Kind::kNumber},
    {"numerics", "lindblad_tol", Kind::kNumber},
    {"numerics", "series_samples", Kind::kInteger},
    {"numerics", "error_grid", Kind::kInteger},
    {"numerics", "error_span", Kind::kNumber},
    {"numerics", "rate_grid", Kind::kInteger},
    {"numerics", "rate_max", Kind::kRate},
    {"rydberg", "omega_t", Kind::kFrequency},
    {"rydberg", "omega1", Kind::kFrequency},
    {"rydberg", "delta_over_omega", Kind::kNumber},
    {"rydberg", "v_over_omega", Kind::kNumber},
    {"rydberg", "r_um", Kind::kNumber},
    {"rydberg", "c6_ghz_um6", Kind::kNumber},
    {"rydberg", "gamma1", Kind::kRate},
    {"rydberg", "gamma2", Kind::kRate},
    {"rydberg", "rate_max", Kind::kRate},
};

constexpr const char* kRequired[] = {"run.experiment", "physics.omega0"};
constexpr const char* kBareOrder[] = {"run", "physics", "sweep", "numerics", "rydberg"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

const KeySpec* find_key(const std::string& section, const std::string& name) {
  for (const auto& k : kKeys) {
    if (section == k.section && name == k.name) return &k;
  }
  return nullptr;
}

bool known_section(const std::string& s) {
  return std::any_of(std::begin(kBareOrder), std::end(kBareOrder), [&](const char* x) { return s == x; });
}

// Splits "<number> <unit>" (whitespace optional). Returns false if no number.
bool split_number(const std::string& text, double& value, std::string& unit) {
  const std::string t = trim(text);
  std::size_t used = 0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  unit = lower(trim(t.substr(used)));
  return std::isfinite(value);
}

double parse_number_strict(const std::string& text) {
  double v = 0.0;
  std::string unit;
  if (!split_number(text, v, unit)) throw GeomgateError("expected a number, got '" + text + "'");
  if (!unit.empty()) throw GeomgateError("unit mismatch: dimensionless value has unit '" + unit + "'");
  return v;
}

int parse_integer(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw GeomgateError("expected an integer, got '" + text + "'");
  }
  if (used != t.size()) throw GeomgateError("expected an integer, got '" + text + "'");
  return static_cast<int>(v);
}

double parse_rate(const std::string& text) {
  double v = 0.0;
  std::string unit;
  if (!split_number(text, v, unit)) throw GeomgateError("expected a rate, got '" + text + "'");
  if (!unit.empty() && unit != "/s" && unit != "1/s") {
    throw GeomgateError("unit mismatch: rates are given in 1/s, not '" + unit + "'");
  }
  if (v < 0.0) throw GeomgateError("rate must be >= 0");
  return v;
}

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 4) throw GeomgateError("axis must be 'name, min, max, count'");
  Axis a;
  a.name = parts[0];
  a.min = parse_number_strict(parts[1]);
  a.max = parse_number_strict(parts[2]);
  a.count = parse_integer(parts[3]);
  return a;
}

std::string canonical(const std::string& section, const std::string& key) { return section + "." + key; }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : GeomgateError([&] {
        std::string msg = "invalid config (" + std::to_string(problems.size()) + " problem" +
                          (problems.size() == 1 ? "" : "s") + "):";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

double parse_frequency(const std::string& text) {
  double v = 0.0;
  std::string unit;
  if (!split_number(text, v, unit)) throw GeomgateError("expected a frequency, got '" + text + "'");
  double scale = 0.0;
  if (unit == "hz") {
    scale = 2.0 * kPi;
  } else if (unit == "khz") {
    scale = 2.0 * kPi * 1e3;
  } else if (unit == "mhz") {
    scale = 2.0 * kPi * 1e6;
  } else if (unit == "ghz") {
    scale = 2.0 * kPi * 1e9;
  } else if (unit == "rad/s") {
    scale = 1.0;
  } else if (unit.empty()) {
    throw GeomgateError("unit mismatch: frequency '" + text + "' needs a hz, khz, mhz or ghz suffix");
  } else {
    throw GeomgateError("unit mismatch: unknown frequency unit '" + unit + "'");
  }
  const double out = v * scale;
  if (!(out > 0.0)) throw GeomgateError("frequency must be positive");
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& source, const std::string& experiment) {
  std::vector<std::string> problems;
  Values values;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    std::string t = line;
    if (const auto hash = t.find('#'); hash != std::string::npos) t = t.substr(0, hash);
    t = trim(t);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        problems.push_back(where + ": malformed section header");
        continue;
      }
      section = lower(trim(t.substr(1, t.size() - 2)));
      if (!known_section(section)) problems.push_back(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      problems.push_back(where + ": expected 'key = value'");
      continue;
    }
    const std::string key = lower(trim(t.substr(0, eq)));
    const std::string value = trim(t.substr(eq + 1));
    std::string target;
    if (section.empty()) {
      for (const char* s : kBareOrder) {
        if (find_key(s, key)) {
          target = s;
          break;
        }
      }
    } else if (find_key(section, key)) {
      target = section;
    }
    if (target.empty()) {
      if (section.empty() || known_section(section)) {
        problems.push_back(where + ": unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
      }
      continue;
    }
    const std::string name = canonical(target, key);
    if (values.count(name)) {
      problems.push_back(where + ": duplicate key '" + name + "' (first at " + values[name].where + ")");
      continue;
    }
    if (value.empty()) {
      problems.push_back(where + ": empty value for '" + key + "'");
      continue;
    }
    values[name] = {value, where};
  }

  if (!experiment.empty()) values["run.experiment"] = {experiment, "<command line>"};
  for (const char* req : kRequired) {
    if (!values.count(req)) problems.push_back(source + ": missing required key '" + std::string(req) + "'");
  }

  RunConfig cfg;
  ExperimentOptions& o = cfg.options;
  PhysicalParams& ph = o.physical;
  std::optional<double> r_um, c6;
  bool v_given = false;
  SweepSpec sweep;
  sweep.fixed = ph;
  bool have_scheme = false, have_axis1 = false, have_axis2 = false;

  // Applies one value; messages are collected, never thrown past this point.
  const auto apply = [&](const std::string& name, const Entry& e) {
    const auto dot = name.find('.');
    const KeySpec* spec = find_key(name.substr(0, dot), name.substr(dot + 1));
    const std::string& v = e.value;
    if (name == "run.experiment") {
      cfg.experiment = v;
      const auto names = experiment_names();
      if (v != "sweep" && std::find(names.begin(), names.end(), v) == names.end()) {
        throw GeomgateError("unknown experiment '" + v + "'");
      }
    } else if (name == "run.out") {
      cfg.out_dir = v;
    } else if (name == "run.jobs") {
      o.jobs = parse_integer(v);
      if (o.jobs < 0) throw GeomgateError("jobs must be >= 0");
    } else if (name == "physics.omega0") {
      ph.omega0 = parse_frequency(v);
    } else if (name == "physics.gamma1") {
      ph.gamma1 = parse_rate(v);
    } else if (name == "physics.gamma2") {
      ph.gamma2 = parse_rate(v);
    } else if (name == "physics.dephasing") {
      if (v == "projector") {
        ph.convention = DephasingConvention::kProjector;
      } else if (v == "coherence") {
        ph.convention = DephasingConvention::kCoherence;
      } else {
        throw GeomgateError("dephasing must be 'projector' or 'coherence'");
      }
    } else if (name == "sweep.scheme") {
      sweep.scheme = parse_scheme(v);
      have_scheme = true;
    } else if (name == "sweep.gate") {
      sweep.gate = v;
    } else if (name == "sweep.metric") {
      sweep.metric = parse_metric(v);
    } else if (name == "sweep.axis1") {
      sweep.axis1 = parse_axis(v);
      have_axis1 = true;
    } else if (name == "sweep.axis2") {
      sweep.axis2 = parse_axis(v);
      have_axis2 = true;
    } else if (name == "sweep.zeta") {
      sweep.zeta = parse_number_strict(v);
    } else if (name == "sweep.delta") {
      sweep.delta = parse_number_strict(v);
    } else if (name == "numerics.unitary_tol" || name == "numerics.lindblad_tol") {
      const double x = parse_number_strict(v);
      if (!(x > 0.0)) throw GeomgateError("tolerance must be positive");
      (name == "numerics.unitary_tol" ? ph.unitary_tol : ph.lindblad_tol) = x;
    } else if (name == "numerics.series_samples" || name == "numerics.error_grid" || name == "numerics.rate_grid") {
      const int x = parse_integer(v);
      if (x < 2) throw GeomgateError("count must be >= 2");
      (name == "numerics.series_samples" ? o.series_samples
                                         : name == "numerics.error_grid" ? o.error_grid : o.rate_grid) = x;
    } else if (name == "numerics.error_span") {
      o.error_span = parse_number_strict(v);
      if (!(o.error_span > 0.0)) throw GeomgateError("error_span must be positive");
    } else if (name == "numerics.rate_max") {
      o.rate_max = parse_rate(v);
    } else if (name == "rydberg.omega_t") {
      ph.rydberg_omega0 = parse_frequency(v);
    } else if (name == "rydberg.omega1") {
      ph.rydberg_omega1 = parse_frequency(v);
    } else if (name == "rydberg.delta_over_omega") {
      ph.delta_over_omega = parse_number_strict(v);
      if (!(ph.delta_over_omega > 0.0)) throw GeomgateError("delta_over_omega must be positive");
    } else if (name == "rydberg.v_over_omega") {
      ph.v_over_omega = parse_number_strict(v);
      if (ph.v_over_omega < 0.0) throw GeomgateError("v_over_omega must be >= 0");
      v_given = true;
    } else if (name == "rydberg.r_um") {
      r_um = parse_number_strict(v);
      if (!(*r_um > 0.0)) throw GeomgateError("r_um must be positive");
    } else if (name == "rydberg.c6_ghz_um6") {
      c6 = parse_number_strict(v);
      if (!(*c6 > 0.0)) throw GeomgateError("c6_ghz_um6 must be positive");
    } else if (name == "rydberg.gamma1") {
      ph.rydberg_gamma1 = parse_rate(v);
    } else if (name == "rydberg.gamma2") {
      ph.rydberg_gamma2 = parse_rate(v);
    } else if (name == "rydberg.rate_max") {
      o.rydberg_rate_max = parse_rate(v);
    } else if (spec == nullptr) {
      throw GeomgateError("unknown key");
    }
  };

  for (const auto& [name, entry] : values) {
    try {
      apply(name, entry);
    } catch (const std::exception& e) {
      problems.push_back(entry.where + ": " + name + ": " + e.what());
    }
  }

  if (r_um.has_value() != c6.has_value()) {
    problems.push_back(source + ": rydberg.r_um and rydberg.c6_ghz_um6 must be given together");
  } else if (r_um && c6) {
    if (v_given) {
      problems.push_back(source + ": give either rydberg.v_over_omega or rydberg.r_um + rydberg.c6_ghz_um6");
    } else {
      // C6 / r^6 is an ordinary frequency in GHz.
      const double v = 2.0 * kPi * 1e9 * (*c6) / std::pow(*r_um, 6);
      ph.v_over_omega = v / ph.rydberg_omega0;
    }
  }

  if (cfg.experiment == "sweep") {
    if (!have_scheme) problems.push_back(source + ": sweep runs need sweep.scheme");
    if (!have_axis1) problems.push_back(source + ": sweep runs need sweep.axis1");
    if (!have_axis2) problems.push_back(source + ": sweep runs need sweep.axis2");
    if (have_scheme && have_axis1 && have_axis2) {
      sweep.fixed = ph;
      try {
        sweep.validate();
        cfg.sweep = sweep;
      } catch (const std::exception& e) {
        problems.push_back(source + ": " + e.what());
      }
    }
  } else if (have_scheme || have_axis1 || have_axis2) {
    problems.push_back(source + ": [sweep] keys are only used when run.experiment = sweep");
  }

  if (!problems.empty()) {
    // Report in file order; problems without a line number go last.
    const auto line_of = [&](const std::string& p) {
      const auto rest = p.substr(std::min(p.size(), source.size()));
      if (rest.size() < 2 || rest[0] != ':' || !std::isdigit(static_cast<unsigned char>(rest[1]))) return 1 << 30;
      return std::atoi(rest.c_str() + 1);
    };
    std::stable_sort(problems.begin(), problems.end(),
                     [&](const std::string& a, const std::string& b) { return line_of(a) < line_of(b); });
    throw ConfigError(std::move(problems));
  }
  return cfg;
}

std::string echo_config(const RunConfig& c) {
  const ExperimentOptions& o = c.options;
  const PhysicalParams& p = o.physical;
  const auto num = [](double x) { return format_number(x); };
  const auto freq = [&](double x) { return num(x) + " rad/s"; };
  std::ostringstream os;
  os << "# fully resolved configuration\n";
  os << "[run]\n";
  os << "experiment = " << c.experiment << "\n";
  os << "out = " << c.out_dir << "\n";
  os << "jobs = " << o.jobs << "\n";
  os << "[physics]\n";
  os << "omega0 = " << freq(p.omega0) << "\n";
  os << "gamma1 = " << num(p.gamma1) << "\n";
  os << "gamma2 = " << num(p.gamma2) << "\n";
  os << "dephasing = " << (p.convention == DephasingConvention::kProjector ? "projector" : "coherence") << "\n";
  os << "[numerics]\n";
  os << "unitary_tol = " << num(p.unitary_tol) << "\n";
  os << "lindblad_tol = " << num(p.lindblad_tol) << "\n";
  os << "series_samples = " << o.series_samples << "\n";
  os << "error_grid = " << o.error_grid << "\n";
  os << "error_span = " << num(o.error_span) << "\n";
  os << "rate_grid = " << o.rate_grid << "\n";
  os << "rate_max = " << num(o.rate_max) << "\n";
  os << "[rydberg]\n";
  os << "omega_t = " << freq(p.rydberg_omega0) << "\n";
  if (p.rydberg_omega1 > 0.0) os << "omega1 = " << freq(p.rydberg_omega1) << "\n";
  os << "delta_over_omega = " << num(p.delta_over_omega) << "\n";
  os << "v_over_omega = " << num(p.v_over_omega) << "\n";
  os << "gamma1 = " << num(p.rydberg_gamma1) << "\n";
  os << "gamma2 = " << num(p.rydberg_gamma2) << "\n";
  os << "rate_max = " << num(o.rydberg_rate_max) << "\n";
  if (c.sweep) {
    const SweepSpec& s = *c.sweep;
    const auto axis = [&](const Axis& a) {
      return a.name + ", " + num(a.min) + ", " + num(a.max) + ", " + std::to_string(a.count);
    };
    os << "[sweep]\n";
    os << "scheme = " << to_string(s.scheme) << "\n";
    os << "gate = " << s.gate << "\n";
    os << "metric = " << to_string(s.metric) << "\n";
    os << "axis1 = " << axis(s.axis1) << "\n";
    os << "axis2 = " << axis(s.axis2) << "\n";
    os << "zeta = " << num(s.zeta) << "\n";
    os << "delta = " << num(s.delta) << "\n";
  }
  return os.str();
}

}  // namespace geomgate
