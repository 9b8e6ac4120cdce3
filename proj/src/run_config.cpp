#include "casimir/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace casimir {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

bool is_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Does `line` continue at `pos` with `identifier =`?
bool starts_assignment(const std::string& line, std::size_t pos) {
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  const std::size_t begin = pos;
  while (pos < line.size() && is_key_char(line[pos])) ++pos;
  if (pos == begin) return false;
  while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
  return pos < line.size() && line[pos] == '=';
}

// Splits at commas outside quotes that introduce another assignment, so
// list values such as `sweep_values = 0.1, 0.2` stay whole.
std::vector<std::string> split_assignments(const std::string& line) {
  std::vector<std::string> parts;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted && starts_assignment(line, i + 1)) {
      parts.push_back(current);
      current.clear();
      continue;
    }
    current += c;
  }
  parts.push_back(current);
  return parts;
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

void parse_assignment(ConfigMap& config, const std::string& text, const std::string& where) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(where + ": expected key = value, got '" + trim(text) + "'");
  const std::string key = trim(text.substr(0, eq));
  const std::string value = unquote(trim(text.substr(eq + 1)));
  if (key.empty() || !std::all_of(key.begin(), key.end(), is_key_char)) {
    throw ConfigError(where + ": invalid key '" + key + "'");
  }
  if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
  config.set(key, value);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ConfigError("'" + key + "': not a finite number: '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long long value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("'" + key + "': not an integer: '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::string normalised = text;
  std::replace(normalised.begin(), normalised.end(), ',', ' ');
  std::istringstream in(normalised);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_real(key, token));
  return out;
}

std::optional<double> real_key(const ConfigMap& config, const std::string& key) {
  if (auto v = config.get(key)) return parse_real(key, *v);
  return std::nullopt;
}

double require_real(const ConfigMap& config, const std::string& key, const std::string& why) {
  if (auto v = real_key(config, key)) return *v;
  throw ConfigError("missing '" + key + "' (" + why + ")");
}

GapGeometry build_geometry(const ConfigMap& config) {
  const auto d_over_a = real_key(config, "d_over_a");
  const auto a_over_b = real_key(config, "a_over_b");
  const auto b_m = real_key(config, "b_m");
  const int given = (d_over_a ? 1 : 0) + (a_over_b ? 1 : 0) + (b_m ? 1 : 0);
  if (given == 0) throw ConfigError("geometry: set one of d_over_a, a_over_b, b_m");
  if (given > 1) throw ConfigError("geometry: d_over_a, a_over_b and b_m are mutually exclusive");
  const double a = real_key(config, "a_m").value_or(1.0);
  try {
    if (b_m) {
      if (!config.has("a_m")) throw ConfigError("geometry: b_m needs a_m");
      return GapGeometry::from_radii(a, *b_m);
    }
    if (a_over_b) {
      if (!(*a_over_b > 0.0 && *a_over_b < 1.0)) {
        throw ConfigError("geometry: need a < b, i.e. a_over_b in (0, 1)");
      }
      return GapGeometry::from_radii(a, a / *a_over_b);
    }
    if (!(*d_over_a > 0.0)) throw ConfigError("geometry: need a < b, i.e. d_over_a > 0");
    return GapGeometry::from_radii(a, a * (1.0 + *d_over_a));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ThermalState build_thermal(const ConfigMap& config) {
  const auto t = real_key(config, "t");
  const auto kelvin = real_key(config, "temperature_K");
  if (t && kelvin) throw ConfigError("temperature: t and temperature_K are mutually exclusive");
  if (t) {
    if (!(*t > 0.0)) throw ConfigError("temperature: t must be > 0");
    return ThermalState{*t};
  }
  if (kelvin) {
    const double a = require_real(config, "a_m", "temperature_K needs the inner radius");
    try {
      return ThermalState::from_si(*kelvin, a);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("temperature: set t or temperature_K");
}

// SI key under either spelling.
std::optional<double> si_key(const ConfigMap& config, const std::string& key,
                             const std::string& alias) {
  const auto a = real_key(config, key);
  const auto b = real_key(config, alias);
  if (a && b) throw ConfigError(key + " and " + alias + " are the same setting; give one");
  return a ? a : b;
}

double plasma_frequency(const ConfigMap& config) {
  const auto x_p = real_key(config, "x_p");
  const auto si = si_key(config, "omega_p_per_s", "omega_p_si");
  if (x_p && si) throw ConfigError("x_p and omega_p_per_s are mutually exclusive");
  if (x_p) return *x_p;
  if (si) return plasma_from_si(*si, require_real(config, "a_m", "omega_p_per_s needs a_m")).x_p;
  throw ConfigError("missing plasma frequency (x_p or omega_p_per_s)");
}

DispersionModel build_model(const ConfigMap& config) {
  const std::string name = lower(config.get("model").value_or("constant"));
  DispersionModel model;
  if (name == "constant" || name == "dielectric") {
    model = ConstantIndex{require_real(config, "n", "refractive index for model = constant")};
  } else if (name == "plasma") {
    model = Plasma{plasma_frequency(config)};
  } else if (name == "drude") {
    const double x_p = plasma_frequency(config);
    const auto relax = real_key(config, "relaxation");
    const auto si = si_key(config, "gamma_per_s", "gamma_si");
    if (relax && si) throw ConfigError("relaxation and gamma_per_s are mutually exclusive");
    double gamma = 0.0;
    if (relax) {
      gamma = *relax;
    } else if (si) {
      gamma = drude_from_si(1.0, *si, require_real(config, "a_m", "gamma_per_s needs a_m"))
                  .relaxation_gamma;
    } else {
      throw ConfigError("model = drude needs relaxation or gamma_per_s");
    }
    model = Drude{x_p, gamma};
  } else if (name == "pec" || name == "metal") {
    const std::string option = lower(config.get("zero_mode").value_or("B"));
    if (option == "a") {
      model = PerfectConductor{ZeroModePolicy::OptionA};
    } else if (option == "b") {
      model = PerfectConductor{ZeroModePolicy::OptionB};
    } else {
      throw ConfigError("zero_mode must be A or B");
    }
  } else {
    throw ConfigError("unknown model '" + name + "' (constant, plasma, drude, pec)");
  }
  try {
    validate(model);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return model;
}

SummationPolicy build_policy(const ConfigMap& config) {
  SummationPolicy policy;
  if (auto v = real_key(config, "truncation")) {
    if (!(*v > 0.0 && *v < 1.0)) throw ConfigError("truncation must lie in (0, 1)");
    policy.term_truncation_ratio = *v;
  }
  if (auto v = config.get("max_m")) {
    policy.max_matsubara_m = static_cast<long>(parse_integer("max_m", *v));
    if (policy.max_matsubara_m < 1) throw ConfigError("max_m must be >= 1");
  }
  if (auto v = config.get("max_l")) {
    policy.max_l = static_cast<int>(parse_integer("max_l", *v));
    if (policy.max_l < 1) throw ConfigError("max_l must be >= 1");
  }
  if (auto v = config.get("threads")) {
    policy.threads = static_cast<int>(parse_integer("threads", *v));
    if (policy.threads < 0) throw ConfigError("threads must be >= 0");
  }
  return policy;
}

const char* kCsvColumns = "t,d_over_a,n_or_model,beta_F,minus_beta_F_t_log10,Y,terms,converged";

}  // namespace

void ConfigMap::set(const std::string& key, const std::string& value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> ConfigMap::get(const std::string& key) const {
  for (const auto& entry : entries_) {
    if (entry.first == key) return entry.second;
  }
  return std::nullopt;
}

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    for (const auto& part : split_assignments(body)) {
      parse_assignment(config, part, "line " + std::to_string(number));
    }
  }
  return config;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(ConfigMap& config, const std::string& assignment) {
  parse_assignment(config, assignment, "--set");
}

RunConfig build_run_config(const ConfigMap& config) {
  RunConfig run;
  run.geometry = build_geometry(config);
  run.thermal = build_thermal(config);
  run.model = build_model(config);
  run.policy = build_policy(config);
  return run;
}

SweepSpec build_sweep_spec(const ConfigMap& config) {
  SweepSpec spec;
  spec.fixed = config;
  const std::string axis = lower(config.get("sweep_axis").value_or(""));
  if (axis == "t" || axis == "temperature" || axis == "temperature_t") {
    spec.axis = SweepAxis::Temperature;
  } else if (axis == "d_over_a" || axis == "rel_width") {
    spec.axis = SweepAxis::RelWidth;
  } else if (axis == "n" || axis == "index_n") {
    spec.axis = SweepAxis::Index;
  } else if (axis.empty()) {
    throw ConfigError("sweep: missing sweep_axis");
  } else {
    throw ConfigError("sweep: unknown sweep_axis '" + axis + "'");
  }

  const auto list = config.get("sweep_values");
  const auto logspace = config.get("sweep_logspace");
  if (list && logspace) throw ConfigError("sweep: sweep_values and sweep_logspace are mutually exclusive");
  if (list) {
    spec.values = parse_list("sweep_values", *list);
  } else if (logspace) {
    const auto parts = parse_list("sweep_logspace", *logspace);
    if (parts.size() != 3) throw ConfigError("sweep_logspace: expected 'lo hi count'");
    const double lo = parts[0], hi = parts[1];
    const double count_real = parts[2];
    if (!(lo > 0.0 && hi > 0.0) || count_real < 1.0 || count_real != std::floor(count_real)) {
      throw ConfigError("sweep_logspace: need lo > 0, hi > 0 and an integer count >= 1");
    }
    const int count = static_cast<int>(count_real);
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      spec.values.push_back(std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo))));
    }
  }
  if (spec.values.empty()) throw ConfigError("sweep: no values (sweep_values or sweep_logspace)");

  if (spec.axis == SweepAxis::Index) {
    const std::string model = lower(config.get("model").value_or("constant"));
    if (model != "constant" && model != "dielectric") {
      throw ConfigError("sweep over n needs model = constant");
    }
  }
  // Validate every point up front so a bad value is a config error.
  for (double v : spec.values) sweep_point_config(spec, v);
  return spec;
}

RunConfig sweep_point_config(const SweepSpec& spec, double value) {
  ConfigMap point = spec.fixed;
  const std::string text = format_real(value);
  switch (spec.axis) {
    case SweepAxis::Temperature: {
      ConfigMap cleared;
      for (const auto& [k, v] : point.entries()) {
        if (k != "temperature_K") cleared.set(k, v);
      }
      point = cleared;
      point.set("t", text);
      break;
    }
    case SweepAxis::RelWidth: {
      ConfigMap cleared;
      for (const auto& [k, v] : point.entries()) {
        if (k != "a_over_b" && k != "b_m") cleared.set(k, v);
      }
      point = cleared;
      point.set("d_over_a", text);
      break;
    }
    case SweepAxis::Index:
      point.set("n", text);
      break;
  }
  return build_run_config(point);
}

PointResult evaluate_point(const RunConfig& config) {
  PointResult row;
  row.t = config.thermal.t;
  row.d_over_a = config.geometry.rel_width();
  row.model = model_label(config.model);
  try {
    row.detail = free_energy(config.geometry, config.thermal, config.model, config.policy);
    row.beta_F = row.detail.beta_F;
    row.terms = row.detail.terms_evaluated;
    row.converged = row.detail.converged;
    if (row.converged) {
      row.y_fraction = zero_mode_fraction(row.detail);
    } else {
      row.error = std::string("cap reached: ") + to_string(row.detail.cap);
    }
  } catch (const std::exception& e) {
    row.converged = false;
    row.error = e.what();
  }
  return row;
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> minus_beta_f_t_log10(double beta_F, double t) {
  if (!(beta_F < 0.0)) return std::nullopt;
  return std::log10(-beta_F * t);
}

void write_csv_comment(std::ostream& out, const std::string& command) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  out << "# casimir " << command << ' ' << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

void write_csv_header(std::ostream& out) { out << kCsvColumns << '\n'; }

void write_csv_row(std::ostream& out, const PointResult& row) {
  out << format_real(row.t) << ',' << format_real(row.d_over_a) << ',' << row.model << ',';
  if (row.beta_F) out << format_real(*row.beta_F);
  out << ',';
  if (row.beta_F) {
    if (auto v = minus_beta_f_t_log10(*row.beta_F, row.t)) out << format_real(*v);
  }
  out << ',';
  if (row.y_fraction) out << format_real(*row.y_fraction);
  out << ',' << row.terms << ',' << (row.converged ? "true" : "false") << '\n';
}

bool run_sweep(const SweepSpec& spec, std::ostream& out) {
  bool all = true;
  write_csv_header(out);
  for (double v : spec.values) {
    const PointResult row = evaluate_point(sweep_point_config(spec, v));
    all = all && row.converged;
    write_csv_row(out, row);
  }
  return all;
}

void write_report(std::ostream& out, const RunConfig& config, const PointResult& row) {
  out << "model            " << row.model << '\n';
  out << "t                " << format_real(row.t) << '\n';
  out << "d/a              " << format_real(row.d_over_a) << '\n';
  out << "a/b              " << format_real(config.geometry.ratio()) << '\n';
  if (!row.error.empty()) out << "error            " << row.error << '\n';
  if (row.beta_F) {
    const double bf = *row.beta_F;
    out << "beta_F           " << format_real(bf) << '\n';
    out << "beta_F_t         " << format_real(bf * row.t) << '\n';
    const auto lg = minus_beta_f_t_log10(bf, row.t);
    out << "log10(-beta_F_t) " << (lg ? format_real(*lg) : std::string("n/a")) << '\n';
    out << "Y                " << (row.y_fraction ? format_real(*row.y_fraction) : std::string("n/a"))
        << '\n';
    out << "zero_mode_beta_F " << format_real(row.detail.zero_mode_beta_F) << '\n';
    const ConvergenceReport rep = convergence_report(row.detail);
    out << "converged        " << (rep.converged ? "yes" : "no") << " (cap: " << to_string(rep.cap)
        << ")\n";
    out << "terms            " << rep.terms_evaluated << '\n';
    out << "matsubara_terms  " << rep.matsubara_terms << '\n';
    out << "max_l            " << rep.max_l << '\n';
    out << "paths            direct=" << rep.path_counts.direct << " debye=" << rep.path_counts.debye
        << " analytic=" << rep.path_counts.analytic << '\n';
    out << "tail_estimate    l=" << format_real(rep.l_tail_estimate)
        << " m=" << format_real(rep.m_tail_estimate) << '\n';
    out << "est_digits       " << std::fixed << std::setprecision(2) << rep.estimated_digits
        << std::defaultfloat << '\n';
  }
}

}  // namespace casimir
