#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/free_energy.hpp"

namespace casimir {

/// Ordered key = value pairs; later entries override earlier ones.
class ConfigMap {
 public:
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return get(key).has_value(); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Flat text: one or more `key = value` per line, separated by commas
/// (`model = "constant", n = 2.0`). `#` starts a comment; values may be
/// double-quoted. Throws ConfigError with the line number on bad syntax.
ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);
/// Applies one `key=value` override.
void apply_override(ConfigMap& config, const std::string& assignment);

/// Everything needed for one free-energy evaluation, in nondimensional form.
struct RunConfig {
  GapGeometry geometry = GapGeometry::from_rel_width(1.0);
  ThermalState thermal{};
  DispersionModel model = ConstantIndex{2.0};
  SummationPolicy policy{};
};

/// Recognised keys:
///   model        constant | plasma | drude | pec
///   n            refractive index (constant)
///   x_p, relaxation              nondimensional plasma/Drude parameters
///   omega_p_per_s, gamma_per_s   SI alternatives in 1/s (need a_m); also
///                                spelled omega_p_si, gamma_si
///   zero_mode    A | B (pec)
///   d_over_a | a_over_b | b_m    geometry (b_m needs a_m)
///   a_m          inner radius in metres
///   t | temperature_K            temperature (temperature_K needs a_m)
///   truncation, max_m, max_l, threads
/// Sweep keys are ignored here. Throws ConfigError.
RunConfig build_run_config(const ConfigMap& config);

enum class SweepAxis { Temperature, RelWidth, Index };

struct SweepSpec {
  SweepAxis axis = SweepAxis::Temperature;
  std::vector<double> values;
  ConfigMap fixed;
};

/// sweep_axis (t | temperature_t | d_over_a | rel_width | n | index_n) and
/// either sweep_values (list) or sweep_logspace = "lo hi count".
SweepSpec build_sweep_spec(const ConfigMap& config);

/// The configuration for one sweep point.
RunConfig sweep_point_config(const SweepSpec& spec, double value);

/// One CSV row.
struct PointResult {
  double t = 0.0;
  double d_over_a = 0.0;
  std::string model;
  std::optional<double> beta_F;
  std::optional<double> y_fraction;
  long long terms = 0;
  bool converged = false;
  std::string error;
  FreeEnergyResult detail;
};

/// Runs the engine; failures end up in `error` with converged = false.
PointResult evaluate_point(const RunConfig& config);

/// Shortest decimal string that reads back to the same double.
std::string format_real(double value);

/// log10(-beta_F t), empty when beta_F = 0.
std::optional<double> minus_beta_f_t_log10(double beta_F, double t);

void write_csv_comment(std::ostream& out, const std::string& command);
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const PointResult& row);

/// Evaluates the points in order and writes a CSV row for each. Returns
/// true when every point converged.
bool run_sweep(const SweepSpec& spec, std::ostream& out);

/// Human-readable report for one point.
void write_report(std::ostream& out, const RunConfig& config, const PointResult& row);

/// Built-in self checks (Wronskian and Debye agreement grids, metal zero
/// mode). Prints one line per check and returns true when all pass.
bool run_self_checks(std::ostream& out);

}  // namespace casimir
