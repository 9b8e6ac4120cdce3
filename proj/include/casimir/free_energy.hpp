#pragma once

#include <optional>
#include <vector>

#include "casimir/eigenvalues.hpp"

namespace casimir {

/// Nondimensional temperature t = 2 pi a / beta (hbar = c = k_B = 1), so the
/// Matsubara arguments are x = m t and y = m t b/a.
struct ThermalState {
  double t = 1.0;

  static ThermalState from_si(double temperature_kelvin, double inner_radius_m);
  /// beta in the length units of `inner_radius_a`.
  double beta(double inner_radius_a) const;
};

struct SummationPolicy {
  /// Stop a series once |term| <= ratio * |partial sum| holds repeatedly.
  /// For the l series the partial sum is the running double sum.
  double term_truncation_ratio = 1e-9;
  long max_matsubara_m = 10'000'000;
  int max_l = 1'000'000;
  DebyeDomain debye_switch{};
  int l_guard = 3;  // consecutive l terms below the ratio
  int m_guard = 2;  // consecutive Matsubara contributions below the ratio
  /// Weight of the m = 0 term in the Matsubara sum.
  double zero_mode_weight = 0.5;
  /// OpenMP threads for the parallel engine; 0 keeps the runtime default.
  int threads = 0;
};

enum class CapHit { None, MaxL, MaxM };

struct PathCounts {
  long long direct = 0;
  long long debye = 0;
  long long analytic = 0;
};

struct FreeEnergyResult {
  double beta_F = 0.0;
  long long terms_evaluated = 0;
  bool converged = true;
  CapHit cap = CapHit::None;
  /// Weighted contribution of each Matsubara index, m = 0 first.
  std::vector<double> per_m_partial_sums;
  /// Geometric estimate of the l-tail dropped for each m.
  std::vector<double> per_m_tail_estimates;
  /// Highest l summed for each m.
  std::vector<int> per_m_l_max;
  /// The weighted m = 0 contribution (both modes, per the model's limit).
  double zero_mode_beta_F = 0.0;
  PathCounts path_counts;
};

/// beta F = sum'_m sum_l (2l+1) [ln(1 - lambda_TM) + ln(1 - lambda_TE)].
///
/// Each m sums l upward until the l criterion holds; Matsubara indices are
/// evaluated in parallel blocks and accepted strictly in m order, so the
/// result does not depend on the thread count. Caps leave converged = false.
FreeEnergyResult free_energy(const GapGeometry& geometry, const ThermalState& thermal,
                             const DispersionModel& model, const SummationPolicy& policy = {});

/// Single-threaded reference for free_energy; same block partition, no OpenMP.
FreeEnergyResult free_energy_serial(const GapGeometry& geometry, const ThermalState& thermal,
                                    const DispersionModel& model,
                                    const SummationPolicy& policy = {});

/// Perfectly conducting walls with the chosen zero-mode ordering.
FreeEnergyResult free_energy_metal(const GapGeometry& geometry, const ThermalState& thermal,
                                   ZeroModePolicy zero_mode, const SummationPolicy& policy = {});

/// Y = F(m=0) / F. Empty when F = 0 (n = 1). Throws ConvergenceError if the
/// underlying sum did not converge.
std::optional<double> zero_mode_fraction(const GapGeometry& geometry, const ThermalState& thermal,
                                         const DispersionModel& model,
                                         const SummationPolicy& policy = {});
std::optional<double> zero_mode_fraction(const FreeEnergyResult& result);

struct ConvergenceReport {
  bool converged = true;
  CapHit cap = CapHit::None;
  long long terms_evaluated = 0;
  long matsubara_terms = 0;
  int max_l = 0;
  double l_tail_estimate = 0.0;
  double m_tail_estimate = 0.0;
  /// Relative accuracy of the individual eigenvalue evaluations.
  double evaluation_floor = 0.0;
  double relative_error_estimate = 0.0;
  double estimated_digits = 0.0;
  PathCounts path_counts;
};

ConvergenceReport convergence_report(const FreeEnergyResult& result);

const char* to_string(CapHit cap);

}  // namespace casimir
