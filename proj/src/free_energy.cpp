#include "casimir/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casimir/compensated_sum.hpp"

namespace casimir {
namespace {

constexpr double kPi = 3.14159265358979323846;
// hbar c / k_B in metre kelvin
constexpr double kThermalLength = 1.054571817e-34 * 299792458.0 / 1.380649e-23;
// Matsubara indices handed to the worker pool per round.
constexpr long kBlock = 64;

struct MatsubaraTerm {
  double sum = 0.0;
  double tail = 0.0;
  int l_max = 0;
  long long terms = 0;
  PathCounts paths;
  bool capped = false;
};

void count_path(PathCounts& counts, EvaluationPath path) {
  switch (path) {
    case EvaluationPath::Direct: ++counts.direct; break;
    case EvaluationPath::Debye: ++counts.debye; break;
    case EvaluationPath::AnalyticLimit: ++counts.analytic; break;
  }
}

void merge(PathCounts& into, const PathCounts& from) {
  into.direct += from.direct;
  into.debye += from.debye;
  into.analytic += from.analytic;
}

// Tail of a series whose last terms decay like a geometric sequence.
double geometric_tail(double previous, double last) {
  if (last == 0.0) return 0.0;
  if (previous != 0.0) {
    const double q = last / previous;
    if (q > 0.0 && q < 1.0) return std::fabs(last) * q / (1.0 - q);
  }
  return std::fabs(last);
}

// A term counts towards the l guard once it is no larger than its
// predecessor and no larger than ratio * (|sum accepted so far| + |partial|).
template <class Eigen>
MatsubaraTerm sum_over_l(Eigen&& eigen, const SummationPolicy& policy, double reference) {
  MatsubaraTerm out;
  CompensatedSum partial;
  double previous = 0.0;
  double last = 0.0;
  int consecutive = 0;
  for (int l = 1;; ++l) {
    if (l > policy.max_l) {
      out.capped = true;
      out.l_max = policy.max_l;
      break;
    }
    const ModeEigenvalues ev = eigen(l);
    count_path(out.paths, ev.path);
    const double term = (2.0 * l + 1.0) * (std::log1p(-ev.lambda_tm) + std::log1p(-ev.lambda_te));
    partial.add(term);
    ++out.terms;
    previous = last;
    last = term;
    const bool past_peak = std::fabs(term) <= std::fabs(previous) || l == 1;
    const double scale = reference + std::fabs(partial.value());
    if (past_peak && std::fabs(term) <= policy.term_truncation_ratio * scale) {
      ++consecutive;
    } else {
      consecutive = 0;
    }
    if (consecutive >= policy.l_guard) {
      out.l_max = l;
      break;
    }
  }
  out.sum = partial.value();
  out.tail = geometric_tail(previous, last);
  return out;
}

double index_at(const DispersionModel& model, double x) {
  if (const auto* c = std::get_if<ConstantIndex>(&model)) return c->n;
  if (std::holds_alternative<PerfectConductor>(model)) return std::numeric_limits<double>::infinity();
  return refractive_index(model, x);
}

void validate_inputs(const ThermalState& thermal, const DispersionModel& model,
                     const SummationPolicy& policy) {
  if (!(thermal.t > 0.0) || !std::isfinite(thermal.t)) {
    throw DomainError("free_energy: temperature t must be finite and > 0");
  }
  validate(model);
  if (!(policy.term_truncation_ratio > 0.0 && policy.term_truncation_ratio < 1.0)) {
    throw DomainError("free_energy: truncation ratio must lie in (0, 1)");
  }
  if (policy.max_l < 1 || policy.max_matsubara_m < 1 || policy.l_guard < 1 || policy.m_guard < 1) {
    throw DomainError("free_energy: caps and guards must be positive");
  }
}

enum class Schedule { Serial, Parallel };

FreeEnergyResult run(const GapGeometry& geometry, const ThermalState& thermal,
                     const DispersionModel& model, const SummationPolicy& policy,
                     Schedule schedule) {
  validate_inputs(thermal, model, policy);
  FreeEnergyResult result;
  if (const auto* c = std::get_if<ConstantIndex>(&model); c && c->n == 1.0) {
    result.per_m_partial_sums.push_back(0.0);
    result.per_m_tail_estimates.push_back(0.0);
    result.per_m_l_max.push_back(0);
    return result;
  }

  const double size_ratio = geometry.outer_radius_b() / geometry.inner_radius_a();
  auto evaluate_m = [&](long m, double reference) {
    const double x = m * thermal.t;
    const double y = x * size_ratio;
    const double n = index_at(model, x);
    const int mi = static_cast<int>(m);
    return sum_over_l(
        [&](int l) { return mode_eigenvalues(l, mi, x, y, n, policy.debye_switch); }, policy,
        reference);
  };

  CompensatedSum total;
  auto accept = [&](const MatsubaraTerm& term, double weight) {
    const double contribution = weight * term.sum;
    total.add(contribution);
    result.per_m_partial_sums.push_back(contribution);
    result.per_m_tail_estimates.push_back(weight * term.tail);
    result.per_m_l_max.push_back(term.l_max);
    result.terms_evaluated += term.terms;
    merge(result.path_counts, term.paths);
    if (term.capped) {
      result.converged = false;
      result.cap = CapHit::MaxL;
    }
    return contribution;
  };

  const MatsubaraTerm zero = sum_over_l(
      [&](int l) { return lambda_zero_mode(l, geometry, model); }, policy, 0.0);
  result.zero_mode_beta_F = accept(zero, policy.zero_mode_weight);

  std::vector<MatsubaraTerm> buffer;
  int consecutive = 0;
  bool finished = false;
  long m = 1;
  while (!finished) {
    if (m > policy.max_matsubara_m) {
      result.converged = false;
      result.cap = CapHit::MaxM;
      break;
    }
    // Every index in a block sees the same accepted total, whichever
    // thread evaluates it.
    const long count = std::min(kBlock, policy.max_matsubara_m - m + 1);
    const double reference = std::fabs(total.value());
    buffer.assign(static_cast<std::size_t>(count), MatsubaraTerm{});
    if (schedule == Schedule::Parallel) {
      std::exception_ptr failure;
#ifdef _OPENMP
      const int threads = policy.threads > 0 ? policy.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
      for (long i = 0; i < count; ++i) {
        try {
          buffer[static_cast<std::size_t>(i)] = evaluate_m(m + i, reference);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(casimir_engine_failure)
#endif
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (long i = 0; i < count; ++i) {
        buffer[static_cast<std::size_t>(i)] = evaluate_m(m + i, reference);
      }
    }

    for (const MatsubaraTerm& term : buffer) {
      const double contribution = accept(term, 1.0);
      if (std::fabs(contribution) <= policy.term_truncation_ratio * std::fabs(total.value())) {
        ++consecutive;
      } else {
        consecutive = 0;
      }
      if (consecutive >= policy.m_guard) {
        finished = true;
        break;
      }
    }
    m += count;
  }
  result.beta_F = total.value();
  return result;
}

}  // namespace

ThermalState ThermalState::from_si(double temperature_kelvin, double inner_radius_m) {
  if (!(temperature_kelvin > 0.0) || !(inner_radius_m > 0.0)) {
    throw DomainError("thermal state: temperature and radius must be > 0");
  }
  return ThermalState{2.0 * kPi * inner_radius_m * temperature_kelvin / kThermalLength};
}

double ThermalState::beta(double inner_radius_a) const { return 2.0 * kPi * inner_radius_a / t; }

FreeEnergyResult free_energy(const GapGeometry& geometry, const ThermalState& thermal,
                             const DispersionModel& model, const SummationPolicy& policy) {
  return run(geometry, thermal, model, policy, Schedule::Parallel);
}

FreeEnergyResult free_energy_serial(const GapGeometry& geometry, const ThermalState& thermal,
                                    const DispersionModel& model, const SummationPolicy& policy) {
  return run(geometry, thermal, model, policy, Schedule::Serial);
}

FreeEnergyResult free_energy_metal(const GapGeometry& geometry, const ThermalState& thermal,
                                   ZeroModePolicy zero_mode, const SummationPolicy& policy) {
  return free_energy(geometry, thermal, PerfectConductor{zero_mode}, policy);
}

std::optional<double> zero_mode_fraction(const FreeEnergyResult& result) {
  if (!result.converged) {
    throw ConvergenceError(std::string("zero_mode_fraction: free energy did not converge (cap: ") +
                           to_string(result.cap) + ")");
  }
  if (result.beta_F == 0.0) return std::nullopt;
  return result.zero_mode_beta_F / result.beta_F;
}

std::optional<double> zero_mode_fraction(const GapGeometry& geometry, const ThermalState& thermal,
                                         const DispersionModel& model,
                                         const SummationPolicy& policy) {
  return zero_mode_fraction(free_energy(geometry, thermal, model, policy));
}

ConvergenceReport convergence_report(const FreeEnergyResult& result) {
  ConvergenceReport report;
  report.converged = result.converged;
  report.cap = result.cap;
  report.terms_evaluated = result.terms_evaluated;
  report.path_counts = result.path_counts;
  report.matsubara_terms = static_cast<long>(result.per_m_partial_sums.size());
  for (int l : result.per_m_l_max) report.max_l = std::max(report.max_l, l);
  for (double tail : result.per_m_tail_estimates) report.l_tail_estimate += std::fabs(tail);

  const auto& sums = result.per_m_partial_sums;
  if (sums.size() >= 3) {
    report.m_tail_estimate = geometric_tail(sums[sums.size() - 2], sums.back());
  } else if (sums.size() == 2) {
    report.m_tail_estimate = std::fabs(sums.back());
  }

  // Debye terms agree with exact evaluation to ~1e-9; exact ones to ~1e-13.
  if (result.path_counts.debye > 0) {
    report.evaluation_floor = 1e-9;
  } else if (result.terms_evaluated > 0) {
    report.evaluation_floor = 1e-13;
  }

  if (result.beta_F == 0.0) {
    report.relative_error_estimate = 0.0;
    report.estimated_digits = std::numeric_limits<double>::digits10;
    return report;
  }
  report.relative_error_estimate =
      (report.l_tail_estimate + report.m_tail_estimate) / std::fabs(result.beta_F) +
      report.evaluation_floor;
  report.estimated_digits = std::min<double>(std::numeric_limits<double>::digits10,
                                             -std::log10(report.relative_error_estimate));
  return report;
}

const char* to_string(CapHit cap) {
  switch (cap) {
    case CapHit::None: return "none";
    case CapHit::MaxL: return "max_l";
    case CapHit::MaxM: return "max_m";
  }
  return "unknown";
}

}  // namespace casimir
