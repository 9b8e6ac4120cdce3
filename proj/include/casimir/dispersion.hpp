#pragma once

#include <string>
#include <variant>

namespace casimir {

// Frequencies are nondimensional throughout: omega_hat stands for the
// imaginary frequency times a/c, so a Matsubara index m sits at omega_hat = x.

/// Frequency-independent refractive index n >= 1.
struct ConstantIndex {
  double n = 1.0;
};

/// eps(i w) = 1 + w_p^2 / w^2, with x_p = omega_p a / c.
struct Plasma {
  double x_p = 0.0;
};

/// eps(i w) = 1 + w_p^2 / (w (w + relaxation)), with relaxation = gamma a / c.
struct Drude {
  double x_p = 0.0;
  double relaxation_gamma = 0.0;
};

/// Order of the limits n -> infinity and m -> 0 for the zero Matsubara mode.
/// OptionA takes n -> infinity first (both modes keep (a/b)^(2l+1));
/// OptionB takes m -> 0 first (the TE zero mode drops out).
enum class ZeroModePolicy { OptionA, OptionB };

struct PerfectConductor {
  ZeroModePolicy zero_mode = ZeroModePolicy::OptionB;
};

using DispersionModel = std::variant<ConstantIndex, Plasma, Drude, PerfectConductor>;

/// Speed of light in m/s, for SI conversions at the CLI boundary.
inline constexpr double kSpeedOfLight = 299792458.0;

Plasma plasma_from_si(double omega_p_per_s, double inner_radius_m);
Drude drude_from_si(double omega_p_per_s, double gamma_per_s, double inner_radius_m);

/// Throws DomainError on invalid parameters (n < 1, x_p <= 0, ...).
void validate(const DispersionModel& model);

/// eps(i omega_hat) >= 1. Drude at omega_hat = 0 and PerfectConductor return +inf.
double permittivity(const DispersionModel& model, double omega_hat);

/// eps(i omega_hat) * omega_hat; finite at omega_hat = 0 for Drude (x_p^2 / relaxation).
double permittivity_times_frequency(const DispersionModel& model, double omega_hat);

/// sqrt(eps(i omega_hat)).
double refractive_index(const DispersionModel& model, double omega_hat);

/// Behaviour of n(i w) * w as w -> 0, which fixes the zero-mode ordering.
struct IndexFrequencyLimit {
  enum class Kind { Zero, Infinite, Finite };
  Kind kind = Kind::Zero;
  /// The limiting value x_p for Plasma (both Finite and Infinite), else 0.
  double value = 0.0;
};

/// Plasma x_p counts as Infinite once x_p / reference_nu reaches this.
inline constexpr double kPlasmaInfiniteRatio = 1e3;

/// Zero: ConstantIndex, Drude, PerfectConductor(OptionB).
/// Infinite: PerfectConductor(OptionA), Plasma with x_p >= 1e3 * reference_nu.
/// Finite(x_p): Plasma otherwise.
IndexFrequencyLimit index_times_frequency_limit(const DispersionModel& model,
                                                double reference_nu = 100.0);

/// Short label: "n=2", "plasma", "drude", "pec-A", "pec-B".
std::string model_label(const DispersionModel& model);

}  // namespace casimir
