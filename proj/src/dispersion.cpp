#include "casimir/dispersion.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "casimir/errors.hpp"

namespace casimir {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_frequency(double omega_hat) {
  if (!(omega_hat >= 0.0)) throw DomainError("dispersion: frequency must be >= 0");
}

}  // namespace

Plasma plasma_from_si(double omega_p_per_s, double inner_radius_m) {
  return Plasma{omega_p_per_s * inner_radius_m / kSpeedOfLight};
}

Drude drude_from_si(double omega_p_per_s, double gamma_per_s, double inner_radius_m) {
  return Drude{omega_p_per_s * inner_radius_m / kSpeedOfLight,
               gamma_per_s * inner_radius_m / kSpeedOfLight};
}

void validate(const DispersionModel& model) {
  std::visit(Overloaded{
                 [](const ConstantIndex& m) {
                   if (!(m.n >= 1.0) || !std::isfinite(m.n)) {
                     throw DomainError("constant index: n must be finite and >= 1");
                   }
                 },
                 [](const Plasma& m) {
                   if (!(m.x_p > 0.0)) throw DomainError("plasma: omega_p must be > 0");
                 },
                 [](const Drude& m) {
                   if (!(m.x_p > 0.0)) throw DomainError("drude: omega_p must be > 0");
                   if (!(m.relaxation_gamma > 0.0)) {
                     throw DomainError("drude: relaxation frequency must be > 0");
                   }
                 },
                 [](const PerfectConductor&) {},
             },
             model);
}

double permittivity(const DispersionModel& model, double omega_hat) {
  check_frequency(omega_hat);
  return std::visit(Overloaded{
                        [](const ConstantIndex& m) { return m.n * m.n; },
                        [&](const Plasma& m) {
                          if (omega_hat == 0.0) return kInf;
                          const double r = m.x_p / omega_hat;
                          return 1.0 + r * r;
                        },
                        [&](const Drude& m) {
                          if (omega_hat == 0.0) return kInf;
                          return 1.0 + m.x_p * m.x_p / (omega_hat * (omega_hat + m.relaxation_gamma));
                        },
                        [](const PerfectConductor&) { return kInf; },
                    },
                    model);
}

double permittivity_times_frequency(const DispersionModel& model, double omega_hat) {
  check_frequency(omega_hat);
  return std::visit(Overloaded{
                        [&](const ConstantIndex& m) { return m.n * m.n * omega_hat; },
                        [&](const Plasma& m) {
                          if (omega_hat == 0.0) return kInf;
                          return omega_hat + m.x_p * m.x_p / omega_hat;
                        },
                        [&](const Drude& m) {
                          return omega_hat + m.x_p * m.x_p / (omega_hat + m.relaxation_gamma);
                        },
                        [](const PerfectConductor&) { return kInf; },
                    },
                    model);
}

double refractive_index(const DispersionModel& model, double omega_hat) {
  return std::sqrt(permittivity(model, omega_hat));
}

IndexFrequencyLimit index_times_frequency_limit(const DispersionModel& model,
                                                double reference_nu) {
  using Kind = IndexFrequencyLimit::Kind;
  return std::visit(Overloaded{
                        [](const ConstantIndex&) { return IndexFrequencyLimit{Kind::Zero, 0.0}; },
                        [&](const Plasma& m) {
                          const bool huge = m.x_p >= kPlasmaInfiniteRatio * reference_nu;
                          return IndexFrequencyLimit{huge ? Kind::Infinite : Kind::Finite, m.x_p};
                        },
                        [](const Drude&) { return IndexFrequencyLimit{Kind::Zero, 0.0}; },
                        [](const PerfectConductor& m) {
                          return m.zero_mode == ZeroModePolicy::OptionA
                                     ? IndexFrequencyLimit{Kind::Infinite, 0.0}
                                     : IndexFrequencyLimit{Kind::Zero, 0.0};
                        },
                    },
                    model);
}

std::string model_label(const DispersionModel& model) {
  return std::visit(Overloaded{
                        [](const ConstantIndex& m) {
                          char buf[32];
                          auto res = std::to_chars(buf, buf + sizeof buf, m.n);
                          return "n=" + std::string(buf, res.ptr);
                        },
                        [](const Plasma&) { return std::string("plasma"); },
                        [](const Drude&) { return std::string("drude"); },
                        [](const PerfectConductor& m) {
                          return std::string(m.zero_mode == ZeroModePolicy::OptionA ? "pec-A"
                                                                                    : "pec-B");
                        },
                    },
                    model);
}

}  // namespace casimir
