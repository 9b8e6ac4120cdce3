#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "casimir/run_config.hpp"

namespace casimir {
namespace {

double relative_gap(const ScaledValue& a, const ScaledValue& b) {
  if (a.sign() != b.sign()) return 2.0;
  return std::fabs(std::expm1(a.log_mag() - b.log_mag()));
}

double wronskian_error(const RiccatiQuad& q) {
  return std::fabs((wronskian(q) + ScaledValue::from_double(1.0)).to_double());
}

bool report(std::ostream& out, const std::string& name, double worst, double limit) {
  const bool ok = worst <= limit;
  out << (ok ? "[PASS] " : "[FAIL] ") << name << ": worst " << format_real(worst) << " (limit "
      << format_real(limit) << ")\n";
  return ok;
}

}  // namespace

bool run_self_checks(std::ostream& out) {
  bool all = true;

  double worst = 0.0;
  for (int l = 1; l <= 50; ++l) {
    for (int i = 0; i <= 40; ++i) {
      const double x = std::pow(10.0, -4.0 + i * (std::log10(30.0) + 4.0) / 40.0);
      worst = std::max(worst, wronskian_error(riccati_direct(l, x)));
    }
  }
  all = report(out, "wronskian, exact path", worst, 1e-10) && all;

  worst = 0.0;
  const DebyeDomain domain;
  for (int l : {1, 2, 5, 9, 10, 20, 50, 100, 200}) {
    for (double x : {0.1, 1.0, 10.5, 30.0, 100.0, 1e3, 1e4}) {
      if (!domain.contains(l, x)) continue;
      worst = std::max(worst, wronskian_error(debye_quad(l, x)));
    }
  }
  all = report(out, "wronskian, Debye path", worst, 1e-8) && all;

  worst = 0.0;
  for (int l = 1; l <= 60; ++l) {
    for (double x : {0.5, 2.0, 10.5, 15.0, 30.0, 60.0, 100.0}) {
      if (!domain.contains(l, x)) continue;
      const RiccatiQuad d = debye_quad(l, x);
      const RiccatiQuad e = riccati_direct(l, x);
      worst = std::max({worst, relative_gap(d.s, e.s), relative_gap(d.e, e.e),
                        relative_gap(d.s_prime, e.s_prime), relative_gap(d.e_prime, e.e_prime)});
    }
  }
  all = report(out, "Debye vs exact quads", worst, 1e-8) && all;

  worst = 0.0;
  for (double q : {0.2, 0.5, 0.9}) {
    const GapGeometry g = GapGeometry::from_ratio(q);
    for (int l = 1; l <= 30; ++l) {
      const ModeEigenvalues ev =
          lambda_zero_mode(l, g, PerfectConductor{ZeroModePolicy::OptionA});
      const double expected = std::pow(g.ratio(), 2 * l + 1);
      worst = std::max({worst, std::fabs(ev.lambda_tm / expected - 1.0),
                        std::fabs(ev.lambda_te / expected - 1.0)});
    }
  }
  all = report(out, "metal zero mode (a/b)^(2l+1)", worst, 1e-14) && all;

  return all;
}

}  // namespace casimir
