#include "casimir/debye.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace casimir {
namespace {

using Poly = RationalPolynomial;

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{Rational(0)};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<long>(i);
  return out;
}

// sum_i coeff_i * p(t) * t^shift_i
Poly shifted_sum(const Poly& p, std::initializer_list<std::pair<int, Rational>> shifts) {
  int max_shift = 0;
  for (const auto& [s, c] : shifts) max_shift = std::max(max_shift, s);
  Poly out(p.size() + max_shift, Rational(0));
  for (const auto& [s, c] : shifts) {
    for (std::size_t i = 0; i < p.size(); ++i) out[i + s] += c * p[i];
  }
  return out;
}

Poly integral_from_zero(const Poly& p) {
  Poly out(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / static_cast<long>(i + 1);
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

std::vector<double> to_doubles(const Poly& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(static_cast<double>(c));
  return out;
}

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void write_polynomial(std::ostream& out, const Poly& p, int sign) {
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational c = p[i] * sign;
    if (c == 0) continue;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    out << Rational(boost::multiprecision::abs(c)).str();
    if (i == 1) out << "*theta";
    if (i > 1) out << "*theta^" << i;
  }
  if (first) out << '0';
}

}  // namespace

DebyeVariables debye_variables(int l, double x) {
  if (l < 1) throw DomainError("debye_variables: order l must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("debye_variables: x must be > 0");
  DebyeVariables v;
  v.nu = l + 0.5;
  v.z = x / v.nu;
  const double root = std::hypot(1.0, v.z);  // 1/theta
  v.theta = 1.0 / root;
  v.eta = root + std::log(v.z / (1.0 + root));
  return v;
}

CorrectionTables generate_correction_coefficients(int terms) {
  if (terms < 0) throw DomainError("generate_correction_coefficients: terms must be >= 0");
  CorrectionTables t;
  t.u.push_back(Poly{Rational(1)});
  for (int k = 0; k < terms; ++k) {
    const Poly& uk = t.u.back();
    Poly lhs = shifted_sum(derivative(uk), {{2, Rational(1, 2)}, {4, Rational(-1, 2)}});
    Poly rhs = integral_from_zero(shifted_sum(uk, {{0, Rational(1, 8)}, {2, Rational(-5, 8)}}));
    Poly next = add(lhs, rhs);
    trim(next);
    t.u.push_back(std::move(next));
  }
  t.v.push_back(Poly{Rational(1)});
  t.c.push_back(Poly{Rational(1)});
  for (int k = 1; k <= terms; ++k) {
    const Poly& prev = t.u[k - 1];
    Poly a = shifted_sum(prev, {{1, Rational(-1, 2)}, {3, Rational(1, 2)}});
    Poly b = shifted_sum(derivative(prev), {{2, Rational(-1)}, {4, Rational(1)}});
    Poly vk = add(t.u[k], add(a, b));
    trim(vk);
    Poly ck = add(vk, shifted_sum(prev, {{1, Rational(1, 2)}}));
    trim(ck);
    t.v.push_back(std::move(vk));
    t.c.push_back(std::move(ck));
  }
  return t;
}

DebyeExpansion::DebyeExpansion(int terms) : tables_(generate_correction_coefficients(terms)) {
  for (const auto& p : tables_.u) u_.push_back(to_doubles(p));
  for (const auto& p : tables_.c) c_.push_back(to_doubles(p));
}

DebyePolynomials DebyeExpansion::polynomials(double theta, double nu) const {
  // Horner in 1/nu over the per-order polynomials in theta.
  const double inv_nu = 1.0 / nu;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  for (int k = terms(); k >= 0; --k) {
    const double uk = horner(u_[k], theta);
    const double ck = horner(c_[k], theta);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    a = a * inv_nu + uk;
    b = b * inv_nu + sign * uk;
    c = c * inv_nu + ck;
    d = d * inv_nu + sign * ck;
  }
  return {a, b, c, d};
}

RiccatiQuad DebyeExpansion::quad(int l, double x, const DebyeDomain& domain) const {
  const DebyeVariables v = debye_variables(l, x);
  const DebyePolynomials p = polynomials(v.theta, v.nu);
  // sqrt(z) / (1+z^2)^(1/4) = sqrt(z * theta)
  const double log_pre = 0.5 * (std::log(v.z) + std::log(v.theta));
  const double growth = v.nu * v.eta;
  constexpr double kLogHalf = -0.69314718055994530942;

  RiccatiQuad q;
  q.order_l = l;
  q.argument_x = x;
  q.source = QuadSource::Debye;
  q.validated = domain.contains(l, x);
  q.s = ScaledValue::from_log(1, kLogHalf + log_pre + growth) * p.A;
  q.e = ScaledValue::from_log(1, log_pre - growth) * p.B;
  q.s_prime = ScaledValue::from_log(1, kLogHalf - log_pre + growth) * p.C;
  q.e_prime = ScaledValue::from_log(-1, -log_pre - growth) * p.D;
  return q;
}

const DebyeExpansion& default_expansion() {
  static const DebyeExpansion expansion(kDefaultCorrectionTerms);
  return expansion;
}

RiccatiQuad debye_quad(int l, double x) { return default_expansion().quad(l, x); }

RiccatiQuad debye_quad(int l, double x, const DebyeExpansion& expansion,
                       const DebyeDomain& domain) {
  return expansion.quad(l, x, domain);
}

RiccatiQuad riccati_auto(int l, double x, const DebyeDomain& domain,
                         const DebyeExpansion& expansion) {
  if (domain.contains(l, x)) return expansion.quad(l, x, domain);
  return riccati_direct(l, x);
}

void dump_coefficient_tables(const CorrectionTables& tables, std::ostream& out) {
  out << "# Debye correction polynomials in theta; coefficient of nu^-k.\n";
  out << "# terms = " << tables.terms() << ", max theta power = " << tables.max_theta_power()
      << "\n";
  const struct {
    const char* name;
    const std::vector<RationalPolynomial>* family;
    bool alternating;
  } families[] = {
      {"A", &tables.u, false}, {"B", &tables.u, true}, {"C", &tables.c, false},
      {"D", &tables.c, true},  {"V", &tables.v, false},
  };
  for (const auto& f : families) {
    for (std::size_t k = 0; k < f.family->size(); ++k) {
      const int sign = (f.alternating && k % 2 == 1) ? -1 : 1;
      out << f.name << '[' << k << "] = ";
      write_polynomial(out, (*f.family)[k], sign);
      out << '\n';
    }
  }
}

}  // namespace casimir
