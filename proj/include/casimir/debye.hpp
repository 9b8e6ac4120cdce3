#pragma once

#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "casimir/riccati.hpp"

namespace casimir {

/// Uniform-asymptotic variables for one (l, x):
/// nu = l + 1/2, z = x/nu, theta = (1+z^2)^(-1/2),
/// eta = 1/theta + ln(z / (1 + 1/theta)).
struct DebyeVariables {
  double nu = 0.0;
  double z = 0.0;
  double theta = 0.0;
  double eta = 0.0;
};

DebyeVariables debye_variables(int l, double x);

/// Correction series multiplying the leading Debye forms of s, e, s', e'.
/// All four tend to 1 as theta -> 0.
struct DebyePolynomials {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
  double D = 1.0;
};

using Rational = boost::multiprecision::cpp_rational;
/// Coefficients by ascending power of theta.
using RationalPolynomial = std::vector<Rational>;

/// Exact coefficient ladders, one polynomial in theta per power of 1/nu.
///
///   A = sum_k u_k(theta)/nu^k        B = sum_k (-1)^k u_k(theta)/nu^k
///   C = sum_k c_k(theta)/nu^k        D = sum_k (-1)^k c_k(theta)/nu^k
///
/// u_k, v_k are the standard modified-Bessel ladders; c_k = v_k + theta u_{k-1}/2
/// absorbs the extra s/(2x) from differentiating sqrt(x) I_nu(x).
struct CorrectionTables {
  std::vector<RationalPolynomial> u;
  std::vector<RationalPolynomial> v;
  std::vector<RationalPolynomial> c;

  /// Number of 1/nu corrections kept (k = 1..terms).
  int terms() const { return static_cast<int>(u.size()) - 1; }
  /// Highest power of theta present in the tables.
  int max_theta_power() const { return 3 * terms(); }
};

/// Builds u_k, v_k, c_k for k = 0..terms from
///   u_{k+1} = p^2 (1-p^2) u_k' / 2 + (1/8) int_0^p (1 - 5t^2) u_k(t) dt,
///   v_k = u_k - p (1-p^2) u_{k-1} / 2 - p^2 (1-p^2) u_{k-1}'.
CorrectionTables generate_correction_coefficients(int terms);

/// Number of 1/nu corrections whose polynomials stay within theta^max_power.
constexpr int terms_for_theta_power(int max_power) { return max_power / 3; }

/// 18 corrections in 1/nu. Keeping only theta^18 (6 corrections) falls short
/// of 8 digits for l <= 7 near x = 10; 18 corrections hold 1e-9 there.
inline constexpr int kDefaultCorrectionTerms = 18;

/// Where the asymptotic quad is trusted: x > x_above or l > l_above.
struct DebyeDomain {
  int l_above = 9;
  double x_above = 10.0;
  bool contains(int l, double x) const { return x > x_above || l > l_above; }
};

/// Double-precision evaluator built from a CorrectionTables instance.
/// Immutable after construction.
class DebyeExpansion {
 public:
  explicit DebyeExpansion(int terms = kDefaultCorrectionTerms);

  int terms() const { return static_cast<int>(u_.size()) - 1; }
  const CorrectionTables& tables() const { return tables_; }

  DebyePolynomials polynomials(double theta, double nu) const;

  /// Debye forms of s, e, s', e' with exp(+-nu*eta) kept in the log.
  RiccatiQuad quad(int l, double x, const DebyeDomain& domain = {}) const;

 private:
  CorrectionTables tables_;
  std::vector<std::vector<double>> u_;
  std::vector<std::vector<double>> c_;
};

/// Process-wide expansion with kDefaultCorrectionTerms; built on first use.
const DebyeExpansion& default_expansion();

RiccatiQuad debye_quad(int l, double x);
RiccatiQuad debye_quad(int l, double x, const DebyeExpansion& expansion,
                       const DebyeDomain& domain = {});

/// Debye quad inside `domain`, exact evaluation elsewhere.
RiccatiQuad riccati_auto(int l, double x, const DebyeDomain& domain = {},
                         const DebyeExpansion& expansion = default_expansion());

/// Writes one line per polynomial, e.g. "A[1] = 1/8*theta - 5/24*theta^3".
void dump_coefficient_tables(const CorrectionTables& tables, std::ostream& out);

}  // namespace casimir
