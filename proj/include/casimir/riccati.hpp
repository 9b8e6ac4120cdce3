#pragma once

#include "casimir/scaled_value.hpp"

namespace casimir {

/// Which evaluator produced a RiccatiQuad.
enum class QuadSource { Direct, SmallArgument, Debye };

/// Riccati-Bessel functions of imaginary argument for half-integer order
/// nu = l + 1/2:
///
///   s_l(x) = sqrt(pi x / 2) I_nu(x),   e_l(x) = sqrt(2x / pi) K_nu(x),
///
/// and their derivatives with respect to the whole argument. Wronskian
/// s e' - s' e = -1.
struct RiccatiQuad {
  ScaledValue s;
  ScaledValue e;
  ScaledValue s_prime;
  ScaledValue e_prime;
  int order_l = 0;
  double argument_x = 0.0;
  QuadSource source = QuadSource::Direct;
  /// False when an asymptotic evaluator ran outside its validated domain.
  bool validated = true;
};

/// s e' - s' e; equals -1 for an exact quad.
ScaledValue wronskian(const RiccatiQuad& quad);

/// Exact evaluation for any x > 0.
///
/// e_l and e_l' come from the upward recurrence (stable for K_nu), the
/// logarithmic derivative s_l'/s_l from a continued fraction, and s_l from
/// the Wronskian: s_l = 1 / (e_l s_l'/s_l - e_l'). The denominator is a sum
/// of two positive numbers, so no cancellation occurs.
///
/// Throws DomainError for l < 1 or x <= 0, PrecisionError if the continued
/// fraction does not converge.
RiccatiQuad riccati_direct(int l, double x);

/// s_l'(x) / s_l(x) via continued fraction; exposed for the zero-mode limits.
double riccati_s_log_derivative(int l, double x);

/// Largest argument accepted by small_argument_limits for order l.
double small_argument_threshold(int l);

/// Power-series evaluation of s_l, s_l' and the terminating expansion of
/// e_l, e_l' in 1/x. Only accepted for x < small_argument_threshold(l),
/// where a handful of series terms give better than 1e-10 relative.
RiccatiQuad small_argument_limits(int l, double x);

/// log((2l+1)!!)
double log_double_factorial_odd(int l);

}  // namespace casimir
