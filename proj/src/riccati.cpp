#include "casimir/riccati.hpp"

#include <cmath>
#include <string>

namespace casimir {
namespace {

void check_arguments(int l, double x, const char* who) {
  if (l < 1) throw DomainError(std::string(who) + ": order l must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument x must be finite and > 0");
  }
}

// e_l(x) and e_{l-1}(x) divided by exp(log_scale).
struct ScaledPair {
  double current = 0.0;
  double previous = 0.0;
  double log_scale = 0.0;
};

// Upward recurrence e_{j+1} = e_{j-1} + (2j+1)/x e_j from
// e_0 = exp(-x), e_1 = exp(-x) (1 + 1/x).
ScaledPair e_upward(int l, double x) {
  ScaledPair p{1.0 + 1.0 / x, 1.0, -x};
  for (int j = 1; j < l; ++j) {
    const double next = p.previous + (2.0 * j + 1.0) / x * p.current;
    p.previous = p.current;
    p.current = next;
    if (p.current > 1.0) {
      p.previous /= p.current;
      p.log_scale += std::log(p.current);
      p.current = 1.0;
    }
  }
  return p;
}

// e_l(x) from the terminating sum exp(-x) sum_k (l+k)!/(k!(l-k)!) (2x)^-k,
// accumulated from the k = l end so the leading small-x term is factored out.
ScaledValue e_terminating(int l, double x) {
  if (l == 0) return ScaledValue::from_log(1, -x);
  double ratio = 1.0;
  double total = 1.0;
  for (int k = l; k >= 1; --k) {
    ratio *= 2.0 * x * k / (static_cast<double>(l + k) * (l - k + 1));
    total += ratio;
  }
  const double log_lead = log_double_factorial_odd(l - 1) - l * std::log(x) - x;
  return ScaledValue::from_log(1, log_lead + std::log(total));
}

}  // namespace

ScaledValue wronskian(const RiccatiQuad& q) {
  return q.s * q.e_prime - q.s_prime * q.e;
}

double log_double_factorial_odd(int l) {
  double acc = 0.0;
  for (int j = 1; j <= l; ++j) acc += std::log(2.0 * j + 1.0);
  return acc;
}

double riccati_s_log_derivative(int l, double x) {
  check_arguments(l, x, "riccati_s_log_derivative");
  // rho = s_{l+1}/s_l = 1/(b_0 + 1/(b_1 + ...)), b_k = (2l+3+2k)/x,
  // evaluated with the modified Lentz algorithm.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const long max_iterations = 100000 + static_cast<long>(20.0 * x);
  double f = (2.0 * l + 3.0) / x;
  double c = f;
  double d = 0.0;
  bool converged = false;
  for (long k = 1; k <= max_iterations; ++k) {
    const double b = (2.0 * l + 3.0 + 2.0 * k) / x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw PrecisionError("riccati_s_log_derivative: continued fraction did not converge for l=" +
                         std::to_string(l) + ", x=" + std::to_string(x));
  }
  return (l + 1.0) / x + 1.0 / f;
}

RiccatiQuad riccati_direct(int l, double x) {
  check_arguments(l, x, "riccati_direct");
  const ScaledPair e = e_upward(l, x);
  const double e_prime_mag = e.previous + l / x * e.current;  // -e_l' / exp(scale)
  const double log_deriv = riccati_s_log_derivative(l, x);
  const double denominator = e.current * log_deriv + e_prime_mag;
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw PrecisionError("riccati_direct: Wronskian normalisation failed");
  }

  RiccatiQuad q;
  q.order_l = l;
  q.argument_x = x;
  q.source = QuadSource::Direct;
  q.e = ScaledValue::from_log(1, e.log_scale + std::log(e.current));
  q.e_prime = ScaledValue::from_log(-1, e.log_scale + std::log(e_prime_mag));
  const double log_s = -e.log_scale - std::log(denominator);
  q.s = ScaledValue::from_log(1, log_s);
  q.s_prime = ScaledValue::from_log(1, log_s + std::log(log_deriv));
  return q;
}

double small_argument_threshold(int l) { return 0.1 * std::sqrt(l + 1.5); }

RiccatiQuad small_argument_limits(int l, double x) {
  check_arguments(l, x, "small_argument_limits");
  if (x >= small_argument_threshold(l)) {
    throw DomainError("small_argument_limits: x=" + std::to_string(x) +
                      " exceeds the certified series threshold for l=" + std::to_string(l));
  }
  // s_l = x^(l+1)/(2l+1)!! sum_k t_k,  t_k = t_{k-1} (x^2/2) / (k (2l+1+2k))
  const double half_x2 = 0.5 * x * x;
  double term = 1.0;
  double sum_s = 1.0;
  double sum_sp = l + 1.0;
  bool converged = false;
  for (int k = 1; k <= 40; ++k) {
    term *= half_x2 / (k * (2.0 * l + 1.0 + 2.0 * k));
    sum_s += term;
    sum_sp += (l + 1.0 + 2.0 * k) * term;
    if (term < 1e-18 * sum_s) {
      converged = true;
      break;
    }
  }
  if (!converged) throw PrecisionError("small_argument_limits: series did not converge");

  const double log_lead = (l + 1.0) * std::log(x) - log_double_factorial_odd(l);
  RiccatiQuad q;
  q.order_l = l;
  q.argument_x = x;
  q.source = QuadSource::SmallArgument;
  q.s = ScaledValue::from_log(1, log_lead + std::log(sum_s));
  q.s_prime = ScaledValue::from_log(1, log_lead - std::log(x) + std::log(sum_sp));
  q.e = e_terminating(l, x);
  // e_l' = -e_{l-1} - (l/x) e_l
  q.e_prime = -(e_terminating(l - 1, x) + q.e * (l / x));
  return q;
}

}  // namespace casimir
