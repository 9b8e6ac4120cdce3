#include "casimir/eigenvalues.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace casimir {
namespace {

void check_frequencies(double x, double y, double n, const char* who) {
  if (!(x > 0.0) || !(y > x)) {
    throw DomainError(std::string(who) + ": need 0 < x < y");
  }
  if (!(n >= 1.0)) throw DomainError(std::string(who) + ": need n >= 1");
}

double clamp_nonnegative(double lambda) { return lambda < 0.0 ? 0.0 : lambda; }

// TM weights (n, 1), TE weights (1, n); see the f/g factors.
struct Weights {
  ScaledValue p;
  ScaledValue q;
};

Weights weights_for(Mode mode, double n) {
  const ScaledValue one = ScaledValue::from_log(1, 0.0);
  const ScaledValue nn = ScaledValue::from_double(n);
  return mode == Mode::TM ? Weights{nn, one} : Weights{one, nn};
}

double debye_bracket(Mode mode, double n, const DebyePolynomials& px, const DebyePolynomials& pnx,
                     const DebyePolynomials& py, const DebyePolynomials& pny, double gamma,
                     double delta) {
  const double k = mode == Mode::TM ? n * n : 1.0;
  const double inner_ratio = pnx.C / pnx.A;
  const double outer_ratio = pny.D / pny.B;
  const double inner = (k * gamma * px.C - px.A * inner_ratio) / (k * gamma * px.D + px.B * inner_ratio);
  const double outer = (k * delta * py.D - py.B * outer_ratio) / (k * delta * py.C + py.A * outer_ratio);
  return inner * outer;
}

double odd_power(double ratio, int l) { return std::pow(ratio, 2 * l + 1); }

}  // namespace

GapGeometry GapGeometry::from_radii(double a, double b) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("geometry: need 0 < a < b (got a=" + std::to_string(a) +
                      ", b=" + std::to_string(b) + ")");
  }
  return GapGeometry(a, b);
}

GapGeometry GapGeometry::from_ratio(double a_over_b) {
  if (!(a_over_b > 0.0 && a_over_b < 1.0)) throw DomainError("geometry: a/b must lie in (0, 1)");
  return from_radii(1.0, 1.0 / a_over_b);
}

GapGeometry GapGeometry::from_rel_width(double d_over_a) {
  if (!(d_over_a > 0.0)) throw DomainError("geometry: d/a must be > 0");
  return from_radii(1.0, 1.0 + d_over_a);
}

RatioCoefficients ratio_coefficients(int l, double x, double y, double n) {
  check_frequencies(x, y, n, "ratio_coefficients");
  const double nu = l + 0.5;
  auto coeff = [&](double arg) {
    const double z = arg / nu;
    const double zn = n * z;
    return std::sqrt((1.0 + z * z) / (1.0 + zn * zn));
  };
  return {coeff(x), coeff(y)};
}

double lambda_from_quads(Mode mode, double n, const RiccatiQuad& qx, const RiccatiQuad& qnx,
                         const RiccatiQuad& qy, const RiccatiQuad& qny) {
  if (n == 1.0) return 0.0;
  const auto [p, q] = weights_for(mode, n);
  const ScaledValue f1 = p * qx.s_prime * qnx.s - q * qx.s * qnx.s_prime;
  const ScaledValue f2 = p * qy.e_prime * qny.e - q * qy.e * qny.e_prime;
  const ScaledValue f3 = p * qx.e_prime * qnx.s - q * qx.e * qnx.s_prime;
  const ScaledValue f4 = p * qny.e * qy.s_prime - q * qny.e_prime * qy.s;
  return clamp_nonnegative(((f1 * f2) / (f3 * f4)).to_double());
}

double lambda_tm_direct(int l, double x, double y, double n) {
  check_frequencies(x, y, n, "lambda_tm_direct");
  if (n == 1.0) return 0.0;
  return lambda_from_quads(Mode::TM, n, riccati_direct(l, x), riccati_direct(l, n * x),
                           riccati_direct(l, y), riccati_direct(l, n * y));
}

double lambda_te_direct(int l, double x, double y, double n) {
  check_frequencies(x, y, n, "lambda_te_direct");
  if (n == 1.0) return 0.0;
  return lambda_from_quads(Mode::TE, n, riccati_direct(l, x), riccati_direct(l, n * x),
                           riccati_direct(l, y), riccati_direct(l, n * y));
}

double debye_exponent_difference(int l, double x, double y) {
  const double nu = l + 0.5;
  const double zx = x / nu;
  const double zy = y / nu;
  const double rx = std::hypot(1.0, zx);
  const double ry = std::hypot(1.0, zy);
  // sqrt(1+zx^2) - sqrt(1+zy^2) + ln((x/y) (1 + ry) / (1 + rx))
  const double root_diff = (zx - zy) * (zx + zy) / (rx + ry);
  return 2.0 * nu * (root_diff + std::log(x / y) + std::log1p(ry) - std::log1p(rx));
}

namespace {

struct DebyeContext {
  DebyePolynomials px, pnx, py, pny;
  double gamma = 1.0;
  double delta = 1.0;
  double exponent = 0.0;
};

DebyeContext debye_context(int l, double x, double y, double n, const DebyeExpansion& expansion) {
  const double nu = l + 0.5;
  const DebyeVariables vx = debye_variables(l, x);
  const DebyeVariables vnx = debye_variables(l, n * x);
  const DebyeVariables vy = debye_variables(l, y);
  const DebyeVariables vny = debye_variables(l, n * y);
  DebyeContext ctx;
  ctx.px = expansion.polynomials(vx.theta, nu);
  ctx.pnx = expansion.polynomials(vnx.theta, nu);
  ctx.py = expansion.polynomials(vy.theta, nu);
  ctx.pny = expansion.polynomials(vny.theta, nu);
  ctx.gamma = vnx.theta / vx.theta;
  ctx.delta = vny.theta / vy.theta;
  ctx.exponent = debye_exponent_difference(l, x, y);
  return ctx;
}

double lambda_from_context(Mode mode, double n, const DebyeContext& ctx) {
  const double bracket =
      debye_bracket(mode, n, ctx.px, ctx.pnx, ctx.py, ctx.pny, ctx.gamma, ctx.delta);
  if (bracket <= 0.0) return 0.0;
  return std::exp(ctx.exponent + std::log(bracket));
}

double lambda_debye(Mode mode, int l, double x, double y, double n,
                    const DebyeExpansion& expansion, const char* who) {
  check_frequencies(x, y, n, who);
  if (n == 1.0) return 0.0;
  return lambda_from_context(mode, n, debye_context(l, x, y, n, expansion));
}

}  // namespace

double lambda_tm_debye(int l, double x, double y, double n, const DebyeExpansion& expansion) {
  return lambda_debye(Mode::TM, l, x, y, n, expansion, "lambda_tm_debye");
}

double lambda_te_debye(int l, double x, double y, double n, const DebyeExpansion& expansion) {
  return lambda_debye(Mode::TE, l, x, y, n, expansion, "lambda_te_debye");
}

double lambda_metal_limit(int l, double x, double y, Mode mode, const DebyeDomain& domain) {
  if (!(x > 0.0) || !(y > x)) throw DomainError("lambda_metal_limit: need 0 < x < y");
  const RiccatiQuad qx = riccati_auto(l, x, domain);
  const RiccatiQuad qy = riccati_auto(l, y, domain);
  const ScaledValue value = mode == Mode::TM
                                ? (qx.s_prime * qy.e_prime) / (qx.e_prime * qy.s_prime)
                                : (qx.s * qy.e) / (qx.e * qy.s);
  return value.to_double();
}

double lambda_metal_debye(int l, double x, double y, Mode mode, const DebyeExpansion& expansion) {
  if (!(x > 0.0) || !(y > x)) throw DomainError("lambda_metal_debye: need 0 < x < y");
  const double nu = l + 0.5;
  const DebyePolynomials px = expansion.polynomials(debye_variables(l, x).theta, nu);
  const DebyePolynomials py = expansion.polynomials(debye_variables(l, y).theta, nu);
  const double bracket = mode == Mode::TM ? (px.C * py.D) / (px.D * py.C) : (px.A * py.B) / (px.B * py.A);
  return std::exp(debye_exponent_difference(l, x, y)) * bracket;
}

double constant_index_zero_mode_tm(int l, double ratio, double n) {
  if (n == 1.0) return 0.0;
  const double n2 = n * n;
  const double first = (n2 - 1.0) / (l * n2 + l + 1.0);
  const double second = (n2 - 1.0) / ((l + 1.0) * n2 + l);
  return static_cast<double>(l) * (l + 1.0) * first * second * odd_power(ratio, l);
}

double plasma_zero_mode_te(int l, double ratio, double x_p) {
  if (!(x_p > 0.0)) throw DomainError("plasma_zero_mode_te: x_p must be > 0");
  const double big_x = x_p;
  const double big_y = x_p / ratio;
  const RiccatiQuad qx = riccati_auto(l, big_x);
  const RiccatiQuad qy = riccati_auto(l, big_y);
  const double xs = big_x * (qx.s_prime / qx.s).to_double();  // > l + 1
  const double ye = big_y * (qy.e_prime / qy.e).to_double();  // < -l
  const double inner = ((l + 1.0) - xs) / (l + xs);
  const double outer = (l + ye) / ((l + 1.0) - ye);
  return clamp_nonnegative(odd_power(ratio, l) * inner * outer);
}

ModeEigenvalues lambda_zero_mode(int l, const GapGeometry& geometry, const DispersionModel& model) {
  if (l < 1) throw DomainError("lambda_zero_mode: l must be >= 1");
  const double ratio = geometry.ratio();
  const double static_value = odd_power(ratio, l);
  ModeEigenvalues out;
  out.l = l;
  out.m = 0;
  out.path = EvaluationPath::AnalyticLimit;
  const IndexFrequencyLimit limit = index_times_frequency_limit(model, l + 0.5);

  if (const auto* c = std::get_if<ConstantIndex>(&model)) {
    out.lambda_tm = constant_index_zero_mode_tm(l, ratio, c->n);
  } else {
    // n -> infinity at zero frequency for every conducting model.
    out.lambda_tm = static_value;
  }

  switch (limit.kind) {
    case IndexFrequencyLimit::Kind::Zero:
      out.lambda_te = 0.0;
      break;
    case IndexFrequencyLimit::Kind::Infinite:
      out.lambda_te = static_value;
      break;
    case IndexFrequencyLimit::Kind::Finite:
      out.lambda_te = plasma_zero_mode_te(l, ratio, limit.value);
      break;
  }
  return out;
}

ModeEigenvalues mode_eigenvalues(int l, int m, double x, double y, double n,
                                 const DebyeDomain& debye_switch, const DebyeExpansion& expansion) {
  ModeEigenvalues out;
  out.l = l;
  out.m = m;
  if (n == 1.0) {
    out.path = EvaluationPath::AnalyticLimit;
    return out;
  }
  const bool debye = debye_switch.contains(l, x);
  out.path = debye ? EvaluationPath::Debye : EvaluationPath::Direct;
  if (std::isinf(n)) {
    if (debye) {
      out.lambda_tm = lambda_metal_debye(l, x, y, Mode::TM, expansion);
      out.lambda_te = lambda_metal_debye(l, x, y, Mode::TE, expansion);
    } else {
      out.lambda_tm = lambda_metal_limit(l, x, y, Mode::TM, debye_switch);
      out.lambda_te = lambda_metal_limit(l, x, y, Mode::TE, debye_switch);
    }
    return out;
  }
  if (debye) {
    const DebyeContext ctx = debye_context(l, x, y, n, expansion);
    out.lambda_tm = lambda_from_context(Mode::TM, n, ctx);
    out.lambda_te = lambda_from_context(Mode::TE, n, ctx);
    return out;
  }
  const RiccatiQuad qx = riccati_auto(l, x, debye_switch, expansion);
  const RiccatiQuad qnx = riccati_auto(l, n * x, debye_switch, expansion);
  const RiccatiQuad qy = riccati_auto(l, y, debye_switch, expansion);
  const RiccatiQuad qny = riccati_auto(l, n * y, debye_switch, expansion);
  out.lambda_tm = lambda_from_quads(Mode::TM, n, qx, qnx, qy, qny);
  out.lambda_te = lambda_from_quads(Mode::TE, n, qx, qnx, qy, qny);
  return out;
}

}  // namespace casimir
