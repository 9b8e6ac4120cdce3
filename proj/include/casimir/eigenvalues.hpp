#pragma once

#include "casimir/debye.hpp"
#include "casimir/dispersion.hpp"

namespace casimir {

/// Two concentric spherical surfaces r = a < r = b with vacuum between.
class GapGeometry {
 public:
  /// Throws DomainError unless 0 < a < b.
  static GapGeometry from_radii(double inner_radius_a, double outer_radius_b);
  /// Unit inner radius.
  static GapGeometry from_ratio(double a_over_b);
  static GapGeometry from_rel_width(double d_over_a);

  double inner_radius_a() const { return a_; }
  double outer_radius_b() const { return b_; }
  double ratio() const { return a_ / b_; }
  double rel_width() const { return (b_ - a_) / a_; }

 private:
  GapGeometry(double a, double b) : a_(a), b_(b) {}
  double a_;
  double b_;
};

enum class EvaluationPath { Direct, Debye, AnalyticLimit };
enum class Mode { TM, TE };

struct ModeEigenvalues {
  double lambda_tm = 0.0;
  double lambda_te = 0.0;
  int l = 0;
  int m = 0;
  EvaluationPath path = EvaluationPath::Direct;
};

/// gamma = sqrt((1+z(x)^2)/(1+z(nx)^2)), delta likewise at y.
struct RatioCoefficients {
  double gamma = 1.0;
  double delta = 1.0;
};

RatioCoefficients ratio_coefficients(int l, double x, double y, double n);

// Eigenvalues for one Matsubara index m >= 1 with x = m t and y = x b/a.
// All four return exactly 0 at n = 1 and throw DomainError unless
// 0 < x < y and n >= 1.

/// lambda_TM = f1 f2 / (f3 f4) from exact quads at x, nx, y, ny.
double lambda_tm_direct(int l, double x, double y, double n);
/// lambda_TE = g1 g2 / (g3 g4) from exact quads at x, nx, y, ny.
double lambda_te_direct(int l, double x, double y, double n);

/// exp(2 nu [eta(x) - eta(y)]) times the ratio of Debye correction polynomials.
double lambda_tm_debye(int l, double x, double y, double n,
                       const DebyeExpansion& expansion = default_expansion());
double lambda_te_debye(int l, double x, double y, double n,
                       const DebyeExpansion& expansion = default_expansion());

/// 2 nu [eta(x) - eta(y)] in a form free of cancellation between the two etas.
double debye_exponent_difference(int l, double x, double y);

/// f1 f2 / (f3 f4) (TM) or g1 g2 / (g3 g4) (TE) from four precomputed quads; the quads
/// may come from any evaluator.
double lambda_from_quads(Mode mode, double n, const RiccatiQuad& at_x, const RiccatiQuad& at_nx,
                         const RiccatiQuad& at_y, const RiccatiQuad& at_ny);

/// n -> infinity at fixed m >= 1:
///   TM: s'(x) e'(y) / (e'(x) s'(y)),  TE: s(x) e(y) / (e(x) s(y)).
double lambda_metal_limit(int l, double x, double y, Mode mode, const DebyeDomain& domain = {});
/// Same limit written with Debye polynomials, C_x D_y/(D_x C_y) resp. A_x B_y/(B_x A_y).
double lambda_metal_debye(int l, double x, double y, Mode mode,
                          const DebyeExpansion& expansion = default_expansion());

/// x -> 0 limit of lambda_TM at fixed finite n:
///   l(l+1)(n^2-1)^2 / ((l n^2 + l + 1)((l+1) n^2 + l)) * (a/b)^(2l+1).
double constant_index_zero_mode_tm(int l, double ratio, double n);

/// Plasma m -> 0 TE limit at finite x_p (n x -> x_p, n y -> x_p b/a):
///   (a/b)^(2l+1) [(l+1) - X s'/s] / [l + X s'/s] * [l + Y e'/e] / [(l+1) - Y e'/e].
double plasma_zero_mode_te(int l, double ratio, double x_p);

/// m = 0 eigenvalues; the dispersion model decides the limit ordering.
ModeEigenvalues lambda_zero_mode(int l, const GapGeometry& geometry, const DispersionModel& model);

/// One (l, m >= 1) term with index n = n(i x) (infinite for a perfect
/// conductor). Uses the Debye ratio form when (l, x) lies in `debye_switch`
/// (then nx, y, ny do too), otherwise the f/g products with each quad taken from
/// the Debye or exact evaluator according to its own argument.
ModeEigenvalues mode_eigenvalues(int l, int m, double x, double y, double n,
                                 const DebyeDomain& debye_switch = {},
                                 const DebyeExpansion& expansion = default_expansion());

}  // namespace casimir
