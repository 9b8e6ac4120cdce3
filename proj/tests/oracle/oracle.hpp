#pragma once

// 50-digit reference values built on Boost.Math's Bessel functions; shares
// no code with the library.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Quad {
  Real s, e, sp, ep;
};

// s = sqrt(pi x/2) I_nu, e = sqrt(2x/pi) K_nu; I'_nu = I_{nu-1} - nu/x I_nu,
// K'_nu = -K_{nu-1} - nu/x K_nu.
inline Quad riccati(int l, const Real& x) {
  using boost::math::cyl_bessel_i;
  using boost::math::cyl_bessel_k;
  const Real pi = boost::math::constants::pi<Real>();
  const Real nu = Real(l) + Real(1) / 2;
  const Real i = cyl_bessel_i(nu, x);
  const Real i_prev = cyl_bessel_i(nu - 1, x);
  const Real k = cyl_bessel_k(nu, x);
  const Real k_prev = cyl_bessel_k(nu - 1, x);
  const Real di = i_prev - nu / x * i;
  const Real dk = -k_prev - nu / x * k;
  const Real root_x = sqrt(x);
  const Real cs = sqrt(pi / 2);
  const Real ce = sqrt(2 / pi);
  Quad q;
  q.s = cs * root_x * i;
  q.e = ce * root_x * k;
  q.sp = cs * (i / (2 * root_x) + root_x * di);
  q.ep = ce * (k / (2 * root_x) + root_x * dk);
  return q;
}

inline Real lambda_tm(int l, const Real& x, const Real& y, const Real& n) {
  const Quad qx = riccati(l, x), qnx = riccati(l, n * x), qy = riccati(l, y), qny = riccati(l, n * y);
  const Real f1 = n * qx.sp * qnx.s - qx.s * qnx.sp;
  const Real f2 = n * qy.ep * qny.e - qy.e * qny.ep;
  const Real f3 = n * qx.ep * qnx.s - qx.e * qnx.sp;
  const Real f4 = n * qny.e * qy.sp - qny.ep * qy.s;
  return f1 * f2 / (f3 * f4);
}

inline Real lambda_te(int l, const Real& x, const Real& y, const Real& n) {
  const Quad qx = riccati(l, x), qnx = riccati(l, n * x), qy = riccati(l, y), qny = riccati(l, n * y);
  const Real g1 = qx.sp * qnx.s - n * qx.s * qnx.sp;
  const Real g2 = qy.ep * qny.e - n * qy.e * qny.ep;
  const Real g3 = qx.ep * qnx.s - n * qx.e * qnx.sp;
  const Real g4 = qny.e * qy.sp - n * qny.ep * qy.s;
  return g1 * g2 / (g3 * g4);
}

// sum_l (2l+1) ln(1 - q^(2l+1)) until the terms drop below 1e-40.
inline Real metal_zero_mode_sum(const Real& q) {
  Real total = 0;
  for (int l = 1;; ++l) {
    const Real term = (2 * l + 1) * log1p(-pow(q, 2 * l + 1));
    total += term;
    if (abs(term) < Real("1e-40")) break;
  }
  return total;
}

}  // namespace oracle
