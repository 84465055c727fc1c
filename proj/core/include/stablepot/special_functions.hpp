#pragma once

#include <functional>

namespace stablepot {

// Tolerances and subdivision budget for the adaptive quadrature underlying
// inc_beta / j_integral and the density integrals built on them. Error
// control: accept once the summed error estimate is below
// max(abs_tol, rel_tol * |integral|). Same spec in, bitwise-same result out.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 200;
};

struct LogGamma {
  double log_abs;  // log |Gamma(x)|
  int sign;        // sign of Gamma(x), +1 or -1
};

// log |Gamma(x)| with sign, valid for any non-pole real x.
// Throws pole_error at x = 0, -1, -2, ...
LogGamma log_gamma(double x);

// log Beta(a, b) for a, b > 0.
double log_beta(double a, double b);

// Adaptive Gauss-Kronrod (15 point) on a finite interval. The integrand must
// be finite at every point the rule touches; endpoint singularities belong in
// integrate_endpoint_powers instead.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

// integral of (t-lo)^p_lo * (hi-t)^p_hi * g(t) over (lo, hi) for smooth g and
// p_lo, p_hi > -1. Splits at the midpoint and substitutes the power factor
// away on each side, so integrable endpoint singularities cost no accuracy.
double integrate_endpoint_powers(const std::function<double(double)>& g,
                                 double lo, double hi, double p_lo, double p_hi,
                                 const QuadratureSpec& spec = {});

// Incomplete beta B(w; a, b) = integral of t^(a-1) (1-t)^(b-1) over (0, w),
// for w in [0, 1] and a > 0. b may be zero or negative as long as w < 1;
// w = 1 with b <= 0 throws divergence_error.
double inc_beta(double w, double a, double b, const QuadratureSpec& spec = {});

// Regularized incomplete beta I_x(a, b) = B(x; a, b) / B(a, b), a, b > 0.
double reg_inc_beta(double x, double a, double b, const QuadratureSpec& spec = {});

// J(w; a, b) = integral of s^(a-1) (1+s)^(b-1) over (0, w), a > 0, w >= 0.
// Via s = t/(1-t) this is B(w/(1+w); a, 1-a-b). Accepts w = +infinity when
// a + b < 1 and throws divergence_error otherwise.
double j_integral(double w, double a, double b, const QuadratureSpec& spec = {});

}  // namespace stablepot
