#include "stablepot/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stablepot/errors.hpp"
#include "stablepot/special_functions.hpp"

namespace stablepot {

namespace {
constexpr double kPi = std::numbers::pi;

double jump_coefficient(double alpha, double positivity) {
  // Gamma(alpha+1) / (Gamma(alpha r) Gamma(1 - alpha r)); all arguments are
  // positive on the admissible set, but go through the signed form anyway.
  const LogGamma num = log_gamma(alpha + 1.0);
  const LogGamma d1 = log_gamma(alpha * positivity);
  const LogGamma d2 = log_gamma(1.0 - alpha * positivity);
  const double v = std::exp(num.log_abs - d1.log_abs - d2.log_abs);
  return v * num.sign * d1.sign * d2.sign;
}
}  // namespace

StableParams make_params(double alpha, double rho) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw domain_error("make_params: alpha must lie in (0, 2), got alpha=" +
                       std::to_string(alpha));
  if (!(rho > 0.0 && rho < 1.0))
    throw domain_error("make_params: rho must lie in (0, 1), got rho=" +
                       std::to_string(rho));
  if (alpha == 1.0 && rho != 0.5)
    throw domain_error("make_params: alpha=1 requires rho=1/2, got rho=" +
                       std::to_string(rho));
  if (alpha > 1.0 && !(rho > 1.0 - 1.0 / alpha && rho < 1.0 / alpha))
    throw domain_error(
        "make_params: alpha>1 requires rho in (1-1/alpha, 1/alpha), got rho=" +
        std::to_string(rho));

  StableParams p;
  p.alpha = alpha;
  p.rho = rho;
  p.rho_hat = 1.0 - rho;
  p.c = std::cos(kPi * alpha * (rho - 0.5));
  p.beta = (alpha == 1.0)
               ? 0.0
               : std::tan(kPi * alpha * (rho - 0.5)) / std::tan(kPi * alpha / 2.0);
  p.c_plus = jump_coefficient(alpha, rho);
  p.c_minus = jump_coefficient(alpha, p.rho_hat);
  p.q = p.c_minus / alpha;
  return p;
}

double levy_density(const StableParams& p, double x) {
  if (x == 0.0 || std::isnan(x))
    throw domain_error("levy_density: requires x != 0");
  const double coef = x > 0.0 ? p.c_plus : p.c_minus;
  return coef * std::pow(std::abs(x), -(p.alpha + 1.0));
}

std::complex<double> char_exponent(const StableParams& p, double theta) {
  if (std::isnan(theta)) throw domain_error("char_exponent: theta is NaN");
  if (theta == 0.0) return {0.0, 0.0};
  const double mag = p.c * std::pow(std::abs(theta), p.alpha);
  // tan(pi alpha (rho-1/2)) equals beta tan(pi alpha/2) but stays well
  // conditioned near alpha = 1
  const double skew = std::tan(kPi * p.alpha * (p.rho - 0.5));
  const double sgn = theta > 0.0 ? 1.0 : -1.0;
  return {mag, -mag * skew * sgn};
}

StableParams dual(const StableParams& p) {
  StableParams d;
  d.alpha = p.alpha;
  d.rho = p.rho_hat;
  d.rho_hat = p.rho;
  d.c = p.c;  // even in rho - 1/2
  d.beta = -p.beta;
  d.c_plus = p.c_minus;
  d.c_minus = p.c_plus;
  d.q = p.c_plus / p.alpha;
  return d;
}

}  // namespace stablepot
