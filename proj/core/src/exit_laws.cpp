#include "stablepot/exit_laws.hpp"

#include <cmath>
#include <numbers>

#include "stablepot/errors.hpp"

namespace stablepot {

double exit_up_prob(const StableParams& p, double x, const QuadratureSpec& spec) {
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("exit_up_prob: requires x in [0, 1]");
  return reg_inc_beta(x, p.alpha * p.rho_hat, p.alpha * p.rho, spec);
}

double infimum_before_passage_density(const StableParams& p, double y) {
  if (!(y > 0.0 && y < 1.0))
    throw domain_error("infimum_before_passage_density: requires y in (0, 1)");
  const double arh = p.alpha * p.rho_hat;
  return std::sin(std::numbers::pi * arh) / std::numbers::pi *
         std::exp(-arh * std::log(y) + (arh - 1.0) * std::log1p(-y));
}

double supremum_at_passage_density(const StableParams& p, double t) {
  if (!(t > 1.0))
    throw domain_error("supremum_at_passage_density: requires t > 1");
  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  const double logc = std::lgamma(p.alpha) - std::lgamma(ar) - std::lgamma(arh);
  return std::exp(logc - p.alpha * std::log(t) + (ar - 1.0) * std::log(t - 1.0));
}

}  // namespace stablepot
