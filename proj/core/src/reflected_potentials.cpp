#include "stablepot/reflected_potentials.hpp"

#include <cmath>

#include "stablepot/errors.hpp"
#include "stablepot/exit_laws.hpp"
#include "stablepot/killed_potentials.hpp"

namespace stablepot {

double r1_zero_density(const StableParams& p, double y) {
  if (!(y > 0.0 && y < 1.0))
    throw domain_error("r1_zero_density: requires y in (0, 1)");
  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  return std::exp(-std::lgamma(p.alpha) + (ar - 1.0) * std::log(y) +
                  arh * std::log1p(-y));
}

double r1_density(const StableParams& p, double x, double y,
                  const QuadratureSpec& spec) {
  if (!(x >= 0.0 && x < 1.0))
    throw domain_error("r1_density: requires x in [0, 1)");
  if (x == 0.0) return r1_zero_density(p, y);
  if (!(y > 0.0 && y < 1.0))
    throw domain_error("r1_density: requires y in (0, 1)");
  if (x == y)
    throw domain_error("r1_density: not defined on the diagonal x == y");
  return u1_density(p, x, y, spec) +
         (1.0 - exit_up_prob(p, x, spec)) * r1_zero_density(p, y);
}

double r_xyz_density(const StableParams& p, double x, double y, double z,
                     const QuadratureSpec& spec) {
  if (!(x >= 0.0)) throw domain_error("r_xyz_density: requires x >= 0");
  if (!(y > 0.0 && y < z))
    throw domain_error("r_xyz_density: requires y in (0, z)");
  if (!(z >= x)) throw domain_error("r_xyz_density: requires z >= x");

  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  const double common =
      std::exp((ar - 1.0) * std::log(y) + (arh - 1.0) * std::log(z - y));
  if (x == 0.0) return arh * std::exp(-std::lgamma(p.alpha)) * common;

  const double direct =
      std::exp(arh * std::log(x) + (ar - 1.0) * std::log(z - x) +
               (1.0 - p.alpha) * std::log(z));
  const double via_floor = arh * inc_beta(1.0 - x / z, ar, arh, spec);
  return std::exp(-std::lgamma(ar) - std::lgamma(arh)) * common *
         (direct + via_floor);
}

double reflected_triple_density(const StableParams& p, double x, double u,
                                double v, double y) {
  if (!(x >= 0.0 && x < 1.0))
    throw domain_error("reflected_triple_density: requires x in [0, 1)");
  if (x == 0.0) {
    if (!(u > 0.0 && u < 1.0))
      throw domain_error("reflected_triple_density: requires u in (0, 1) when x = 0");
  } else if (!(u >= 0.0 && u < 1.0 - x)) {
    throw domain_error("reflected_triple_density: requires u in [0, 1-x)");
  }
  if (!(v > u && v < 1.0))
    throw domain_error("reflected_triple_density: requires v in (u, 1)");
  if (!(y >= 0.0))
    throw domain_error("reflected_triple_density: requires y >= 0");

  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  const double powers = std::exp((ar - 1.0) * std::log1p(-v) +
                                 (arh - 1.0) * std::log(v - u) -
                                 (p.alpha + 1.0) * std::log(v + y));
  if (x == 0.0) {
    const double norm =
        p.alpha * arh *
        std::exp(-std::lgamma(ar) - std::lgamma(1.0 - ar));
    return norm * powers;
  }

  const double direct = std::exp(arh * std::log(x) +
                                 (ar - 1.0) * std::log(1.0 - u - x) +
                                 (1.0 - p.alpha) * std::log1p(-u));
  const double via_floor = arh * inc_beta(1.0 - x / (1.0 - u), ar, arh);
  const double norm =
      p.c_plus * std::exp(-std::lgamma(ar) - std::lgamma(arh));
  return norm * powers * (direct + via_floor);
}

double expected_passage_time(const StableParams& p, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("expected_passage_time: requires x in [0, 1]");
  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  const double boundary = std::pow(x, arh) * std::pow(1.0 - x, ar);
  return (boundary + arh * inc_beta(1.0 - x, ar, arh)) /
         std::exp(std::lgamma(p.alpha + 1.0));
}

}  // namespace stablepot
