#include "stablepot/killed_potentials.hpp"

#include <cmath>
#include <string>

#include "stablepot/errors.hpp"

namespace stablepot {

double u1_density(const StableParams& p, double x, double y,
                  const QuadratureSpec& spec) {
  if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0))
    throw domain_error("u1_density: requires x and y in (0, 1)");
  if (x == y)
    throw domain_error("u1_density: not defined on the diagonal x == y");

  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  const double norm = std::exp(-std::lgamma(ar) - std::lgamma(arh));
  if (y < x) {
    const double w = y * (1.0 - x) / (x - y);
    return norm * std::pow(x - y, p.alpha - 1.0) * j_integral(w, ar, arh, spec);
  }
  const double w = x * (1.0 - y) / (y - x);
  return norm * std::pow(y - x, p.alpha - 1.0) * j_integral(w, arh, ar, spec);
}

double uA_density(const StableParams& p, const Interval& A, double x, double y,
                  const QuadratureSpec& spec) {
  if (!std::isfinite(A.lo) || !std::isfinite(A.hi) || !(A.lo < A.hi))
    throw domain_error("uA_density: interval must be finite with lo < hi");
  const double w = A.width();
  return std::pow(w, p.alpha - 1.0) *
         u1_density(p, (x - A.lo) / w, (y - A.lo) / w, spec);
}

double u_xyz_density(const StableParams& p, double x, double y, double z) {
  if (!(x > 0.0)) throw domain_error("u_xyz_density: requires x > 0");
  if (!(z > x)) throw domain_error("u_xyz_density: requires z > x");
  if (!(y >= 0.0 && y < z))
    throw domain_error("u_xyz_density: requires y in [0, z)");
  if (y == x)
    throw domain_error("u_xyz_density: not defined on the diagonal y == x");
  if (y == 0.0) return 0.0;

  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  return std::exp(-std::lgamma(ar) - std::lgamma(arh) + arh * std::log(x) +
                  ar * std::log(y) + (ar - 1.0) * std::log(z - x) +
                  (arh - 1.0) * std::log(z - y) - p.alpha * std::log(z));
}

double exit_triple_density(const StableParams& p, double x, double u, double v,
                           double y) {
  if (!(x > 0.0 && x < 1.0))
    throw domain_error("exit_triple_density: requires x in (0, 1)");
  if (!(u >= 0.0 && u < 1.0 - x))
    throw domain_error("exit_triple_density: requires u in [0, 1-x)");
  if (!(v > u && v <= 1.0))
    throw domain_error("exit_triple_density: requires v in (u, 1]");
  if (!(y >= 0.0))
    throw domain_error("exit_triple_density: requires y >= 0");
  if (v == 1.0) return 0.0;  // pre-passage position exactly at 0

  const double ar = p.alpha * p.rho;
  const double arh = p.alpha * p.rho_hat;
  // u(x, 1-v, 1-u) * levy(v + y), written as one exponential; the combined
  // constant is c_plus / (Gamma(alpha rho) Gamma(alpha rho_hat))
  return std::exp(std::log(p.c_plus) - std::lgamma(ar) - std::lgamma(arh) +
                  arh * std::log(x) + ar * std::log1p(-v) +
                  (ar - 1.0) * std::log(1.0 - u - x) +
                  (arh - 1.0) * std::log(v - u) - p.alpha * std::log1p(-u) -
                  (p.alpha + 1.0) * std::log(v + y));
}

DensityGrid tabulate(const std::function<double(double)>& fn,
                     const GridSpec& grid) {
  if (!std::isfinite(grid.domain.lo) || !std::isfinite(grid.domain.hi) ||
      !(grid.domain.lo < grid.domain.hi))
    throw domain_error("tabulate: domain must be finite with lo < hi");
  double prev = grid.domain.lo;
  for (double t : grid.points) {
    if (!(t > prev))
      throw domain_error("tabulate: points must be strictly increasing and interior");
    prev = t;
  }
  if (!grid.points.empty() && !(grid.points.back() < grid.domain.hi))
    throw domain_error("tabulate: points must be strictly increasing and interior");

  DensityGrid out;
  out.points = grid.points;
  out.lo_endpoint = grid.lo_endpoint;
  out.hi_endpoint = grid.hi_endpoint;
  out.values.reserve(grid.points.size());
  for (double t : grid.points) {
    try {
      out.values.push_back(fn(t));
    } catch (const domain_error& e) {
      throw domain_error("tabulate: at point " + std::to_string(t) + ": " +
                         e.what());
    }
  }
  return out;
}

}  // namespace stablepot
