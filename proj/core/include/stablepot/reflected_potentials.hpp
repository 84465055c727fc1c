#pragma once

#include "stablepot/params.hpp"
#include "stablepot/special_functions.hpp"

namespace stablepot {

// Potential density of the process reflected at its infimum, killed at first
// passage above 1, started at 0:
// r1(0, y) = y^(alpha rho - 1) (1-y)^(alpha rho_hat) / Gamma(alpha).
double r1_zero_density(const StableParams& p, double y);

// Same, started at x in [0, 1): r1(x, y) = u1(x, y) plus the mass that
// reaches the infimum first, (1 - exit_up_prob(x)) r1(0, y).
// x = 0 delegates to r1_zero_density; x == y is out of domain.
double r1_density(const StableParams& p, double x, double y,
                  const QuadratureSpec& spec = {});

// Joint potential density r(x, y, z) of (reflected position, its running
// supremum) killed at first passage above the supremum level z, at
// y in (0, z), z >= x >= 0.
double r_xyz_density(const StableParams& p, double x, double y, double z,
                     const QuadratureSpec& spec = {});

// Density of the passage triple of the reflected process over the barrier
// at 1, started at x in [0, 1):
//   u = 1 - (supremum before passage)   in [0, 1-x), u > 0 when x = 0
//   v = 1 - (position before passage)   in (u, 1)
//   y = overshoot above 1               >= 0
// Total mass 1.
double reflected_triple_density(const StableParams& p, double x, double u,
                                double v, double y);

// Expected first passage time of the reflected process above 1, started at
// x in [0, 1]; equals the total mass of r1(x, .).
double expected_passage_time(const StableParams& p, double x);

}  // namespace stablepot
