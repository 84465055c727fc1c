#pragma once

#include <functional>

#include "stablepot/grid.hpp"
#include "stablepot/params.hpp"
#include "stablepot/special_functions.hpp"

namespace stablepot {

// Potential density u1(x, y) of the process killed on first exit from [0,1]:
// expected occupation density at y before exit, started at x. Defined for
// x, y interior and x != y (for alpha <= 1 the diagonal diverges; treated as
// out of domain uniformly).
double u1_density(const StableParams& p, double x, double y,
                  const QuadratureSpec& spec = {});

// Same quantity for killing on exit from a general finite interval A,
// by scaling and translation: width^(alpha-1) u1 of the mapped arguments.
double uA_density(const StableParams& p, const Interval& A, double x, double y,
                  const QuadratureSpec& spec = {});

// Joint potential density u(x, y, z) of (position, running supremum) for the
// process started at x > 0 and killed on first passage below 0, at position
// y in [0, z), supremum z > x.
double u_xyz_density(const StableParams& p, double x, double y, double z);

// Density of the first-passage triple over the barrier at 1, started at
// x in (0, 1) and killed on passage below 0:
//   u = 1 - (supremum before passage)   in [0, 1-x)
//   v = 1 - (position before passage)   in (u, 1]
//   y = overshoot above 1               >= 0
// Equals u(x, 1-v, 1-u) * levy_density(v + y); total mass over the octant is
// exit_up_prob(x).
double exit_triple_density(const StableParams& p, double x, double u, double v,
                           double y);

// Evaluates fn at every grid point; domain errors are rethrown with the
// offending abscissa prepended.
DensityGrid tabulate(const std::function<double(double)>& fn,
                     const GridSpec& grid);

}  // namespace stablepot
