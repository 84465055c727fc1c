#pragma once

#include "stablepot/params.hpp"
#include "stablepot/special_functions.hpp"

namespace stablepot {

// P_x(process started in (0,1) passes above 1 before passing below 0)
// = I_x(alpha rho_hat, alpha rho), x in [0, 1].
double exit_up_prob(const StableParams& p, double x,
                    const QuadratureSpec& spec = {});

// Density at y in (0, 1) of the pre-passage infimum: started at 1, the law of
// inf X_t over t up to the first passage below 0 is
// sin(pi alpha rho_hat)/pi * y^-(alpha rho_hat) (1-y)^(alpha rho_hat - 1).
double infimum_before_passage_density(const StableParams& p, double y);

// Density at t > 1 of the all-time supremum up to first passage below 0,
// started at 1: Gamma(alpha)/(Gamma(alpha rho) Gamma(alpha rho_hat))
// * t^-alpha (t-1)^(alpha rho - 1).
double supremum_at_passage_density(const StableParams& p, double t);

}  // namespace stablepot
