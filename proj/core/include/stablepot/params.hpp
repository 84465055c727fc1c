#pragma once

#include <complex>

namespace stablepot {

// Strictly stable process normalized by its positivity parameter rho:
// admissible pairs are alpha in (0,1) with rho in (0,1), alpha = 1 with
// rho = 1/2, and alpha in (1,2) with rho in (1-1/alpha, 1/alpha), always
// strictly interior. Derived constants are fixed at construction.
struct StableParams {
  double alpha;
  double rho;      // P(X_1 > 0)
  double rho_hat;  // 1 - rho, positivity parameter of the dual process
  double c;        // cos(pi alpha (rho - 1/2)), scale constant of the exponent
  double beta;     // skew in the (alpha, beta) parameterization; 0 when alpha = 1
  double c_plus;   // upper jump density coefficient Gamma(alpha+1)/(Gamma(alpha rho) Gamma(1-alpha rho))
  double c_minus;  // lower jump density coefficient, rho replaced by rho_hat
  double q;        // killing rate c_minus / alpha of the process absorbed below 0
};

// Validates (alpha, rho) and fills in the derived constants.
// Throws domain_error with a message naming the violated constraint.
StableParams make_params(double alpha, double rho);

// Density of the Levy jump measure at x != 0:
// c_plus x^-(alpha+1) for x > 0, c_minus |x|^-(alpha+1) for x < 0.
double levy_density(const StableParams& p, double x);

// Characteristic exponent Psi with E exp(i theta X_t) = exp(-t Psi(theta)):
// Psi(theta) = c |theta|^alpha (1 - i tan(pi alpha (rho - 1/2)) sgn theta).
std::complex<double> char_exponent(const StableParams& p, double theta);

// Parameters of the negated process (rho and rho_hat swap roles).
// Involutive field for field: dual(dual(p)) == p exactly.
StableParams dual(const StableParams& p);

}  // namespace stablepot
