#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stablepot/mc.hpp"
#include "stablepot/params.hpp"
#include "stablepot/special_functions.hpp"

namespace stablepot {

// One verification outcome. observed is a discrepancy measure (max relative
// error, KS distance, ...) compared against threshold; for guard checks,
// which assert that a deliberately wrong reference is detected, pass means
// observed EXCEEDS the threshold (the check name carries a "guard" prefix).
struct CheckResult {
  std::string check;
  std::string params;
  double observed = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct IdentityCheckConfig {
  QuadratureSpec spec{};
  std::uint64_t seed = 1;
  int sweep_size = 100;
};

// Cross-checks tying the closed forms together: duality, marginalization of
// the joint potentials, normalization and total mass of the passage laws,
// the x -> 0 potential limit, factorization of the exit triple law, and the
// two independent evaluation routes for the reflected potential.
std::vector<CheckResult> identity_checks(const StableParams& p,
                                         const IdentityCheckConfig& cfg = {});

struct MCCheckConfig {
  MCConfig mc{};
  double x_killed = 0.5;
  double x_reflected = 0.3;
  double central_fraction = 0.8;
  double sup_rel_threshold = 0.05;
  double ks_threshold = 0.02;
  bool perturbation_guard = true;
};

// Simulation-versus-quadrature agreement: occupation histograms against
// u1/r1 cell means, exit fractions, mean exit and passage times, overshoot
// and undershoot marginal CDFs, plus guards that rerun the occupation
// comparison against rho +/- 0.1 references and demand that it fails.
std::vector<CheckResult> mc_checks(const StableParams& p,
                                   const MCCheckConfig& cfg = {});

// Analytic references used by the MC suite, exposed for direct testing.

// Density averaged over [lo, hi]; handles the diagonal and endpoint behavior.
double cell_average_u1(const StableParams& p, double x, double lo, double hi,
                       const QuadratureSpec& spec = {});
double cell_average_r1(const StableParams& p, double x, double lo, double hi,
                       const QuadratureSpec& spec = {});

// Mean exit time of the killed process, integral of u1(x, .) over (0, 1).
double killed_mean_exit_time(const StableParams& p, double x,
                             const QuadratureSpec& spec = {});

// Total mass and marginal CDFs of the passage triples by nested quadrature.
// reflected selects the law (reflected started at x, or killed started at x
// conditioned on nothing: the raw sub-probability law).
double triple_mass(const StableParams& p, double x, bool reflected,
                   const QuadratureSpec& spec = {});
// P(undershoot v <= v0), normalized by the total mass.
double triple_undershoot_cdf(const StableParams& p, double x, bool reflected,
                             double v0, const QuadratureSpec& spec = {});
// P(overshoot y <= y0), normalized by the total mass.
double triple_overshoot_cdf(const StableParams& p, double x, bool reflected,
                            double y0, const QuadratureSpec& spec = {});

}  // namespace stablepot
