#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stablepot/errors.hpp"
#include "stablepot/exit_laws.hpp"
#include "stablepot/special_functions.hpp"

using namespace stablepot;

namespace {
double rel(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("exit_up_prob boundary and closed-form values") {
  const StableParams cauchy = make_params(1.0, 0.5);
  CHECK(exit_up_prob(cauchy, 0.0) == 0.0);
  CHECK(exit_up_prob(cauchy, 1.0) == 1.0);
  // I_x(1/2, 1/2) = (2/pi) asin(sqrt(x))
  CHECK(rel(exit_up_prob(cauchy, 0.25), 1.0 / 3.0) < 1e-12);
  CHECK(rel(exit_up_prob(cauchy, 0.5), 0.5) < 1e-12);

  CHECK_THROWS_AS(exit_up_prob(cauchy, -0.1), domain_error);
  CHECK_THROWS_AS(exit_up_prob(cauchy, 1.1), domain_error);
}

TEST_CASE("exit_up_prob is monotone and respects duality") {
  for (auto [a, r] : {std::pair{0.7, 0.6}, {1.0, 0.5}, {1.5, 0.4}}) {
    const StableParams p = make_params(a, r);
    const StableParams d = dual(p);
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double x = i / 20.0;
      const double e = exit_up_prob(p, x);
      CHECK(e >= prev);
      prev = e;
      CHECK(std::abs(e + exit_up_prob(d, 1.0 - x) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("infimum law: values, support, mass") {
  const StableParams cauchy = make_params(1.0, 0.5);
  // sin(pi/2)/pi * y^(-1/2) (1-y)^(-1/2) at y = 1/2 -> 2/pi
  CHECK(rel(infimum_before_passage_density(cauchy, 0.5),
            0.63661977236758134) < 1e-13);

  CHECK_THROWS_AS(infimum_before_passage_density(cauchy, 0.0), domain_error);
  CHECK_THROWS_AS(infimum_before_passage_density(cauchy, 1.0), domain_error);
  CHECK_THROWS_AS(infimum_before_passage_density(cauchy, -0.2), domain_error);

  for (auto [a, r] : {std::pair{0.7, 0.6}, {1.0, 0.5}, {1.5, 0.4}}) {
    const StableParams p = make_params(a, r);
    const double arh = p.alpha * p.rho_hat;
    const double mass = integrate_endpoint_powers(
        [&](double y) {
          return infimum_before_passage_density(p, y) *
                 std::pow(y, arh) * std::pow(1.0 - y, 1.0 - arh);
        },
        0.0, 1.0, -arh, arh - 1.0);
    CHECK(std::abs(mass - 1.0) < 1e-9);
  }
}

TEST_CASE("supremum-at-passage law: values, support, mass, survival") {
  const StableParams cauchy = make_params(1.0, 0.5);
  // (1/pi) t^-1 (t-1)^(-1/2) at t = 2 -> 1/(2 pi)
  CHECK(rel(supremum_at_passage_density(cauchy, 2.0),
            0.15915494309189534) < 1e-13);

  CHECK_THROWS_AS(supremum_at_passage_density(cauchy, 1.0), domain_error);
  CHECK_THROWS_AS(supremum_at_passage_density(cauchy, 0.5), domain_error);

  for (auto [a, r] : {std::pair{0.7, 0.6}, {1.0, 0.5}, {1.5, 0.4}}) {
    const StableParams p = make_params(a, r);
    const double ar = p.alpha * p.rho;
    const double arh = p.alpha * p.rho_hat;
    // t = 1/u folds (1, inf) onto (0, 1)
    auto raw = [&](double u) {
      return supremum_at_passage_density(p, 1.0 / u) / (u * u);
    };
    const double mass = integrate_endpoint_powers(
        [&](double u) {
          return raw(u) * std::pow(u, 1.0 - arh) * std::pow(1.0 - u, 1.0 - ar);
        },
        0.0, 1.0, arh - 1.0, ar - 1.0);
    CHECK(std::abs(mass - 1.0) < 1e-9);

    // survival past t equals the regularized beta at 1/t
    for (double t : {1.5, 2.0, 4.0}) {
      const double tail = integrate_endpoint_powers(
          [&](double u) { return raw(u) * std::pow(u, 1.0 - arh); }, 0.0,
          1.0 / t, arh - 1.0, 0.0);
      CHECK(rel(tail, reg_inc_beta(1.0 / t, arh, ar)) < 1e-8);
      if (a == 1.5 && t == 2.0) CHECK(rel(tail, 0.37350801492558092) < 1e-9);
    }
  }
}
