#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>

#include "stablepot/errors.hpp"
#include "stablepot/params.hpp"

using namespace stablepot;

namespace {
double rel(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

bool message_contains(const std::function<void()>& f, const std::string& s) {
  try {
    f();
  } catch (const domain_error& e) {
    return std::string(e.what()).find(s) != std::string::npos;
  }
  return false;
}
}  // namespace

TEST_CASE("admissible region") {
  CHECK_NOTHROW(make_params(0.3, 0.99));
  CHECK_NOTHROW(make_params(1.0, 0.5));
  CHECK_NOTHROW(make_params(1.5, 0.4));
  CHECK_NOTHROW(make_params(1.999, 0.5));

  CHECK(message_contains([] { make_params(0.0, 0.5); }, "alpha must lie in (0, 2)"));
  CHECK(message_contains([] { make_params(2.0, 0.5); }, "alpha must lie in (0, 2)"));
  CHECK(message_contains([] { make_params(3.0, 0.5); }, "alpha must lie in (0, 2)"));
  CHECK(message_contains([] { make_params(0.5, 0.0); }, "rho must lie in (0, 1)"));
  CHECK(message_contains([] { make_params(0.5, 1.0); }, "rho must lie in (0, 1)"));
  CHECK(message_contains([] { make_params(1.0, 0.6); }, "alpha=1 requires rho=1/2"));
  CHECK(message_contains([] { make_params(1.5, 0.7); },
                         "alpha>1 requires rho in (1-1/alpha, 1/alpha)"));
  CHECK(message_contains([] { make_params(1.5, 1.0 / 3.0); },
                         "alpha>1 requires rho in (1-1/alpha, 1/alpha)"));
}

TEST_CASE("derived constants") {
  const StableParams cauchy = make_params(1.0, 0.5);
  CHECK(cauchy.rho + cauchy.rho_hat == 1.0);
  CHECK(cauchy.c == 1.0);
  CHECK(cauchy.beta == 0.0);
  CHECK(rel(cauchy.q, 0.31830988618379067) < 1e-14);  // 1/pi

  // alpha=1/2, rho=1/2: q = Gamma(3/2)/(Gamma(1/4)Gamma(3/4)) / (1/2)
  const StableParams half = make_params(0.5, 0.5);
  CHECK(rel(half.q, 0.39894228040143268) < 1e-14);  // 1/sqrt(2 pi)

  const StableParams p = make_params(1.5, 0.4);
  CHECK(rel(p.c_plus, 0.40243213489420690) < 1e-14);
  CHECK(rel(p.c_minus, 0.13075812702418581) < 1e-14);
  CHECK(rel(p.q, 0.087172084682790542) < 1e-14);
  CHECK(rel(p.q * p.alpha, p.c_minus) < 1e-12);

  const StableParams s = make_params(0.7, 0.6);
  CHECK(rel(s.c_plus, 0.28014204043458718) < 1e-14);
  CHECK(rel(s.c_minus, 0.22285453709680377) < 1e-14);
  CHECK(rel(s.q, 0.31836362442400541) < 1e-14);

  const StableParams t = make_params(1.3, 0.55);
  CHECK(rel(t.c_plus, 0.28983307125442821) < 1e-14);
  CHECK(rel(t.c_minus, 0.35821341193805143) < 1e-14);
  CHECK(rel(t.q, 0.27554877841388571) < 1e-14);
}

TEST_CASE("dual swaps the barrier roles and is an involution") {
  for (auto [a, r] : {std::pair{0.7, 0.6}, {1.0, 0.5}, {1.5, 0.4},
                      {1.9, 0.52}, {0.3, 0.1}}) {
    const StableParams p = make_params(a, r);
    const StableParams d = dual(p);
    CHECK(d.alpha == p.alpha);
    CHECK(d.rho == p.rho_hat);
    CHECK(d.rho_hat == p.rho);
    CHECK(d.c == p.c);
    CHECK(d.beta == -p.beta);
    CHECK(d.c_plus == p.c_minus);
    CHECK(d.c_minus == p.c_plus);
    const StableParams dd = dual(d);
    CHECK(dd.alpha == p.alpha);
    CHECK(dd.rho == p.rho);
    CHECK(dd.rho_hat == p.rho_hat);
    CHECK(dd.beta == p.beta);
    CHECK(dd.c_plus == p.c_plus);
    CHECK(dd.c_minus == p.c_minus);
    CHECK(dd.q == p.q);
  }
}

TEST_CASE("jump density") {
  const StableParams cauchy = make_params(1.0, 0.5);
  CHECK(rel(levy_density(cauchy, 1.0), 0.31830988618379067) < 1e-14);
  CHECK(levy_density(cauchy, -1.0) == levy_density(cauchy, 1.0));

  const StableParams p = make_params(1.5, 0.4);
  CHECK(rel(levy_density(p, 2.0), 0.071140622887768284) < 1e-13);
  // one-sided coefficients: x^(alpha+1) * density
  CHECK(rel(std::pow(2.0, 2.5) * levy_density(p, 2.0), p.c_plus) < 1e-13);
  CHECK(rel(std::pow(2.0, 2.5) * levy_density(p, -2.0), p.c_minus) < 1e-13);
  // scaling in |x|
  CHECK(rel(levy_density(p, 3.0),
            levy_density(p, 1.5) * std::pow(2.0, -2.5)) < 1e-12);

  CHECK_THROWS_AS(levy_density(p, 0.0), domain_error);
}

TEST_CASE("characteristic exponent") {
  const StableParams cauchy = make_params(1.0, 0.5);
  const std::complex<double> one = char_exponent(cauchy, 1.0);
  CHECK(rel(one.real(), 1.0) < 1e-14);
  CHECK(std::abs(one.imag()) < 1e-14);
  CHECK(rel(char_exponent(cauchy, -3.0).real(), 3.0) < 1e-14);

  const StableParams p = make_params(1.5, 0.4);
  const std::complex<double> plus = char_exponent(p, 2.0);
  const std::complex<double> minus = char_exponent(p, -2.0);
  CHECK(plus.real() == minus.real());
  CHECK(plus.imag() == -minus.imag());
  CHECK(rel(plus.real(), p.c * std::pow(2.0, 1.5)) < 1e-13);
  // positivity of the real part (a proper exponent decays)
  CHECK(plus.real() > 0.0);

  // symmetric case has no imaginary part
  const StableParams sym = make_params(1.5, 0.5);
  CHECK(std::abs(char_exponent(sym, 5.0).imag()) < 1e-14);
}
