#include "stablepot/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "stablepot/errors.hpp"

namespace stablepot {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double err;
  std::uint64_t order;  // insertion index, tie-breaker for determinism
};

struct PanelWorse {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.err != r.err) return l.err < r.err;
    return l.order > r.order;
  }
};

Panel gk15(const std::function<double(double)>& f, double a, double b,
           std::uint64_t order) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double integral = resk * h;
  resabs *= h;
  resasc *= h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);
  return Panel{a, b, integral, err, order};
}

void check_spec(const QuadratureSpec& spec) {
  if (!(spec.rel_tol >= 0.0) || !(spec.abs_tol >= 0.0) ||
      (spec.rel_tol == 0.0 && spec.abs_tol == 0.0))
    throw domain_error("quadrature: tolerances must be non-negative and not both zero");
  if (spec.max_subdivisions < 0)
    throw domain_error("quadrature: max_subdivisions must be >= 0");
}

double sum_panels(std::vector<Panel>& panels) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  // compensated summation keeps the result independent of split history
  double s = 0.0, comp = 0.0;
  for (const Panel& p : panels) {
    const double y = p.integral - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

}  // namespace

LogGamma log_gamma(double x) {
  if (std::isnan(x)) throw domain_error("log_gamma: x is NaN");
  if (x <= 0.0 && x == std::floor(x))
    throw pole_error("log_gamma: pole at non-positive integer x=" + std::to_string(x));
  LogGamma out;
  out.log_abs = std::lgamma(x);
  out.sign = 1;
  if (x < 0.0) {
    // Gamma alternates sign between consecutive negative integers:
    // negative on (-1,0), positive on (-2,-1), ...
    const double fl = std::floor(x);
    out.sign = (std::fmod(fl, 2.0) == 0.0) ? 1 : -1;
  }
  return out;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw domain_error("log_beta: requires a > 0 and b > 0");
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
  check_spec(spec);
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw domain_error("integrate: endpoints must be finite");
  if (!(lo <= hi)) throw domain_error("integrate: requires lo <= hi");
  if (lo == hi) return 0.0;

  std::vector<Panel> done;
  std::vector<Panel> active;
  std::uint64_t order = 0;
  active.push_back(gk15(f, lo, hi, order++));

  double total = active[0].integral;
  double total_err = active[0].err;
  const double min_width =
      64.0 * std::numeric_limits<double>::epsilon() *
      std::max({std::abs(lo), std::abs(hi), 1.0});

  int splits = 0;
  while (splits < spec.max_subdivisions && !active.empty() &&
         total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    auto worst = std::max_element(active.begin(), active.end(), PanelWorse{});
    Panel p = *worst;
    *worst = active.back();
    active.pop_back();
    if (p.b - p.a < min_width) {
      done.push_back(p);  // cannot usefully refine further
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    Panel left = gk15(f, p.a, mid, order++);
    Panel right = gk15(f, mid, p.b, order++);
    total += left.integral + right.integral - p.integral;
    total_err += left.err + right.err - p.err;
    active.push_back(left);
    active.push_back(right);
    ++splits;
  }

  done.insert(done.end(), active.begin(), active.end());
  return sum_panels(done);
}

double integrate_endpoint_powers(const std::function<double(double)>& g,
                                 double lo, double hi, double p_lo, double p_hi,
                                 const QuadratureSpec& spec) {
  check_spec(spec);
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw domain_error("integrate_endpoint_powers: requires finite lo < hi");
  if (std::isnan(p_lo) || std::isnan(p_hi) || p_lo <= -1.0 || p_hi <= -1.0)
    throw divergence_error(
        "integrate_endpoint_powers: endpoint exponent <= -1, integral diverges");

  const double mid = 0.5 * (lo + hi);

  // left half: substitute s = (t-lo)^(1+p_lo) so the (t-lo)^p_lo factor
  // becomes part of the measure
  double left;
  if (p_lo == 0.0) {
    auto f = [&](double t) { return std::pow(hi - t, p_hi) * g(t); };
    left = integrate(f, lo, mid, spec);
  } else {
    const double q = 1.0 / (1.0 + p_lo);
    auto f = [&](double s) {
      const double t = lo + std::pow(s, q);
      return q * std::pow(hi - t, p_hi) * g(t);
    };
    left = integrate(f, 0.0, std::pow(mid - lo, 1.0 + p_lo), spec);
  }

  double right;
  if (p_hi == 0.0) {
    auto f = [&](double t) { return std::pow(t - lo, p_lo) * g(t); };
    right = integrate(f, mid, hi, spec);
  } else {
    const double q = 1.0 / (1.0 + p_hi);
    auto f = [&](double s) {
      const double t = hi - std::pow(s, q);
      return q * std::pow(t - lo, p_lo) * g(t);
    };
    right = integrate(f, 0.0, std::pow(hi - mid, 1.0 + p_hi), spec);
  }
  return left + right;
}

double inc_beta(double w, double a, double b, const QuadratureSpec& spec) {
  if (!(a > 0.0)) throw domain_error("inc_beta: requires a > 0");
  if (std::isnan(b)) throw domain_error("inc_beta: b is NaN");
  if (!(w >= 0.0 && w <= 1.0)) throw domain_error("inc_beta: requires w in [0, 1]");
  if (w == 0.0) return 0.0;
  if (w == 1.0) {
    if (b <= 0.0)
      throw divergence_error("inc_beta: B(1; a, b) diverges for b <= 0");
    return integrate_endpoint_powers([](double) { return 1.0; }, 0.0, 1.0,
                                     a - 1.0, b - 1.0, spec);
  }
  auto g = [b](double t) { return std::exp((b - 1.0) * std::log1p(-t)); };
  return integrate_endpoint_powers(g, 0.0, w, a - 1.0, 0.0, spec);
}

double reg_inc_beta(double x, double a, double b, const QuadratureSpec& spec) {
  if (!(a > 0.0) || !(b > 0.0))
    throw domain_error("reg_inc_beta: requires a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0))
    throw domain_error("reg_inc_beta: requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double v = inc_beta(x, a, b, spec) * std::exp(-log_beta(a, b));
  return std::clamp(v, 0.0, 1.0);
}

double j_integral(double w, double a, double b, const QuadratureSpec& spec) {
  if (!(a > 0.0)) throw domain_error("j_integral: requires a > 0");
  if (std::isnan(b)) throw domain_error("j_integral: b is NaN");
  if (std::isnan(w) || !(w >= 0.0)) throw domain_error("j_integral: requires w >= 0");
  if (w == 0.0) return 0.0;
  if (std::isinf(w)) {
    if (a + b >= 1.0)
      throw divergence_error("j_integral: J(inf; a, b) diverges for a + b >= 1");
    return inc_beta(1.0, a, 1.0 - a - b, spec);
  }
  return inc_beta(w / (1.0 + w), a, 1.0 - a - b, spec);
}

}  // namespace stablepot
