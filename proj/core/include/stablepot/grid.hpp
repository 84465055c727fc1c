#pragma once

#include <vector>

namespace stablepot {

struct Interval {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

// Behavior of a density at the edge of its domain: value ~ (distance)^exponent.
// Negative exponents mark integrable blow-ups that tabulation must not touch.
struct EndpointInfo {
  double exponent = 0.0;
  bool singular() const { return exponent < 0.0; }
};

struct GridSpec {
  Interval domain{0.0, 1.0};
  std::vector<double> points;  // strictly increasing, strictly interior
  EndpointInfo lo_endpoint;
  EndpointInfo hi_endpoint;
};

struct DensityGrid {
  std::vector<double> points;
  std::vector<double> values;
  EndpointInfo lo_endpoint;
  EndpointInfo hi_endpoint;
};

// count points placed at lo + (i+1)/(count+1) * (hi-lo), never touching the
// endpoints. margin > 0 shrinks the covered range to [lo+margin, hi-margin]
// first (margin is absolute, in domain units).
inline std::vector<double> uniform_interior_points(const Interval& domain,
                                                   int count,
                                                   double margin = 0.0) {
  const double lo = domain.lo + margin;
  const double hi = domain.hi - margin;
  std::vector<double> pts;
  pts.reserve(count > 0 ? static_cast<std::size_t>(count) : 0);
  for (int i = 0; i < count; ++i)
    pts.push_back(lo + (hi - lo) * (i + 1.0) / (count + 1.0));
  return pts;
}

}  // namespace stablepot
