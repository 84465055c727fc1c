#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stablepot/grid.hpp"
#include "stablepot/params.hpp"

namespace stablepot {

struct MCConfig {
  long n_paths = 100000;
  double step = 1e-4;       // skeleton time step
  long max_steps = 10000000;  // per-path cap; hitting it flags the record
  std::uint64_t seed = 1;
  int n_cells = 50;  // occupation histogram resolution over the domain
};

// One skeleton path, recorded at the first grid time strictly outside the
// domain. occupation[c] counts visits to cell c; every visit carries mass
// `step`, so step * (sum of counts) equals exit_time exactly.
struct ExitRecord {
  bool exited_up = false;
  bool capped = false;
  double exit_time = 0.0;
  double position_before = 0.0;  // last position inside
  double position_after = 0.0;   // first position outside (NaN if capped)
  double running_max_before = 0.0;
  double step = 0.0;
  std::vector<std::uint32_t> occupation;
};

// Generator for one path: splitmix-style mix of (seed, path_index), so path
// streams are independent of how paths are scheduled across workers.
std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index);

// One increment of the process over a time interval of length unit_time,
// drawn by the polar (Cauchy for alpha = 1) method. Consumes exactly two
// 64-bit draws.
double sample_stable(const StableParams& p, double unit_time,
                     std::mt19937_64& rng);

// Skeleton paths started at x in [domain.lo, domain.hi], killed at the first
// grid time strictly outside. Output order is by path index and does not
// depend on the worker count (override workers with STABLEPOT_THREADS).
std::vector<ExitRecord> simulate_exit(const StableParams& p, double x,
                                      const Interval& domain,
                                      const MCConfig& cfg);

// Paths of the process reflected at its running infimum,
// Y_k = X_k - min(0, min_{j<=k} X_j), started at x in [0, barrier], stopped
// at the first grid time Y > barrier. Histogram over [0, barrier).
std::vector<ExitRecord> simulate_reflected(const StableParams& p, double x,
                                           double barrier, const MCConfig& cfg);

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct DensityEstimate {
  Interval domain{0.0, 1.0};
  std::vector<MCEstimate> cells;
  long n_paths = 0;
  long n_capped = 0;
  double cell_width() const {
    return domain.width() / static_cast<double>(cells.size());
  }
};

// Averages the occupation histograms into a density over the domain, with a
// per-cell standard error from the across-path variance. Every record must
// carry an occupation histogram of exactly n_cells cells.
DensityEstimate estimate_density(std::span<const ExitRecord> records,
                                 const Interval& domain, int n_cells);

struct CellComparison {
  double lo = 0.0, hi = 0.0;
  double analytic = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double rel_dev = 0.0;
};

struct CompareReport {
  std::vector<CellComparison> cells;  // cells inside the central fraction
  double sup_rel_dev = 0.0;
  double max_abs_z = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// Compares the estimate against analytic cell means on cells fully inside
// the central fraction of the domain. analytic_cell_mean(lo, hi) must return
// the reference density averaged over [lo, hi].
CompareReport compare_density(
    const std::function<double(double, double)>& analytic_cell_mean,
    const DensityEstimate& est, double central_fraction,
    double sup_rel_threshold);

// Same with precomputed per-cell reference values; the grid must have exactly
// one value per estimate cell (estimation_error otherwise).
CompareReport compare_density(const DensityGrid& analytic,
                              const DensityEstimate& est,
                              double central_fraction,
                              double sup_rel_threshold);

// Kolmogorov-Smirnov distance between the sample set and a reference CDF.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Writes one row per record to `path` (write-then-rename) and the sparse
// occupation histograms to `path` + ".occ.csv".
void write_records_csv(std::span<const ExitRecord> records,
                       const std::string& path);

}  // namespace stablepot
