#include "stablepot/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <thread>

#include "stablepot/errors.hpp"

namespace stablepot {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::mt19937_64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

// Precomputed per-config pieces of the polar sampling formula.
struct StepSampler {
  bool cauchy;
  double scale;      // dt^(1/alpha)
  double shift;      // pi (rho - 1/2)
  double alpha;
  double inv_alpha;
  double skew_exp;   // (1 - alpha)/alpha

  StepSampler(const StableParams& p, double dt) {
    cauchy = p.alpha == 1.0;
    alpha = p.alpha;
    inv_alpha = 1.0 / p.alpha;
    skew_exp = (1.0 - p.alpha) / p.alpha;
    shift = kPi * (p.rho - 0.5);
    scale = cauchy ? dt : std::pow(dt, inv_alpha);
  }

  double operator()(std::mt19937_64& g) const {
    const double v = kPi * (uniform01(g) - 0.5);
    const double e = -std::log(uniform01(g));
    if (cauchy) return scale * std::tan(v);
    const double theta = alpha * (v + shift);
    const double s = -inv_alpha * std::log(std::cos(v)) +
                     skew_exp * (std::log(std::cos(v - theta)) - std::log(e));
    return scale * std::sin(theta) * std::exp(s);
  }
};

unsigned worker_count() {
  if (const char* env = std::getenv("STABLEPOT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

double mc_budget() {
  if (const char* env = std::getenv("STABLEPOT_MC_BUDGET")) {
    const double v = std::strtod(env, nullptr);
    if (v > 0.0) return v;
  }
  return 1e13;  // default cap on n_paths * max_steps
}

void check_config(const MCConfig& cfg) {
  if (cfg.n_paths < 1) throw domain_error("mc: n_paths must be >= 1");
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step))
    throw domain_error("mc: step must be positive and finite");
  if (cfg.max_steps < 1) throw domain_error("mc: max_steps must be >= 1");
  if (cfg.n_cells < 1) throw domain_error("mc: n_cells must be >= 1");
  const double work =
      static_cast<double>(cfg.n_paths) * static_cast<double>(cfg.max_steps);
  if (work > mc_budget())
    throw domain_error(
        "mc: n_paths * max_steps exceeds the work budget (raise "
        "STABLEPOT_MC_BUDGET to allow this)");
}

// Runs body(path_index, rng) for every path. Fixed-size chunks are handed to
// workers through an atomic counter; since each path's generator and output
// slot depend only on its index, results are identical for any worker count.
template <typename Body>
void run_paths(long n_paths, std::uint64_t seed, const Body& body) {
  constexpr long kChunk = 256;
  const unsigned workers = worker_count();
  if (workers <= 1 || n_paths < 2 * kChunk) {
    for (long i = 0; i < n_paths; ++i) {
      std::mt19937_64 rng = path_rng(seed, static_cast<std::uint64_t>(i));
      body(i, rng);
    }
    return;
  }
  std::atomic<long> next{0};
  const long n_chunks = (n_paths + kChunk - 1) / kChunk;
  auto worker = [&]() {
    for (;;) {
      const long c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const long lo = c * kChunk;
      const long hi = std::min(n_paths, lo + kChunk);
      for (long i = lo; i < hi; ++i) {
        std::mt19937_64 rng = path_rng(seed, static_cast<std::uint64_t>(i));
        body(i, rng);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::mt19937_64 path_rng(std::uint64_t seed, std::uint64_t path_index) {
  std::uint64_t s =
      seed + 0x9E3779B97F4A7C15ULL * (path_index + 0x632BE59BD9B4E019ULL);
  s = mix64(s);
  s = mix64(s + 0x9E3779B97F4A7C15ULL);
  return std::mt19937_64(s);
}

double sample_stable(const StableParams& p, double unit_time,
                     std::mt19937_64& rng) {
  if (!(unit_time > 0.0) || !std::isfinite(unit_time))
    throw domain_error("sample_stable: unit_time must be positive and finite");
  return StepSampler(p, unit_time)(rng);
}

std::vector<ExitRecord> simulate_exit(const StableParams& p, double x,
                                      const Interval& domain,
                                      const MCConfig& cfg) {
  check_config(cfg);
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) ||
      !(domain.lo < domain.hi))
    throw domain_error("simulate_exit: domain must be finite with lo < hi");
  if (!(x >= domain.lo && x <= domain.hi))
    throw domain_error("simulate_exit: start point must lie in the domain");

  const StepSampler draw(p, cfg.step);
  const double lo = domain.lo, hi = domain.hi;
  const double cell_scale = cfg.n_cells / domain.width();
  const int top_cell = cfg.n_cells - 1;

  std::vector<ExitRecord> records(cfg.n_paths);
  run_paths(cfg.n_paths, cfg.seed, [&](long i, std::mt19937_64& rng) {
    ExitRecord& rec = records[i];
    rec.step = cfg.step;
    rec.occupation.assign(cfg.n_cells, 0);
    double pos = x;
    double run_max = x;
    long k = 0;
    for (;;) {
      if (k >= cfg.max_steps) {
        rec.capped = true;
        rec.position_before = pos;
        rec.position_after = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      int cell = static_cast<int>((pos - lo) * cell_scale);
      if (cell < 0) cell = 0;
      if (cell > top_cell) cell = top_cell;
      ++rec.occupation[cell];
      const double next = pos + draw(rng);
      ++k;
      if (next < lo || next > hi) {
        rec.exited_up = next > hi;
        rec.position_before = pos;
        rec.position_after = next;
        break;
      }
      if (next > run_max) run_max = next;
      pos = next;
    }
    rec.exit_time = static_cast<double>(k) * cfg.step;
    rec.running_max_before = run_max;
  });
  return records;
}

std::vector<ExitRecord> simulate_reflected(const StableParams& p, double x,
                                           double barrier,
                                           const MCConfig& cfg) {
  check_config(cfg);
  if (!(barrier > 0.0) || !std::isfinite(barrier))
    throw domain_error("simulate_reflected: barrier must be positive and finite");
  if (!(x >= 0.0 && x <= barrier))
    throw domain_error("simulate_reflected: start point must lie in [0, barrier]");

  const StepSampler draw(p, cfg.step);
  const double cell_scale = cfg.n_cells / barrier;
  const int top_cell = cfg.n_cells - 1;

  std::vector<ExitRecord> records(cfg.n_paths);
  run_paths(cfg.n_paths, cfg.seed, [&](long i, std::mt19937_64& rng) {
    ExitRecord& rec = records[i];
    rec.step = cfg.step;
    rec.occupation.assign(cfg.n_cells, 0);
    double free_pos = x;    // unreflected path
    double run_min = 0.0;   // min(0, running minimum of the free path)
    double refl = x;        // free_pos - run_min
    double run_max = x;
    long k = 0;
    for (;;) {
      if (k >= cfg.max_steps) {
        rec.capped = true;
        rec.position_before = refl;
        rec.position_after = std::numeric_limits<double>::quiet_NaN();
        break;
      }
      int cell = static_cast<int>(refl * cell_scale);
      if (cell < 0) cell = 0;
      if (cell > top_cell) cell = top_cell;
      ++rec.occupation[cell];
      free_pos += draw(rng);
      ++k;
      if (free_pos < run_min) run_min = free_pos;
      const double next = free_pos - run_min;
      if (next > barrier) {
        rec.exited_up = true;
        rec.position_before = refl;
        rec.position_after = next;
        break;
      }
      if (next > run_max) run_max = next;
      refl = next;
    }
    rec.exit_time = static_cast<double>(k) * cfg.step;
    rec.running_max_before = run_max;
  });
  return records;
}

DensityEstimate estimate_density(std::span<const ExitRecord> records,
                                 const Interval& domain, int n_cells) {
  if (records.empty())
    throw estimation_error("estimate_density: no records");
  if (n_cells < 1)
    throw estimation_error("estimate_density: n_cells must be >= 1");
  if (!(domain.lo < domain.hi))
    throw estimation_error("estimate_density: domain must have lo < hi");
  const std::size_t cells = static_cast<std::size_t>(n_cells);
  for (const ExitRecord& r : records)
    if (r.occupation.size() != cells)
      throw estimation_error(
          "estimate_density: occupation grid mismatch between records and "
          "requested cells");

  const double n = static_cast<double>(records.size());
  const double w = domain.width() / n_cells;
  DensityEstimate out;
  out.domain = domain;
  out.n_paths = static_cast<long>(records.size());
  out.cells.resize(cells);

  std::vector<double> sum(cells, 0.0), sumsq(cells, 0.0);
  for (const ExitRecord& r : records) {
    if (r.capped) ++out.n_capped;
    for (std::size_t c = 0; c < cells; ++c) {
      const double mass = static_cast<double>(r.occupation[c]) * r.step;
      sum[c] += mass;
      sumsq[c] += mass * mass;
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    const double mean = sum[c] / n;
    out.cells[c].value = mean / w;
    if (records.size() > 1) {
      const double var =
          std::max(0.0, (sumsq[c] - n * mean * mean) / (n - 1.0));
      out.cells[c].std_error = std::sqrt(var / n) / w;
    }
  }
  return out;
}

namespace {

CompareReport compare_cells(const std::vector<double>& analytic,
                            const DensityEstimate& est,
                            double central_fraction,
                            double sup_rel_threshold) {
  const std::size_t cells = est.cells.size();
  const double w = est.cell_width();
  const double center = 0.5 * (est.domain.lo + est.domain.hi);
  const double half = 0.5 * central_fraction * est.domain.width();

  CompareReport rep;
  rep.threshold = sup_rel_threshold;
  for (std::size_t c = 0; c < cells; ++c) {
    const double lo = est.domain.lo + c * w;
    const double hi = lo + w;
    if (lo < center - half || hi > center + half) continue;
    CellComparison cc;
    cc.lo = lo;
    cc.hi = hi;
    cc.analytic = analytic[c];
    cc.estimate = est.cells[c].value;
    cc.std_error = est.cells[c].std_error;
    const double diff = cc.estimate - cc.analytic;
    cc.z = diff == 0.0 ? 0.0
                       : (cc.std_error > 0.0
                              ? diff / cc.std_error
                              : std::numeric_limits<double>::infinity());
    cc.rel_dev = cc.analytic != 0.0
                     ? std::abs(diff) / std::abs(cc.analytic)
                     : (diff == 0.0 ? 0.0
                                    : std::numeric_limits<double>::infinity());
    rep.sup_rel_dev = std::max(rep.sup_rel_dev, cc.rel_dev);
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(cc.z));
    rep.cells.push_back(cc);
  }
  rep.pass = !rep.cells.empty() && rep.sup_rel_dev <= sup_rel_threshold;
  return rep;
}

}  // namespace

CompareReport compare_density(
    const std::function<double(double, double)>& analytic_cell_mean,
    const DensityEstimate& est, double central_fraction,
    double sup_rel_threshold) {
  if (est.cells.empty())
    throw estimation_error("compare_density: estimate has no cells");
  const double w = est.cell_width();
  std::vector<double> analytic(est.cells.size());
  for (std::size_t c = 0; c < est.cells.size(); ++c) {
    const double lo = est.domain.lo + c * w;
    analytic[c] = analytic_cell_mean(lo, lo + w);
  }
  return compare_cells(analytic, est, central_fraction, sup_rel_threshold);
}

CompareReport compare_density(const DensityGrid& analytic,
                              const DensityEstimate& est,
                              double central_fraction,
                              double sup_rel_threshold) {
  if (analytic.values.size() != est.cells.size())
    throw estimation_error(
        "compare_density: analytic grid and estimate have different cell "
        "counts");
  return compare_cells(analytic.values, est, central_fraction,
                       sup_rel_threshold);
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw estimation_error("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

void write_records_csv(std::span<const ExitRecord> records,
                       const std::string& path) {
  auto format_row = [](char* buf, std::size_t cap, long i,
                       const ExitRecord& r) {
    std::snprintf(buf, cap, "%ld,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                  r.exited_up ? 1 : 0, r.capped ? 1 : 0, r.exit_time,
                  r.position_before, r.position_after, r.running_max_before,
                  r.step);
  };

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw estimation_error("write_records_csv: cannot open " + tmp);
    out << "path,exited_up,capped,exit_time,position_before,position_after,"
           "running_max_before,step\n";
    char buf[256];
    for (std::size_t i = 0; i < records.size(); ++i) {
      format_row(buf, sizeof buf, static_cast<long>(i), records[i]);
      out << buf;
    }
    if (!out) throw estimation_error("write_records_csv: write failed");
  }
  std::filesystem::rename(tmp, path);

  const std::string occ_path = path + ".occ.csv";
  const std::string occ_tmp = occ_path + ".tmp";
  {
    std::ofstream out(occ_tmp, std::ios::trunc);
    if (!out)
      throw estimation_error("write_records_csv: cannot open " + occ_tmp);
    out << "path,cell,mass\n";
    char buf[128];
    for (std::size_t i = 0; i < records.size(); ++i) {
      const ExitRecord& r = records[i];
      for (std::size_t c = 0; c < r.occupation.size(); ++c) {
        if (r.occupation[c] == 0) continue;
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", i, c,
                      static_cast<double>(r.occupation[c]) * r.step);
        out << buf;
      }
    }
    if (!out) throw estimation_error("write_records_csv: write failed");
  }
  std::filesystem::rename(occ_tmp, occ_path);
}

}  // namespace stablepot
