// stablepot: evaluate, tabulate, and verify the potential densities and
// passage laws of strictly stable processes.
//
//   stablepot eval   --u1 --alpha 1 --rho 0.5 --x 0.75 --y 0.25
//   stablepot grid   --quantity r1 --x 0 --alpha 1 --rho 0.5 --count 100 --out r1.csv
//   stablepot verify identities --alpha 1.5 --rho 0.4
//
// Exit codes: 0 success / all checks pass, 1 a verification check failed,
// 2 bad arguments or a domain error (message printed verbatim on stderr).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stablepot/errors.hpp"
#include "stablepot/exit_laws.hpp"
#include "stablepot/grid.hpp"
#include "stablepot/killed_potentials.hpp"
#include "stablepot/params.hpp"
#include "stablepot/reflected_potentials.hpp"
#include "stablepot/verify.hpp"
#include "stablepot/version.hpp"

namespace sp = stablepot;
using nlohmann::json;

namespace {

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Coord {
  CLI::Option* opt = nullptr;
  double value = 0.0;
  bool set() const { return opt && opt->count() > 0; }
};

struct EvalArgs {
  double alpha = 0.0, rho = 0.0;
  std::string quantity;
  Coord x, y, z, u, v, t;
};

const std::map<std::string, const char*> kQuantityHelp = {
    {"u1",
     "u1(x,y): potential density at y of the process started at x, killed on "
     "first exit from [0,1]"},
    {"uxyz",
     "u(x,y,z): joint potential density at (position y, running maximum z) "
     "of the process started at x, killed on first exit from [0,1]"},
    {"triple",
     "exit triple density at (u,v,y): undershoot-from-maximum u, undershoot "
     "v, overshoot y at first passage above 1 from x, on the event of "
     "leaving [0,1] upward"},
    {"r1",
     "r1(x,y): potential density at y of the reflected process started at x, "
     "stopped at first passage above 1"},
    {"rxyz",
     "r(x,y,z): joint potential density at (position y, running maximum z) "
     "of the reflected process started at x"},
    {"rtriple",
     "reflected triple density at (u,v,y): undershoot-from-maximum u, "
     "undershoot v, overshoot y at the reflected process's first passage "
     "above 1, started at x"},
    {"exit-prob", "probability that the process started at x leaves [0,1] upward"},
    {"epass",
     "expected first-passage time above 1 of the reflected process started "
     "at x"},
    {"law-inf", "density at y of the infimum before first passage above 1"},
    {"law-sup", "density at t of the supremum at first passage above 1"},
    {"levy", "jump (Levy) density at x"},
    {"q",
     "killing rate q = c_minus / alpha of the process absorbed below 0 under "
     "the logarithmic space-time change"},
};

double eval_dispatch(const sp::StableParams& p, const EvalArgs& a) {
  auto need = [&](const Coord& c, const char* flag) {
    if (!c.set())
      throw sp::domain_error("eval --" + a.quantity + " requires " + flag);
    return c.value;
  };
  const std::string& q = a.quantity;
  if (q == "u1") return sp::u1_density(p, need(a.x, "--x"), need(a.y, "--y"));
  if (q == "uxyz")
    return sp::u_xyz_density(p, need(a.x, "--x"), need(a.y, "--y"),
                             need(a.z, "--z"));
  if (q == "triple")
    return sp::exit_triple_density(p, need(a.x, "--x"), need(a.u, "--u"),
                                   need(a.v, "--v"), need(a.y, "--y"));
  if (q == "r1") return sp::r1_density(p, need(a.x, "--x"), need(a.y, "--y"));
  if (q == "rxyz")
    return sp::r_xyz_density(p, need(a.x, "--x"), need(a.y, "--y"),
                             need(a.z, "--z"));
  if (q == "rtriple")
    return sp::reflected_triple_density(p, need(a.x, "--x"), need(a.u, "--u"),
                                        need(a.v, "--v"), need(a.y, "--y"));
  if (q == "exit-prob") return sp::exit_up_prob(p, need(a.x, "--x"));
  if (q == "epass") return sp::expected_passage_time(p, need(a.x, "--x"));
  if (q == "law-inf")
    return sp::infimum_before_passage_density(p, need(a.y, "--y"));
  if (q == "law-sup")
    return sp::supremum_at_passage_density(p, need(a.t, "--t"));
  if (q == "levy") return sp::levy_density(p, need(a.x, "--x"));
  if (q == "q") return p.q;
  throw sp::domain_error("unknown quantity " + q);
}

int run_eval(const EvalArgs& a) {
  const sp::StableParams p = sp::make_params(a.alpha, a.rho);
  const double value = eval_dispatch(p, a);
  std::string coords;
  const std::pair<const char*, const Coord*> cs[] = {
      {"x", &a.x}, {"y", &a.y}, {"z", &a.z},
      {"u", &a.u}, {"v", &a.v}, {"t", &a.t}};
  for (const auto& [name, c] : cs)
    if (c->set()) coords += std::string(" ") + name + "=" + fmt("%.17g", c->value);
  std::printf("%.15g\n", value);
  std::printf("# %s\n", kQuantityHelp.at(a.quantity));
  std::printf("# alpha=%.17g rho=%.17g%s version=%s\n", a.alpha, a.rho,
              coords.c_str(), sp::kVersion);
  return 0;
}

struct GridArgs {
  double alpha = 0.0, rho = 0.0;
  std::string quantity;
  Coord x;
  int count = 0;
  double margin = 0.0;
  Coord lo, hi;
  std::string out;
};

int run_grid(const GridArgs& a) {
  const sp::StableParams p = sp::make_params(a.alpha, a.rho);
  if (a.count < 0) throw sp::domain_error("grid: count must be >= 0");
  if (a.margin < 0.0) throw sp::domain_error("grid: margin must be >= 0");

  sp::Interval dom{0.0, 1.0};
  if (a.quantity == "law-sup") dom = {1.0, 5.0};
  if (a.quantity == "levy") dom = {1.0, 2.0};
  if (a.lo.set()) dom.lo = a.lo.value;
  if (a.hi.set()) dom.hi = a.hi.value;
  if (!(dom.lo < dom.hi)) throw sp::domain_error("grid: requires lo < hi");
  if (2.0 * a.margin >= dom.width())
    throw sp::domain_error("grid: margin leaves an empty range");

  std::function<double(double)> f;
  auto needs_x = [&]() {
    if (!a.x.set())
      throw sp::domain_error("grid --quantity " + a.quantity + " requires --x");
    return a.x.value;
  };
  if (a.quantity == "u1") {
    const double x = needs_x();
    f = [p, x](double y) { return sp::u1_density(p, x, y); };
  } else if (a.quantity == "r1") {
    const double x = needs_x();
    f = [p, x](double y) { return sp::r1_density(p, x, y); };
  } else if (a.quantity == "exit-prob") {
    f = [p](double x) { return sp::exit_up_prob(p, x); };
  } else if (a.quantity == "epass") {
    f = [p](double x) { return sp::expected_passage_time(p, x); };
  } else if (a.quantity == "law-inf") {
    f = [p](double y) { return sp::infimum_before_passage_density(p, y); };
  } else if (a.quantity == "law-sup") {
    f = [p](double t) { return sp::supremum_at_passage_density(p, t); };
  } else if (a.quantity == "levy") {
    f = [p](double x) { return sp::levy_density(p, x); };
  } else {
    throw sp::domain_error("grid: unknown quantity " + a.quantity);
  }

  sp::GridSpec gspec;
  gspec.domain = dom;
  gspec.points = sp::uniform_interior_points(dom, a.count, a.margin);
  const sp::DensityGrid g = sp::tabulate(f, gspec);

  std::ostringstream body;
  body << "# stablepot " << sp::kVersion << " quantity=" << a.quantity
       << " alpha=" << fmt("%.17g", a.alpha) << " rho=" << fmt("%.17g", a.rho);
  if (a.x.set()) body << " x=" << fmt("%.17g", a.x.value);
  body << " lo=" << fmt("%.17g", dom.lo) << " hi=" << fmt("%.17g", dom.hi)
       << " count=" << a.count << " margin=" << fmt("%.17g", a.margin)
       << "\n";
  body << "abscissa,value\n";
  for (std::size_t i = 0; i < g.points.size(); ++i)
    body << fmt("%.17g", g.points[i]) << "," << fmt("%.17g", g.values[i])
         << "\n";

  const std::string tmp = a.out + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw sp::domain_error("grid: cannot open " + tmp);
    os << body.str();
    if (!os.flush()) throw sp::domain_error("grid: write failed on " + tmp);
  }
  std::filesystem::rename(tmp, a.out);
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::vector<double> alphas{0.7, 1.0, 1.5};
  std::vector<double> rhos{0.6, 0.5, 0.4};
  std::uint64_t seed = 1;
  long paths = 100000;
  double step = 1e-4;
  long max_steps = 10000000;
  int cells = 50;
  std::string filter;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  if (a.alphas.size() != a.rhos.size())
    throw sp::domain_error("verify: --alpha and --rho lists must pair up");
  if (a.alphas.empty()) throw sp::domain_error("verify: no parameter points");

  json report;
  report["tool"] = "stablepot";
  report["version"] = sp::kVersion;
  report["suite"] = a.suite;
  report["seed"] = a.seed;
  report["runs"] = json::array();

  bool all_pass = true;
  for (std::size_t i = 0; i < a.alphas.size(); ++i) {
    const sp::StableParams p = sp::make_params(a.alphas[i], a.rhos[i]);
    std::vector<sp::CheckResult> checks;
    if (a.suite == "identities") {
      sp::IdentityCheckConfig cfg;
      cfg.seed = a.seed;
      checks = sp::identity_checks(p, cfg);
    } else {
      sp::MCCheckConfig cfg;
      cfg.mc.n_paths = a.paths;
      cfg.mc.step = a.step;
      cfg.mc.max_steps = a.max_steps;
      cfg.mc.seed = a.seed;
      cfg.mc.n_cells = a.cells;
      checks = sp::mc_checks(p, cfg);
    }
    json run;
    run["alpha"] = a.alphas[i];
    run["rho"] = a.rhos[i];
    run["checks"] = json::array();
    bool run_pass = true;
    for (const sp::CheckResult& c : checks) {
      if (!a.filter.empty() && c.check.find(a.filter) == std::string::npos)
        continue;
      run["checks"].push_back(json{{"check", c.check},
                                   {"params", c.params},
                                   {"observed", c.observed},
                                   {"threshold", c.threshold},
                                   {"pass", c.pass}});
      run_pass = run_pass && c.pass;
    }
    run["all_pass"] = run_pass;
    all_pass = all_pass && run_pass;
    report["runs"].push_back(std::move(run));
  }
  report["all_pass"] = all_pass;

  const std::string text = report.dump(2) + "\n";
  if (a.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    const std::string tmp = a.out + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw sp::domain_error("verify: cannot open " + tmp);
      os << text;
      if (!os.flush()) throw sp::domain_error("verify: write failed on " + tmp);
    }
    std::filesystem::rename(tmp, a.out);
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "potential densities and passage laws of strictly stable processes"};
  app.set_version_flag("--version", std::string(sp::kVersion));
  app.require_subcommand(1);

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand(
      "eval", "print one value (15 significant digits) with a line naming "
              "the formula and one echoing the inputs");
  eval->add_option("--alpha", ea.alpha, "stability index, in (0,2)")
      ->required();
  eval->add_option("--rho", ea.rho, "positivity parameter, in (0,1)")
      ->required();
  CLI::Option_group* qg =
      eval->add_option_group("quantity", "exactly one of the following");
  for (const auto& [name, help] : kQuantityHelp)
    qg->add_flag_callback(
        "--" + name, [&ea, n = name] { ea.quantity = n; }, help);
  qg->require_option(1);
  ea.x.opt = eval->add_option("--x", ea.x.value, "starting point");
  ea.y.opt = eval->add_option("--y", ea.y.value, "position / overshoot");
  ea.z.opt = eval->add_option("--z", ea.z.value, "running maximum");
  ea.u.opt = eval->add_option("--u", ea.u.value, "undershoot from the maximum");
  ea.v.opt = eval->add_option("--v", ea.v.value, "undershoot");
  ea.t.opt = eval->add_option("--t", ea.t.value, "supremum at passage");

  GridArgs ga;
  CLI::App* grid = app.add_subcommand(
      "grid", "tabulate one quantity on interior points of [lo,hi] to CSV "
              "(write-then-rename; reruns are byte-identical)");
  grid->add_option("--alpha", ga.alpha, "stability index")->required();
  grid->add_option("--rho", ga.rho, "positivity parameter")->required();
  grid->add_option("--quantity", ga.quantity,
                   "u1 | r1 | exit-prob | epass | law-inf | law-sup | levy")
      ->required()
      ->check(CLI::IsMember({"u1", "r1", "exit-prob", "epass", "law-inf",
                             "law-sup", "levy"}));
  ga.x.opt = grid->add_option("--x", ga.x.value,
                              "fixed starting point (u1 and r1 only)");
  grid->add_option("--count", ga.count, "number of interior points")
      ->required();
  grid->add_option("--margin", ga.margin,
                   "absolute margin kept clear at both ends");
  ga.lo.opt = grid->add_option("--lo", ga.lo.value, "domain lower end");
  ga.hi.opt = grid->add_option("--hi", ga.hi.value, "domain upper end");
  grid->add_option("--out", ga.out, "output CSV path")->required();

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and emit a JSON report "
                "(exit 0 iff every check passes)");
  verify
      ->add_option("suite", va.suite,
                   "identities: exact-law cross-checks; mc: simulation "
                   "against the closed forms")
      ->required()
      ->check(CLI::IsMember({"identities", "mc"}));
  verify->add_option("--alpha", va.alphas,
                     "alpha list, paired with --rho entries");
  verify->add_option("--rho", va.rhos, "rho list, paired with --alpha entries");
  verify->add_option("--seed", va.seed, "RNG seed (mc suite)");
  verify->add_option("--paths", va.paths, "paths per run (mc suite)");
  verify->add_option("--step", va.step, "skeleton time step (mc suite)");
  verify->add_option("--max-steps", va.max_steps,
                     "per-path step cap (mc suite); the product with --paths "
                     "must stay within the work budget "
                     "(override: STABLEPOT_MC_BUDGET)");
  verify->add_option("--cells", va.cells, "occupation histogram cells");
  verify->add_option("--checks", va.filter,
                     "only report checks whose name contains this substring");
  verify->add_option("--out", va.out,
                     "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return run_eval(ea);
    if (grid->parsed()) return run_grid(ga);
    return run_verify(va);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
