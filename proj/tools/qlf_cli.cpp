// qlf: command-line front end. Exit codes: 0 all verdicts pass, 1 a verdict
// failed, 2 usage or domain error, 3 a resource budget was exceeded.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlf/central.hpp"
#include "qlf/config.hpp"
#include "qlf/errors.hpp"
#include "qlf/momentlab.hpp"
#include "qlf/mollify.hpp"
#include "qlf/omega.hpp"
#include "qlf/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qlf;

namespace {

enum Exit { kOk = 0, kVerdictFail = 1, kUsage = 2, kBudget = 3 };

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects artifacts and timings, then writes manifest.json next to them.
class Run {
 public:
  Run(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {
    fs::create_directories(cfg_.out_dir);
    t0_ = std::chrono::steady_clock::now();
  }

  fs::path path(const std::string& name) {
    artifacts_.push_back(name);
    return cfg_.out_dir / name;
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream(path(name)) << j.dump(2) << '\n';
  }

  void finish(bool pass) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    json m = {{"command", command_}, {"pass", pass}, {"artifacts", artifacts_}, {"config", cfg_.to_json()},
              {"wall_seconds", secs}};
    std::ofstream(cfg_.out_dir / "manifest.json") << m.dump(2) << '\n';
  }

 private:
  std::string command_;
  RunConfig cfg_;
  std::vector<std::string> artifacts_;
  std::chrono::steady_clock::time_point t0_;
};

json verdicts_json(const std::vector<Verdict>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

void print_verdicts(const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    std::cout << (v.pass ? "PASS" : v.advisory ? "ADVISORY-FAIL" : "FAIL") << "  [" << v.anchor << "] " << v.check
              << "  measured=" << v.measured;
    if (v.tolerance != 0.0) std::cout << " tolerance=" << v.tolerance;
    if (!v.detail.empty()) std::cout << "  (" << v.detail << ")";
    std::cout << '\n';
  }
}

struct GridSpec {
  double lo = 1e4, ratio = 2.0;
  int count = 5;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.lo >> c1 >> g.ratio >> c2 >> g.count) || c1 != ':' || c2 != ':' || !in.eof())
    throw DomainError("grid must look like lo:ratio:count, got '" + s + "'");
  return g;
}

void check_x(double X, const RunConfig& cfg) {
  if (X > cfg.max_x)
    throw ResourceError("X = " + fmt17(X) + " exceeds the limit " + fmt17(cfg.max_x), "QC_MAX_X");
}

MomentOptions moment_options(const RunConfig& cfg) {
  MomentOptions o;
  o.eps = cfg.eps;
  o.threads = cfg.effective_threads();
  o.max_d = cfg.max_d;
  o.sieve_budget = static_cast<std::size_t>(cfg.sieve_bytes);
  o.euler_cutoff = cfg.euler_cutoff;
  return o;
}

int cmd_value(const RunConfig& cfg, long long d, int j) {
  const auto od = OddSquarefree::make(d);
  json out = {{"d", d}, {"j", j}};
  if (j == 1) {
    const CentralValue v = central_value(od, cfg.eps);
    out["L"] = v.L;
    out["truncation_N"] = v.truncation_N;
    out["tail_estimate"] = v.tail_estimate;
  } else {
    out["L_power"] = 2.0 * a_value(j, od, cfg.eps);
  }
  out["anchor"] = "approximate-functional-equation";
  Run run("value", cfg);
  run.write_json("value.json", out);
  run.finish(true);
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_census(const RunConfig& cfg, long long lo, long long hi, double threshold) {
  if (hi > cfg.max_d)
    throw ResourceError("census upper end " + std::to_string(hi) + " exceeds the limit " + std::to_string(cfg.max_d),
                        "QC_MAX_D");
  Run run("census", cfg);
  std::ofstream csv(run.path("census.csv"));
  const CensusSummary s = census(lo, hi, threshold, &csv, cfg.eps, static_cast<std::size_t>(cfg.sieve_bytes));
  std::vector<Verdict> vs = {{"nonvanishing proportion >= 7/8", "seven-eighths-nonvanishing", s.proportion >= 0.875, false,
                              s.proportion, 0.875, 0.0, ""}};
  json out = {{"lo", lo},
              {"hi", hi},
              {"threshold", threshold},
              {"count", s.count_total},
              {"nonvanishing", s.count_nonvanishing},
              {"negative", s.count_negative},
              {"proportion", s.proportion},
              {"min_abs_L", s.min_abs_L},
              {"argmin_d", s.argmin_d},
              {"vanishing_d", s.vanishing},
              {"negative_d", s.negative},
              {"verdicts", verdicts_json(vs)}};
  run.write_json("census.json", out);
  const bool pass = all_pass(vs);
  run.finish(pass);
  std::cout << "count " << s.count_total << ", proportion " << fmt17(s.proportion) << ", min |L| "
            << fmt17(s.min_abs_L) << " at d=" << s.argmin_d << '\n';
  print_verdicts(vs);
  return pass ? kOk : kVerdictFail;
}

int cmd_moments(const RunConfig& cfg, int j, const std::string& grid_s) {
  const GridSpec g = parse_grid(grid_s);
  const auto grid = geometric_grid(g.lo, g.ratio, g.count);
  check_x(grid.back(), cfg);
  const SmoothWeight W = cfg.make_weight();
  const MomentReport rep = moment_suite(j, grid, W, moment_options(cfg));
  Run run("moments", cfg);
  std::ofstream csv(run.path("moments.csv"));
  csv << "X,j,S,fit_leading,predicted,ratio\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << fmt17(grid[i]) << ',' << j << ',' << fmt17(rep.values[i]) << ',' << fmt17(rep.fit.leading()) << ',';
    if (rep.predicted) csv << fmt17(*rep.predicted) << ',' << fmt17(rep.fit.leading() / *rep.predicted);
    else csv << ',';
    csv << '\n';
  }
  json out = {{"j", j},
              {"weight", W.name()},
              {"grid", grid},
              {"values", rep.values},
              {"dyadic", rep.dyadic},
              {"fit_degree", rep.fit_degree},
              {"fit_coeffs", rep.fit.coeffs},
              {"fit_rms", rep.fit.rms},
              {"leading_se", rep.fit.leading_se},
              {"predicted_leading", rep.predicted ? json(*rep.predicted) : json(nullptr)},
              {"out_of_scope", "error-term exponents are not testable at this scale"},
              {"verdicts", verdicts_json(rep.verdicts)}};
  run.write_json("moments.json", out);
  const bool pass = all_pass(rep.verdicts);
  run.finish(pass);
  print_verdicts(rep.verdicts);
  return pass ? kOk : kVerdictFail;
}

int cmd_mollify(const RunConfig& cfg, double X, double theta) {
  check_x(X, cfg);
  const SmoothWeight W = cfg.make_weight();
  const MollifierSpec s = make_mollifier(X, theta, cfg.euler_cutoff);
  const LTable table = moment_table(X, moment_options(cfg));
  const MollifiedMoments m = mollified_sweep(s, W, table);
  const double ph = W.integral();
  const double p1 = predicted_first(theta, ph), p2 = predicted_second(theta, ph);
  const double lb_pred = predicted_proportion(theta) * moment_unit(ph);
  std::vector<Verdict> vs = {
      {"S1 within 30% of the first-moment prediction (exploratory)", "mollified-first-moment", std::abs(m.S1 / p1 - 1) <= 0.3, true,
       m.S1, p1, 0.3, ""},
      {"S2 within 30% of the second-moment prediction (exploratory)", "mollified-second-moment", std::abs(m.S2 / p2 - 1) <= 0.3, true,
       m.S2, p2, 0.3, ""},
      {"S2 > 0 and S1^2 <= S2 * density", "cauchy-schwarz-bound", m.S2 > 0 && m.S1 * m.S1 <= m.S2 * m.density * (1 + 1e-12),
       false, m.S1 * m.S1, m.S2 * m.density, 0.0, ""}};
  json out = {{"X", X},
              {"theta", theta},
              {"M", s.M},
              {"S1", m.S1},
              {"S2", m.S2},
              {"lower_bound", m.lower_bound},
              {"density", m.density},
              {"count", m.count},
              {"predicted_first", p1},
              {"predicted_second", p2},
              {"predicted_proportion", predicted_proportion(theta)},
              {"predicted_lower_bound", lb_pred},
              {"ratios", {{"S1", m.S1 / p1}, {"S2", m.S2 / p2}, {"lower_bound", m.lower_bound / lb_pred}}},
              {"status", "exploratory"},
              {"verdicts", verdicts_json(vs)}};
  Run run("mollify", cfg);
  run.write_json("mollify.json", out);
  const bool pass = all_pass(vs);
  run.finish(pass);
  std::cout << out.dump(2) << '\n';
  print_verdicts(vs);
  return pass ? kOk : kVerdictFail;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else names = {suite};
  json out = json::array();
  bool pass = true;
  Run run("verify", cfg);
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, cfg);
    out.push_back(to_json(r));
    pass = pass && r.pass();
    std::cout << "suite " << n << ":\n";
    print_verdicts(r.verdicts);
  }
  run.write_json("verify.json", names.size() == 1 ? out[0] : out);
  run.finish(pass);
  return pass ? kOk : kVerdictFail;
}

int cmd_kernels(const RunConfig& cfg) {
  Run run("kernels", cfg);
  json out = json::array();
  for (int j = 1; j <= 3; ++j) {
    const OmegaKernel k(j);
    const std::string name = "omega" + std::to_string(j) + ".bin";
    const fs::path p = run.path(name);
    k.save(p);
    const OmegaKernel back = OmegaKernel::load(p);
    const bool same = back.values() == k.values() && back.d1() == k.d1() && back.d2() == k.d2();
    out.push_back({{"j", j}, {"file", name}, {"nodes", k.size()}, {"cutoff", k.cutoff()}, {"height", k.height()},
                   {"reload_identical", same}});
    std::cout << name << ": " << k.size() << " nodes, cutoff " << k.cutoff() << (same ? "" : " RELOAD MISMATCH")
              << '\n';
    if (!same) {
      run.finish(false);
      return kVerdictFail;
    }
  }
  run.write_json("kernels.json", out);
  run.finish(true);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central values of quadratic Dirichlet L-functions: census, moments, mollifier"};
  app.require_subcommand(1);

  std::string config_file;
  int threads = -1;
  std::string weight, out_dir;
  double Z = 0, eps = 0;
  long long euler = 0;
  app.add_option("--config", config_file, "JSON config file");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--weight", weight, "smooth weight")->check(CLI::IsMember({"plateau", "standard_bump"}));
  app.add_option("--z", Z, "plateau sharpness Z");
  app.add_option("--euler-cutoff", euler, "prime cutoff for Euler products");
  app.add_option("--eps", eps, "truncation tolerance");
  app.add_option("--out", out_dir, "output directory");

  long long d = 0;
  int value_j = 1;
  auto* value = app.add_subcommand("value", "central value L(1/2, chi_8d)");
  value->add_option("--d", d, "odd square-free d")->required();
  value->add_option("--j", value_j, "power j (1..3)")->check(CLI::Range(1, 3));

  long long lo = 1, hi = 100000;
  double threshold = 1e-8;
  auto* census_cmd = app.add_subcommand("census", "nonvanishing census over a d range");
  census_cmd->add_option("--lo", lo)->required();
  census_cmd->add_option("--hi", hi)->required();
  census_cmd->add_option("--threshold", threshold);

  int moment_j = 1;
  std::string grid = "1e4:2:5";
  auto* moments = app.add_subcommand("moments", "smoothed moment sweep and log-polynomial fit");
  moments->add_option("--j", moment_j)->check(CLI::Range(1, 3));
  moments->add_option("--grid", grid, "lo:ratio:count");

  double X = 1e5, theta = 0.6;
  auto* mollify = app.add_subcommand("mollify", "mollified first and second moments");
  mollify->add_option("--x", X);
  mollify->add_option("--theta", theta);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "identity suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suites));

  auto* kernels = app.add_subcommand("kernels", "build, save and reload the omega kernel caches");

  // Per-subcommand copies of the shared flags so `qlf census --out dir` also works.
  for (auto* sub : {value, census_cmd, moments, mollify, verify, kernels}) {
    sub->add_option("--threads", threads);
    sub->add_option("--weight", weight)->check(CLI::IsMember({"plateau", "standard_bump"}));
    sub->add_option("--z", Z);
    sub->add_option("--euler-cutoff", euler);
    sub->add_option("--eps", eps);
    sub->add_option("--out", out_dir);
    sub->add_option("--config", config_file);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) apply_json_file(cfg, config_file);
    apply_env(cfg);
    if (threads >= 0) cfg.threads = threads;
    if (!weight.empty()) cfg.weight = weight;
    if (Z != 0) cfg.Z = Z;
    if (euler != 0) cfg.euler_cutoff = euler;
    if (eps != 0) cfg.eps = eps;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.validate();
    omp_set_num_threads(cfg.effective_threads());

    if (*value) return cmd_value(cfg, d, value_j);
    if (*census_cmd) return cmd_census(cfg, lo, hi, threshold);
    if (*moments) return cmd_moments(cfg, moment_j, grid);
    if (*mollify) return cmd_mollify(cfg, X, theta);
    if (*verify) return cmd_verify(cfg, suite);
    if (*kernels) return cmd_kernels(cfg);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
