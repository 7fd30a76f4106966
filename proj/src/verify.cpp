#include "qlf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "qlf/central.hpp"
#include "qlf/charsums.hpp"
#include "qlf/errors.hpp"
#include "qlf/euler.hpp"
#include "qlf/mollify.hpp"
#include "qlf/omega.hpp"

namespace qlf {

using nlohmann::json;

namespace {

Verdict verdict(std::string check, std::string anchor, double measured, double tolerance, std::string detail = "") {
  return Verdict{std::move(check), std::move(anchor), measured <= tolerance, false, measured, 0.0, tolerance,
                 std::move(detail)};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

SuiteResult suite_gauss(const RunConfig&) {
  SuiteResult r{"gauss", {}, json::object(), 0.0};
  const std::vector<i64> extra = {25, 49, 121};
  std::vector<i64> ks;
  for (i64 k = -20; k <= 20; ++k) ks.push_back(k);
  ks.insert(ks.end(), extra.begin(), extra.end());
  double worst = 0.0;
  i64 worst_n = 0, worst_k = 0, cases = 0, zero_cases = 0, zero_bad = 0;
  for (i64 n = 1; n <= 2001; n += 2) {
    const FactoredInteger f = factor(n);
    for (i64 k : ks) {
      const GaussSumValue c = gauss_closed(k, f);
      const cplx o = gauss_from_tau(k, n);
      const double err = std::abs(c.value - o) / std::sqrt(static_cast<double>(n));
      ++cases;
      if (c.is_zero()) {
        ++zero_cases;
        if (c.value != cplx(0.0, 0.0) || err > 1e-9) ++zero_bad;
      }
      if (err > worst) {
        worst = err;
        worst_n = n;
        worst_k = k;
      }
    }
  }
  r.verdicts.push_back(verdict("closed form matches brute-force sum, error / sqrt(n)", "gauss-sum-prime-power-table", worst, 1e-9,
                               "worst at n=" + std::to_string(worst_n) + " k=" + std::to_string(worst_k)));
  r.verdicts.push_back(verdict("zero cases are exact zeros", "gauss-sum-prime-power-table", static_cast<double>(zero_bad), 0.0));
  r.data = {{"cases", cases}, {"zero_cases", zero_cases}, {"worst_scaled_error", worst},
            {"worst_n", worst_n}, {"worst_k", worst_k}};
  return r;
}

SuiteResult suite_poisson(const RunConfig& cfg) {
  SuiteResult r{"poisson", {}, json::array(), 0.0};
  const SmoothWeight W = cfg.make_weight();
  double worst = 0.0;
  for (double X : {200.0, 1000.0})
    for (i64 Y : {1, 5, 20})
      for (i64 n : {1, 3, 9, 15, 25, 45}) {
        const PoissonResult p = poisson_check(n, X, Y, W);
        worst = std::max(worst, p.gap);
        r.data.push_back({{"X", X}, {"Y", Y}, {"n", n}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"gap", p.gap},
                          {"xi_max", p.xi_max}, {"terms", p.terms}});
      }
  r.verdicts.push_back(verdict("Poisson summation gap over all 36 configurations", "poisson-summation", worst, 1e-6));
  return r;
}

SuiteResult suite_omega(const RunConfig&) {
  SuiteResult r{"omega", {}, json::object(), 0.0};
  // omega_1(xi) = Gamma(1/4, xi^2) / Gamma(1/4).
  const auto k1 = OmegaKernel::shared(1);
  double worst_direct = 0.0, worst_cache = 0.0;
  for (double xi : log_grid(1e-4, 10.0, 50)) {
    const double exact = boost::math::gamma_q(0.25, xi * xi);
    worst_direct = std::max(worst_direct, std::abs(k1->direct(xi).value - exact));
    worst_cache = std::max(worst_cache, std::abs((*k1)(xi) - exact));
  }
  r.verdicts.push_back(verdict("omega_1 quadrature vs incomplete gamma", "omega-kernel-bounds", worst_direct, 1e-10));
  r.verdicts.push_back(verdict("omega_1 cache vs incomplete gamma", "omega-kernel-bounds", worst_cache, 1e-10));

  double worst_c = 0.0;
  for (int j = 1; j <= 3; ++j)
    for (double xi : log_grid(0.5, 8.0, 12)) {
      const double a = omega_contour(j, xi, 0.5).value;
      const double b = omega_contour(j, xi, 1.0).value;
      const double c = omega_contour(j, xi, 2.0).value;
      worst_c = std::max({worst_c, std::abs(a - b), std::abs(c - b)});
    }
  r.verdicts.push_back(verdict("contour abscissa independence, c in {0.5, 1, 2}", "omega-kernel-definition", worst_c, 1e-9));

  json env = json::array();
  for (int j = 1; j <= 3; ++j) {
    const auto k = OmegaKernel::shared(j);
    const double K = omega_envelope_K(j);
    double worst_ratio = 0.0;
    for (double xi : log_grid(1.0, omega_cutoff(j), 200)) {
      const double bound = std::exp(-0.5 * j * std::pow(xi, 2.0 / j));
      worst_ratio = std::max(worst_ratio, std::abs((*k)(xi)) / bound);
    }
    double worst_small = 0.0;
    for (double xi : log_grid(1e-6, 1e-2, 40))
      worst_small = std::max(worst_small, std::abs((*k)(xi) - 1.0) / std::pow(xi, 0.4));
    r.verdicts.push_back(verdict("omega_" + std::to_string(j) + " decay envelope K_j exp(-(j/2) xi^(2/j))",
                                 "omega-kernel-bounds", worst_ratio, K));
    r.verdicts.push_back(verdict("omega_" + std::to_string(j) + " small-xi law |omega - 1| <= K xi^0.4",
                                 "omega-kernel-bounds", worst_small, omega_small_K(j)));
    env.push_back({{"j", j}, {"decay_ratio_max", worst_ratio}, {"K_decay", K}, {"small_ratio_max", worst_small},
                   {"K_small", omega_small_K(j)}, {"cutoff", omega_cutoff(j)}});
  }
  r.data = {{"omega1_direct_error", worst_direct}, {"omega1_cache_error", worst_cache},
            {"contour_spread", worst_c}, {"envelopes", env}};
  return r;
}

SuiteResult suite_eta(const RunConfig& cfg) {
  SuiteResult r{"eta", {}, json::array(), 0.0};
  const auto P = static_cast<i64>(cfg.euler_cutoff);
  const EulerProductValue D = const_D(P);
  double worst_excess = -INFINITY;
  for (i64 l : {1, 3, 5, 9, 15, 45, 105, 225}) {
    const EulerProductValue e = eta_at_one(l, P);
    const SquarefreeSplit s = split_l1_l2(l);
    const double scale = static_cast<double>(sigma(s.l1)) * mult_h(l) / static_cast<double>(s.l1);
    const double gap = std::abs(e.value * scale - D.value);
    const double bound = e.tail_bound * scale + D.tail_bound;
    worst_excess = std::max(worst_excess, gap - bound);
    r.verdicts.push_back({"eta(1; " + std::to_string(l) + ") sigma(l1) h(l) / l1 equals D within tail bounds",
                          "eta-at-one-identity", gap <= bound && bound <= 1e-6, false, gap, D.value, bound, ""});
    r.data.push_back({{"l", l}, {"eta", e.value}, {"scaled", e.value * scale}, {"D", D.value}, {"gap", gap},
                      {"bound", bound}});
  }
  return r;
}

SuiteResult suite_identity69(const RunConfig& cfg) {
  SuiteResult r{"identity-69", {}, json::object(), 0.0};
  const auto P = static_cast<i64>(cfg.euler_cutoff);
  const Identity69 id = identity_69(P);
  r.verdicts.push_back(verdict("(C^2/D)(1/2) prod (1 - 1/p)(1 + h g1^2/(p H)) = 4/9, gap plus tail", "four-ninths-constant",
                               id.gap + id.value.tail_bound, 1e-6));
  r.data = {{"P", P}, {"value", id.value.value}, {"gap", id.gap}, {"tail_bound", id.value.tail_bound},
            {"C", const_C(P).value}, {"D", const_D(P).value}};
  return r;
}

SuiteResult suite_prediction(const RunConfig& cfg) {
  SuiteResult r{"prediction-identity", {}, json::object(), 0.0};
  // theta = 1, X = 10^6 gives M = 1000.
  const MollifierSpec s = make_mollifier(1e6, 1.0, static_cast<i64>(cfg.euler_cutoff));
  const CoeffMap back = xi_from_lambda(s.lambda);
  double worst_rt = 0.0;
  for (std::size_t g = 1; g < s.xi.size(); ++g)
    if (s.xi[g] != 0.0) worst_rt = std::max(worst_rt, std::abs(back[g] - s.xi[g]) / std::abs(s.xi[g]));
  r.verdicts.push_back(verdict("xi -> lambda -> xi roundtrip at M = 1000, relative", "lambda-xi-change-of-variables", worst_rt, 1e-12));

  double worst_id = 0.0;
  json rows = json::array();
  for (int i = 1; i <= 10; ++i) {
    const double th = 0.1 * i;
    const double K = moment_unit(1.0);
    const double lhs = predicted_first(th) * predicted_first(th);
    const double rhs = predicted_proportion(th) * predicted_second(th) * K;
    worst_id = std::max(worst_id, std::abs(lhs - rhs) / std::abs(rhs));
    rows.push_back({{"theta", th}, {"first", predicted_first(th)}, {"second", predicted_second(th)},
                    {"proportion", predicted_proportion(th)}});
  }
  r.verdicts.push_back(verdict("first^2 = proportion * second * K, theta = 0.1..1.0", "mollified-moment-predictions", worst_id, 1e-12));

  const Rational one(1);
  const bool exact = predicted_first_coeff(one) == Rational(14, 9) && predicted_second_coeff(one) == Rational(224, 81) &&
                     predicted_proportion_exact(one) == Rational(7, 8);
  r.verdicts.push_back({"theta = 1 gives 14/9, 224/81, 7/8 exactly", "seven-eighths-nonvanishing", exact, false, exact ? 0.0 : 1.0,
                        0.0, 0.0, ""});
  r.data = {{"roundtrip_relative", worst_rt}, {"identity_relative", worst_id}, {"M", s.M},
            {"first_theta1", predicted_first_coeff(one).str()}, {"second_theta1", predicted_second_coeff(one).str()},
            {"proportion_theta1", predicted_proportion_exact(one).str()}, {"table", rows}};
  return r;
}

SuiteResult suite_afe(const RunConfig& cfg) {
  SuiteResult r{"afe-consistency", {}, json::object(), 0.0};
  double w2 = 0.0, w3 = 0.0;
  for (i64 d : sample_odd_squarefree(5000, 200)) {
    const auto od = OddSquarefree::make(d);
    const double L = 2.0 * a_value(1, od, cfg.eps);
    const double L2 = 2.0 * a_value(2, od, cfg.eps);
    w2 = std::max(w2, std::abs(L * L - L2) / std::abs(L2));
  }
  for (i64 d : sample_odd_squarefree(500, 50, kSampleSeed + 1)) {
    const auto od = OddSquarefree::make(d);
    const double L = 2.0 * a_value(1, od, cfg.eps);
    const double L3 = 2.0 * a_value(3, od, cfg.eps);
    w3 = std::max(w3, std::abs(L * L * L - L3) / std::abs(L3));
  }
  r.verdicts.push_back(verdict("(2A_1)^2 vs 2A_2, 200 d <= 5000, relative", "approximate-functional-equation", w2, 1e-8));
  r.verdicts.push_back(verdict("(2A_1)^3 vs 2A_3, 50 d <= 500, relative", "approximate-functional-equation", w3, 1e-6));
  r.data = {{"square_relative", w2}, {"cube_relative", w3}};
  return r;
}

SuiteResult suite_oracle(const RunConfig& cfg) {
  SuiteResult r{"oracle", {}, json::object(), 0.0};
  double worst = 0.0;
  i64 worst_d = 0, count = 0;
  for (const OddSquarefree d : sieve_odd_squarefree(1, 300)) {
    const double err = std::abs(central_value(d, cfg.eps).L - oracle_central(d));
    ++count;
    if (err > worst) {
      worst = err;
      worst_d = d.value();
    }
  }
  r.verdicts.push_back(verdict("2A_1(d) vs Hurwitz-zeta oracle, all odd square-free d <= 300", "approximate-functional-equation", worst,
                               1e-8, "worst at d=" + std::to_string(worst_d)));
  r.data = {{"count", count}, {"worst_error", worst}, {"worst_d", worst_d}};
  return r;
}

}  // namespace

std::vector<i64> sample_odd_squarefree(i64 hi, std::size_t count, unsigned long long seed) {
  const auto all = sieve_odd_squarefree(1, hi);
  if (all.size() < count) throw DomainError("sample larger than population");
  std::mt19937_64 rng(seed);
  std::vector<i64> out;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  std::vector<bool> used(all.size(), false);
  while (out.size() < count) {
    const std::size_t i = pick(rng);
    if (used[i]) continue;
    used[i] = true;
    out.push_back(all[i].value());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gauss", "poisson", "omega", "eta", "identity-69",
                                                 "prediction-identity", "afe-consistency", "oracle"};
  return names;
}

SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  if (name == "gauss") r = suite_gauss(cfg);
  else if (name == "poisson") r = suite_poisson(cfg);
  else if (name == "omega") r = suite_omega(cfg);
  else if (name == "eta") r = suite_eta(cfg);
  else if (name == "identity-69") r = suite_identity69(cfg);
  else if (name == "prediction-identity") r = suite_prediction(cfg);
  else if (name == "afe-consistency") r = suite_afe(cfg);
  else if (name == "oracle") r = suite_oracle(cfg);
  else throw DomainError("unknown suite '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

json to_json(const Verdict& v) {
  return {{"check", v.check},       {"anchor", v.anchor}, {"pass", v.pass},     {"advisory", v.advisory},
          {"measured", v.measured}, {"target", v.target}, {"tolerance", v.tolerance}, {"detail", v.detail}};
}

json to_json(const SuiteResult& r) {
  json vs = json::array();
  for (const auto& v : r.verdicts) vs.push_back(to_json(v));
  return {{"suite", r.suite}, {"pass", r.pass()}, {"verdicts", vs}, {"data", r.data}};
}

}  // namespace qlf
