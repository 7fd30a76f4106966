#pragma once
// Smoothed moments S(L^j; Phi), least-squares fits in log X and comparison
// with the leading-order predictions.

#include <optional>
#include <utility>
#include <vector>

#include "qlf/smoothing.hpp"
#include "qlf/sweep.hpp"
#include "qlf/verdict.hpp"

namespace qlf {

inline constexpr i64 kDefaultMaxD = 1'000'000;

struct MomentOptions {
  double eps = kDefaultTruncationEps;
  int threads = 0;
  i64 max_d = kDefaultMaxD;
  std::size_t sieve_budget = kDefaultSieveBudget;
  i64 euler_cutoff = 10'000'000;
};

// Central values for every odd square-free d <= ceil(2 X_max); ResourceError past opt.max_d.
LTable moment_table(double X_max, const MomentOptions& opt);

// (1/X) sum_{X < d < 2X} L(d)^j Phi(d/X), d odd square-free.
double smoothed_moment(int j, double X, const SmoothWeight& W, const LTable& table);
double smoothed_moment(int j, double X, const SmoothWeight& W, const MomentOptions& opt = {});

// Sharp sum over d <= x approximated by the dyadic windows X = x/2, x/4, ...
double dyadic_moment(int j, double x, const SmoothWeight& W, const LTable& table);

struct LogPolyFit {
  int degree = 0;
  std::vector<double> coeffs;  // in powers of u = log X, constant first
  double rms = 0.0;
  double leading_se = 0.0;
  double leading() const { return coeffs.back(); }
  double operator()(double X) const;
};

LogPolyFit fit_logpoly(const std::vector<std::pair<double, double>>& points, int degree);

int moment_fit_degree(int j);
// C Phi-hat(0) / (2 zeta(2)) for j = 1, D Phi-hat(0) / (36 zeta(2)) for j = 2, absent for j = 3.
std::optional<double> predicted_leading(int j, const SmoothWeight& W, i64 euler_cutoff = 10'000'000);

struct MomentReport {
  int j = 1;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> dyadic;  // sharp-sum approximation at each grid point
  int fit_degree = 1;
  LogPolyFit fit;
  std::optional<double> predicted;
  std::vector<Verdict> verdicts;
};

// Geometric grid lo, lo r, ..., lo r^(count-1).
std::vector<double> geometric_grid(double lo, double ratio, int count);

MomentReport moment_suite(int j, const std::vector<double>& grid, const SmoothWeight& W,
                          const MomentOptions& opt = {});
MomentReport moment_suite(int j, const std::vector<double>& grid, const SmoothWeight& W, const LTable& table,
                          const MomentOptions& opt = {});

}  // namespace qlf
