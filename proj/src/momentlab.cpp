#include "qlf/momentlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "qlf/errors.hpp"
#include "qlf/euler.hpp"

namespace qlf {

namespace {

double ipow(double x, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= x;
  return r;
}

void check_j(int j) {
  if (j < 1 || j > 3) throw DomainError("moment order must be 1, 2 or 3, got " + std::to_string(j));
}

}  // namespace

LTable moment_table(double X_max, const MomentOptions& opt) {
  if (!(X_max >= 1.0)) throw DomainError("moment sweep: X must be >= 1");
  const auto hi = static_cast<i64>(std::ceil(2.0 * X_max));
  if (hi > opt.max_d) {
    throw ResourceError("moment sweep needs d up to " + std::to_string(hi) + " but the limit is " +
                            std::to_string(opt.max_d),
                        "QC_MAX_D");
  }
  return central_values(1, hi, opt.eps, opt.threads, opt.sieve_budget);
}

double smoothed_moment(int j, double X, const SmoothWeight& W, const LTable& table) {
  check_j(j);
  return smoothed_sum(table, X, [&W](double t) { return W.eval(t); }, [j](i64, double L) { return ipow(L, j); });
}

double smoothed_moment(int j, double X, const SmoothWeight& W, const MomentOptions& opt) {
  return smoothed_moment(j, X, W, moment_table(X, opt));
}

double dyadic_moment(int j, double x, const SmoothWeight& W, const LTable& table) {
  check_j(j);
  double total = 0.0;
  for (double X = x / 2.0; 2.0 * X >= 1.0; X /= 2.0) total += X * smoothed_moment(j, X, W, table);
  return total;
}

double LogPolyFit::operator()(double X) const {
  const double u = std::log(X);
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * u + *it;
  return r;
}

LogPolyFit fit_logpoly(const std::vector<std::pair<double, double>>& points, int degree) {
  if (degree < 0) throw FitError("fit degree must be non-negative");
  const auto n = static_cast<Eigen::Index>(points.size());
  const Eigen::Index p = degree + 1;
  if (n < p + 1) {
    throw FitError("degree-" + std::to_string(degree) + " fit needs at least " + std::to_string(p + 1) +
                   " points, got " + std::to_string(n));
  }
  // Centre and scale u = log X onto [-1, 1] for conditioning.
  double umin = INFINITY, umax = -INFINITY;
  for (const auto& [X, y] : points) {
    if (!(X > 0.0) || !std::isfinite(y)) throw FitError("fit points must have X > 0 and finite values");
    umin = std::min(umin, std::log(X));
    umax = std::max(umax, std::log(X));
  }
  const double m = 0.5 * (umin + umax);
  const double s = 0.5 * (umax - umin);
  if (!(s > 0.0) && degree > 0) throw FitError("fit points share a single abscissa");
  const double scale = s > 0.0 ? s : 1.0;

  Eigen::MatrixXd A(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = (std::log(points[static_cast<std::size_t>(i)].first) - m) / scale;
    double vk = 1.0;
    for (Eigen::Index k = 0; k < p; ++k, vk *= v) A(i, k) = vk;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < p) throw FitError("fit design matrix is rank deficient");
  const Eigen::VectorXd b = qr.solve(y);
  const Eigen::VectorXd r = y - A * b;
  const double rss = r.squaredNorm();

  LogPolyFit fit;
  fit.degree = degree;
  fit.rms = std::sqrt(rss / static_cast<double>(n));
  const Eigen::MatrixXd cov = (A.transpose() * A).inverse() * (rss / static_cast<double>(n - p));
  fit.leading_se = std::sqrt(std::max(0.0, cov(p - 1, p - 1))) / ipow(scale, degree);

  // Expand sum b_k ((u - m)/s)^k into powers of u.
  fit.coeffs.assign(static_cast<std::size_t>(p), 0.0);
  for (int k = 0; k <= degree; ++k) {
    const double bk = b(k) / ipow(scale, k);
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) {
      // binom = C(k, i); term u^i (-m)^(k-i)
      fit.coeffs[static_cast<std::size_t>(i)] += bk * binom * ipow(-m, k - i);
      binom = binom * (k - i) / (i + 1);
    }
  }
  return fit;
}

int moment_fit_degree(int j) {
  check_j(j);
  return j == 1 ? 1 : j == 2 ? 3 : 6;
}

std::optional<double> predicted_leading(int j, const SmoothWeight& W, i64 euler_cutoff) {
  check_j(j);
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  if (j == 1) return const_C(euler_cutoff).value * W.integral() / (2.0 * zeta2);
  if (j == 2) return const_D(euler_cutoff).value * W.integral() / (36.0 * zeta2);
  return std::nullopt;
}

std::vector<double> geometric_grid(double lo, double ratio, int count) {
  if (!(lo > 0.0) || !(ratio > 1.0) || count < 1) throw DomainError("grid needs lo > 0, ratio > 1, count >= 1");
  std::vector<double> g;
  for (int k = 0; k < count; ++k) g.push_back(lo * std::pow(ratio, k));
  return g;
}

MomentReport moment_suite(int j, const std::vector<double>& grid, const SmoothWeight& W, const MomentOptions& opt) {
  if (grid.empty()) throw DomainError("moment grid is empty");
  return moment_suite(j, grid, W, moment_table(*std::max_element(grid.begin(), grid.end()), opt), opt);
}

MomentReport moment_suite(int j, const std::vector<double>& grid, const SmoothWeight& W, const LTable& table,
                          const MomentOptions& opt) {
  MomentReport rep;
  rep.j = j;
  rep.fit_degree = moment_fit_degree(j);
  rep.grid = grid;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("moment grid must be strictly increasing");
  if (static_cast<int>(grid.size()) < rep.fit_degree + 2) {
    throw FitError("moment order " + std::to_string(j) + " needs at least " + std::to_string(rep.fit_degree + 2) +
                   " grid points");
  }
  std::vector<std::pair<double, double>> pts;
  for (double X : grid) {
    rep.values.push_back(smoothed_moment(j, X, W, table));
    rep.dyadic.push_back(dyadic_moment(j, X, W, table));
    pts.emplace_back(X, rep.values.back());
  }
  rep.fit = fit_logpoly(pts, rep.fit_degree);
  rep.predicted = predicted_leading(j, W, opt.euler_cutoff);

  bool finite = true;
  for (double v : rep.values) finite = finite && std::isfinite(v);
  rep.verdicts.push_back({"values finite", "approximate-functional-equation", finite, false, 0.0, 0.0, 0.0, ""});

  if (j == 1) {
    const double ratio = rep.fit.leading() / *rep.predicted;
    rep.verdicts.push_back({"first-moment log X slope within 20% of C Phi-hat(0)/(2 zeta(2))", "first-moment-asymptotic",
                            std::abs(ratio - 1.0) <= 0.2, false, rep.fit.leading(), *rep.predicted, 0.2,
                            "ratio " + std::to_string(ratio)});
  } else if (j == 2) {
    const double ratio = rep.fit.leading() / *rep.predicted;
    std::ostringstream d;
    d << "ratio " << ratio << ", leading standard error " << rep.fit.leading_se;
    rep.verdicts.push_back({"second-moment cubic coefficient within a factor 2 of D Phi-hat(0)/(36 zeta(2))",
                            "second-moment-asymptotic", ratio >= 0.5 && ratio <= 2.0, true, rep.fit.leading(), *rep.predicted, 2.0,
                            d.str()});
    // S(L^2)/S(L)^2 grows like log X.
    bool mono = true;
    double prev = -INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double s1 = smoothed_moment(1, grid[i], W, table);
      const double r = rep.values[i] / (s1 * s1);
      mono = mono && r > prev;
      prev = r;
    }
    rep.verdicts.push_back({"S(L^2)/S(L)^2 increasing in X", "moment-growth-shape", mono, false, prev, 0.0, 0.0, ""});
  } else {
    bool pos = true, inc = true;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
      pos = pos && rep.values[i] > 0.0;
      if (i > 0) inc = inc && rep.values[i] > rep.values[i - 1];
    }
    const double vmax = *std::max_element(rep.values.begin(), rep.values.end());
    rep.verdicts.push_back({"third moment positive", "third-moment-asymptotic", pos, false, 0.0, 0.0, 0.0, ""});
    rep.verdicts.push_back({"third moment increasing in X", "third-moment-asymptotic", inc, false, 0.0, 0.0, 0.0, ""});
    rep.verdicts.push_back({"degree-6 fit residual RMS below 5% of the largest value", "third-moment-asymptotic",
                            rep.fit.rms < 0.05 * vmax, false, rep.fit.rms, 0.0, 0.05 * vmax, ""});
  }
  return rep;
}

}  // namespace qlf
