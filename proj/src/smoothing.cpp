#include "qlf/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <functional>

#include "qlf/errors.hpp"
#include "qlf/hermite.hpp"

namespace qlf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Jet zero_jet() { return Jet{}; }

// Rescale a jet in x to a jet in t when x = x0 + s (t - t0).
Jet chain_linear(const Jet& j, double s) {
  Jet r = j;
  double f = 1.0;
  for (int k = 1; k <= Jet::kOrder; ++k) {
    f *= s;
    r.c[k] *= f;
  }
  return r;
}

Jet bump_jet(double t) {
  if (t <= 1.0 || t >= 2.0) return zero_jet();
  const Jet a = Jet::affine(t - 1.0, 1.0);
  const Jet b = Jet::affine(2.0 - t, -1.0);
  const Jet e = 4.0 + ((-1.0) * reciprocal(a) - reciprocal(b));
  if (e.c[0] < -700.0) return zero_jet();
  return exp(e);
}

double bump_value(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double e = 4.0 - 1.0 / (t - 1.0) - 1.0 / (2.0 - t);
  return e < -700.0 ? 0.0 : std::exp(e);
}

using Integrand = std::function<double(double)>;

// Bisect until the Gauss-Kronrod estimate is below tol_density per unit
// length. Relative criteria never settle on a full period, where the integral
// itself is ~0. `noise` is the rounding floor of the integrand relative to its
// size (the phase om * x carries an error of eps * |om x|).
QuadResult gk21_panel(const Integrand& f, double a, double b, double& l1) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double k = 0, g = 0;
  l1 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fs = (i == 0) ? f(m) : f(m - r * x[i]) + f(m + r * x[i]);
    const double fa = (i == 0) ? std::abs(fs) : std::abs(f(m - r * x[i])) + std::abs(f(m + r * x[i]));
    k += wk[i] * fs;
    l1 += wk[i] * fa;
    if (i % 2 == 1) g += wg[i / 2] * fs;  // Gauss nodes sit at the odd Kronrod indices
  }
  return {r * k, r * std::abs(k - g)};
}

void gk21_abs(const Integrand& f, double a, double b, double tol_density, double noise, int depth,
              QuadResult& acc) {
  double l1 = 0.0;
  const QuadResult p = gk21_panel(f, a, b, l1);
  l1 *= 0.5 * (b - a);
  if (p.error <= std::max(tol_density * (b - a), noise * l1) || depth == 0) {
    acc.value += p.value;
    acc.error += p.error;
    return;
  }
  const double m = 0.5 * (a + b);
  gk21_abs(f, a, m, tol_density, noise, depth - 1, acc);
  gk21_abs(f, m, b, tol_density, noise, depth - 1, acc);
}


// Integral to an absolute error of about tol, or the rounding floor of the integrand.
QuadResult integrate_abs(const Integrand& f, double a, double b, double tol) {
  QuadResult r;
  if (b <= a) return r;
  gk21_abs(f, a, b, tol / (b - a), 64 * std::numeric_limits<double>::epsilon(), 30, r);
  return r;
}

// Integral of a non-negative f to relative accuracy rel.
QuadResult integrate_rel(const Integrand& f, double a, double b, double rel) {
  QuadResult r;
  if (b <= a) return r;
  gk21_abs(f, a, b, 0.0, rel, 30, r);
  return r;
}

}  // namespace

Jet ramp_jet(double x) {
  if (x <= 0.0) return zero_jet();
  if (x >= 1.0) return Jet::constant(1.0);
  const Jet X = Jet::affine(x, 1.0);
  const Jet Y = Jet::affine(1.0 - x, -1.0);
  const Jet a = reciprocal(X) - reciprocal(Y);
  if (a.c[0] > 700.0) return zero_jet();
  if (a.c[0] < -700.0) return Jet::constant(1.0);
  // 1/(1 + e^a), written with e^(-|a|) so the derivative terms cannot overflow
  if (a.c[0] > 0.0) {
    const Jet e = exp((-1.0) * a);
    return e * reciprocal(1.0 + e);
  }
  return reciprocal(1.0 + exp(a));
}

double ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = 1.0 / x - 1.0 / (1.0 - x);
  if (a > 700.0) return 0.0;
  if (a < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(a));
}

SmoothWeight::SmoothWeight(WeightKind kind, double Z) : kind_(kind), Z_(Z), w_(Z > 0 ? 1.0 / Z : 0.0) {
  compute_moments();
}

SmoothWeight SmoothWeight::standard_bump() { return SmoothWeight(WeightKind::standard_bump, 0.0); }

SmoothWeight SmoothWeight::plateau(double Z) {
  if (!(Z >= 4.0)) throw DomainError("plateau weight: Z must be >= 4");
  return SmoothWeight(WeightKind::plateau, Z);
}

std::string SmoothWeight::name() const {
  if (kind_ == WeightKind::standard_bump) return "standard_bump";
  char buf[64];
  std::snprintf(buf, sizeof buf, "plateau(Z=%.17g)", Z_);
  return buf;
}

std::vector<double> SmoothWeight::breakpoints() const {
  if (kind_ == WeightKind::plateau) return {1.0 + w_, 2.0 - w_};
  return {};
}

double SmoothWeight::eval(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  if (kind_ == WeightKind::standard_bump) return bump_value(t);
  if (t < 1.0 + w_) return ramp((t - 1.0) / w_);
  if (t > 2.0 - w_) return ramp((2.0 - t) / w_);
  return 1.0;
}

Jet SmoothWeight::jet(double t) const {
  if (t <= 1.0 || t >= 2.0) return zero_jet();
  if (kind_ == WeightKind::standard_bump) return bump_jet(t);
  if (t < 1.0 + w_) return chain_linear(ramp_jet((t - 1.0) / w_), 1.0 / w_);
  if (t > 2.0 - w_) return chain_linear(ramp_jet((2.0 - t) / w_), -1.0 / w_);
  return Jet::constant(1.0);
}

double SmoothWeight::deriv(double t, int nu) const {
  if (nu < 0 || nu > Jet::kOrder) {
    throw UnsupportedOrder("weight derivative of order " + std::to_string(nu) + " (supported: 0..4)");
  }
  if (nu == 0) return eval(t);
  return jet(t).derivative(nu);
}

void SmoothWeight::compute_moments() {
  std::vector<double> cuts{1.0};
  for (double b : breakpoints()) cuts.push_back(b);
  cuts.push_back(2.0);
  for (int j = 0; j <= 6; ++j) {
    QuadResult tot;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto r = integrate_abs([&](double y) { return eval(y) * std::pow(std::log(y), j); }, cuts[i], cuts[i + 1], 1e-14);
      tot.value += r.value;
      tot.error += r.error;
    }
    moments_[static_cast<std::size_t>(j)] = tot.value;
    moment_err_[static_cast<std::size_t>(j)] = tot.error;
  }
  double running = 0.0;
  for (int nu = 0; nu <= 4; ++nu) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      s += integrate_rel([&](double y) { return std::abs(deriv(y, nu)); }, cuts[i], cuts[i + 1], 1e-9).value;
    }
    running = std::max(running, s);
    norms_[static_cast<std::size_t>(nu)] = running;
  }
}

double SmoothWeight::mellin_moment(int j) const {
  if (j < 0 || j > 6) throw UnsupportedOrder("Mellin moment order must be in 0..6");
  return moments_[static_cast<std::size_t>(j)];
}

double SmoothWeight::mellin_error(int j) const {
  if (j < 0 || j > 6) throw UnsupportedOrder("Mellin moment order must be in 0..6");
  return moment_err_[static_cast<std::size_t>(j)];
}

double SmoothWeight::deriv_norm(int nu) const {
  if (nu < 0 || nu > 4) throw UnsupportedOrder("derivative norm order must be in 0..4");
  return norms_[static_cast<std::size_t>(nu)];
}

double weight_eval(const SmoothWeight& W, double t) { return W.eval(t); }
double weight_deriv(const SmoothWeight& W, double t, int nu) { return W.deriv(t, nu); }

QuadResult tilde_transform(const std::function<double(double)>& F, double xi, double a, double b,
                           const std::vector<double>& breaks, double tol) {
  std::vector<double> cuts{a};
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  const double om = kTwoPi * xi;
  const Integrand f = [&](double x) { return (std::cos(om * x) + std::sin(om * x)) * F(x); };
  const double period = xi != 0.0 ? 1.0 / std::abs(xi) : (b - a);
  const double noise = 64 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(om) * std::max(std::abs(a), std::abs(b)));
  QuadResult tot;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int n = std::max(static_cast<int>(std::ceil((hi - lo) / period - 1e-12)), 1);
    const double step = (hi - lo) / n;
    for (int k = 0; k < n; ++k) {
      const double x0 = lo + k * step;
      const double x1 = (k + 1 == n) ? hi : x0 + step;
      gk21_abs(f, x0, x1, tol / (b - a), noise, 20, tot);
    }
  }
  return tot;
}

QuadResult tilde_transform_adaptive(const SmoothWeight& W, double xi, double tol) {
  return tilde_transform([&W](double x) { return W.eval(x); }, xi, 1.0, 2.0, W.breakpoints(), tol);
}

namespace {

struct RampTable {
  static constexpr double kStep = 0.1;
  static constexpr double kMax = 900.0;
  std::vector<double> B, dB, d2B, env;

  RampTable() {
    // Gauss-Legendre nodes on [0, 1/2]: 200 panels of 30 points.
    using GL = boost::math::quadrature::gauss<double, 30>;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    constexpr int kPanels = 200;
    const double pw = 0.5 / kPanels;
    std::vector<double> xs, ws;
    for (int p = 0; p < kPanels; ++p) {
      const double mid = (p + 0.5) * pw, half = 0.5 * pw;
      for (std::size_t i = 0; i < ab.size(); ++i) {
        for (int sgn : {-1, 1}) {
          if (ab[i] == 0.0 && sgn < 0) continue;
          const double x = mid + sgn * half * ab[i];
          // psi' is symmetric about 1/2, so the half interval is doubled.
          const double dpsi = ramp_jet(x).c[1];
          xs.push_back(x - 0.5);
          ws.push_back(2.0 * half * wt[i] * dpsi);
        }
      }
    }
    const auto n = static_cast<std::size_t>(kMax / kStep) + 1;
    B.resize(n);
    dB.resize(n);
    d2B.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double om = k * kStep;
      double b0 = 0, b1 = 0, b2 = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = xs[i];
        const double c = std::cos(om * u), s = std::sin(om * u);
        b0 += ws[i] * c;
        b1 -= ws[i] * u * s;
        b2 -= ws[i] * u * u * c;
      }
      B[k] = b0;
      dB[k] = b1;
      d2B[k] = b2;
    }
    env.resize(n);
    double m = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      m = std::max(m, std::abs(B[k]));
      env[k] = m;
    }
  }
};

const RampTable& ramp_table() {
  static const RampTable t;
  return t;
}

}  // namespace

double ramp_cosine_integral(double om) {
  om = std::abs(om);
  const auto& t = ramp_table();
  if (om >= RampTable::kMax) return 0.0;
  const double pos = om / RampTable::kStep;
  const auto k = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(k);
  const double h = RampTable::kStep;
  return quintic_hermite(s, h, t.B[k], t.dB[k], t.d2B[k], t.B[k + 1], t.dB[k + 1], t.d2B[k + 1]);
}

double ramp_cosine_envelope(double om) {
  om = std::abs(om);
  const auto& t = ramp_table();
  if (om >= RampTable::kMax) return 0.0;
  return t.env[static_cast<std::size_t>(om / RampTable::kStep)];
}

double tilde_transform(const SmoothWeight& W, double xi) {
  if (W.kind() != WeightKind::plateau) return tilde_transform_adaptive(W, xi).value;
  // Integrating by parts once leaves psi' on the two ramps; their symmetry
  // about the ramp midpoints reduces each to B times a phase.
  const double w = W.ramp_width();
  const double a = kTwoPi * xi;
  const double half = 0.5 * (1.0 - w);
  const double sinc = (a == 0.0) ? half : std::sin(a * half) / a;
  return ramp_cosine_integral(a * w) * 2.0 * sinc * (std::sin(1.5 * a) + std::cos(1.5 * a));
}

}  // namespace qlf
